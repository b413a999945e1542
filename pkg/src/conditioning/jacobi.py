"""
Complex Jacobi Eigensolver
Cyclic Jacobi rotations for small dense Hermitian matrices, vectorised over a stack.

Each rotation removes the phase of the pivot a_pq with a diagonal unitary and
then applies the real symmetric rotation t = sgn(theta) / (|theta| + sqrt(theta^2 + 1)),
theta = (a_qq - a_pp) / (2 |a_pq|). A stack of K matrices is swept in lockstep;
matrices that have converged are left untouched by later sweeps.
"""
import logging
from typing import Optional

import numpy as np

from src.config import SolverConfig
from src.errors import EigensolverError

logger = logging.getLogger(__name__)


def _off_norm(stack: np.ndarray) -> np.ndarray:
    """Frobenius norm of the off-diagonal part of each matrix."""
    n = stack.shape[-1]
    mask = ~np.eye(n, dtype=bool)
    return np.sqrt(np.sum(np.abs(stack[:, mask]) ** 2, axis=1))


def _rotate(stack: np.ndarray, p: int, q: int):
    """Annihilate (p, q) in every matrix of the stack, in place."""
    apq = stack[:, p, q]
    magnitude = np.abs(apq)
    pivot = magnitude > 0.0
    if not pivot.any():
        return

    safe = np.where(pivot, magnitude, 1.0)
    theta = (stack[:, q, q].real - stack[:, p, p].real) / (2.0 * safe)
    sign = np.where(theta >= 0.0, 1.0, -1.0)
    t = np.where(pivot, sign / (np.abs(theta) + np.hypot(theta, 1.0)), 0.0)
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c
    unphase = np.conj(np.where(pivot, apq / safe, 1.0))

    rotation = np.empty((stack.shape[0], 2, 2), dtype=complex)
    rotation[:, 0, 0] = c
    rotation[:, 0, 1] = s
    rotation[:, 1, 0] = -s * unphase
    rotation[:, 1, 1] = c * unphase

    pair = [p, q]
    stack[:, :, pair] = stack[:, :, pair] @ rotation
    stack[:, pair, :] = np.conj(rotation).transpose(0, 2, 1) @ stack[:, pair, :]
    stack[:, p, q] = 0.0
    stack[:, q, p] = 0.0
    stack[:, p, p] = stack[:, p, p].real
    stack[:, q, q] = stack[:, q, q].real


def jacobi_eigenvalues(stack: np.ndarray, config: Optional[SolverConfig] = None) -> np.ndarray:
    """Ascending eigenvalues of each Hermitian matrix in a (K, n, n) stack, shape (K, n)."""
    config = config or SolverConfig()
    stack = np.asarray(stack)
    if stack.ndim != 3 or stack.shape[1] != stack.shape[2]:
        raise EigensolverError(f"Expected a stack of square matrices, got shape {stack.shape}")
    k, n = stack.shape[0], stack.shape[1]
    if n > config.max_dimension:
        raise EigensolverError(f"Matrix dimension {n} exceeds supported maximum {config.max_dimension}")
    if k == 0:
        return np.empty((0, n))

    norms = np.sqrt(np.sum(np.abs(stack) ** 2, axis=(1, 2)))
    skew = np.sqrt(np.sum(np.abs(stack - np.conj(stack).transpose(0, 2, 1)) ** 2, axis=(1, 2)))
    if np.any(skew > config.hermitian_tolerance * np.maximum(norms, 1.0)):
        raise EigensolverError(f"Input is not Hermitian (max deviation {skew.max():.3e})")

    work = 0.5 * (stack + np.conj(stack).transpose(0, 2, 1)).astype(complex)
    thresholds = config.jacobi_tolerance * norms
    active = _off_norm(work) > thresholds

    sweeps = 0
    while active.any():
        if sweeps >= config.max_sweeps:
            raise EigensolverError(f"Jacobi iteration did not converge in {config.max_sweeps} sweeps "
                                   f"for {int(active.sum())} of {k} matrices")
        index = np.nonzero(active)[0]
        block = work[index]
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(block, p, q)
        work[index] = block
        active[index] = _off_norm(block) > thresholds[index]
        sweeps += 1

    logger.debug(f"Jacobi converged for {k} matrices of size {n} in {sweeps} sweeps")
    return np.sort(np.diagonal(work, axis1=1, axis2=2).real, axis=1)


def hermitian_eigenvalues(matrix: np.ndarray, config: Optional[SolverConfig] = None) -> np.ndarray:
    """Ascending real eigenvalues of one Hermitian matrix."""
    matrix = np.asarray(matrix)
    if matrix.ndim != 2:
        raise EigensolverError(f"Expected a square matrix, got shape {matrix.shape}")
    return jacobi_eigenvalues(matrix[None, :, :], config)[0]
