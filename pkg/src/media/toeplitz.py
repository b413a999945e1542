"""
Toeplitz Medium
In-medium lengths that depend only on |m - n|, built from a first row.
"""
from typing import Any, Dict, Optional, Sequence

import numpy as np
from scipy.linalg import toeplitz

from src.errors import ContractViolation, InvalidMediumError
from src.geometry.array_config import ArrayConfig
from src.geometry.path_lengths import PathMatrix
from src.media.base_medium import BaseMedium, LengthMatrix


def _kept(selection: Optional[Sequence[int]], count: int, v: int, what: str) -> np.ndarray:
    """0-based indices of the V x V rows/columns to keep (1-based input)."""
    if selection is None:
        return np.arange(count)
    indices = np.asarray(selection, dtype=int)
    if indices.shape != (count,):
        raise ContractViolation(f"Expected {count} {what} to keep, got {len(indices)}")
    if np.any(indices < 1) or np.any(indices > v) or len(set(indices.tolist())) != count:
        raise ContractViolation(f"{what.capitalize()} to keep must be distinct values in 1..{v}")
    return np.sort(indices) - 1


def toeplitz_lengths(first_row: Sequence[float], m_rx: int, n_tx: int,
                     keep_rows: Optional[Sequence[int]] = None,
                     keep_cols: Optional[Sequence[int]] = None,
                     zero_rows: Optional[Sequence[int]] = None) -> LengthMatrix:
    """Symmetric V x V Toeplitz matrix of ``first_row`` reduced to M x N.

    Trailing rows (M < V) or columns (N < V) are dropped unless
    ``keep_rows``/``keep_cols`` name the 1-based ones to retain. Rows listed in
    ``zero_rows`` (1-based, after reduction) are receivers without dielectric.
    """
    row = np.asarray(first_row, dtype=float)
    v = max(m_rx, n_tx)
    if row.ndim != 1 or row.size != v:
        raise ContractViolation(f"First row must have V=max(M,N)={v} entries, got {row.size}")
    if np.any(row < 0):
        raise InvalidMediumError("Toeplitz lengths must be >= 0")
    full = toeplitz(row)
    rows = _kept(keep_rows, m_rx, v, "rows")
    cols = _kept(keep_cols, n_tx, v, "columns")
    entries = np.array(full[np.ix_(rows, cols)])
    if zero_rows:
        bare = np.asarray(zero_rows, dtype=int)
        if np.any(bare < 1) or np.any(bare > m_rx):
            raise ContractViolation(f"Rows without dielectric must lie in 1..{m_rx}, got {list(zero_rows)}")
        entries[bare - 1, :] = 0.0
    return LengthMatrix(entries)


def toeplitz_length_stack(first_rows: np.ndarray, m_rx: int, n_tx: int) -> np.ndarray:
    """Stack of K reduced Toeplitz length matrices from K first rows, shape (K, M, N)."""
    first_rows = np.atleast_2d(np.asarray(first_rows, dtype=float))
    distance = np.abs(np.arange(m_rx)[:, None] - np.arange(n_tx)[None, :])
    return first_rows[:, distance]


class ToeplitzMedium(BaseMedium):
    """Medium described directly by the Toeplitz first row."""

    kind = "toeplitz"

    def __init__(self, first_row: Sequence[float], sqrt_eps_r: float = 1.0,
                 keep_rows: Optional[Sequence[int]] = None,
                 keep_cols: Optional[Sequence[int]] = None,
                 zero_rows: Optional[Sequence[int]] = None):
        super().__init__(sqrt_eps_r)
        self.first_row = tuple(float(x) for x in first_row)
        if any(x < 0 for x in self.first_row):
            raise InvalidMediumError("Toeplitz lengths must be >= 0")
        self.keep_rows = keep_rows
        self.keep_cols = keep_cols
        self.zero_rows = zero_rows

    def length_matrix(self, cfg: ArrayConfig, paths: PathMatrix) -> LengthMatrix:
        return toeplitz_lengths(self.first_row, cfg.m_rx, cfg.n_tx, self.keep_rows, self.keep_cols,
                                self.zero_rows)

    def parameters(self) -> Dict[str, Any]:
        return {'first_row': ";".join(repr(x) for x in self.first_row)}
