"""
Scenario Parser
Reads `[geometry]` / `[medium]` / `[experiment]` scenario files into validated ScenarioConfig objects.
"""
import logging
import math
from dataclasses import dataclass, field, fields
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from src.config import PhysicalDefaultsConfig
from src.errors import ConfigError, ContractViolation, InvalidMediumError
from src.geometry.array_config import ArrayConfig, spacing_from_factor
from src.geometry.path_lengths import PathModel
from src.media.base_medium import BaseMedium, FreeSpace
from src.media.rectangular import RectangularMedium
from src.media.shape_function import ShapeFunctionMedium, ShapeKind
from src.media.toeplitz import ToeplitzMedium

logger = logging.getLogger(__name__)

COMMANDS = ('point', 'sweep_l12', 'sweep_l12_l13', 'shape_sweep', 'optimize_l_delta', 'optimize_first_row')
MEDIUM_KINDS = ('none', 'rectangular', 'toeplitz', 'shape')
LAMBDA_UNIT = 'lambda0'


@dataclass(frozen=True)
class _Raw:
    value: str
    line: int


# ---------------------------------------------------------------------------
# value converters: (raw, key, lambda0) -> value
# ---------------------------------------------------------------------------

def _number(text: str, key: str, line: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ConfigError(f"'{text}' is not a number", key, line)
    if not math.isfinite(value):
        raise ConfigError(f"'{text}' is not finite", key, line)
    return value


def _to_int(raw: _Raw, key: str, lambda0: float) -> int:
    try:
        return int(raw.value)
    except ValueError:
        raise ConfigError(f"'{raw.value}' is not an integer", key, raw.line)


def _to_float(raw: _Raw, key: str, lambda0: float) -> float:
    return _number(raw.value, key, raw.line)


def _scale(unit: str, key: str, line: int, lambda0: float) -> float:
    if unit in ('', 'm'):
        return 1.0
    if unit == LAMBDA_UNIT:
        return lambda0
    raise ConfigError(f"unknown length unit '{unit}' (expected meters or '{LAMBDA_UNIT}')", key, line)


def _split_unit(text: str) -> Tuple[str, str]:
    parts = text.rsplit(None, 1)
    if len(parts) == 2 and not _looks_numeric(parts[1]):
        return parts[0], parts[1]
    return text, ''


def _looks_numeric(text: str) -> bool:
    try:
        float(text)
        return True
    except ValueError:
        return False


def _to_length(raw: _Raw, key: str, lambda0: float) -> float:
    number, unit = _split_unit(raw.value)
    return _number(number, key, raw.line) * _scale(unit, key, raw.line, lambda0)


def _to_angle(raw: _Raw, key: str, lambda0: float) -> float:
    number, unit = _split_unit(raw.value)
    value = _number(number, key, raw.line)
    if unit in ('', 'rad'):
        return value
    if unit == 'deg':
        return math.radians(value)
    raise ConfigError(f"unknown angle unit '{unit}' (expected 'rad' or 'deg')", key, raw.line)


def _to_length_list(raw: _Raw, key: str, lambda0: float) -> Tuple[float, ...]:
    body, unit = _split_unit(raw.value)
    scale = _scale(unit, key, raw.line, lambda0)
    return tuple(_number(item.strip(), key, raw.line) * scale for item in body.split(',') if item.strip())


def _to_float_list(raw: _Raw, key: str, lambda0: float) -> Tuple[float, ...]:
    return tuple(_number(item.strip(), key, raw.line) for item in raw.value.split(',') if item.strip())


def _to_int_list(raw: _Raw, key: str, lambda0: float) -> Tuple[int, ...]:
    return tuple(_to_int(_Raw(item.strip(), raw.line), key, lambda0) for item in raw.value.split(',') if item.strip())


def _to_str_list(raw: _Raw, key: str, lambda0: float) -> Tuple[str, ...]:
    return tuple(item.strip().lower() for item in raw.value.split(',') if item.strip())


def _to_str(raw: _Raw, key: str, lambda0: float) -> str:
    return raw.value


def _to_bool(raw: _Raw, key: str, lambda0: float) -> bool:
    value = raw.value.lower()
    if value in ('true', 'yes', '1', 'on'):
        return True
    if value in ('false', 'no', '0', 'off'):
        return False
    raise ConfigError(f"'{raw.value}' is not a boolean", key, raw.line)


Converter = Callable[[_Raw, str, float], object]

SCHEMA: Dict[str, Dict[str, Converter]] = {
    'geometry': {
        'n_tx': _to_int, 'm_rx': _to_int, 'eta': _to_float, 'd_t': _to_length, 'd_r': _to_length,
        'theta_t': _to_angle, 'theta_r': _to_angle, 'range_R': _to_length, 'lambda0': _to_length,
        'path_model': _to_str,
    },
    'medium': {
        'kind': _to_str, 'sqrt_eps_r': _to_float, 'thickness': _to_length, 'first_row': _to_length_list,
        'shape': _to_str, 'l_delta': _to_length, 'keep_rows': _to_int_list, 'keep_cols': _to_int_list,
        'zero_rows': _to_int_list,
    },
    'experiment': {
        'command': _to_str, 'sqrt_eps_r_values': _to_float_list, 'eta_values': _to_float_list,
        'kinds': _to_str_list, 'n_min': _to_int, 'n_max': _to_int, 'l11': _to_length,
        'l12_min': _to_length, 'l12_max': _to_length, 'l13_min': _to_length, 'l13_max': _to_length,
        'steps': _to_int, 'span_bound': _to_float, 'grid_points': _to_int, 'output': _to_str, 'wide': _to_bool,
    },
}


# ---------------------------------------------------------------------------
# scenario blocks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeometryBlock:
    n_tx: int
    m_rx: int
    eta: Optional[float] = None
    d_t: Optional[float] = None
    d_r: Optional[float] = None
    theta_t: float = 0.0
    theta_r: float = 0.0
    range_R: float = PhysicalDefaultsConfig.range_R
    lambda0: float = PhysicalDefaultsConfig.lambda0
    path_model: str = PathModel.APPROXIMATE.value

    def array_config(self) -> ArrayConfig:
        """Resolve eta or the explicit spacings into an ArrayConfig."""
        d_t = self.d_t if self.d_t is not None else 1.0
        d_r = self.d_r if self.d_r is not None else 1.0
        cfg = ArrayConfig(n_tx=self.n_tx, m_rx=self.m_rx, d_t=d_t, d_r=d_r, theta_t=self.theta_t,
                          theta_r=self.theta_r, range_R=self.range_R, lambda0=self.lambda0)
        if self.eta is not None:
            cfg = spacing_from_factor(cfg, self.eta)
        return cfg


@dataclass(frozen=True)
class MediumBlock:
    kind: str = 'none'
    sqrt_eps_r: float = 1.0
    thickness: Optional[float] = None
    first_row: Optional[Tuple[float, ...]] = None
    shape: Optional[str] = None
    l_delta: Optional[float] = None
    keep_rows: Optional[Tuple[int, ...]] = None
    keep_cols: Optional[Tuple[int, ...]] = None
    zero_rows: Optional[Tuple[int, ...]] = None

    def build(self, lambda0: float) -> BaseMedium:
        if self.kind == 'none':
            return FreeSpace()
        if self.kind == 'rectangular':
            return RectangularMedium(self.thickness, self.sqrt_eps_r)
        if self.kind == 'toeplitz':
            return ToeplitzMedium(self.first_row, self.sqrt_eps_r, self.keep_rows, self.keep_cols, self.zero_rows)
        return ShapeFunctionMedium(self.shape, self.l_delta, lambda0, self.sqrt_eps_r)


@dataclass(frozen=True)
class ExperimentBlock:
    command: str = 'point'
    sqrt_eps_r_values: Optional[Tuple[float, ...]] = None
    eta_values: Optional[Tuple[float, ...]] = None
    kinds: Optional[Tuple[str, ...]] = None
    n_min: Optional[int] = None
    n_max: Optional[int] = None
    l11: Optional[float] = None
    l12_min: Optional[float] = None
    l12_max: Optional[float] = None
    l13_min: Optional[float] = None
    l13_max: Optional[float] = None
    steps: Optional[int] = None
    span_bound: Optional[float] = None
    grid_points: Optional[int] = None
    output: Optional[str] = None
    wide: bool = False


@dataclass(frozen=True)
class ScenarioConfig:
    geometry: GeometryBlock
    medium: MediumBlock = field(default_factory=MediumBlock)
    experiment: ExperimentBlock = field(default_factory=ExperimentBlock)

    @property
    def path_model(self) -> PathModel:
        return PathModel.parse(self.geometry.path_model)

    def array_config(self) -> ArrayConfig:
        return self.geometry.array_config()

    def medium_model(self) -> BaseMedium:
        return self.medium.build(self.geometry.lambda0)

    def items(self) -> List[Tuple[str, str]]:
        """(section.key, value) pairs of every set field, values in config-file syntax."""
        pairs = []
        for section in ('geometry', 'medium', 'experiment'):
            block = getattr(self, section)
            for f in fields(block):
                value = getattr(block, f.name)
                if value is None:
                    continue
                pairs.append((f"{section}.{f.name}", _format_value(value)))
        return pairs


def _format_value(value) -> str:
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, tuple):
        return ', '.join(_format_value(v) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def _read_sections(text: str) -> Dict[str, Dict[str, _Raw]]:
    raw = {section: {} for section in SCHEMA}
    section = None
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.split('#', 1)[0].strip()
        if not stripped:
            continue
        if stripped.startswith('['):
            if not stripped.endswith(']'):
                raise ConfigError(f"malformed section header '{stripped}'", line=number)
            section = stripped[1:-1].strip().lower()
            if section not in SCHEMA:
                raise ConfigError(f"unknown section '[{section}]' (expected geometry, medium or experiment)",
                                  line=number)
            continue
        if '=' not in stripped:
            raise ConfigError(f"expected 'key = value', got '{stripped}'", line=number)
        if section is None:
            raise ConfigError("key outside of any [section]", line=number)
        key, value = (part.strip() for part in stripped.split('=', 1))
        _store(raw, section, key, value, number)
    return raw


def _store(raw: Dict[str, Dict[str, _Raw]], section: str, key: str, value: str, line: int, replace: bool = False):
    if key not in SCHEMA[section]:
        raise ConfigError(f"unknown key in [{section}]", key, line)
    if not value:
        raise ConfigError("missing value", key, line)
    if key in raw[section] and not replace:
        raise ConfigError(f"duplicate key (first set on line {raw[section][key].line})", key, line)
    raw[section][key] = _Raw(value, line)


def _apply_overrides(raw: Dict[str, Dict[str, _Raw]], overrides: Sequence[str]):
    for override in overrides:
        if '=' not in override:
            raise ConfigError(f"override '{override}' must look like section.key=value", line=0)
        target, value = (part.strip() for part in override.split('=', 1))
        if '.' not in target:
            raise ConfigError(f"override '{override}' must name section.key", line=0)
        section, key = target.split('.', 1)
        if section not in SCHEMA:
            raise ConfigError(f"unknown section '{section}'", key, line=0)
        _store(raw, section, key, value, 0, replace=True)


def _convert(raw: Dict[str, Dict[str, _Raw]], section: str, lambda0: float) -> Dict[str, object]:
    return {key: SCHEMA[section][key](entry, key, lambda0) for key, entry in raw[section].items()}


def _line(raw: Dict[str, Dict[str, _Raw]], section: str, key: str) -> Optional[int]:
    entry = raw[section].get(key)
    return entry.line if entry else None


def _build_geometry(raw, values: Dict[str, object]) -> GeometryBlock:
    if 'n_tx' not in values:
        raise ConfigError("required key missing in [geometry]", 'n_tx')
    values.setdefault('m_rx', values['n_tx'])

    has_eta = 'eta' in values
    has_spacing = 'd_t' in values or 'd_r' in values
    if has_eta and has_spacing:
        spacing_key = 'd_t' if 'd_t' in values else 'd_r'
        raise ConfigError(f"give either 'eta' or explicit spacings, not both ('eta' and '{spacing_key}' set)",
                          f"eta/{spacing_key}", _line(raw, 'geometry', spacing_key))
    if not has_eta and not has_spacing:
        raise ConfigError("one of 'eta' or 'd_t'/'d_r' is required in [geometry]", 'eta')
    if has_spacing and not ('d_t' in values and 'd_r' in values):
        missing = 'd_r' if 'd_t' in values else 'd_t'
        raise ConfigError("explicit spacing needs both d_t and d_r", missing)
    if has_eta and not values['eta'] > 0:
        raise ConfigError(f"spacing factor must be > 0, got {values['eta']}", 'eta', _line(raw, 'geometry', 'eta'))

    if 'path_model' in values:
        try:
            values['path_model'] = PathModel.parse(values['path_model']).value
        except ContractViolation as e:
            raise ConfigError(str(e), 'path_model', _line(raw, 'geometry', 'path_model'))

    geometry = GeometryBlock(**values)
    try:
        geometry.array_config()
    except ContractViolation as e:
        raise ConfigError(str(e), 'geometry')
    return geometry


def _build_medium(raw, values: Dict[str, object], lambda0: float) -> MediumBlock:
    kind = str(values.get('kind', 'none')).lower()
    if kind not in MEDIUM_KINDS:
        raise ConfigError(f"unknown medium kind '{kind}' (expected one of {', '.join(MEDIUM_KINDS)})",
                          'kind', _line(raw, 'medium', 'kind'))
    values['kind'] = kind
    required = {'rectangular': ('thickness',), 'toeplitz': ('first_row',), 'shape': ('shape', 'l_delta')}
    for key in required.get(kind, ()):
        if key not in values:
            raise ConfigError(f"medium kind '{kind}' requires '{key}'", key)
    if 'shape' in values:
        try:
            values['shape'] = ShapeKind.parse(values['shape']).value
        except ContractViolation as e:
            raise ConfigError(str(e), 'shape', _line(raw, 'medium', 'shape'))

    medium = MediumBlock(**values)
    try:
        medium.build(lambda0)
    except (InvalidMediumError, ContractViolation) as e:
        raise ConfigError(str(e), 'medium')
    return medium


def _build_experiment(raw, values: Dict[str, object]) -> ExperimentBlock:
    command = str(values.get('command', 'point')).lower()
    if command not in COMMANDS:
        raise ConfigError(f"unknown command '{command}' (expected one of {', '.join(COMMANDS)})",
                          'command', _line(raw, 'experiment', 'command'))
    values['command'] = command
    for key in ('steps', 'grid_points', 'n_min', 'n_max'):
        if key in values and values[key] < 1:
            raise ConfigError(f"must be >= 1, got {values[key]}", key, _line(raw, 'experiment', key))
    if 'span_bound' in values and not values['span_bound'] > 0:
        raise ConfigError(f"must be > 0, got {values['span_bound']}", 'span_bound',
                          _line(raw, 'experiment', 'span_bound'))
    for key in ('eta_values', 'sqrt_eps_r_values', 'kinds'):
        if key in values and not values[key]:
            raise ConfigError("list must not be empty", key, _line(raw, 'experiment', key))
    return ExperimentBlock(**values)


def parse_config(text: str, overrides: Optional[Sequence[str]] = None) -> ScenarioConfig:
    """
    Parse and validate a scenario file.

    Lengths accept `<float>` (meters) or `<float> lambda0`; a trailing unit on a
    comma list applies to every entry. ``overrides`` are `section.key=value`
    strings applied after the file is read. Errors name the key and line.
    """
    raw = _read_sections(text)
    _apply_overrides(raw, overrides or [])

    lambda0 = PhysicalDefaultsConfig.lambda0
    if 'lambda0' in raw['geometry']:
        entry = raw['geometry']['lambda0']
        number, unit = _split_unit(entry.value)
        if unit not in ('', 'm'):
            raise ConfigError("lambda0 must be given in meters", 'lambda0', entry.line)
        lambda0 = _number(number, 'lambda0', entry.line)

    geometry = _build_geometry(raw, _convert(raw, 'geometry', lambda0))
    medium = _build_medium(raw, _convert(raw, 'medium', lambda0), geometry.lambda0)
    experiment = _build_experiment(raw, _convert(raw, 'experiment', lambda0))
    scenario = ScenarioConfig(geometry, medium, experiment)
    logger.debug(f"Parsed scenario: command={experiment.command}, medium={medium.kind}")
    return scenario


def serialize_config(scenario: ScenarioConfig) -> str:
    """Config-file text that parses back to ``scenario``; lengths are written in meters."""
    lines = []
    for section in ('geometry', 'medium', 'experiment'):
        lines.append(f"[{section}]")
        for name, value in scenario.items():
            prefix, key = name.split('.', 1)
            if prefix == section:
                lines.append(f"{key} = {value}")
        lines.append("")
    return "\n".join(lines)
