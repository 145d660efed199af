"""Flat key-value configuration files.

One `key = value` pair per line, `#` starts a comment, no nesting.  Known keys:

    quad.abs_tol, quad.rel_tol, quad.max_periods, quad.accel_order,
    quad.trunc_decades     -> quadrature engine parameters
    seed                   -> RNG seed for sampled checks (default 42)
    tol.<check family>     -> per-suite tolerance overrides, see DEFAULT_TOLERANCES
"""
from __future__ import annotations

from .spectral import QuadratureSpec

__all__ = ["ConfigError", "load_config", "quadrature_spec_from_config", "DEFAULT_TOLERANCES"]

DEFAULT_TOLERANCES = {
    "tol.fresnel": 1e-12,
    "tol.modes.matching": 1e-10,
    "tol.modes.divergence": 1e-6,
    "tol.kernels.residue": 1e-6,
    "tol.kernels.te": 1e-8,
    "tol.kernels.assembly": 1e-4,
    "tol.kernels.poisson": 1e-12,
    "tol.kernels.curl": 1e-6,
    "tol.kernels.slope": 0.2,
    "tol.energy": 1e-4,
}


class ConfigError(ValueError):
    pass


def load_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if not key or not value:
                raise ConfigError(f"{path}:{lineno}: empty key or value")
            values[key] = value
    return values


def _get(cfg: dict[str, str], key: str, cast, default):
    if key not in cfg:
        return default
    try:
        return cast(cfg[key])
    except ValueError as exc:
        raise ConfigError(f"config key {key}: {exc}") from exc


def quadrature_spec_from_config(cfg: dict[str, str]) -> QuadratureSpec:
    base = QuadratureSpec()
    return QuadratureSpec(
        abs_tol=_get(cfg, "quad.abs_tol", float, base.abs_tol),
        rel_tol=_get(cfg, "quad.rel_tol", float, base.rel_tol),
        max_oscillation_periods=_get(cfg, "quad.max_periods", int, base.max_oscillation_periods),
        acceleration_order=_get(cfg, "quad.accel_order", int, base.acceleration_order),
        damped_truncation_decades=_get(cfg, "quad.trunc_decades", float, base.damped_truncation_decades),
    )
