"""Configuration ingestion for the verification suites.

Config files are JSON with keys {curve, functions, mode, bounds, seed}; see
the README for the full schema.  Validation is strict: every referenced point
must satisfy the curve equation and every function divisor must pass Abel's
criterion, with errors naming the offending entry.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .curves import CurveError, CurvePoint, EllipticCurve
from .cycles import UserFunction
from .divisors import DivisorError, FormalDivisor, is_principal
from .fields import FieldError, field_from_tag


class ConfigError(ValueError):
    """Invalid input; the CLI maps this to exit code 2."""


@dataclass
class Bounds:
    n_max: int = 2
    r_max: int = 2
    random_trials: int = 20

    @staticmethod
    def from_dict(data: dict) -> "Bounds":
        return Bounds(
            n_max=int(data.get("n_max", 2)),
            r_max=int(data.get("r_max", 2)),
            random_trials=int(data.get("random_trials", 20)),
        )


@dataclass
class Config:
    curve: EllipticCurve
    functions: list  # list of UserFunction
    mode: str = "fbar"
    bounds: Bounds = field(default_factory=Bounds)
    seed: int = 0
    raw: dict = field(default_factory=dict)


def parse_point(curve: EllipticCurve, payload) -> CurvePoint:
    if payload == "inf":
        return CurvePoint.at_infinity(curve)
    if not isinstance(payload, (list, tuple)) or len(payload) != 2:
        raise ConfigError(f"point payload {payload!r} must be [x, y] or \"inf\"")
    try:
        return CurvePoint.affine(curve, Fraction(str(payload[0])), Fraction(str(payload[1])))
    except (CurveError, ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"point {payload!r} rejected: {exc}") from exc


def config_from_dict(data: dict) -> Config:
    try:
        cdata = data["curve"]
        fld = field_from_tag(cdata.get("field", "rational"))
        curve = EllipticCurve.from_coeffs(
            fld,
            Fraction(str(cdata.get("a1", 0))),
            Fraction(str(cdata.get("a2", 0))),
            Fraction(str(cdata.get("a3", 0))),
            Fraction(str(cdata.get("a4", 0))),
            Fraction(str(cdata.get("a6", 0))),
        )
    except (KeyError, FieldError, CurveError, ValueError) as exc:
        raise ConfigError(f"bad curve spec: {exc}") from exc

    functions = []
    for fdata in data.get("functions", []):
        name = fdata.get("name")
        if not name:
            raise ConfigError("every function needs a name")
        items = []
        for term in fdata.get("divisor", []):
            pt = parse_point(curve, term["point"])
            items.append((pt, Fraction(str(term["coeff"]))))
        div = FormalDivisor.of(curve, items)
        try:
            if not is_principal(div):
                raise ConfigError(
                    f"divisor of {name} fails Abel's criterion "
                    "(degree zero and group-law sum equal to the identity)"
                )
        except DivisorError as exc:
            raise ConfigError(f"divisor of {name}: {exc}") from exc
        functions.append(UserFunction(name, div))

    mode = data.get("mode", "fbar")
    if mode not in ("fbar", "fn"):
        raise ConfigError(f"mode must be fbar or fn, not {mode!r}")
    bounds = Bounds.from_dict(data.get("bounds", {}))
    seed = int(data.get("seed", 0))
    return Config(curve, functions, mode, bounds, seed, raw=data)


def load_config(path: str) -> Config:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return config_from_dict(data)


def default_config() -> Config:
    """The rank-1 rational fixture with two admissible functions."""
    from .fixtures import standard_functions

    curve, gs = standard_functions(2)
    raw = {
        "curve": {"a1": "0", "a2": "0", "a3": "1", "a4": "-1", "a6": "0", "field": "rational"},
        "functions": [
            {"name": g.name, "divisor": g.divisor.serialize()} for g in gs
        ],
        "mode": "fbar",
        "bounds": {"n_max": 2, "r_max": 2, "random_trials": 20},
        "seed": 0,
    }
    return Config(curve, list(gs), "fbar", Bounds(), 0, raw=raw)
