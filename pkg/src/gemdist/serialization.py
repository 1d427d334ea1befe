"""
JSON form of a model specification.

Two shapes are accepted::

    {"variant": "III", "m": {"p": 2, "q": 1}, "n": 2, "beta": 0.5, "a": 5, "b": 10}
    {"named": "gamma", "params": {"p": 3, "lambda": 2}}

Exponents may be a number, a ``{"p", "q"}`` object or a ``"p/q"`` string.  An
optional ``"transform"`` object (or list of them) turns the spec into a
:class:`~gemdist.transforms.TransformedDistribution`.  Unknown fields are
rejected.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .catalog import NamedDistribution, to_gem
from .errors import DomainError
from .model import GemModel

__all__ = ["model_to_dict", "model_from_dict", "parse_spec", "load_spec"]

_MODEL_FIELDS = {"variant", "m", "n", "beta", "a", "b", "abs_form", "transform"}
_NAMED_FIELDS = {"named", "params", "transform"}


def _exponent_to_json(v):
    if isinstance(v, Fraction):
        return {"p": v.numerator, "q": v.denominator}
    if isinstance(v, int) and not isinstance(v, bool):
        return {"p": v, "q": 1}
    return float(v)


def _exponent_from_json(v, name):
    if isinstance(v, dict):
        extra = set(v) - {"p", "q"}
        if extra or "p" not in v:
            raise DomainError(f"exponent {name}: expected {{p, q}}, got {v!r}")
        p, q = v["p"], v.get("q", 1)
        if not all(isinstance(t, int) and not isinstance(t, bool) for t in (p, q)):
            raise DomainError(f"exponent {name}: p and q must be integers")
        if q <= 0:
            raise DomainError(f"exponent {name}: q must be positive")
        return Fraction(p, q)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except ValueError:
            raise DomainError(f"exponent {name}: cannot parse {v!r}") from None
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise DomainError(f"exponent {name}: expected a number, got {v!r}")
    return v


def model_to_dict(model: GemModel) -> dict:
    out = {
        "variant": model.variant,
        "m": _exponent_to_json(model.m),
        "n": _exponent_to_json(model.n),
        "beta": float(model.beta),
    }
    if model.variant in ("III", "IV"):
        out["a"] = float(model.a)
        out["b"] = float(model.b)
    if model.abs_form:
        out["abs_form"] = True
    return out


def model_from_dict(obj: dict) -> GemModel:
    extra = set(obj) - (_MODEL_FIELDS - {"transform"})
    if extra:
        raise DomainError(f"unknown model field(s): {sorted(extra)}")
    for key in ("variant", "m", "n", "beta"):
        if key not in obj:
            raise DomainError(f"model spec is missing {key!r}")
    kw = dict(
        variant=str(obj["variant"]),
        m=_exponent_from_json(obj["m"], "m"),
        n=_exponent_from_json(obj["n"], "n"),
        beta=float(obj["beta"]),
    )
    for key in ("a", "b"):
        if key in obj:
            kw[key] = float(obj[key])
    if "abs_form" in obj:
        kw["abs_form"] = bool(obj["abs_form"])
    return GemModel(**kw)


def parse_spec(obj):
    """Build a model, or a transformed distribution when a ``transform`` is present."""
    if not isinstance(obj, dict):
        raise DomainError("model spec must be a JSON object")
    if "named" in obj:
        extra = set(obj) - _NAMED_FIELDS
        if extra:
            raise DomainError(f"unknown field(s) in named spec: {sorted(extra)}")
        params = obj.get("params", {})
        if not isinstance(params, dict):
            raise DomainError("params must be an object")
        base = to_gem(NamedDistribution(str(obj["named"]), params))
    else:
        extra = set(obj) - _MODEL_FIELDS
        if extra:
            raise DomainError(f"unknown model field(s): {sorted(extra)}")
        base = model_from_dict({k: v for k, v in obj.items() if k != "transform"})
    if "transform" not in obj:
        return base
    from .transforms import TransformedDistribution, spec_from_dict

    tr = obj["transform"]
    specs = [spec_from_dict(t) for t in (tr if isinstance(tr, list) else [tr])]
    return TransformedDistribution(base, tuple(specs))


def load_spec(text: str):
    """Parse JSON text into a model or transformed distribution."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"invalid JSON model spec: {exc}") from None
    return parse_spec(obj)
