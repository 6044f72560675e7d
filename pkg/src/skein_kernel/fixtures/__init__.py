"""Shipped surface graphs and omega choices."""

import json
from fractions import Fraction
from importlib import resources
from pathlib import Path

from ..skein_rep import FixtureError, OmegaError, check_omega, preset_from_json


def _read(name):
    return json.loads(resources.files(__name__).joinpath(name).read_text())


def load_json(path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise FixtureError(f"cannot read {path}: {exc.strerror}") from None
    except ValueError as exc:
        raise FixtureError(f"{path} is not valid JSON: {exc}") from None


def parse_value(v):
    """'p/q' or a number -> Fraction; [re, im] -> complex."""
    if isinstance(v, (list, tuple)):
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, float):
        return Fraction(v).limit_denominator(10 ** 9)
    try:
        return Fraction(v)
    except (TypeError, ValueError):
        raise OmegaError(f"cannot read omega value {v!r}") from None


def omega_from_json(p, doc):
    raw = doc.get("omega", doc) if isinstance(doc, dict) else doc
    if isinstance(raw, dict):
        vals = {e: parse_value(v) for e, v in raw.items()}
    else:
        vals = [parse_value(v) for v in raw]
    return check_omega(p, vals)


def shipped_preset(genus):
    return preset_from_json(_read(f"genus{genus}.json"))


def shipped_omega(genus):
    p = shipped_preset(genus)
    return omega_from_json(p, _read(f"omega_g{genus}.json"))
