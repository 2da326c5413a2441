"""JSON result records with precision-annotated numbers."""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from fractions import Fraction

import mpmath

SCHEMA_VERSION = "1.0"


def encode_number(x, digits: int | None = None, tol=None) -> dict:
    """Exact rationals as "p/q"; reals as decimal strings with their digit count.

    Binary floats are never written raw: they go through repr and carry the
    tolerance the producer vouches for.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, (int, Fraction)):
        return {"exact": str(Fraction(x)), "tol": "0"}
    if isinstance(x, mpmath.mpf):
        d = digits or mpmath.mp.dps
        out = {"value": mpmath.nstr(x, d, strip_zeros=False), "digits": d}
    else:
        out = {"value": repr(float(x)), "digits": 15}
    out["tol"] = _tol_str(tol) if tol is not None else f"1e-{out['digits']}"
    return out


def _tol_str(tol) -> str:
    if isinstance(tol, Fraction) and tol.numerator == 1:
        s = str(tol.denominator)
        if s == "1" + "0" * (len(s) - 1):
            return f"1e-{len(s) - 1}"
    return str(tol)


def decode_number(obj: dict):
    if "exact" in obj:
        return Fraction(obj["exact"])
    with mpmath.workdps(int(obj.get("digits", 15)) + 5):
        return mpmath.mpf(obj["value"])


def timestamps(enabled: bool = False) -> dict:
    """Creation time only when asked for or pinned by SOURCE_DATE_EPOCH."""
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch is not None:
        t = datetime.fromtimestamp(int(epoch), tz=timezone.utc)
    elif enabled:
        t = datetime.now(tz=timezone.utc)
    else:
        return {"created": None}
    return {"created": t.strftime("%Y-%m-%dT%H:%M:%SZ")}


@dataclass
class ResultRecord:
    mode: str
    problem: dict
    roots: list = field(default_factory=list)
    coefficients: list = field(default_factory=list)
    verification: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)
    timestamps: dict = field(default_factory=lambda: {"created": None})
    schema_version: str = SCHEMA_VERSION

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ResultRecord":
        data = json.loads(text)
        if "schema_version" not in data:
            raise ValueError("record has no schema_version")
        return cls(**data)
