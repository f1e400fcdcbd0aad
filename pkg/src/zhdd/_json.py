"""Small shared helpers for the JSON wire format.

Complex numbers are always serialized as two-element ``[re, im]`` arrays;
vectors and matrices as (nested) JSON arrays of those pairs.
"""
from __future__ import annotations

import math
from typing import Any


def complex_to_json(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def complex_from_json(v: Any, what: str = "complex value") -> complex:
    if (
        not isinstance(v, (list, tuple))
        or len(v) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in v)
    ):
        raise ValueError(f"{what} must be a [re, im] pair, got {v!r}")
    re, im = float(v[0]), float(v[1])
    if not (math.isfinite(re) and math.isfinite(im)):
        raise ValueError(f"{what} must be finite, got {v!r}")
    return complex(re, im)
