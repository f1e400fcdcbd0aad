"""Run-wide numeric settings.

Everything that compares complex numbers goes through one of the two knobs
here: ``eps`` bounds entrywise error in dense checks, and the same value is
used as the rounding grid for structural weight equality (see
:func:`zhdd.sqmdd.weight_key`).  ``max_qubits`` caps any computation that
materializes a dense vector or matrix.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Settings:
    eps: float = 1e-9
    max_qubits: int = 16


DEFAULT = Settings()
