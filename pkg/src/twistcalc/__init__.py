"""twistcalc: exact symbolic engine for Drinfel'd twists, twist star products,
braided Cartan calculi and quadric submanifold algebras."""

from .scalars import Context, Scalar, HbarSeries, TruncationMismatch, NonUnitError

__all__ = [
    "Context",
    "Scalar",
    "HbarSeries",
    "TruncationMismatch",
    "NonUnitError",
]
