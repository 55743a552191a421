"""Finite sets, finite categories and presheaves: the computational substrate."""

from .categories import FinCategory, FinFunctor
from .presheaf import FinPresheaf, PCone, PresheafCat, PresheafMap, presheaf_colimit_pointwise
from .sets import (
    Cone,
    FinMap,
    FinSet,
    UnionFind,
    coequalizer,
    coproduct,
    equalizer,
    finite_limit,
    product,
    pullback,
    quotient,
    terminal,
)


def check_functor_laws(f):
    """Law report for a ``FinFunctor`` or a ``FinPresheaf``."""
    return f.check_laws()


__all__ = [
    "Cone", "FinCategory", "FinFunctor", "FinMap", "FinPresheaf", "FinSet", "PCone",
    "PresheafCat", "PresheafMap", "UnionFind", "check_functor_laws", "coequalizer",
    "coproduct", "equalizer", "finite_limit", "presheaf_colimit_pointwise", "product",
    "pullback", "quotient", "terminal",
]
