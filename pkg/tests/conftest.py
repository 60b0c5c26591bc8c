"""Shared cached constructions: building an algebra once per session keeps the
full suite inside its time budget."""

from fractions import Fraction
from functools import lru_cache

from qplane.abelian import AbelianGroup
from qplane.lifting import LiftingDatum, build, class_decomposition


@lru_cache(maxsize=None)
def built(name: str):
    """H(D) for a named acceptance datum, built once."""
    return build(make_datum(name))


@lru_cache(maxsize=None)
def classes(name: str):
    return class_decomposition(built(name))


@lru_cache(maxsize=None)
def verified(name: str, level: str = "full"):
    """A fully-run Verifier for the named datum, shared across tests."""
    from qplane.verify import Verifier

    v = Verifier(make_datum(name), level, H=built(name), subs=classes(name))
    v.run()
    return v


@lru_cache(maxsize=None)
def make_datum(name: str) -> LiftingDatum:
    if name == "A":
        G = AbelianGroup([3])
        g = G.element([1])
        return LiftingDatum(G, g, g, 0, 0, G.character([1]), G.character([2]), 1)
    if name == "B":
        G = AbelianGroup([4])
        g = G.element([1])
        chi = G.character([2])
        return LiftingDatum(G, g, g, 1, 1, chi, chi, 0)
    if name == "C":
        G = AbelianGroup([4])
        g = G.element([1])
        chi = G.character([2])
        return LiftingDatum(G, g, g, 1, 0, chi, chi, 0)
    if name == "D":
        G = AbelianGroup([8])
        g = G.element([1])
        return LiftingDatum(G, g, g, 0, 1, G.character([2]), G.character([6]), 1)
    if name == "census":
        G = AbelianGroup([9])
        a = G.element([3])
        return LiftingDatum(G, a, a, 0, 0, G.character([1]), G.character([8]), 1)
    if name == "uni-linked-split":
        G = AbelianGroup([4])
        g = G.element([1])
        chi = G.character([2])
        return LiftingDatum(G, g, g, 1, 1, chi, chi, Fraction(6, 5))
    if name == "uni-linked-double":
        G = AbelianGroup([4])
        g = G.element([1])
        chi = G.character([2])
        return LiftingDatum(G, g, g, 1, 1, chi, chi, 2)
    if name == "uni-linked-nonsplit":
        G = AbelianGroup([8])
        g = G.element([1])
        return LiftingDatum(G, g, g, 1, 1, G.character([2]), G.character([6]), 1)
    raise KeyError(name)
