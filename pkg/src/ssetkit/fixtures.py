"""Instance corpora for the verification suite.

The poset corpus holds one representative per isomorphism class of posets
with at most three elements; the functor corpus is every monotone map
between corpus members.  Collage fixtures supply inner fibrations with
known cocartesian edges.
"""

from __future__ import annotations

from functools import lru_cache

from .cats import (
    CatFunctor, FiniteCategory, chain_category, collage, discrete_category,
    poset_category, poset_functors, set_valued_collage,
)


@lru_cache(maxsize=None)
def poset_corpus() -> tuple[FiniteCategory, ...]:
    """Isomorphism-class representatives of posets with <= 3 objects."""
    return (
        poset_category(["a"], []),
        poset_category(["a", "b"], []),
        chain_category(1),
        poset_category(["a", "b", "c"], []),
        chain_category(2),
        poset_category(["a", "b", "c"], [(0, 1), (0, 2)]),   # one bottom
        poset_category(["a", "b", "c"], [(0, 2), (1, 2)]),   # one top
        poset_category(["a", "b", "c"], [(0, 1)]),           # chain + point
    )


@lru_cache(maxsize=None)
def functor_corpus() -> tuple[CatFunctor, ...]:
    """All functors between poset-corpus members."""
    out = []
    for P in poset_corpus():
        for Q in poset_corpus():
            out.extend(poset_functors(P, Q))
    return tuple(out)


@lru_cache(maxsize=None)
def collage_fixtures() -> tuple[tuple[str, CatFunctor], ...]:
    """Named collage projections (<= 4 objects) onto the walking arrow."""
    out = []
    c0 = discrete_category(["a"])
    c1 = chain_category(1)
    F = CatFunctor(c0, c1, (0,), (c1.identities[0],))
    out.append(("point_to_arrow", collage(F)[1]))
    out.append(("two_points_merge", set_valued_collage(2, 1, (0, 0))[1]))
    out.append(("point_to_two", set_valued_collage(1, 2, (0,))[1]))
    out.append(("two_points_parallel", set_valued_collage(2, 2, (0, 1))[1]))
    two = discrete_category(["p", "q"])
    G = CatFunctor(two, c1, (0, 1),
                   (c1.identities[0], c1.identities[1]))
    out.append(("discrete_to_arrow", collage(G)[1]))
    return tuple(out)
