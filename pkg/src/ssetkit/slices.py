"""Slice and wide-slice constructions, their comparison maps, and the two
cocartesian-edge classifiers.

A slice under p: K -> X is enumerated, never presented: its n-simplices
are the maps out of the join (or wide join) of K with the n-simplex that
restrict to p, with operators acting by precomposition.  Slices are
always truncated at an explicit bound and carry it; every fibration check
downstream is forced to stay strictly below that bound.
"""

from __future__ import annotations

from typing import Optional

from .operators import SimplicialOperator
from .core import (
    EZForm, SimplicialError, SimplicialMap, SimplicialSet, act,
    compose_maps, identity_map, is_mono, nondeg_form,
)
from .build import (
    Join, WideJoin, fiber_product, find_subset_simplex, horn,
    horn_inclusion, join_full, join_map, pair_maps, simplex_map,
    standard_simplex, wide_join_full, wide_join_map,
)
from .homs import (
    FibrationClass, LiftingProblem, MapSpace, check_fibration, extensions,
    map_space, maps_with_partial, solve_lift,
)


class _IdCache:
    """Cache keyed by object identity (plus extras); holds references so
    ids stay valid."""

    def __init__(self):
        self._data = {}

    def get(self, obj, extra):
        hit = self._data.get((id(obj), extra))
        if hit is not None and hit[0] is obj:
            return hit[1]
        return None

    def put(self, obj, extra, value):
        self._data[(id(obj), extra)] = (obj, value)
        return value


_cones = _IdCache()          # (K, n) -> Join of K with the n-simplex
_wide_cones = _IdCache()     # (K, n) -> WideJoin of K with the n-simplex
_cone_acts = _IdCache()      # (K, alpha) -> precomposition map of cones
_wide_cone_acts = _IdCache()
_incl_cones = _IdCache()     # (incl, n) -> induced map of cones
_wide_incl_cones = _IdCache()
_slice_memo = _IdCache()     # (X, key) -> MapSpace


def cone(K: SimplicialSet, n: int) -> Join:
    hit = _cones.get(K, n)
    if hit is None:
        hit = _cones.put(K, n, join_full(K, standard_simplex(n)))
    return hit


def wide_cone(K: SimplicialSet, n: int) -> WideJoin:
    hit = _wide_cones.get(K, n)
    if hit is None:
        hit = _wide_cones.put(K, n, wide_join_full(K, standard_simplex(n)))
    return hit


def _cone_act(K: SimplicialSet, alpha: SimplicialOperator) -> SimplicialMap:
    hit = _cone_acts.get(K, alpha)
    if hit is None:
        hit = _cone_acts.put(
            K, alpha,
            join_map(identity_map(K), simplex_map(alpha),
                     cone(K, alpha.source_dim), cone(K, alpha.target_dim)))
    return hit


def _wide_cone_act(K: SimplicialSet, alpha: SimplicialOperator) -> SimplicialMap:
    hit = _wide_cone_acts.get(K, alpha)
    if hit is None:
        hit = _wide_cone_acts.put(
            K, alpha,
            wide_join_map(identity_map(K), simplex_map(alpha),
                          wide_cone(K, alpha.source_dim),
                          wide_cone(K, alpha.target_dim)))
    return hit


def _slice_key(p: SimplicialMap, max_dim: int, wide: bool):
    items = tuple(sorted(p.assign.items(),
                         key=lambda kv: (kv[0].dim, kv[0].index)))
    return (id(p.source), items, max_dim, wide)


def slice_under(X: SimplicialSet, p: SimplicialMap, max_dim: int) -> MapSpace:
    """The slice under p: K -> X, truncated at max_dim: level n holds the
    maps from the join of K with the n-simplex that restrict to p."""
    return _slice(X, p, max_dim, wide=False)


def wide_slice(X: SimplicialSet, p: SimplicialMap, max_dim: int) -> MapSpace:
    """The wide slice under p: K -> X, truncated at max_dim; as
    slice_under but over wide joins."""
    return _slice(X, p, max_dim, wide=True)


def _slice(X: SimplicialSet, p: SimplicialMap, max_dim: int, wide: bool) -> MapSpace:
    if p.target is not X:
        raise SimplicialError("slice_under needs p landing in X")
    if X.truncation_dim is not None:
        raise SimplicialError("slices of truncated sets are undefined")
    if max_dim < 0:
        raise SimplicialError("slice bound must be nonnegative")
    K = p.source
    key = _slice_key(p, max_dim, wide)
    hit = _slice_memo.get(X, key)
    if hit is not None:
        return hit
    cones = (wide_cone if wide else cone)
    cact = (_wide_cone_act if wide else _cone_act)

    def levels(n: int):
        return extensions(p, cones(K, n).from_a)

    def act_by(alpha: SimplicialOperator, f: SimplicialMap) -> SimplicialMap:
        return compose_maps(f, cact(K, alpha))

    return _slice_memo.put(X, key, map_space(levels, act_by, max_dim))


def _postcompose_map(src: MapSpace, tgt: MapSpace, p: SimplicialMap) -> SimplicialMap:
    assign = {x: tgt.locate(compose_maps(p, f), x.dim)
              for x, f in src.members.items()}
    return SimplicialMap(src.space, tgt.space, assign)


def _precompose_map(src: MapSpace, tgt: MapSpace, K: SimplicialSet,
                    incl: SimplicialMap, wide: bool) -> SimplicialMap:
    cones = (wide_cone if wide else cone)
    cache = (_wide_incl_cones if wide else _incl_cones)
    jmap = (wide_join_map if wide else join_map)

    def incl_cone(n: int) -> SimplicialMap:
        hit = cache.get(incl, n)
        if hit is None:
            hit = cache.put(
                incl, n,
                jmap(incl, identity_map(standard_simplex(n)),
                     cones(incl.source, n), cones(incl.target, n)))
        return hit

    assign = {x: tgt.locate(compose_maps(f, incl_cone(x.dim)), x.dim)
              for x, f in src.members.items()}
    return SimplicialMap(src.space, tgt.space, assign)


def slice_comparison(incl: SimplicialMap, u: SimplicialMap,
                     p: SimplicialMap, max_dim: int) -> SimplicialMap:
    """For a subcomplex inclusion incl: K -> L, a map u: L -> X and
    p: X -> S, the induced map from the slice under u to the fiber
    product of the slice under the restriction with the base slice."""
    return _comparison(incl, u, p, max_dim, wide=False)


def wide_slice_comparison(incl: SimplicialMap, u: SimplicialMap,
                          p: SimplicialMap, max_dim: int) -> SimplicialMap:
    """The wide-slice analogue of slice_comparison."""
    return _comparison(incl, u, p, max_dim, wide=True)


def _comparison(incl: SimplicialMap, u: SimplicialMap, p: SimplicialMap,
                max_dim: int, wide: bool) -> SimplicialMap:
    if incl.target is not u.source:
        raise SimplicialError("comparison: incl must land in u's source")
    if u.target is not p.source:
        raise SimplicialError("comparison: u must land in p's source")
    if not is_mono(incl):
        raise SimplicialError("comparison: incl must be a monomorphism")
    X, S, K = u.target, p.target, incl.source
    v = compose_maps(u, incl)
    pu, pv = compose_maps(p, u), compose_maps(p, v)
    make = wide_slice if wide else slice_under
    su = make(X, u, max_dim)
    sv = make(X, v, max_dim)
    spu = make(S, pu, max_dim)
    spv = make(S, pv, max_dim)
    r_restrict = _precompose_map(su, sv, K, incl, wide)
    r_project = _postcompose_map(su, spu, p)
    q_project = _postcompose_map(sv, spv, p)
    q_restrict = _precompose_map(spu, spv, K, incl, wide)
    fp = fiber_product(q_project, q_restrict)
    return pair_maps(r_restrict, r_project, fp)


# -- cocartesian edge classifiers ------------------------------------------------


def _edge_map(X: SimplicialSet, e: EZForm) -> SimplicialMap:
    d1 = standard_simplex(1)
    v0 = act(X, SimplicialOperator(0, 1, (0,)), e)
    v1 = act(X, SimplicialOperator(0, 1, (1,)), e)
    return SimplicialMap(d1, X, {d1.simplex(0, 0): v0,
                                 d1.simplex(0, 1): v1,
                                 d1.simplex(1, 0): e})


def _vertex0_inclusion() -> SimplicialMap:
    d1 = standard_simplex(1)
    d0 = standard_simplex(0)
    return SimplicialMap(d0, d1, {d0.simplex(0, 0):
                                  nondeg_form(d1.simplex(0, 0))})


def cocartesian_edges(p: SimplicialMap, max_dim: int,
                      budget: Optional[int] = None) -> frozenset[EZForm]:
    """Edges u of the source such that every initial-vertex horn problem
    over the base with first edge u extends, for horn dimensions 2..max_dim.

    Bounded detection only: no claim is made above max_dim."""
    if max_dim < 2:
        raise SimplicialError("cocartesian detection needs max_dim >= 2")
    X = p.source
    good = []
    for e in X.simplices(1):
        if _is_cocartesian(p, e, max_dim, budget):
            good.append(e)
    return frozenset(good)


def _is_cocartesian(p: SimplicialMap, e: EZForm, max_dim: int,
                    budget: Optional[int]) -> bool:
    X = p.source
    for n in range(2, max_dim + 1):
        H = horn(n, 0)
        incl = horn_inclusion(n, 0)
        first_edge = find_subset_simplex(H, (0, 1))
        for top in maps_with_partial(H, X, {first_edge: e}, budget):
            below = compose_maps(p, top)
            for bottom in extensions(below, incl, budget):
                problem = LiftingProblem(incl, p, top, bottom)
                if solve_lift(problem, budget) is None:
                    return False
    return True


def wide_cocartesian_edges(p: SimplicialMap, max_dim: int,
                           budget: Optional[int] = None) -> frozenset[EZForm]:
    """Edges whose wide-slice comparison map is a trivial fibration below
    the bound; the wide-slice counterpart of cocartesian_edges."""
    if max_dim < 2:
        raise SimplicialError("cocartesian detection needs max_dim >= 2")
    X = p.source
    incl0 = _vertex0_inclusion()
    good = []
    for e in X.simplices(1):
        comp = wide_slice_comparison(incl0, _edge_map(X, e), p, max_dim)
        if check_fibration(comp, FibrationClass.TRIVIAL, max_dim - 1, budget):
            good.append(e)
    return frozenset(good)
