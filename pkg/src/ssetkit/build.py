"""Constructors for the simplicial sets the kernel works with.

Standard simplices and their boundary/horn/spine subcomplexes are built
from vertex subsets.  Products and fiber products enumerate jointly
nondegenerate pairs of normal forms.  Pushouts are computed dimensionwise
by union-find and then renormalized: a quotient class is degenerate
exactly when it contains a degenerate representative, and its normal form
is recovered by recursing through such a representative.  The wide join
is defined operationally by its defining pushout (cylinder on a product
glued to the two factors); the closed-form simplex count is only ever
used as a cross-check, never as the construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Callable, Optional

from .operators import (
    SimplicialOperator, compose, epi_mono_factor, face, identity, join_op,
)
from . import core
from .core import (
    EZForm, SetBuilder, SimplexId, SimplicialError, SimplicialMap,
    SimplicialSet, act, compose_maps, constant_map, empty_set,
    from_empty, identity_map, image, nondeg_form,
)


# -- vertex-subset complexes -------------------------------------------------


def _subset_label(subset: tuple[int, ...]) -> str:
    return ",".join(str(v) for v in subset)


def _subset_rows(n: int, keep: Callable[[tuple[int, ...]], bool]):
    """Per-dimension lex-ordered lists of kept vertex subsets of [0..n]."""
    rows = []
    for d in range(n + 1):
        row = [s for s in combinations(range(n + 1), d + 1) if keep(s)]
        rows.append(row)
    while rows and not rows[-1]:
        rows.pop()
    return rows


def _subset_complex(rows) -> SimplicialSet:
    builder = SetBuilder()
    ids: dict[tuple[int, ...], SimplexId] = {}
    for row in rows:
        for subset in row:
            ids[subset] = builder.add(len(subset) - 1, _subset_label(subset))
    for row in rows:
        for subset in row:
            d = len(subset) - 1
            if d == 0:
                continue
            fs = []
            for i in range(d + 1):
                sub = subset[:i] + subset[i + 1:]
                fs.append(EZForm(identity(d - 1), ids[sub]))
            builder.set_faces(ids[subset], fs)
    return builder.build()


@lru_cache(maxsize=None)
def standard_simplex(n: int) -> SimplicialSet:
    if n < 0:
        raise SimplicialError("standard_simplex needs n >= 0")
    return _subset_complex(_subset_rows(n, lambda s: True))


@lru_cache(maxsize=None)
def boundary(n: int) -> SimplicialSet:
    if n < 0:
        raise SimplicialError("boundary needs n >= 0")
    if n == 0:
        return empty_set()
    return _subset_complex(_subset_rows(n, lambda s: len(s) <= n))


@lru_cache(maxsize=None)
def horn(n: int, k: int) -> SimplicialSet:
    if n < 1 or not 0 <= k <= n:
        raise SimplicialError(f"horn({n},{k}) out of range")
    full = tuple(range(n + 1))
    missing = tuple(v for v in full if v != k)
    return _subset_complex(
        _subset_rows(n, lambda s: s != full and s != missing))


@lru_cache(maxsize=None)
def spine(n: int) -> SimplicialSet:
    """The n-chain: the union of the edges {k, k+1} inside the n-simplex."""
    if n < 0:
        raise SimplicialError("spine needs n >= 0")

    def keep(s):
        return len(s) == 1 or (len(s) == 2 and s[1] == s[0] + 1)

    return _subset_complex(_subset_rows(n, keep))


def _subsets_by_position(X: SimplicialSet, rows) -> dict[SimplexId, tuple[int, ...]]:
    out = {}
    for d, row in enumerate(rows):
        for i, subset in enumerate(row):
            out[X.simplex(d, i)] = subset
    return out


def find_subset_simplex(X: SimplicialSet, subset) -> SimplexId:
    """The simplex of a vertex-subset complex carrying the given subset."""
    label = _subset_label(tuple(subset))
    for x in X.nondeg[len(subset) - 1]:
        if x.label == label:
            return x
    raise SimplicialError(f"no simplex on vertices {subset}")


def subcomplex_inclusion(sub: SimplicialSet, n: int) -> SimplicialMap:
    """Canonical inclusion of a vertex-subset complex into the n-simplex."""
    delta = standard_simplex(n)
    delta_ids = {subset: delta.simplex(d, i)
                 for d, row in enumerate(_subset_rows(n, lambda s: True))
                 for i, subset in enumerate(row)}
    assign = {}
    for x in sub.all_nondeg():
        subset = tuple(int(v) for v in x.label.split(","))
        assign[x] = nondeg_form(delta_ids[subset])
    return SimplicialMap(sub, delta, assign)


def boundary_inclusion(n: int) -> SimplicialMap:
    return subcomplex_inclusion(boundary(n), n)


def horn_inclusion(n: int, k: int) -> SimplicialMap:
    return subcomplex_inclusion(horn(n, k), n)


def spine_inclusion(n: int) -> SimplicialMap:
    return subcomplex_inclusion(spine(n), n)


def simplex_map(alpha: SimplicialOperator) -> SimplicialMap:
    """The map of standard simplices induced by a monotone map."""
    src = standard_simplex(alpha.source_dim)
    tgt = standard_simplex(alpha.target_dim)
    tgt_ids = {subset: tgt.simplex(d, i)
               for d, row in enumerate(_subset_rows(alpha.target_dim,
                                                    lambda s: True))
               for i, subset in enumerate(row)}
    assign = {}
    for x in src.all_nondeg():
        subset = tuple(int(v) for v in x.label.split(","))
        mu = SimplicialOperator(x.dim, alpha.source_dim, subset)
        epi, mono = epi_mono_factor(compose(alpha, mu))
        assign[x] = EZForm(epi, tgt_ids[mono.images])
    return SimplicialMap(src, tgt, assign)


def vertex_map(v: int, n: int) -> SimplicialMap:
    """The vertex inclusion of v into the n-simplex."""
    return simplex_map(SimplicialOperator(0, n, (v,)))


# -- coproducts --------------------------------------------------------------


@dataclass
class Coproduct:
    space: SimplicialSet
    inj_a: SimplicialMap
    inj_b: SimplicialMap
    _tags: dict[SimplexId, tuple[str, SimplexId]]

    def which(self, x: SimplexId) -> tuple[str, SimplexId]:
        return self._tags[x]


def coproduct(A: SimplicialSet, B: SimplicialSet) -> Coproduct:
    builder = SetBuilder()
    to_new: dict[tuple[str, SimplexId], SimplexId] = {}
    tags: dict[SimplexId, tuple[str, SimplexId]] = {}
    top = max(A.top_dim, B.top_dim)
    for d in range(top + 1):
        for tag, X in (("a", A), ("b", B)):
            for x in (X.nondeg[d] if d <= X.top_dim else ()):
                new = builder.add(d, x.label)
                to_new[(tag, x)] = new
                tags[new] = (tag, x)
    for (tag, x), new in to_new.items():
        if x.dim:
            X = A if tag == "a" else B
            builder.set_faces(new, (EZForm(ez.epi, to_new[(tag, ez.target)])
                                    for ez in X.faces(x)))
    space = builder.build()
    inj_a = SimplicialMap(A, space, {x: nondeg_form(to_new[("a", x)])
                                     for x in A.all_nondeg()})
    inj_b = SimplicialMap(B, space, {x: nondeg_form(to_new[("b", x)])
                                     for x in B.all_nondeg()})
    return Coproduct(space, inj_a, inj_b, tags)


def copair(f: SimplicialMap, g: SimplicialMap, cp: Coproduct) -> SimplicialMap:
    """The map out of a coproduct determined by maps out of the pieces."""
    if f.target is not g.target:
        raise SimplicialError("copair needs a common target")
    assign = {}
    for x in cp.space.all_nondeg():
        tag, orig = cp.which(x)
        assign[x] = (f if tag == "a" else g).assign[orig]
    return SimplicialMap(cp.space, f.target, assign)


# -- fiber products and products ---------------------------------------------


def _joint_strip(ea: SimplicialOperator, eb: SimplicialOperator):
    """Split off the largest epi through which both sides factor.

    Returns (sigma, ea', eb') with ea = ea'.sigma, eb = eb'.sigma and
    (ea', eb') jointly nondegenerate.
    """
    n = ea.source_dim
    common = [t for t in range(n)
              if ea.images[t] == ea.images[t + 1]
              and eb.images[t] == eb.images[t + 1]]
    if not common:
        return identity(n), ea, eb
    commonset = set(common)
    img = [0]
    for t in range(1, n + 1):
        img.append(img[-1] + (0 if (t - 1) in commonset else 1))
    m = n - len(common)
    sigma = SimplicialOperator(n, m, tuple(img))
    sections = []
    seen = -1
    for t in range(n + 1):
        if img[t] > seen:
            sections.append(t)
            seen = img[t]
    ea2 = SimplicialOperator(m, ea.target_dim,
                             tuple(ea.images[t] for t in sections))
    eb2 = SimplicialOperator(m, eb.target_dim,
                             tuple(eb.images[t] for t in sections))
    return sigma, ea2, eb2


@dataclass
class FiberProduct:
    space: SimplicialSet
    left: SimplicialMap
    right: SimplicialMap
    _index: dict[tuple[EZForm, EZForm], SimplexId]
    _pair_of: dict[SimplexId, tuple[EZForm, EZForm]]

    def pair_form(self, sa: EZForm, sb: EZForm) -> EZForm:
        """EZ form of the pair simplex (sa, sb) in the total space."""
        sigma, ea, eb = _joint_strip(sa.epi, sb.epi)
        key = (EZForm(ea, sa.target), EZForm(eb, sb.target))
        return EZForm(sigma, self._index[key])

    def pair_of(self, x: SimplexId) -> tuple[EZForm, EZForm]:
        return self._pair_of[x]


def _ez_label(ez: EZForm) -> str:
    base = ez.target.label if ez.target.label is not None else ez.target.key()
    if ez.is_nondegenerate:
        return base
    return base + "^" + "".join(str(t) for t in ez.epi.collapsed())


def fiber_product(f: SimplicialMap, g: SimplicialMap) -> FiberProduct:
    """Levelwise pairs of simplices agreeing in the common target, stored
    in EZ form; the projections are simplicial maps."""
    if f.target is not g.target:
        raise SimplicialError("fiber_product needs a common target")
    A, B = f.source, g.source
    truncs = [X.truncation_dim for X in (A, B) if X.truncation_dim is not None]
    bound = A.top_dim + B.top_dim
    if truncs:
        bound = min([bound] + truncs)
    if A.is_empty or B.is_empty:
        bound = -1

    builder = SetBuilder()
    index: dict[tuple[EZForm, EZForm], SimplexId] = {}
    pair_of: dict[SimplexId, tuple[EZForm, EZForm]] = {}
    for n in range(bound + 1):
        by_image: dict[EZForm, list[EZForm]] = {}
        for sb in B.simplices(n):
            by_image.setdefault(g(sb), []).append(sb)
        for sa in A.simplices(n):
            for sb in by_image.get(f(sa), ()):
                ca, cb = set(sa.epi.collapsed()), set(sb.epi.collapsed())
                if ca & cb:
                    continue
                x = builder.add(n, f"({_ez_label(sa)},{_ez_label(sb)})")
                index[(sa, sb)] = x
                pair_of[x] = (sa, sb)

    def pair_form(sa: EZForm, sb: EZForm) -> EZForm:
        sigma, ea, eb = _joint_strip(sa.epi, sb.epi)
        return EZForm(sigma, index[(EZForm(ea, sa.target),
                                    EZForm(eb, sb.target))])

    for x, (sa, sb) in pair_of.items():
        n = x.dim
        if n == 0:
            continue
        builder.set_faces(x, (pair_form(act(A, face(n, i), sa),
                                        act(B, face(n, i), sb))
                              for i in range(n + 1)))
    space = builder.build(truncation_dim=min(truncs) if truncs else None)
    left = SimplicialMap(space, A, {x: sa for x, (sa, _) in pair_of.items()})
    right = SimplicialMap(space, B, {x: sb for x, (_, sb) in pair_of.items()})
    return FiberProduct(space, left, right, index, pair_of)


@lru_cache(maxsize=None)
def point() -> SimplicialSet:
    return standard_simplex(0)


def product(A: SimplicialSet, B: SimplicialSet) -> FiberProduct:
    """The binary product, as the fiber product over the point."""
    pt = point()
    return fiber_product(core.map_to_point(A, pt), core.map_to_point(B, pt))


def pair_maps(f: SimplicialMap, g: SimplicialMap, fp: FiberProduct) -> SimplicialMap:
    """The map into a fiber product determined by compatible components."""
    if f.source is not g.source:
        raise SimplicialError("pair_maps needs a common source")
    assign = {x: fp.pair_form(f.assign[x], g.assign[x])
              for x in f.source.all_nondeg()}
    return SimplicialMap(f.source, fp.space, assign)


def product_map(f: SimplicialMap, g: SimplicialMap,
                src: FiberProduct, tgt: FiberProduct) -> SimplicialMap:
    """Functoriality of (fiber) products in both arguments."""
    assign = {}
    for x in src.space.all_nondeg():
        sa, sb = src.pair_of(x)
        assign[x] = tgt.pair_form(f(sa), g(sb))
    return SimplicialMap(src.space, tgt.space, assign)


# -- pushouts ----------------------------------------------------------------


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        root = self.parent.setdefault(x, x)
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if self._key(ry) < self._key(rx):
                rx, ry = ry, rx
            self.parent[ry] = rx

    @staticmethod
    def _key(k):
        side, ez = k
        return (ez.target.dim, side, ez.target.index, ez.epi.images)


@dataclass
class Pushout:
    space: SimplicialSet
    left: SimplicialMap
    right: SimplicialMap
    rep: dict[SimplexId, tuple[str, SimplexId]]
    _locate: Callable[[str, EZForm], EZForm]

    def locate_left(self, ez: EZForm) -> EZForm:
        return self._locate("L", ez)

    def locate_right(self, ez: EZForm) -> EZForm:
        return self._locate("R", ez)


def pushout(f: SimplicialMap, g: SimplicialMap) -> Pushout:
    """The pushout of the span f.target <- source -> g.target, computed
    dimensionwise and EZ-renormalized.

    A class is degenerate iff some representative is degenerate; its
    normal form is found by peeling the epi off such a representative and
    recursing on the class of its nondegenerate support.
    """
    if f.source is not g.source:
        raise SimplicialError("pushout needs a common source span")
    C, A, B = f.source, f.target, g.target
    for X in (A, B, C):
        if X.truncation_dim is not None:
            raise SimplicialError("pushouts of truncated sets are undefined")
    bound = max(A.top_dim, B.top_dim)

    uf = _UnionFind()
    members: dict = {}
    for n in range(bound + 1):
        for side, X in (("L", A), ("R", B)):
            for ez in X.simplices(n):
                uf.find((side, ez))
        for c in C.simplices(n):
            uf.union(("L", f(c)), ("R", g(c)))
    for key in list(uf.parent):
        members.setdefault(uf.find(key), []).append(key)

    builder = SetBuilder()
    class_id: dict = {}
    reps: dict[SimplexId, tuple[str, SimplexId]] = {}
    for n in range(bound + 1):
        roots = [r for r, ms in members.items()
                 if r[1].dim == n and r[1].is_nondegenerate
                 and all(ez.is_nondegenerate for _, ez in ms)]
        roots.sort(key=_UnionFind._key)
        for r in roots:
            side, ez = min(members[r], key=_UnionFind._key)
            x = builder.add(n, ez.target.label)
            class_id[r] = x
            reps[x] = (side, ez.target)

    nf_memo: dict = {}

    def nf_class(root) -> EZForm:
        hit = nf_memo.get(root)
        if hit is not None:
            return hit
        x = class_id.get(root)
        if x is not None:
            out = nondeg_form(x)
        else:
            degenerate = [(s, ez) for s, ez in members[root]
                          if not ez.is_nondegenerate]
            side, ez = min(degenerate, key=_UnionFind._key)
            inner = nf_class(uf.find((side, nondeg_form(ez.target))))
            out = EZForm(compose(inner.epi, ez.epi), inner.target)
        nf_memo[root] = out
        return out

    def locate(side: str, ez: EZForm) -> EZForm:
        inner = nf_class(uf.find((side, nondeg_form(ez.target))))
        return EZForm(compose(inner.epi, ez.epi), inner.target)

    for x, (side, orig) in reps.items():
        if x.dim == 0:
            continue
        X = A if side == "L" else B
        builder.set_faces(x, (locate(side, act(X, face(x.dim, i),
                                               nondeg_form(orig)))
                              for i in range(x.dim + 1)))
    space = builder.build()

    # the freshly built ids are equal (dim, index) to the builder's, so the
    # locate closure remains valid against the finished space
    left = SimplicialMap(A, space, {x: locate("L", nondeg_form(x))
                                    for x in A.all_nondeg()})
    right = SimplicialMap(B, space, {x: locate("R", nondeg_form(x))
                                     for x in B.all_nondeg()})
    return Pushout(space, left, right, reps, locate)


# -- joins -------------------------------------------------------------------


@dataclass
class Join:
    space: SimplicialSet
    from_a: SimplicialMap
    from_b: SimplicialMap
    pure_a: dict[SimplexId, SimplexId]
    pure_b: dict[SimplexId, SimplexId]
    pair_id: dict[tuple[SimplexId, SimplexId], SimplexId]


class _PairCache:
    """Cache keyed by the identities of both arguments (references held)."""

    def __init__(self, build_fn):
        self._data = {}
        self._build = build_fn

    def __call__(self, A, B):
        key = (id(A), id(B))
        hit = self._data.get(key)
        if hit is not None and hit[0] is A and hit[1] is B:
            return hit[2]
        value = self._build(A, B)
        self._data[key] = (A, B, value)
        return value


def _join_full(A: SimplicialSet, B: SimplicialSet) -> Join:
    """The join: pure simplices of both factors plus one (i+j+1)-simplex
    for every pair of an i-simplex of A and a j-simplex of B."""
    if B.is_empty:
        ident = identity_map(A)
        return Join(A, ident, from_empty(A),
                    {x: x for x in A.all_nondeg()}, {}, {})
    if A.is_empty:
        ident = identity_map(B)
        return Join(B, from_empty(B), ident, {},
                    {x: x for x in B.all_nondeg()}, {})

    builder = SetBuilder()
    pure_a: dict[SimplexId, SimplexId] = {}
    pure_b: dict[SimplexId, SimplexId] = {}
    pair_id: dict[tuple[SimplexId, SimplexId], SimplexId] = {}
    top = A.top_dim + B.top_dim + 1
    for n in range(top + 1):
        for x in (A.nondeg[n] if n <= A.top_dim else ()):
            pure_a[x] = builder.add(n, x.label)
        for y in (B.nondeg[n] if n <= B.top_dim else ()):
            pure_b[y] = builder.add(n, y.label)
        for i in range(n):
            j = n - 1 - i
            if i > A.top_dim or j > B.top_dim:
                continue
            for x in A.nondeg[i]:
                for y in B.nondeg[j]:
                    pair_id[(x, y)] = builder.add(
                        n, f"{x.label}*{y.label}")

    for x, new in pure_a.items():
        if x.dim:
            builder.set_faces(new, (EZForm(ez.epi, pure_a[ez.target])
                                    for ez in A.faces(x)))
    for y, new in pure_b.items():
        if y.dim:
            builder.set_faces(new, (EZForm(ez.epi, pure_b[ez.target])
                                    for ez in B.faces(y)))
    for (x, y), new in pair_id.items():
        i, j, n = x.dim, y.dim, new.dim
        fs = []
        for k in range(n + 1):
            if k <= i:
                if i == 0:
                    fs.append(EZForm(identity(j), pure_b[y]))
                else:
                    fa = act(A, face(i, k), nondeg_form(x))
                    fs.append(EZForm(join_op(fa.epi, identity(j)),
                                     pair_id[(fa.target, y)]))
            else:
                if j == 0:
                    fs.append(EZForm(identity(i), pure_a[x]))
                else:
                    fb = act(B, face(j, k - i - 1), nondeg_form(y))
                    fs.append(EZForm(join_op(identity(i), fb.epi),
                                     pair_id[(x, fb.target)]))
        builder.set_faces(new, fs)
    space = builder.build()
    from_a = SimplicialMap(A, space, {x: nondeg_form(pure_a[x])
                                      for x in A.all_nondeg()})
    from_b = SimplicialMap(B, space, {y: nondeg_form(pure_b[y])
                                      for y in B.all_nondeg()})
    return Join(space, from_a, from_b, pure_a, pure_b, pair_id)


join_full = _PairCache(_join_full)


def join(A: SimplicialSet, B: SimplicialSet) -> SimplicialSet:
    return join_full(A, B).space


def join_map(u: SimplicialMap, v: SimplicialMap,
             src: Join, tgt: Join) -> SimplicialMap:
    """Functoriality of the join in both arguments."""
    assign = {}
    inv_pa = {new: old for old, new in src.pure_a.items()}
    inv_pb = {new: old for old, new in src.pure_b.items()}
    inv_pair = {new: pair for pair, new in src.pair_id.items()}
    for z in src.space.all_nondeg():
        if z in inv_pa:
            ez = u.assign[inv_pa[z]]
            assign[z] = EZForm(ez.epi, tgt.pure_a[ez.target])
        elif z in inv_pb:
            ez = v.assign[inv_pb[z]]
            assign[z] = EZForm(ez.epi, tgt.pure_b[ez.target])
        else:
            x, y = inv_pair[z]
            ua, vb = u.assign[x], v.assign[y]
            assign[z] = EZForm(join_op(ua.epi, vb.epi),
                               tgt.pair_id[(ua.target, vb.target)])
    return SimplicialMap(src.space, tgt.space, assign)


# -- wide joins ---------------------------------------------------------------


@dataclass
class WideJoin:
    space: SimplicialSet
    from_a: SimplicialMap
    from_b: SimplicialMap
    factors: tuple[SimplicialSet, SimplicialSet]
    prod_ab: Optional[FiberProduct] = None
    triple: Optional[FiberProduct] = None
    ab: Optional[Coproduct] = None
    po: Optional[Pushout] = None


def _wide_join_full(A: SimplicialSet, B: SimplicialSet) -> WideJoin:
    """The wide join, by its defining pushout: the cylinder on A x B glued
    to A at time 0 and to B at time 1."""
    if B.is_empty:
        return WideJoin(A, identity_map(A), from_empty(A), (A, B))
    if A.is_empty:
        return WideJoin(B, from_empty(B), identity_map(B), (A, B))
    d1 = standard_simplex(1)
    prod_ab = product(A, B)
    triple = product(d1, prod_ab.space)
    cp = coproduct(prod_ab.space, prod_ab.space)
    ab = coproduct(A, B)
    at0 = pair_maps(constant_map(prod_ab.space, d1, d1.simplex(0, 0)),
                    identity_map(prod_ab.space), triple)
    at1 = pair_maps(constant_map(prod_ab.space, d1, d1.simplex(0, 1)),
                    identity_map(prod_ab.space), triple)
    to_cyl = copair(at0, at1, cp)
    to_ends = copair(compose_maps(ab.inj_a, prod_ab.left),
                     compose_maps(ab.inj_b, prod_ab.right), cp)
    po = pushout(to_cyl, to_ends)
    return WideJoin(po.space,
                    compose_maps(po.right, ab.inj_a),
                    compose_maps(po.right, ab.inj_b),
                    (A, B), prod_ab, triple, ab, po)


wide_join_full = _PairCache(_wide_join_full)


def wide_join(A: SimplicialSet, B: SimplicialSet) -> SimplicialSet:
    return wide_join_full(A, B).space


def wide_join_map(u: SimplicialMap, v: SimplicialMap,
                  src: Optional[WideJoin] = None,
                  tgt: Optional[WideJoin] = None) -> SimplicialMap:
    """Functoriality of the wide join in both arguments."""
    if src is None:
        src = wide_join_full(u.source, v.source)
    if tgt is None:
        tgt = wide_join_full(u.target, v.target)
    if u.source.is_empty and v.source.is_empty:
        return from_empty(tgt.space)
    if v.source.is_empty:
        return compose_maps(tgt.from_a, u)
    if u.source.is_empty:
        return compose_maps(tgt.from_b, v)
    # both factors inhabited: the source has full pushout structure; the
    # target may still collapse if a target factor is empty, but monos out
    # of inhabited sets forbid that
    if tgt.po is None:
        raise SimplicialError("wide_join_map into a degenerate wide join")
    pm = product_map(u, v, src.prod_ab, tgt.prod_ab)
    tm = product_map(identity_map(standard_simplex(1)), pm,
                     src.triple, tgt.triple)
    assign = {}
    for x in src.space.all_nondeg():
        side, orig = src.po.rep[x]
        if side == "L":
            assign[x] = tgt.po.locate_left(tm.assign[orig])
        else:
            tag, piece = src.ab.which(orig)
            ez = u.assign[piece] if tag == "a" else v.assign[piece]
            inj = tgt.ab.inj_a if tag == "a" else tgt.ab.inj_b
            assign[x] = tgt.po.locate_right(inj(ez))
    return SimplicialMap(src.space, tgt.space, assign)


def pp_map(u: SimplicialMap, v: SimplicialMap) -> SimplicialMap:
    """For monos u: A -> B and v: C -> D, the canonical inclusion of
    (B wjoin C) united with (A wjoin D) into B wjoin D.

    The union subcomplex is recoverable as image(pp_map(u, v))."""
    if not core.is_mono(u) or not core.is_mono(v):
        raise SimplicialError("pp_map needs monomorphisms")
    B, D = u.target, v.target
    wbd = wide_join_full(B, D)
    bc = wide_join_map(identity_map(B), v, tgt=wbd)
    ad = wide_join_map(u, identity_map(D), tgt=wbd)
    sub = image(bc) | image(ad)
    return sub.inclusion()


def comparison_map(A: SimplicialSet, B: SimplicialSet) -> SimplicialMap:
    """The canonical map from the wide join to the join, collapsing each
    cylinder simplex onto the join simplex of its two blocks."""
    w = wide_join_full(A, B)
    j = join_full(A, B)
    if A.is_empty or B.is_empty:
        return identity_map(w.space)
    d1 = standard_simplex(1)
    assign = {}
    for x in w.space.all_nondeg():
        side, orig = w.po.rep[x]
        n = x.dim
        if side == "R":
            tag, piece = w.ab.which(orig)
            if tag == "a":
                assign[x] = nondeg_form(j.pure_a[piece])
            else:
                assign[x] = nondeg_form(j.pure_b[piece])
            continue
        st, spab = w.triple.pair_of(orig)
        # time coordinate: how many vertices sit at 0
        subset = tuple(int(c) for c in st.target.label.split(","))
        values = [subset[v] for v in st.epi.images]
        r = sum(1 for v in values if v == 0)
        sa = w.prod_ab.left(spab)
        sb = w.prod_ab.right(spab)
        if r == 0:
            assign[x] = EZForm(sb.epi, j.pure_b[sb.target])
        elif r == n + 1:
            assign[x] = EZForm(sa.epi, j.pure_a[sa.target])
        else:
            front = act(A, SimplicialOperator(r - 1, n, tuple(range(r))), sa)
            back = act(B, SimplicialOperator(n - r, n, tuple(range(r, n + 1))), sb)
            assign[x] = EZForm(join_op(front.epi, back.epi),
                               j.pair_id[(front.target, back.target)])
    return SimplicialMap(w.space, j.space, assign)
