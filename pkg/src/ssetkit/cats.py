"""Finite categories, their nerves, and fixture builders.

Nondegenerate n-simplices of a nerve are chains of n composable
nonidentity morphisms; degeneracies insert identities, so normalizing a
chain means stripping its identities and recording which vertices that
collapses.  A category with a composable cycle of nonidentity morphisms
has unbounded chains, hence an infinite-dimensional nerve; `nerve` fails
loudly on those unless explicitly asked for a truncation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as iproduct

from .operators import SimplicialOperator
from .core import (
    EZForm, SetBuilder, SimplexId, SimplicialMap, SimplicialSet,
    nondeg_form,
)


class CategoryError(ValueError):
    """Raised for malformed categories, functors, or nerve bounds."""


@dataclass(frozen=True)
class FiniteCategory:
    """A finite category with an explicit composition table.

    Morphisms are indices; compose[(g, f)] is g after f, defined exactly
    for the composable pairs.  identities[o] is the identity of object o.
    """

    objects: tuple[str, ...]
    names: tuple[str, ...]
    source: tuple[int, ...]
    target: tuple[int, ...]
    compose: dict[tuple[int, int], int] = field(hash=False)
    identities: tuple[int, ...]

    def __post_init__(self):
        check = validate_category(self)
        if not check:
            raise CategoryError(check.problems[0])

    def is_identity(self, m: int) -> bool:
        return m in self.identities

    def nonidentity(self) -> list[int]:
        return [m for m in range(len(self.names)) if not self.is_identity(m)]

    def hom(self, a: int, b: int) -> list[int]:
        return [m for m in range(len(self.names))
                if self.source[m] == a and self.target[m] == b]

    def __repr__(self):
        return f"FiniteCategory({len(self.objects)} objects, " \
               f"{len(self.names)} morphisms)"


def validate_category(C: FiniteCategory):
    from .core import ValidationResult
    problems = []
    n_obj, n_mor = len(C.objects), len(C.names)
    if len(C.identities) != n_obj:
        problems.append("one identity per object required")
    for o, i in enumerate(C.identities):
        if C.source[i] != o or C.target[i] != o:
            problems.append(f"identity of {C.objects[o]} has wrong endpoints")
    for g in range(n_mor):
        for f in range(n_mor):
            composable = C.target[f] == C.source[g]
            if composable != ((g, f) in C.compose):
                problems.append(f"composition table wrong at ({g},{f})")
                continue
            if composable:
                h = C.compose[(g, f)]
                if C.source[h] != C.source[f] or C.target[h] != C.target[g]:
                    problems.append(f"composite ({g},{f}) has wrong endpoints")
    if not problems:
        for o, i in enumerate(C.identities):
            for f in range(n_mor):
                if C.target[f] == o and C.compose[(i, f)] != f:
                    problems.append(f"left identity law fails at {f}")
                if C.source[f] == o and C.compose[(f, i)] != f:
                    problems.append(f"right identity law fails at {f}")
        for h in range(n_mor):
            for g in range(n_mor):
                if C.target[g] != C.source[h]:
                    continue
                for f in range(n_mor):
                    if C.target[f] != C.source[g]:
                        continue
                    if C.compose[(C.compose[(h, g)], f)] != \
                            C.compose[(h, C.compose[(g, f)])]:
                        problems.append(
                            f"associativity fails at ({h},{g},{f})")
    return ValidationResult(problems)


@dataclass(frozen=True)
class CatFunctor:
    source: FiniteCategory
    target: FiniteCategory
    obj_map: tuple[int, ...]
    mor_map: tuple[int, ...]

    def __post_init__(self):
        S, T = self.source, self.target
        for m, fm in enumerate(self.mor_map):
            if T.source[fm] != self.obj_map[S.source[m]] or \
                    T.target[fm] != self.obj_map[S.target[m]]:
                raise CategoryError(f"functor breaks endpoints at {m}")
        for o, i in enumerate(S.identities):
            if self.mor_map[i] != T.identities[self.obj_map[o]]:
                raise CategoryError(f"functor breaks identity at {o}")
        for (g, f), h in S.compose.items():
            if T.compose[(self.mor_map[g], self.mor_map[f])] != self.mor_map[h]:
                raise CategoryError(f"functor breaks composition at ({g},{f})")


# -- nerves -------------------------------------------------------------------


def _chains(C: FiniteCategory, length: int) -> list[tuple[int, ...]]:
    """Composable chains of nonidentity morphisms, lexicographically."""
    if length == 0:
        return [()]
    shorter = _chains(C, length - 1)
    nonid = C.nonidentity()
    out = []
    for ch in shorter:
        for m in nonid:
            if not ch or C.target[ch[-1]] == C.source[m]:
                out.append(ch + (m,))
    return out


def _chain_nf(C: FiniteCategory, chain: tuple[int, ...],
              ids: dict, objs: dict) -> EZForm:
    """EZ form of a chain that may contain identities: strip them and
    collapse the corresponding vertices."""
    m = len(chain)
    keep = tuple(f for f in chain if not C.is_identity(f))
    if len(keep) == m:
        return nondeg_form(ids[chain])
    images = [0]
    for t in range(1, m + 1):
        images.append(images[-1] + (0 if C.is_identity(chain[t - 1]) else 1))
    epi = SimplicialOperator(m, len(keep), tuple(images))
    if keep:
        return EZForm(epi, ids[keep])
    # the whole chain is identities on one object
    obj = C.source[chain[0]]
    return EZForm(epi, objs[obj])


@lru_cache(maxsize=None)
def nerve(C: FiniteCategory, max_dim: int, truncate: bool = False) -> SimplicialSet:
    """The nerve, with nondegenerate n-simplices the composable chains of
    n nonidentity morphisms.

    If chains longer than max_dim exist, raises unless truncate is set, in
    which case the max_dim-skeleton is returned and flagged as truncated.
    """
    if max_dim < 0:
        raise CategoryError("nerve needs max_dim >= 0")
    overflow = bool(_chains(C, max_dim + 1))
    if overflow and not truncate:
        raise CategoryError(
            f"nonidentity chains exceed max_dim={max_dim}; the nerve is "
            "not representable at this bound (pass truncate=True for the "
            "skeleton)")
    builder = SetBuilder()
    obj_ids: dict = {}
    chain_ids: dict[tuple[int, ...], SimplexId] = {}
    for o, name in enumerate(C.objects):
        obj_ids[o] = builder.add(0, name)
    for d in range(1, max_dim + 1):
        for ch in _chains(C, d):
            chain_ids[ch] = builder.add(d, ",".join(C.names[f] for f in ch))

    # vertices keyed both by object index and None for _chain_nf's use
    def face_of(ch: tuple[int, ...], i: int) -> EZForm:
        d = len(ch)
        if d == 1:
            o = C.target[ch[0]] if i == 0 else C.source[ch[0]]
            return nondeg_form(obj_ids[o])
        if i == 0:
            return nondeg_form(chain_ids[ch[1:]])
        if i == d:
            return nondeg_form(chain_ids[ch[:-1]])
        merged = ch[:i - 1] + (C.compose[(ch[i], ch[i - 1])],) + ch[i + 1:]
        return _chain_nf(C, merged, chain_ids, obj_ids)

    for ch, x in chain_ids.items():
        builder.set_faces(x, (face_of(ch, i) for i in range(len(ch) + 1)))
    return builder.build(truncation_dim=max_dim if (truncate and overflow)
                         else None)


@lru_cache(maxsize=None)
def nerve_map(F: CatFunctor, max_dim: int, truncate: bool = False) -> SimplicialMap:
    """The simplicial map of nerves induced by a functor."""
    NS = nerve(F.source, max_dim, truncate)
    NT = nerve(F.target, max_dim, truncate)
    S, T = F.source, F.target
    t_objs = {o: NT.simplex(0, o) for o in range(len(T.objects))}
    t_chains: dict[tuple[int, ...], SimplexId] = {}
    for d in range(1, NT.top_dim + 1):
        for i, ch in enumerate(_chains(T, d)):
            t_chains[ch] = NT.simplex(d, i)
    assign = {}
    for o in range(len(S.objects)):
        assign[NS.simplex(0, o)] = nondeg_form(t_objs[F.obj_map[o]])
    for d in range(1, NS.top_dim + 1):
        for i, ch in enumerate(_chains(S, d)):
            mapped = tuple(F.mor_map[f] for f in ch)
            assign[NS.simplex(d, i)] = _chain_nf(T, mapped, t_chains, t_objs)
    return SimplicialMap(NS, NT, assign)


# -- builders -----------------------------------------------------------------


def category_from_relation(objects, leq) -> FiniteCategory:
    """The poset category of a reflexive, transitive relation: one
    morphism a -> b whenever leq(a, b)."""
    n = len(objects)
    names, source, target = [], [], []
    mor_idx: dict[tuple[int, int], int] = {}
    for a in range(n):
        for b in range(n):
            if leq(a, b):
                mor_idx[(a, b)] = len(names)
                names.append(f"{objects[a]}<{objects[b]}" if a != b
                             else f"id:{objects[a]}")
                source.append(a)
                target.append(b)
    compose = {}
    for (b1, c), g in mor_idx.items():
        for (a, b2), f in mor_idx.items():
            if b2 == b1:
                compose[(g, f)] = mor_idx[(a, c)]
    identities = tuple(mor_idx[(a, a)] for a in range(n))
    return FiniteCategory(tuple(objects), tuple(names), tuple(source),
                          tuple(target), compose, identities)


def poset_category(objects, pairs) -> FiniteCategory:
    """Poset category from a list of generating (a, b) index pairs, closed
    reflexively and transitively."""
    n = len(objects)
    leq = [[a == b for b in range(n)] for a in range(n)]
    for a, b in pairs:
        leq[a][b] = True
    for k in range(n):
        for a in range(n):
            for b in range(n):
                leq[a][b] = leq[a][b] or (leq[a][k] and leq[k][b])
    return category_from_relation(objects, lambda a, b: leq[a][b])


def chain_category(n: int) -> FiniteCategory:
    return poset_category([str(i) for i in range(n + 1)],
                          [(i, i + 1) for i in range(n)])


def discrete_category(objects) -> FiniteCategory:
    return poset_category(list(objects), [])


def walking_arrow() -> FiniteCategory:
    return chain_category(1)


def walking_iso() -> FiniteCategory:
    """The groupoid with two objects and an isomorphism between them."""
    objects = ("a", "b")
    names = ("id:a", "id:b", "f", "g")
    source = (0, 1, 0, 1)
    target = (0, 1, 1, 0)
    compose = {(0, 0): 0, (1, 1): 1, (2, 0): 2, (1, 2): 2, (3, 1): 3,
               (0, 3): 3, (3, 2): 0, (2, 3): 1}
    return FiniteCategory(objects, names, source, target, compose, (0, 1))


def poset_functors(P: FiniteCategory, Q: FiniteCategory) -> list[CatFunctor]:
    """All functors between poset categories: the monotone object maps."""
    n = len(P.objects)
    p_mor = {(P.source[m], P.target[m]): m for m in range(len(P.names))}
    q_mor = {(Q.source[m], Q.target[m]): m for m in range(len(Q.names))}
    out = []
    for obj_map in iproduct(range(len(Q.objects)), repeat=n):
        ok = all((obj_map[a], obj_map[b]) in q_mor for (a, b) in p_mor)
        if not ok:
            continue
        mor_map = [0] * len(P.names)
        for (a, b), m in p_mor.items():
            mor_map[m] = q_mor[(obj_map[a], obj_map[b])]
        out.append(CatFunctor(P, Q, tuple(obj_map), tuple(mor_map)))
    return out


def collage(F: CatFunctor) -> tuple[FiniteCategory, CatFunctor]:
    """The collage of a functor F: C0 -> C1: objects of both categories,
    cross morphisms (x, phi: Fx -> y), and the projection to the walking
    arrow.  Its nerve is the canonical inner-fibration fixture whose
    cocartesian edges over the arrow are the cross morphisms with
    invertible phi (the chosen transports, for discrete fibers)."""
    C0, C1 = F.source, F.target
    n0, m0 = len(C0.objects), len(C0.names)
    n1, m1 = len(C1.objects), len(C1.names)
    objects = tuple(f"0:{o}" for o in C0.objects) + \
        tuple(f"1:{o}" for o in C1.objects)
    names = [f"0:{s}" for s in C0.names] + [f"1:{s}" for s in C1.names]
    source = list(C0.source) + [n0 + s for s in C1.source]
    target = list(C0.target) + [n0 + t for t in C1.target]
    cross_idx: dict[tuple[int, int], int] = {}
    for x in range(n0):
        for phi in range(m1):
            if C1.source[phi] != F.obj_map[x]:
                continue
            cross_idx[(x, phi)] = len(names)
            names.append(f"x:{C0.objects[x]}/{C1.names[phi]}")
            source.append(x)
            target.append(n0 + C1.target[phi])
    compose = {}
    for (g, f), h in C0.compose.items():
        compose[(g, f)] = h
    for (g, f), h in C1.compose.items():
        compose[(m0 + g, m0 + f)] = m0 + h
    for (x, phi), c in cross_idx.items():
        for f in range(m0):      # cross after C0
            if C0.target[f] == x:
                compose[(c, f)] = cross_idx[
                    (C0.source[f], C1.compose[(phi, F.mor_map[f])])]
        for h in range(m1):      # C1 after cross
            if C1.source[h] == C1.target[phi]:
                compose[(m0 + h, c)] = cross_idx[(x, C1.compose[(h, phi)])]
    identities = tuple(C0.identities) + tuple(m0 + i for i in C1.identities)
    cat = FiniteCategory(objects, tuple(names), tuple(source), tuple(target),
                         compose, identities)
    arrow = walking_arrow()
    obj_map = tuple([0] * n0 + [1] * n1)
    # the walking arrow's morphisms: id:0, 0<1, id:1 in construction order
    id0, mid, id1 = 0, 1, 2
    assert arrow.names[mid] == "0<1"
    mor_map = [id0] * m0 + [id1] * m1 + [mid] * len(cross_idx)
    proj = CatFunctor(cat, arrow, obj_map, tuple(mor_map))
    return cat, proj


def set_valued_collage(fiber0, fiber1, transport) -> tuple[FiniteCategory, CatFunctor]:
    """Grothendieck construction of a set-valued functor on the walking
    arrow: discrete fibers and one transport arrow per element of the
    source fiber."""
    C0 = discrete_category([f"a{i}" for i in range(fiber0)])
    C1 = discrete_category([f"b{i}" for i in range(fiber1)])
    obj_map = tuple(transport)
    mor_map = tuple(C1.identities[transport[o]] for o in range(fiber0))
    return collage(CatFunctor(C0, C1, obj_map, mor_map))
