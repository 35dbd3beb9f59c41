"""Finite simplicial sets stored by nondegenerate simplices.

A simplicial set is kept in Eilenberg-Zilber normal form: only
nondegenerate simplices are stored, every simplex is represented uniquely
as (epi, nondegenerate target), and the stored face data assigns to each
nondegenerate n-simplex and each 0 <= i <= n the normal form of its i-th
face.  The action of an arbitrary operator is computed by `act`, which
peels cofaces off the mono part of the operator and renormalizes; the EZ
lemma guarantees the result is independent of the peeling order (this is
property-tested heavily).

Simplex identity is positional: (dim, index) inside the owning set.
Labels are cosmetic only and never participate in equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Optional

from .operators import (
    SimplicialOperator, OperatorError, compose, epi_mono_factor, face,
    identity, all_epis, squeeze_mono,
)


class SimplicialError(ValueError):
    """Raised for malformed simplicial data or incompatible arguments."""


@dataclass(frozen=True)
class SimplexId:
    dim: int
    index: int
    label: Optional[str] = field(default=None, compare=False, hash=False, repr=False)

    def key(self) -> str:
        return f"{self.dim}.{self.index}"

    def __repr__(self):
        if self.label is not None:
            return f"<{self.dim}.{self.index}:{self.label}>"
        return f"<{self.dim}.{self.index}>"


@dataclass(frozen=True)
class EZForm:
    """The unique normal form (epi, nondegenerate target) of a simplex."""

    epi: SimplicialOperator
    target: SimplexId

    def __post_init__(self):
        if not self.epi.is_epi:
            raise SimplicialError(f"EZForm operator {self.epi!r} is not epi")
        if self.epi.target_dim != self.target.dim:
            raise SimplicialError(
                f"EZForm operator {self.epi!r} does not match target "
                f"dimension {self.target.dim}")

    @property
    def dim(self) -> int:
        return self.epi.source_dim

    @property
    def is_nondegenerate(self) -> bool:
        return self.epi.is_identity

    def __repr__(self):
        if self.is_nondegenerate:
            return f"ez{self.target!r}"
        return f"ez({self.epi!r}, {self.target!r})"


def nondeg_form(x: SimplexId) -> EZForm:
    return EZForm(identity(x.dim), x)


class SimplicialSet:
    """A finite simplicial set.

    nondeg[d] lists the nondegenerate d-simplices; _faces[x] is the tuple
    of EZ forms of the faces of x.  Values are immutable after
    construction; internal caches only memoize pure computations.
    """

    __slots__ = ("nondeg", "_faces", "top_dim", "_act_cache", "_bdry_tables",
                 "truncation_dim", "__weakref__")

    def __init__(self, nondeg, faces, truncation_dim: Optional[int] = None):
        self.nondeg: tuple[tuple[SimplexId, ...], ...] = tuple(
            tuple(row) for row in nondeg)
        while self.nondeg and not self.nondeg[-1]:
            self.nondeg = self.nondeg[:-1]
        self._faces: dict[SimplexId, tuple[EZForm, ...]] = dict(faces)
        self.top_dim: int = len(self.nondeg) - 1
        self.truncation_dim = truncation_dim
        self._act_cache: dict = {}
        self._bdry_tables: dict = {}
        self._check_shape()

    # -- structure ---------------------------------------------------------

    def _check_shape(self):
        for d, row in enumerate(self.nondeg):
            for i, x in enumerate(row):
                if x.dim != d or x.index != i:
                    raise SimplicialError(f"misplaced simplex {x!r} at ({d},{i})")
                if d == 0:
                    if self._faces.get(x, ()) != ():
                        raise SimplicialError("vertices have no faces")
                    self._faces[x] = ()
                    continue
                fs = self._faces.get(x)
                if fs is None or len(fs) != d + 1:
                    raise SimplicialError(f"simplex {x!r} needs {d + 1} faces")
                for ez in fs:
                    if ez.dim != d - 1:
                        raise SimplicialError(
                            f"face of {x!r} has dimension {ez.dim}, want {d - 1}")
                    t = ez.target
                    if t.dim > d - 1 or t.index >= len(self.nondeg[t.dim]):
                        raise SimplicialError(f"face target {t!r} not in set")

    @property
    def is_empty(self) -> bool:
        return self.top_dim < 0

    def simplex(self, dim: int, index: int) -> SimplexId:
        return self.nondeg[dim][index]

    def face(self, x: SimplexId, i: int) -> EZForm:
        return self._faces[x][i]

    def faces(self, x: SimplexId) -> tuple[EZForm, ...]:
        return self._faces[x]

    def nondeg_count(self, d: int) -> int:
        if 0 <= d <= self.top_dim:
            return len(self.nondeg[d])
        return 0

    def nondeg_counts(self) -> tuple[int, ...]:
        return tuple(len(row) for row in self.nondeg)

    def all_nondeg(self) -> Iterable[SimplexId]:
        for row in self.nondeg:
            yield from row

    def simplices(self, n: int) -> list[EZForm]:
        """All n-simplices, degenerate ones included, in a deterministic
        (target dimension, target index, epi) order."""
        out = []
        for m in range(min(n, self.top_dim) + 1):
            for x in self.nondeg[m]:
                for e in all_epis(n, m):
                    out.append(EZForm(e, x))
        return out

    def size(self) -> int:
        return sum(len(row) for row in self.nondeg)

    def __repr__(self):
        kind = "TruncatedSimplicialSet" if self.truncation_dim is not None \
            else "SimplicialSet"
        return f"{kind}(nondeg={list(self.nondeg_counts())})"


class SetBuilder:
    """Accumulates simplices dimension by dimension, then freezes."""

    def __init__(self):
        self.rows: list[list[SimplexId]] = []
        self.faces: dict[SimplexId, tuple[EZForm, ...]] = {}

    def add(self, dim: int, label: Optional[str] = None) -> SimplexId:
        while len(self.rows) <= dim:
            self.rows.append([])
        x = SimplexId(dim, len(self.rows[dim]), label)
        self.rows[dim].append(x)
        return x

    def set_faces(self, x: SimplexId, fs: Iterable[EZForm]):
        self.faces[x] = tuple(fs)

    def build(self, truncation_dim: Optional[int] = None) -> SimplicialSet:
        return SimplicialSet(self.rows, self.faces, truncation_dim)


_EMPTY: Optional[SimplicialSet] = None


def empty_set() -> SimplicialSet:
    """The empty simplicial set (a singleton, so identity checks agree)."""
    global _EMPTY
    if _EMPTY is None:
        _EMPTY = SimplicialSet((), {})
    return _EMPTY


# -- normal form action ----------------------------------------------------

def _normalize(X: SimplicialSet, x: SimplexId, beta: SimplicialOperator) -> EZForm:
    """Normal form of the action of an arbitrary operator beta on the
    nondegenerate simplex x."""
    sigma, delta = epi_mono_factor(beta)
    if delta.is_identity:
        return EZForm(sigma, x)
    i = delta.omitted()[-1]
    rest = squeeze_mono(delta, i)
    f = X.face(x, i)
    inner = _normalize(X, f.target, compose(f.epi, rest))
    return EZForm(compose(inner.epi, sigma), inner.target)


def act(X: SimplicialSet, alpha: SimplicialOperator, s: EZForm) -> EZForm:
    """The contravariant action: act(alpha, s) is the alpha-indexed face or
    degeneracy of s, in EZ normal form.

    act(id, s) == s and act(beta . alpha, s) == act(alpha, act(beta, s)).
    """
    if alpha.target_dim != s.dim:
        raise SimplicialError(
            f"operator {alpha!r} cannot act on a {s.dim}-simplex")
    key = (alpha, s)
    hit = X._act_cache.get(key)
    if hit is None:
        hit = _normalize(X, s.target, compose(s.epi, alpha))
        X._act_cache[key] = hit
    return hit


def vertices_of(X: SimplicialSet, s: EZForm) -> tuple[EZForm, ...]:
    """The vertex tuple of a simplex, via the vertex-picking operators."""
    return tuple(act(X, SimplicialOperator(0, s.dim, (t,)), s)
                 for t in range(s.dim + 1))


# -- validation ------------------------------------------------------------

class ValidationResult:
    def __init__(self, problems):
        self.problems = list(problems)

    def __bool__(self):
        return not self.problems

    def __repr__(self):
        return "valid" if self else f"invalid({self.problems[0]}, ...)"


def validate(X: SimplicialSet) -> ValidationResult:
    """Check every simplicial identity over the stored face data.

    The face-face identities d_i d_j = d_{j-1} d_i for i < j suffice: the
    degeneracy identities hold by construction of the EZ action.
    """
    problems = []
    if X.truncation_dim is not None and X.top_dim > X.truncation_dim:
        problems.append(f"data above the truncation mark {X.truncation_dim}")
    for d in range(2, X.top_dim + 1):
        for x in X.nondeg[d]:
            s = nondeg_form(x)
            try:
                for j in range(1, d + 1):
                    dj = act(X, face(d, j), s)
                    for i in range(j):
                        lhs = act(X, face(d - 1, i), dj)
                        rhs = act(X, face(d - 1, j - 1), act(X, face(d, i), s))
                        if lhs != rhs:
                            problems.append(
                                f"identity d_{i} d_{j} failed at {x!r}: "
                                f"{lhs!r} != {rhs!r}")
            except (SimplicialError, OperatorError, KeyError, IndexError) as exc:
                problems.append(f"malformed face data at {x!r}: {exc}")
    return ValidationResult(problems)


def simplex_count(X: SimplicialSet, n: int, mode: str = "all") -> int:
    """Number of n-simplices: mode 'all' counts degenerate ones too (each
    nondegenerate m-simplex contributes C(n, m) epis), 'nondegenerate'
    counts the stored list."""
    if n < 0:
        raise SimplicialError("dimension must be nonnegative")
    if mode == "nondegenerate":
        return X.nondeg_count(n)
    if mode == "all":
        return sum(comb(n, m) * X.nondeg_count(m)
                   for m in range(min(n, X.top_dim) + 1))
    raise SimplicialError(f"unknown count mode {mode!r}")


# -- simplicial maps -------------------------------------------------------

class SimplicialMap:
    """A map of simplicial sets, stored by the EZ forms of the images of
    the nondegenerate simplices of the source."""

    __slots__ = ("source", "target", "assign", "_hash")

    def __init__(self, source: SimplicialSet, target: SimplicialSet, assign):
        self.source = source
        self.target = target
        if isinstance(assign, dict):
            items = tuple(sorted(assign.items(),
                                 key=lambda kv: (kv[0].dim, kv[0].index)))
        else:
            items = tuple(assign)
        self.assign: dict[SimplexId, EZForm] = dict(items)
        self._hash = hash((id(source), id(target), items))
        for x in source.all_nondeg():
            ez = self.assign.get(x)
            if ez is None:
                raise SimplicialError(f"map misses simplex {x!r}")
            if ez.dim != x.dim:
                raise SimplicialError(
                    f"image of {x!r} has dimension {ez.dim}")

    def __call__(self, s) -> EZForm:
        """Image of a simplex (EZForm or nondegenerate SimplexId)."""
        if isinstance(s, SimplexId):
            return self.assign[s]
        return act(self.target, s.epi, self.assign[s.target])

    def __eq__(self, other):
        return isinstance(other, SimplicialMap) and \
            self.source is other.source and self.target is other.target and \
            self.assign == other.assign

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"SimplicialMap({self.source!r} -> {self.target!r})"


def identity_map(X: SimplicialSet) -> SimplicialMap:
    return SimplicialMap(X, X, {x: nondeg_form(x) for x in X.all_nondeg()})


def compose_maps(g: SimplicialMap, f: SimplicialMap) -> SimplicialMap:
    if f.target is not g.source and not same_structure(f.target, g.source):
        raise SimplicialError("maps are not composable")
    return SimplicialMap(f.source, g.target,
                         {x: g(ez) for x, ez in f.assign.items()})


def validate_map(f: SimplicialMap) -> ValidationResult:
    """Naturality: the assignment commutes with every face operator."""
    problems = []
    X, Y = f.source, f.target
    for x in X.all_nondeg():
        for i in range(x.dim + 1):
            if x.dim == 0:
                break
            want = f(X.face(x, i))
            got = act(Y, face(x.dim, i), f.assign[x])
            if want != got:
                problems.append(f"naturality fails at {x!r} face {i}")
    return ValidationResult(problems)


def is_mono(f: SimplicialMap) -> bool:
    """Levelwise injectivity; equivalently nondegenerate simplices map to
    distinct nondegenerate simplices."""
    seen = set()
    for x in f.source.all_nondeg():
        ez = f.assign[x]
        if not ez.is_nondegenerate or ez in seen:
            return False
        seen.add(ez)
    return True


def map_to_point(X: SimplicialSet, P: SimplicialSet) -> SimplicialMap:
    """The unique map to a one-vertex target (constant at its vertex)."""
    v = P.simplex(0, 0)
    return constant_map(X, P, v)


def constant_map(X: SimplicialSet, Y: SimplicialSet, v: SimplexId) -> SimplicialMap:
    assign = {}
    for x in X.all_nondeg():
        e = SimplicialOperator(x.dim, 0, (0,) * (x.dim + 1))
        assign[x] = EZForm(e, v)
    return SimplicialMap(X, Y, assign)


def from_empty(X: SimplicialSet) -> SimplicialMap:
    return SimplicialMap(empty_set(), X, {})


def same_structure(X: SimplicialSet, Y: SimplicialSet) -> bool:
    """Bit-exact structural equality (indices, faces); labels ignored."""
    if X is Y:
        return True
    if X.nondeg_counts() != Y.nondeg_counts():
        return False
    if X.truncation_dim != Y.truncation_dim:
        return False
    for x, y in zip(X.all_nondeg(), Y.all_nondeg()):
        if X._faces[x] != Y._faces[y]:
            return False
    return True


# -- subcomplexes ----------------------------------------------------------

class Subcomplex:
    """A face-closed set of nondegenerate simplices of a parent set."""

    __slots__ = ("parent", "members", "_as_set")

    def __init__(self, parent: SimplicialSet, members: Iterable[SimplexId]):
        self.parent = parent
        self.members: frozenset[SimplexId] = frozenset(members)
        for x in self.members:
            if x.dim > parent.top_dim or x.index >= len(parent.nondeg[x.dim]):
                raise SimplicialError(f"foreign simplex {x!r}")
            for i in range(x.dim + 1) if x.dim else ():
                if parent.face(x, i).target not in self.members:
                    raise SimplicialError(
                        f"members not face-closed at {x!r} face {i}")
        self._as_set = None

    def __contains__(self, x: SimplexId) -> bool:
        return x in self.members

    def contains_form(self, ez: EZForm) -> bool:
        return ez.target in self.members

    def __eq__(self, other):
        return isinstance(other, Subcomplex) and self.parent is other.parent \
            and self.members == other.members

    def __hash__(self):
        return hash((id(self.parent), self.members))

    def __or__(self, other: "Subcomplex") -> "Subcomplex":
        self._check_sibling(other)
        return Subcomplex(self.parent, self.members | other.members)

    def __and__(self, other: "Subcomplex") -> "Subcomplex":
        self._check_sibling(other)
        return Subcomplex(self.parent, self.members & other.members)

    def __le__(self, other: "Subcomplex") -> bool:
        self._check_sibling(other)
        return self.members <= other.members

    def _check_sibling(self, other):
        if self.parent is not other.parent:
            raise SimplicialError("subcomplexes of different parents")

    def is_total(self) -> bool:
        return len(self.members) == self.parent.size()

    def sorted_members(self) -> list[SimplexId]:
        return sorted(self.members, key=lambda x: (x.dim, x.index))

    def as_pair(self):
        """(standalone SimplicialSet, inclusion into the parent)."""
        if self._as_set is None:
            builder = SetBuilder()
            old_to_new: dict[SimplexId, SimplexId] = {}
            for x in self.sorted_members():
                old_to_new[x] = builder.add(x.dim, x.label)
            for x in self.sorted_members():
                if x.dim:
                    builder.set_faces(
                        old_to_new[x],
                        (EZForm(ez.epi, old_to_new[ez.target])
                         for ez in self.parent.faces(x)))
            sub = builder.build()
            incl = SimplicialMap(
                sub, self.parent,
                {new: nondeg_form(old)
                 for old, new in old_to_new.items()})
            self._as_set = (sub, incl)
        return self._as_set

    def as_set(self) -> SimplicialSet:
        return self.as_pair()[0]

    def inclusion(self) -> SimplicialMap:
        return self.as_pair()[1]

    def __repr__(self):
        return f"Subcomplex({len(self.members)} of {self.parent!r})"


def generated_subcomplex(X: SimplicialSet, seeds: Iterable[SimplexId]) -> Subcomplex:
    """The smallest face-closed member set containing the seeds."""
    members = set()
    stack = list(seeds)
    for x in stack:
        if x.dim > X.top_dim or x.index >= len(X.nondeg[x.dim]):
            raise SimplicialError(f"foreign seed {x!r}")
    while stack:
        x = stack.pop()
        if x in members:
            continue
        members.add(x)
        if x.dim:
            for ez in X.faces(x):
                stack.append(ez.target)
    return Subcomplex(X, members)


def full_subcomplex(X: SimplicialSet) -> Subcomplex:
    return Subcomplex(X, X.all_nondeg())


def skeleton(X: SimplicialSet, n: int) -> Subcomplex:
    return Subcomplex(X, (x for x in X.all_nondeg() if x.dim <= n))


def image(f: SimplicialMap) -> Subcomplex:
    """The image subcomplex of a map (supports of all image simplices)."""
    return generated_subcomplex(
        f.target, (ez.target for ez in f.assign.values()))


def restrict(f: SimplicialMap, sub: Subcomplex) -> SimplicialMap:
    """Restriction of f to a subcomplex of its source, as a map from the
    standalone copy of the subcomplex."""
    if sub.parent is not f.source:
        raise SimplicialError("subcomplex does not live in the map's source")
    piece, incl = sub.as_pair()
    return SimplicialMap(piece, f.target,
                         {x: f(incl.assign[x]) for x in piece.all_nondeg()})


# -- isomorphism search ----------------------------------------------------

def _color_refine(X: SimplicialSet, rounds: int = 3) -> dict[SimplexId, int]:
    color = {x: x.dim for x in X.all_nondeg()}
    for _ in range(rounds):
        sig = {}
        for x in X.all_nondeg():
            fs = tuple((ez.epi, color[ez.target]) for ez in X.faces(x)) \
                if x.dim else ()
            sig[x] = (color[x], fs)
        palette = {s: c for c, s in enumerate(sorted(set(sig.values()),
                                                     key=repr))}
        new = {x: palette[sig[x]] for x in X.all_nondeg()}
        if new == color:
            break
        color = new
    return color


def isomorphic(X: SimplicialSet, Y: SimplicialSet, *,
               allow_truncation_mismatch: bool = False) -> Optional[SimplicialMap]:
    """Search for an isomorphism X -> Y by dimension-graded backtracking.

    Per-dimension counts and iterated face-signature colors prune before
    the search; None means no isomorphism exists (the search is complete).
    """
    if (X.truncation_dim is None) != (Y.truncation_dim is None) \
            and not allow_truncation_mismatch:
        raise SimplicialError(
            "refusing to compare truncated with untruncated sets; "
            "pass allow_truncation_mismatch=True to override")
    if X.nondeg_counts() != Y.nondeg_counts():
        return None
    cx, cy = _color_refine(X), _color_refine(Y)
    from collections import Counter
    if Counter(cx.values()) != Counter(cy.values()):
        return None
    xs = [x for row in X.nondeg for x in row]
    candidates: dict[SimplexId, list[SimplexId]] = {
        x: [y for y in Y.nondeg[x.dim] if cy[y] == cx[x]] for x in xs}

    assign: dict[SimplexId, SimplexId] = {}
    used: set[SimplexId] = set()

    def fits(x: SimplexId, y: SimplexId) -> bool:
        if x.dim == 0:
            return True
        for ez, fz in zip(X.faces(x), Y.faces(y)):
            if ez.epi != fz.epi or assign[ez.target] != fz.target:
                return False
        return True

    def go(i: int) -> bool:
        if i == len(xs):
            return True
        x = xs[i]
        for y in candidates[x]:
            if y in used or not fits(x, y):
                continue
            assign[x] = y
            used.add(y)
            if go(i + 1):
                return True
            del assign[x]
            used.discard(y)
        return False

    if not go(0):
        return None
    return SimplicialMap(X, Y, {x: nondeg_form(y) for x, y in assign.items()})
