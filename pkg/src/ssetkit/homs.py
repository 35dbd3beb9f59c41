"""Exhaustive enumeration of simplicial maps and lifting-problem solving.

All searches assign the nondegenerate simplices of the domain in
increasing dimension.  Once every face of a simplex is assigned, its
image is forced into the finite candidate list read off a
boundary-indexed table of the target; this prunes hard enough that the
backtracking is near-linear on the nerve-like targets the checkers run
against.  Every fibration check is bounded by an explicit max_dim and
says so in its result; a global node budget turns runaway searches into
a distinct error rather than a silent false negative.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Optional

from .operators import SimplicialOperator, compose, degeneracy, face, identity
from .core import (
    EZForm, SetBuilder, SimplexId, SimplicialError, SimplicialMap,
    SimplicialSet, act, compose_maps, identity_map, map_to_point, nondeg_form,
)
from .build import (
    boundary_inclusion, horn_inclusion, product, product_map, simplex_map,
    standard_simplex,
)


DEFAULT_BUDGET = int(os.environ.get("SSETKIT_BUDGET", "2000000"))


class BudgetExceeded(RuntimeError):
    """A search ran out of its node budget (distinct from a negative)."""


class FibrationClass(Enum):
    """Which family of lifting problems a map is tested against."""

    INNER = "inner"
    LEFT = "left"
    RIGHT = "right"
    KAN = "kan"
    TRIVIAL = "trivial"

    def horn_indices(self, n: int) -> range:
        if self is FibrationClass.INNER:
            return range(1, n)
        if self is FibrationClass.LEFT:
            return range(0, n)
        if self is FibrationClass.RIGHT:
            return range(1, n + 1)
        if self is FibrationClass.KAN:
            return range(0, n + 1)
        raise SimplicialError("the trivial class is tested on boundaries")

    def test_family(self, max_dim: int) -> Iterable[SimplicialMap]:
        """The generating inclusions with filler dimension <= max_dim."""
        if self is FibrationClass.TRIVIAL:
            for n in range(0, max_dim + 1):
                yield boundary_inclusion(n)
        else:
            for n in range(1, max_dim + 1):
                for k in self.horn_indices(n):
                    yield horn_inclusion(n, k)

    def admits(self, n: int, k: int) -> bool:
        if self is FibrationClass.TRIVIAL:
            return False
        return n >= 1 and k in self.horn_indices(n)


def fibration_class(name: str) -> FibrationClass:
    try:
        return FibrationClass(name)
    except ValueError:
        raise SimplicialError(f"unknown fibration class {name!r}") from None


# -- assignment search --------------------------------------------------------


def _target_table(X: SimplicialSet, d: int) -> dict:
    """All d-simplices of X keyed by their face tuples (empty key at d=0)."""
    table = X._bdry_tables.get(d)
    if table is None:
        table = {}
        for s in X.simplices(d):
            key = tuple(act(X, face(d, i), s) for i in range(d + 1)) if d \
                else ()
            table.setdefault(key, []).append(s)
        X._bdry_tables[d] = table
    return table


class _Budget:
    __slots__ = ("left",)

    def __init__(self, n: Optional[int]):
        self.left = DEFAULT_BUDGET if n is None else n

    def spend(self):
        self.left -= 1
        if self.left < 0:
            raise BudgetExceeded("search budget exhausted")


def _search(A: SimplicialSet, X: SimplicialSet,
            fixed: dict[SimplexId, EZForm],
            constrain: Optional[Callable[[SimplexId, EZForm], bool]] = None,
            first_only: bool = False,
            budget: Optional[int] = None) -> list[SimplicialMap]:
    """All extensions of `fixed` to a simplicial map A -> X.

    `constrain(x, candidate)` may veto candidates (used to keep lifts over
    a given base map).  Results come in a deterministic order: simplices
    are filled dimension-major, candidates in target-table order."""
    todo = [x for x in A.all_nondeg() if x not in fixed]
    assign = dict(fixed)
    out: list[SimplicialMap] = []
    b = _Budget(budget)

    def candidates(x: SimplexId):
        if x.dim == 0:
            cands = _target_table(X, 0).get((), [])
        else:
            key = tuple(act(X, f.epi, assign[f.target]) for f in A.faces(x))
            cands = _target_table(X, x.dim).get(key, [])
        if constrain is None:
            return cands
        return [s for s in cands if constrain(x, s)]

    if not todo:
        b.spend()
        return [SimplicialMap(A, X, assign)]

    # iterative backtracking; domains can exceed the recursion limit
    stack = [iter(candidates(todo[0]))]
    while stack:
        i = len(stack) - 1
        x = todo[i]
        s = next(stack[-1], None)
        if s is None:
            stack.pop()
            assign.pop(x, None)
            continue
        b.spend()
        assign[x] = s
        if i + 1 == len(todo):
            out.append(SimplicialMap(A, X, assign))
            if first_only:
                return out
            del assign[x]
        else:
            stack.append(iter(candidates(todo[i + 1])))
    return out


def enumerate_maps(A: SimplicialSet, X: SimplicialSet,
                   budget: Optional[int] = None) -> list[SimplicialMap]:
    """All simplicial maps A -> X, in a deterministic order."""
    return _search(A, X, {}, budget=budget)


def subcomplex_fixed_points(incl: SimplicialMap,
                            f: SimplicialMap) -> dict[SimplexId, EZForm]:
    """Translate `f` along a subcomplex inclusion into a partial
    assignment on the inclusion's target."""
    if incl.source is not f.source:
        raise SimplicialError("inclusion does not start at the map's source")
    fixed: dict[SimplexId, EZForm] = {}
    for x, ez in incl.assign.items():
        if not ez.is_nondegenerate:
            raise SimplicialError("not a subcomplex inclusion")
        prev = fixed.setdefault(ez.target, f.assign[x])
        if prev != f.assign[x]:
            raise SimplicialError("inclusion is not injective")
    return fixed


def extensions(f: SimplicialMap, incl: SimplicialMap,
               budget: Optional[int] = None) -> list[SimplicialMap]:
    """All extensions of f along a subcomplex inclusion of its source."""
    return _search(incl.target, f.target, subcomplex_fixed_points(incl, f),
                   budget=budget)


def _section_of(epi: SimplicialOperator) -> SimplicialOperator:
    """A mono section of an epi (first preimage of each value)."""
    images = tuple(epi.images.index(v) for v in range(epi.target_dim + 1))
    return SimplicialOperator(epi.target_dim, epi.source_dim, images)


def close_partial(A: SimplicialSet, X: SimplicialSet,
                  partial: dict[SimplexId, EZForm]) -> dict[SimplexId, EZForm]:
    """Face-close a partial assignment, solving for supports through
    degenerate faces (possible since epis are split)."""
    closed = dict(partial)
    stack = list(partial)
    while stack:
        x = stack.pop()
        if x.dim == 0:
            continue
        img = closed[x]
        for i in range(x.dim + 1):
            fz = A.face(x, i)
            s_face = act(X, face(x.dim, i), img)
            want = s_face if fz.is_nondegenerate else \
                act(X, _section_of(fz.epi), s_face)
            y = fz.target
            if act(X, fz.epi, want) != s_face:
                raise SimplicialError("partial assignment has no closure")
            if y in closed:
                if closed[y] != want:
                    raise SimplicialError("inconsistent partial assignment")
            else:
                closed[y] = want
                stack.append(y)
    return closed


def maps_with_partial(A: SimplicialSet, X: SimplicialSet,
                      partial: dict[SimplexId, EZForm],
                      budget: Optional[int] = None) -> list[SimplicialMap]:
    """All maps A -> X agreeing with the given partial assignment."""
    return _search(A, X, close_partial(A, X, partial), budget=budget)


@dataclass
class LiftingProblem:
    """A commutative square: left mono i: A -> B, right p: X -> S, with
    top: A -> X and bottom: B -> S satisfying p.top = bottom.i."""

    left: SimplicialMap
    right: SimplicialMap
    top: SimplicialMap
    bottom: SimplicialMap

    def __post_init__(self):
        if compose_maps(self.right, self.top) != \
                compose_maps(self.bottom, self.left):
            raise SimplicialError("lifting square does not commute")


def solve_lift(problem: LiftingProblem,
               budget: Optional[int] = None) -> Optional[SimplicialMap]:
    """A diagonal d with d.i = top and p.d = bottom, or None.

    The search is exhaustive over extensions of top along the left mono,
    pruned by the bottom constraint, hence complete."""
    p, bottom = problem.right, problem.bottom
    fixed = subcomplex_fixed_points(problem.left, problem.top)

    def over_base(x: SimplexId, cand: EZForm) -> bool:
        return p(cand) == bottom.assign[x]

    found = _search(problem.left.target, p.source, fixed,
                    constrain=over_base, first_only=True, budget=budget)
    return found[0] if found else None


@dataclass
class FibrationCheck:
    holds: bool
    kind: FibrationClass
    max_dim: int
    witness: Optional[LiftingProblem] = None

    def __bool__(self):
        return self.holds

    def __repr__(self):
        status = "holds" if self.holds else "fails"
        return f"FibrationCheck({self.kind.value} <= {self.max_dim}: {status})"


def check_fibration(p: SimplicialMap, kind: FibrationClass, max_dim: int,
                    budget: Optional[int] = None) -> FibrationCheck:
    """Right lifting property of p against the class family up to max_dim.

    On failure the first unfillable problem (in deterministic order) is
    the witness.  Truncated sources or targets insist on checking only
    strictly below their truncation mark."""
    if max_dim < 0:
        raise SimplicialError("max_dim must be nonnegative")
    for X in (p.source, p.target):
        if X.truncation_dim is not None and max_dim > X.truncation_dim - 1:
            raise SimplicialError(
                f"fibration checks against a {X.truncation_dim}-truncated "
                f"set need max_dim <= {X.truncation_dim - 1}")
    for incl in kind.test_family(max_dim):
        A = incl.source
        for top in enumerate_maps(A, p.source, budget):
            below = compose_maps(p, top)
            for bottom in extensions(below, incl, budget):
                problem = LiftingProblem(incl, p, top, bottom)
                if solve_lift(problem, budget) is None:
                    return FibrationCheck(False, kind, max_dim, problem)
    return FibrationCheck(True, kind, max_dim)


def is_quasicategory(X: SimplicialSet, max_dim: int) -> bool:
    return bool(check_fibration(map_to_point(X, standard_simplex(0)),
                                FibrationClass.INNER, max_dim))


# -- equivalence edges ----------------------------------------------------------


def is_equivalence_edge(X: SimplicialSet, e: EZForm,
                        precheck_dim: int = 2) -> bool:
    """Whether the edge admits a homotopy inverse: some reversed edge e'
    together with 2-simplices witnessing e'e ~ id and ee' ~ id.

    X must fill inner horns at the checked bound; degenerate edges are
    always equivalences.  The two witness roles are symmetric, so the
    relation this computes is symmetric in e and e'."""
    if e.dim != 1:
        raise SimplicialError("is_equivalence_edge wants an edge")
    if precheck_dim and not is_quasicategory(X, precheck_dim):
        raise SimplicialError(f"not a quasicategory at bound {precheck_dim}")
    d0 = act(X, face(1, 0), e)   # terminal vertex
    d1 = act(X, face(1, 1), e)   # initial vertex
    id_d1 = act(X, degeneracy(0, 0), d1)
    id_d0 = act(X, degeneracy(0, 0), d0)
    two = X.simplices(2)
    reversed_edges = [e2 for e2 in X.simplices(1)
                      if act(X, face(1, 0), e2) == d1
                      and act(X, face(1, 1), e2) == d0]
    for e2 in reversed_edges:
        left_ok = any(act(X, face(2, 2), t) == e
                      and act(X, face(2, 0), t) == e2
                      and act(X, face(2, 1), t) == id_d1
                      for t in two)
        if not left_ok:
            continue
        right_ok = any(act(X, face(2, 2), t) == e2
                       and act(X, face(2, 0), t) == e
                       and act(X, face(2, 1), t) == id_d0
                       for t in two)
        if right_ok:
            return True
    return False


# -- enumerated map spaces (shared by exponentials and slices) ------------------


@dataclass
class MapSpace:
    """A truncated simplicial set whose n-simplices are maps, with the
    operator action given by precomposition."""

    space: SimplicialSet
    members: dict[SimplexId, SimplicialMap]
    _ids: list[dict[SimplicialMap, SimplexId]]
    _act_by: Callable[[SimplicialOperator, SimplicialMap], SimplicialMap]

    def locate(self, f: SimplicialMap, n: int) -> EZForm:
        """EZ form of an arbitrary level-n member map."""
        for i in range(n):
            deg_i = compose(face(n, i), degeneracy(n - 1, i))
            if self._act_by(deg_i, f) == f:
                inner = self.locate(self._act_by(face(n, i), f), n - 1)
                return EZForm(compose(inner.epi, degeneracy(n - 1, i)),
                              inner.target)
        return nondeg_form(self._ids[n][f])


def map_space(levels: Callable[[int], list[SimplicialMap]],
              act_by: Callable[[SimplicialOperator, SimplicialMap], SimplicialMap],
              max_dim: int) -> MapSpace:
    """Assemble level map lists into a truncated simplicial set.

    A level-n map is degenerate at i exactly when it equals its own
    i-th degeneracy of its i-th face; normal forms strip those."""
    builder = SetBuilder()
    ids: list[dict[SimplicialMap, SimplexId]] = []
    members: dict[SimplexId, SimplicialMap] = {}
    level_maps: list[list[SimplicialMap]] = []
    for n in range(max_dim + 1):
        level_maps.append(levels(n))
        ids.append({})
        for f in level_maps[n]:
            degenerate = False
            for i in range(n):
                deg_i = compose(face(n, i), degeneracy(n - 1, i))
                if act_by(deg_i, f) == f:
                    degenerate = True
                    break
            if not degenerate:
                x = builder.add(n)
                ids[n][f] = x
                members[x] = f
    ms = MapSpace(None, members, ids, act_by)  # type: ignore[arg-type]
    for x, f in members.items():
        n = x.dim
        if n == 0:
            continue
        builder.set_faces(x, (ms.locate(act_by(face(n, i), f), n - 1)
                              for i in range(n + 1)))
    ms.space = builder.build(truncation_dim=max_dim)
    return ms


def exponential(X: SimplicialSet, B: SimplicialSet, max_dim: int,
                budget: Optional[int] = None) -> MapSpace:
    """The mapping space of maps out of B, truncated at max_dim: its
    n-simplices are the maps (n-simplex x B) -> X, acted on by
    precomposition in the simplex coordinate."""
    if X.truncation_dim is not None or B.truncation_dim is not None:
        raise SimplicialError("exponentials need untruncated arguments")
    prods = {n: product(standard_simplex(n), B) for n in range(max_dim + 1)}
    id_b = identity_map(B)

    def act_by(alpha: SimplicialOperator, f: SimplicialMap) -> SimplicialMap:
        pm = product_map(simplex_map(alpha), id_b,
                         prods[alpha.source_dim], prods[alpha.target_dim])
        return compose_maps(f, pm)

    return map_space(lambda n: enumerate_maps(prods[n].space, X, budget),
                     act_by, max_dim)
