"""Cell presentations: certificates that an inclusion is a composite of
horn pushouts, with a verifier and a backtracking search.

A step (n, k, x) attaches the nondegenerate n-simplex x to the current
stage along its k-th horn: every face but the k-th must already lie in
the stage and the k-th face must be a fresh nondegenerate simplex, so the
extension adds exactly two nondegenerate simplices (x and its k-th face).
Attachments are restricted to simplices of the ambient set glued along
their own horns; general anodyne maps are retracts of cell composites
with arbitrary attaching maps, so the search is sound but incomplete, and
a failed search is never a refutation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .core import (
    SimplexId, SimplicialError, SimplicialSet, Subcomplex,
)
from .homs import FibrationClass


@dataclass
class CellPresentation:
    """An ordered horn-pushout decomposition of base <= target inside an
    ambient simplicial set."""

    parent: SimplicialSet
    base: frozenset[SimplexId]
    target: frozenset[SimplexId]
    kind: FibrationClass
    steps: tuple[tuple[int, int, SimplexId], ...]

    def __len__(self):
        return len(self.steps)


@dataclass
class PresentationCheck:
    ok: bool
    failing_step: Optional[int] = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def _step_additions(X: SimplicialSet, stage: set, n: int, k: int,
                    x: SimplexId, kind: FibrationClass) -> Optional[str]:
    """None if (n, k, x) is a valid attachment to `stage`, else the reason
    it is not.  On success the caller adds x and its k-th face."""
    if not kind.admits(n, k):
        return f"horn ({n},{k}) is outside the {kind.value} class"
    if x.dim != n:
        return f"simplex {x!r} is not {n}-dimensional"
    if X.nondeg[n][x.index] != x:
        return f"simplex {x!r} is foreign to the ambient set"
    if x in stage:
        return f"simplex {x!r} already in the stage"
    fs = X.faces(x)
    for j in range(n + 1):
        if j == k:
            continue
        if fs[j].target not in stage:
            return f"face {j} of {x!r} is missing from the stage"
    dk = fs[k]
    if not dk.is_nondegenerate:
        return f"face {k} of {x!r} is degenerate"
    if dk.target in stage:
        return f"face {k} of {x!r} is already in the stage"
    return None


def verify_presentation(cert: CellPresentation) -> PresentationCheck:
    """Stepwise verification of all attachment invariants plus total
    coverage of the target."""
    X = cert.parent
    try:
        Subcomplex(X, cert.base)
        Subcomplex(X, cert.target)
    except SimplicialError as exc:
        return PresentationCheck(False, None, f"bad base or target: {exc}")
    if not cert.base <= cert.target:
        return PresentationCheck(False, None, "base exceeds target")
    stage = set(cert.base)
    for idx, (n, k, x) in enumerate(cert.steps):
        reason = _step_additions(X, stage, n, k, x, cert.kind)
        if reason is None and x not in cert.target:
            reason = f"simplex {x!r} leaves the target"
        if reason is not None:
            return PresentationCheck(False, idx, reason)
        stage.add(x)
        stage.add(X.faces(x)[k].target)
    if stage != set(cert.target):
        missing = len(set(cert.target) - stage)
        return PresentationCheck(False, None,
                                 f"{missing} target simplices uncovered")
    return PresentationCheck(True)


@dataclass
class SearchResult:
    presentation: Optional[CellPresentation]
    status: str                 # found | exhausted | budget
    tried: int = 0

    def __bool__(self):
        return self.presentation is not None


def search_presentation(base: Subcomplex, kind: FibrationClass,
                        budget: int = 100000,
                        target: Optional[Subcomplex] = None) -> SearchResult:
    """Backtracking search for a cell presentation of base <= target
    (target defaults to the whole ambient set).

    Moves are tried lowest dimension first, then lowest simplex index,
    then lowest horn index, with chronological backtracking; the budget
    counts attempted stage extensions.  'exhausted' means the restricted
    search space was emptied, which is not a proof that the inclusion is
    outside the class."""
    X = base.parent
    if target is None:
        tgt = frozenset(X.all_nondeg())
    else:
        if target.parent is not X:
            raise SimplicialError("target lives in a different parent")
        tgt = target.members
    if not base.members <= tgt:
        raise SimplicialError("base is not contained in the target")
    want = len(tgt)
    missing = sorted((x for x in tgt - base.members),
                     key=lambda x: (x.dim, x.index))
    tried = 0
    seen_stages: set[frozenset] = set()
    steps: list[tuple[int, int, SimplexId]] = []

    def moves(stage: set):
        for x in missing:
            if x in stage or x.dim < 1:
                continue
            n = x.dim
            fs = X.faces(x)
            for k in kind.horn_indices(n):
                bad = False
                for j in range(n + 1):
                    if j == k:
                        continue
                    if fs[j].target not in stage:
                        bad = True
                        break
                if bad:
                    continue
                dk = fs[k]
                if dk.is_nondegenerate and dk.target not in stage \
                        and dk.target in tgt:
                    yield (n, k, x)

    def go(stage: set) -> bool:
        nonlocal tried
        if len(stage) == want:
            return True
        frozen = frozenset(stage)
        if frozen in seen_stages:
            return False
        for n, k, x in moves(stage):
            tried += 1
            if tried > budget:
                raise _BudgetStop
            dk = X.faces(x)[k].target
            stage.add(x)
            stage.add(dk)
            steps.append((n, k, x))
            if go(stage):
                return True
            steps.pop()
            stage.discard(x)
            stage.discard(dk)
        seen_stages.add(frozen)
        return False

    try:
        found = go(set(base.members))
    except _BudgetStop:
        return SearchResult(None, "budget", tried)
    if not found:
        return SearchResult(None, "exhausted", tried)
    cert = CellPresentation(X, base.members, tgt, kind, tuple(steps))
    check = verify_presentation(cert)
    if not check:
        raise SimplicialError(f"search produced an invalid certificate: "
                              f"{check.reason}")
    return SearchResult(cert, "found", tried)


class _BudgetStop(Exception):
    pass


@dataclass
class CancellationReport:
    """Search outcomes for a composable pair of inclusions.

    Whenever the first inclusion and the composite both certify, a
    certificate for the second is expected; a miss there is logged as a
    search-incompleteness datum, never as a refutation."""

    first: SearchResult
    composite: SearchResult
    second: SearchResult
    expected_second: bool = field(init=False)
    anomaly: bool = field(init=False)

    def __post_init__(self):
        self.expected_second = bool(self.first) and bool(self.composite)
        self.anomaly = self.expected_second and not self.second


def cancellation_probe(inner_sub: Subcomplex, mid_sub: Subcomplex,
                       kind: FibrationClass, budget: int = 100000,
                       outer_sub: Optional[Subcomplex] = None) -> CancellationReport:
    """Run the search on A <= B, A <= C and B <= C for subcomplexes
    A <= B <= C of a common parent (C defaults to everything)."""
    X = inner_sub.parent
    if mid_sub.parent is not X:
        raise SimplicialError("subcomplexes of different parents")
    if not inner_sub.members <= mid_sub.members:
        raise SimplicialError("first subcomplex must sit inside the second")
    first = search_presentation(inner_sub, kind, budget, target=mid_sub)
    composite = search_presentation(inner_sub, kind, budget, target=outer_sub)
    second = search_presentation(mid_sub, kind, budget, target=outer_sub)
    return CancellationReport(first, composite, second)
