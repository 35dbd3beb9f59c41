"""Pure handlers behind the service endpoints.

Each handler maps a request model to a response model; usage problems
raise UsageError and exhausted budgets raise BudgetExceeded, which both
the HTTP layer and the CLI translate to their own error surfaces."""

from __future__ import annotations

from ..core import (
    SimplicialError, SimplicialMap, Subcomplex, same_structure,
    simplex_count,
)
from ..homs import check_fibration, fibration_class
from ..anodyne import search_presentation
from ..slices import slice_under, wide_slice
from ..claims import run_claim
from ..exprlang import EvalError, ExprSyntaxError, eval_text
from ..jsonio import (
    cert_to_payload, map_from_payload, map_to_payload, report_to_payload,
    set_from_payload, set_to_payload, to_dot,
)
from .models import (
    BuildRequest, CertifyRequest, CertifyResponse, CheckRequest,
    CheckResponse, CountRequest, CountResponse, ExportRequest,
    ExportResponse, SliceRequest, SpaceResponse, VerifyRequest,
    VerifyResponse,
)


class UsageError(ValueError):
    pass


def _evaluate(expr: str):
    try:
        return eval_text(expr)
    except (ExprSyntaxError, EvalError, SimplicialError, OSError) as exc:
        raise UsageError(str(exc)) from exc


def build_space(req: BuildRequest) -> SpaceResponse:
    return SpaceResponse(space=set_to_payload(_evaluate(req.expr)))


def count_simplices(req: CountRequest) -> CountResponse:
    X = _evaluate(req.expr)
    return CountResponse(count=simplex_count(X, req.dim, req.mode))


def check_map(req: CheckRequest) -> CheckResponse:
    try:
        f = map_from_payload(req.map)
        kind = fibration_class(req.fibration_class)
        result = check_fibration(f, kind, req.max_dim, req.budget)
    except SimplicialError as exc:
        raise UsageError(str(exc)) from exc
    witness = None
    if result.witness is not None:
        problem = result.witness
        # the right leg of the problem is the checked map itself
        witness = {"problem": {"left": map_to_payload(problem.left),
                               "top": map_to_payload(problem.top),
                               "bottom": map_to_payload(problem.bottom)}}
    return CheckResponse(holds=result.holds,
                         fibration_class=req.fibration_class,
                         max_dim=req.max_dim, witness=witness)


def _locate_inside(sub, sup) -> frozenset:
    """Identify the members of `sub` inside `sup` by dimension, label and
    face structure; exact construction-label matching only."""
    assign = {}
    for x in sub.all_nondeg():
        matches = [y for y in sup.nondeg[x.dim] if y.label == x.label] \
            if x.dim <= sup.top_dim else []
        if x.dim:
            wanted = tuple(
                (ez.epi, assign[ez.target]) for ez in sub.faces(x))
            matches = [y for y in matches
                       if tuple((ez.epi, ez.target)
                                for ez in sup.faces(y)) == wanted]
        if len(matches) != 1:
            raise UsageError(
                f"cannot locate simplex {x.label or x.key()!r} of the "
                f"subcomplex inside the ambient expression")
        assign[x] = matches[0]
    return frozenset(assign.values())


def certify_inclusion(req: CertifyRequest) -> CertifyResponse:
    sub = _evaluate(req.sub_expr)
    sup = _evaluate(req.sup_expr)
    members = _locate_inside(sub, sup)
    try:
        base = Subcomplex(sup, members)
    except SimplicialError as exc:
        raise UsageError(f"not a subcomplex: {exc}") from exc
    kind = fibration_class(req.fibration_class)
    res = search_presentation(base, kind, req.budget)
    return CertifyResponse(
        status=res.status,
        certificate=cert_to_payload(res.presentation) if res else None,
        steps=len(res.presentation) if res else None,
        tried=res.tried)


def slice_space(req: SliceRequest) -> SpaceResponse:
    try:
        X = set_from_payload(req.space)
        p = map_from_payload(req.map)
    except SimplicialError as exc:
        raise UsageError(str(exc)) from exc
    if not same_structure(p.target, X):
        raise UsageError("the map's target is not the given space")
    p = SimplicialMap(p.source, X, p.assign)
    maker = wide_slice if req.kind == "wide-slice" else slice_under
    try:
        ms = maker(X, p, req.max_dim)
    except SimplicialError as exc:
        raise UsageError(str(exc)) from exc
    return SpaceResponse(space=set_to_payload(ms.space))


def verify_claim(req: VerifyRequest) -> VerifyResponse:
    try:
        reports = run_claim(req.claim, req.n, req.bound)
    except SimplicialError as exc:
        raise UsageError(str(exc)) from exc
    return VerifyResponse(passed=all(r.passed for r in reports),
                          reports=[report_to_payload(r) for r in reports])


def export_space(req: ExportRequest) -> ExportResponse:
    X = _evaluate(req.expr)
    if req.format == "json":
        from ..jsonio import set_to_json
        return ExportResponse(payload=set_to_json(X) + "\n")
    return ExportResponse(payload=to_dot(X))
