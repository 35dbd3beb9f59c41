"""One verification operation per combinatorial claim the suite covers.

Each operation reconstructs its claim from scratch (never trusting a
constructor's intent: subcomplexes are built one way and located another,
and both must agree) and returns a structured report whose details are
re-checkable: subcomplex identities by isomorphism search or member
equality, certificates by the presentation verifier, fibrancy by the
lifting checker.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterable, Optional

from .operators import SimplicialOperator, face
from .core import (
    EZForm, SimplexId, SimplicialError, SimplicialMap, SimplicialSet,
    Subcomplex, generated_subcomplex, image, isomorphic, nondeg_form,
    simplex_count, validate, vertices_of,
)
from .build import (
    FiberProduct, WideJoin, boundary, boundary_inclusion, find_subset_simplex,
    horn_inclusion, product, pushout, simplex_map, standard_simplex,
    vertex_map, wide_join, wide_join_full,
)
from .cats import nerve_map
from .homs import FibrationClass, check_fibration, enumerate_maps
from .slices import (
    cocartesian_edges, slice_comparison, wide_cocartesian_edges,
    wide_slice_comparison,
)
from .anodyne import (
    CellPresentation, SearchResult, search_presentation, verify_presentation,
)
from .fixtures import collage_fixtures, functor_corpus


@dataclass
class VerificationReport:
    claim: str
    params: dict
    checks: tuple[tuple[str, bool, str], ...]
    details: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def __bool__(self):
        return self.passed

    def failing(self) -> list[str]:
        return [name for name, ok, _ in self.checks if not ok]


class _Checks:
    def __init__(self):
        self.lines: list[tuple[str, bool, str]] = []

    def add(self, name: str, ok: bool, detail: str = ""):
        self.lines.append((name, bool(ok), detail))
        return ok

    def done(self) -> tuple[tuple[str, bool, str], ...]:
        return tuple(self.lines)


def _report(claim, params, checks, details=None, started=None) -> VerificationReport:
    return VerificationReport(claim, params, checks.done(), details or {},
                              time.perf_counter() - started if started else 0.0)


# -- the prism and its two filtrations -----------------------------------------


@lru_cache(maxsize=None)
def _prism(n: int) -> FiberProduct:
    return product(standard_simplex(1), standard_simplex(n))


def _prism_vertex(fp: FiberProduct, v: SimplexId) -> tuple[int, int]:
    st, sb = fp.pair_of(v)
    return int(st.target.label), int(sb.target.label)


def _prism_chain(fp: FiberProduct, top: SimplexId) -> tuple[tuple[int, int], ...]:
    return tuple(_prism_vertex(fp, ez.target)
                 for ez in vertices_of(fp.space, nondeg_form(top)))


def _expected_chain(n: int, k: int) -> tuple[tuple[int, int], ...]:
    return tuple([(0, b) for b in range(k + 1)] +
                 [(1, b) for b in range(k, n + 1)])


@lru_cache(maxsize=None)
def prism_tops(n: int) -> dict[int, SimplexId]:
    """The nondegenerate (n+1)-simplices of the prism over the n-simplex,
    keyed by which time step their vertex chain takes."""
    fp = _prism(n)
    out = {}
    for top in fp.space.nondeg[n + 1]:
        chain = _prism_chain(fp, top)
        for k in range(n + 1):
            if chain == _expected_chain(n, k):
                out[k] = top
    return out


def verify_prism_decomposition(n: int) -> VerificationReport:
    """The prism over the n-simplex is the union of exactly n+1 top
    nondegenerate simplices marching through the lattice chains."""
    started = time.perf_counter()
    fp = _prism(n)
    P = fp.space
    c = _Checks()
    tops = P.nondeg[n + 1] if P.top_dim >= n + 1 else ()
    c.add("top_count", len(tops) == n + 1,
          f"{len(tops)} nondegenerate ({n + 1})-simplices")
    c.add("no_higher_cells", P.top_dim == n + 1, f"top_dim={P.top_dim}")
    keyed = prism_tops(n)
    c.add("chains_match", len(keyed) == n + 1 and set(keyed) == set(range(n + 1)),
          "every top simplex realizes one expected vertex chain")
    union = None
    for top in tops:
        g = generated_subcomplex(P, [top])
        union = g if union is None else union | g
    c.add("union_covers", union is not None and union.is_total(),
          "tops and their faces exhaust the prism")
    c.add("validates", bool(validate(P)), "")
    details = {"nondeg_counts": list(P.nondeg_counts()),
               "chains": {k: _prism_chain(fp, top)
                          for k, top in sorted(keyed.items())}}
    return _report("prism", {"n": n}, c, details, started)


def _prism_start_members(n: int) -> frozenset[SimplexId]:
    """Members of ({0} x full) union (cylinder x boundary)."""
    fp = _prism(n)
    full = tuple(range(n + 1))
    members = []
    for x in fp.space.all_nondeg():
        st, sb = fp.pair_of(x)
        time_subset = st.target.label
        base_subset = tuple(int(t) for t in sb.target.label.split(","))
        if time_subset == "0" or base_subset != full:
            members.append(x)
    return frozenset(members)


def _attach(P: SimplicialSet, stage: set, top: SimplexId, k: int,
            c: _Checks, label: str) -> bool:
    """Check that stage + top is a genuine horn-k pushout and extend."""
    fs = P.faces(top)
    ok = True
    for j in range(top.dim + 1):
        if j == k:
            continue
        if fs[j].target not in stage:
            ok = c.add(label, False, f"face {j} not in the stage") and ok
            return False
    dk = fs[k]
    if not dk.is_nondegenerate or dk.target in stage or top in stage:
        c.add(label, False, "horn complement is not fresh")
        return False
    before = len(stage)
    stage.add(top)
    stage.add(dk.target)
    c.add(label, len(stage) == before + 2, f"attached along horn index {k}")
    return True


def verify_prism_filtration(n: int) -> VerificationReport:
    """The chain of stages from ({0} x simplex) union (cylinder x
    boundary) up to the whole prism, each a horn pushout on one top
    simplex; indices n..1 are inner, the final index 0 is outer."""
    started = time.perf_counter()
    fp = _prism(n)
    P = fp.space
    c = _Checks()
    tops = prism_tops(n)
    stage = set(_prism_start_members(n))
    stage_sizes = [len(stage)]
    for k in range(n, -1, -1):
        kind = "inner" if 1 <= k <= n else "outer"
        _attach(P, stage, tops[k], k, c, f"step_k{k}_{kind}")
        stage_sizes.append(len(stage))
    c.add("final_stage_total", len(stage) == P.size(),
          f"{len(stage)} of {P.size()}")
    # the inner part of the filtration is a verifiable certificate
    inner_steps = tuple((n + 1, k, tops[k]) for k in range(n, 0, -1))
    inner_target = set(_prism_start_members(n))
    for _, k, top in inner_steps:
        inner_target.add(top)
        inner_target.add(P.faces(top)[k].target)
    cert = CellPresentation(P, _prism_start_members(n),
                            frozenset(inner_target),
                            FibrationClass.INNER, inner_steps)
    c.add("inner_certificate", bool(verify_presentation(cert)),
          f"{len(inner_steps)} inner steps verify")
    details = {"stage_sizes": stage_sizes,
               "steps": [[n + 1, k, [tops[k].dim, tops[k].index]]
                         for k in range(n, -1, -1)]}
    return _report("afilt", {"n": n}, c, details, started)


def _face_sub(P: SimplicialSet, x: SimplexId, i: int) -> Subcomplex:
    ez = P.faces(x)[i]
    return generated_subcomplex(P, [ez.target])


def verify_horn_prism_filtration(n: int) -> VerificationReport:
    """The filtration of the prism starting from (cylinder x initial-horn)
    union (endpoints x simplex), with its five displayed face-intersection
    identities and the horn type of every attachment."""
    started = time.perf_counter()
    fp = _prism(n)
    P = fp.space
    c = _Checks()
    tops = prism_tops(n)
    full = tuple(range(n + 1))

    def members_where(pred) -> frozenset[SimplexId]:
        out = []
        for x in P.all_nondeg():
            st, sb = fp.pair_of(x)
            base = tuple(int(t) for t in sb.target.label.split(","))
            times = tuple(int(t) for t in st.target.label.split(","))
            if pred(times, base):
                out.append(x)
        return frozenset(out)

    def cyl_times_base(base_pred):
        return members_where(lambda times, base: base_pred(base))

    # remark: cylinder x (i-th face) is the union of the matching faces
    # of the top simplices
    for i in range(n + 1):
        lhs = cyl_times_base(lambda base, i=i: i not in base)
        rhs: Optional[Subcomplex] = None
        for j in range(i):
            part = _face_sub(P, tops[j], i + 1)
            rhs = part if rhs is None else rhs | part
        for j in range(i + 1, n + 1):
            part = _face_sub(P, tops[j], i)
            rhs = part if rhs is None else rhs | part
        c.add(f"remark_face_{i}", rhs is not None and lhs == rhs.members,
              "cylinder on a face decomposes through top-simplex faces")

    horn0 = [tuple(s) for s in _subsets_of_horn(n, 0)]
    start = members_where(lambda times, base:
                          (base in horn0) or len(times) == 1)
    b_stage = {n + 1: frozenset(start)}
    stage = set(start)

    # first attachment: sigma_0 along the inner horn at 1
    sigma0 = tops[0]
    inter = frozenset(generated_subcomplex(P, [sigma0]).members & stage)
    want = _union_faces(P, sigma0, exclude=(1,))
    c.add("first_intersection", inter == want.members,
          "start stage meets the first top simplex in all faces but 1")
    _attach(P, stage, sigma0, 1, c, "first_step_inner1")
    b_stage[n] = frozenset(stage)

    # descending induction: the stage B(i+1) picks up sigma_{n-i}, so the
    # tops arrive in ascending order sigma_1, ..., sigma_{n-1}
    for m in range(1, n):
        sig = tops[m]
        inter = frozenset(generated_subcomplex(P, [sig]).members & stage)
        want = _union_faces(P, sig, exclude=(0, m + 1))
        c.add(f"mid_intersection_{m}", inter == want.members,
              "stage meets the next top simplex in all faces but 0 and "
              f"{m + 1}")
        d0 = P.faces(sig)[0].target
        inter0 = frozenset(generated_subcomplex(P, [d0]).members & stage)
        want0 = _union_faces(P, d0, exclude=(m,))
        c.add(f"zeroth_face_intersection_{m}", inter0 == want0.members,
              f"stage meets face 0 in all its faces but {m}")
        _attach(P, stage, d0, m, c, f"zeroth_face_step_{m}_inner{m}")
        inter2 = frozenset(generated_subcomplex(P, [sig]).members & stage)
        want2 = _union_faces(P, sig, exclude=(m + 1,))
        c.add(f"after_zeroth_intersection_{m}", inter2 == want2.members,
              "with face 0 attached, only one face is missing")
        _attach(P, stage, sig, m + 1, c, f"mid_step_{m}_inner{m + 1}")
        b_stage[n - m] = frozenset(stage)

    sig_n = tops[n]
    inter = frozenset(generated_subcomplex(P, [sig_n]).members & stage)
    want = _union_faces(P, sig_n, exclude=(0,))
    c.add("last_intersection", inter == want.members,
          "stage meets the last top simplex in all faces but 0")
    _attach(P, stage, sig_n, 0, c, "last_step_outer0")
    c.add("final_total", len(stage) == P.size(), f"{len(stage)} of {P.size()}")
    details = {"stage_sizes": {str(k): len(v) for k, v in b_stage.items()}}
    return _report("bfilt", {"n": n}, c, details, started)


def _union_faces(P: SimplicialSet, x: SimplexId, exclude) -> Subcomplex:
    out: Optional[Subcomplex] = None
    for j in range(x.dim + 1):
        if j in exclude:
            continue
        part = _face_sub(P, x, j)
        out = part if out is None else out | part
    assert out is not None
    return out


def _subsets_of_horn(n: int, k: int):
    from itertools import combinations
    full = tuple(range(n + 1))
    missing = tuple(v for v in full if v != k)
    for d in range(n + 1):
        for s in combinations(range(n + 1), d + 1):
            if s != full and s != missing:
                yield s


# -- the wide cone filtration ---------------------------------------------------


@lru_cache(maxsize=None)
def _wide_cone_of_simplex(n: int) -> WideJoin:
    return wide_join_full(standard_simplex(0), standard_simplex(n))


def _cone_collapse(m: int, i: int) -> SimplicialSet:
    """The m-simplex with its front face on vertices 0..i collapsed to a
    point, built by pushout."""
    front = simplex_map(SimplicialOperator(i, m, tuple(range(i + 1))))
    from .core import map_to_point
    to_pt = map_to_point(standard_simplex(i), standard_simplex(0))
    return pushout(front, to_pt).space


def verify_wide_cone_filtration(n: int) -> VerificationReport:
    """The decomposition of the wide join of a point with the n-simplex
    into collapsed top simplices, the intersection identities of the
    resulting filtration, and inner certificates for every inclusion the
    decomposition needs."""
    started = time.perf_counter()
    c = _Checks()
    w = _wide_cone_of_simplex(n)
    W = w.space
    c.add("validates", bool(validate(W)), "")
    T = w.triple
    pab = w.prod_ab

    def t_vertex(v: SimplexId) -> tuple[int, int]:
        st, spab = T.pair_of(v)
        base = pab.right(spab)
        return int(st.target.label), int(base.target.label)

    tops: dict[int, SimplexId] = {}
    for top in T.space.nondeg[n + 1]:
        chain = tuple(t_vertex(ez.target)
                      for ez in vertices_of(T.space, nondeg_form(top)))
        for k in range(n + 1):
            if chain == _expected_chain(n, k):
                tops[k] = top
    c.add("cylinder_tops", set(tops) == set(range(n + 1)),
          f"{len(tops)} top cylinder simplices identified")

    sigma: dict[int, Subcomplex] = {}
    for k, top in tops.items():
        located = w.po.locate_left(nondeg_form(top))
        c.add(f"sigma_{k}_nondegenerate", located.is_nondegenerate,
              "top simplices stay nondegenerate in the wide join")
        sigma[k] = generated_subcomplex(W, [located.target])

    for k in range(n + 1):
        model = _cone_collapse(n + 1, k)
        piece = sigma[k].as_set()
        c.add(f"S_{k}_model", isomorphic(piece, model) is not None,
              "collapsed-cone model agrees with the located subcomplex")

    t_stages: dict[int, Subcomplex] = {0: sigma[0]}
    for i in range(1, n + 1):
        t_stages[i] = t_stages[i - 1] | sigma[i]
    c.add("T_n_total", t_stages[n].is_total(),
          "the stages exhaust the wide join")

    for i in range(1, n + 1):
        inter = sigma[i] & t_stages[i - 1]
        model = _cone_collapse(n, i - 1)
        c.add(f"intersection_{i}_model",
              isomorphic(inter.as_set(), model) is not None,
              "intersection matches the collapsed front-face model")

    # pushout squares: each stage grows by exactly the new part of the
    # next collapsed top simplex
    for i in range(1, n + 1):
        fresh = sigma[i].members - (sigma[i] & t_stages[i - 1]).members
        grown = t_stages[i].members - t_stages[i - 1].members
        c.add(f"stage_pushout_square_{i}", fresh == grown,
              "the stage extension is the cobase change of the "
              "intersection inclusion")

    # the end inclusion (cylinder on the cone edge union the far copy) is
    # asserted inner anodyne and admits a direct certificate
    end_members = []
    for x in T.space.all_nondeg():
        st, spab = T.pair_of(x)
        base = pab.right(spab)
        if base.target.label == "0" or st.target.label == "1":
            loc = w.po.locate_left(nondeg_form(x))
            end_members.append(loc.target)
    end_sub = generated_subcomplex(W, end_members)
    c.add("end_inside_T0", end_sub <= t_stages[0], "")
    res = search_presentation(end_sub, FibrationClass.INNER, 200000,
                              target=t_stages[0])
    c.add("end_to_T0_inner_certificate", res.status == "found",
          f"{len(res.presentation) if res else 0} steps")
    cert_steps = {"end_to_T0": _cert_json(res)}

    # the stage inclusions are inner anodyne by right cancellation, not by
    # a subcomplex-attachment certificate: the fresh face of each
    # collapsed top simplex is its zeroth, so the only restricted
    # presentations run through outer horns.  Presentations in the full
    # horn class pin down the filtration structure; the horn types are
    # recorded for the report.
    for i in range(1, n + 1):
        res = search_presentation(t_stages[i - 1], FibrationClass.KAN,
                                  200000, target=t_stages[i])
        c.add(f"T_{i - 1}_to_T_{i}_presented", res.status == "found",
              _horn_types(res))
        cert_steps[f"T{i - 1}_to_T{i}"] = _cert_json(res)
        res2 = search_presentation(sigma[i] & t_stages[i - 1],
                                   FibrationClass.KAN, 200000,
                                   target=sigma[i])
        c.add(f"intersection_to_S_{i}_presented", res2.status == "found",
              _horn_types(res2))
        cert_steps[f"inter_to_S{i}"] = _cert_json(res2)

    # the two chain-type maps the proof asserts are inner anodyne
    for i in range(1, n + 1):
        for m, split in ((n, i - 1), (n + 1, i)):
            dm = standard_simplex(m)
            first = find_subset_simplex(dm, tuple(range(split + 1)))
            second = find_subset_simplex(dm, tuple(range(split, m + 1)))
            sub = generated_subcomplex(dm, [first, second])
            if sub.is_total():
                c.add(f"chain_glue_{i}_m{m}", True, "degenerate split")
                continue
            res = search_presentation(sub, FibrationClass.INNER, 200000)
            c.add(f"chain_glue_{i}_m{m}", res.status == "found",
                  f"{len(res.presentation) if res else 0} steps")

    details = {"certificates": cert_steps,
               "wide_join_counts": list(W.nondeg_counts())}
    return _report("thmC", {"n": n}, c, details, started)


def _horn_types(res: SearchResult) -> str:
    if not res:
        return "no presentation"
    kinds = []
    for nn, k, _ in res.presentation.steps:
        kinds.append("inner" if 0 < k < nn else "outer")
    return f"{len(kinds)} steps ({', '.join(kinds) if kinds else 'none'})"


def _cert_json(res: SearchResult):
    if not res:
        return None
    return [[n, k, [x.dim, x.index]] for n, k, x in res.presentation.steps]


# -- wide join counts ------------------------------------------------------------


def verify_wide_join_counts(A: SimplicialSet, B: SimplicialSet,
                            max_dim: int,
                            label: str = "") -> VerificationReport:
    """Pushout-computed simplex counts of the wide join against the
    corrected closed form (n cross copies) and the printed variant (n-1
    copies), reporting which of the two matches."""
    started = time.perf_counter()
    W = wide_join(A, B)
    c = _Checks()
    corrected_all, printed_all = True, True
    rows = []
    for nn in range(max_dim + 1):
        an = simplex_count(A, nn)
        bn = simplex_count(B, nn)
        wn = simplex_count(W, nn)
        corrected = an + nn * an * bn + bn
        printed = an + max(nn - 1, 0) * an * bn + bn
        rows.append({"n": nn, "pushout": wn, "corrected": corrected,
                     "printed": printed})
        corrected_all = corrected_all and wn == corrected
        printed_all = printed_all and wn == printed
    c.add("corrected_formula_matches", corrected_all,
          "pushout counts equal A_n + n*A_n*B_n + B_n")
    c.add("printed_variant_reported", True,
          "printed n-1 variant matches" if printed_all
          else "printed n-1 variant fails")
    details = {"rows": rows, "printed_matches": printed_all}
    return _report("wjcounts", {"pair": label, "max_dim": max_dim}, c,
                   details, started)


# -- slice stability instances ----------------------------------------------------


def _inclusion_fixture(name: str) -> SimplicialMap:
    if name == "horn21":
        return horn_inclusion(2, 1)
    if name == "bnd1":
        return boundary_inclusion(1)
    if name == "vertex01":
        return vertex_map(0, 1)
    raise SimplicialError(f"unknown inclusion fixture {name!r}")


INCLUSION_FIXTURES = ("horn21", "bnd1", "vertex01")


@lru_cache(maxsize=None)
def _inclusion_certificate(name: str) -> Optional[SearchResult]:
    incl = _inclusion_fixture(name)
    res = search_presentation(image(incl), FibrationClass.INNER, 50000)
    return res if res else None


def verify_slice_stability_instance(incl: SimplicialMap, u: SimplicialMap,
                                    p: SimplicialMap, bound: int,
                                    cert: Optional[SearchResult] = None,
                                    wide: bool = False) -> VerificationReport:
    """One instance of the slice-stability statement: the comparison map
    is a left fibration below the bound, and a trivial fibration whenever
    the inclusion carries an inner certificate."""
    started = time.perf_counter()
    claim = "thmB" if wide else "thmA"
    make = wide_slice_comparison if wide else slice_comparison
    c = _Checks()
    comp = make(incl, u, p, bound)
    left = check_fibration(comp, FibrationClass.LEFT, bound - 1)
    c.add("left_fibration", bool(left), f"checked at dims <= {bound - 1}")
    if cert is None:
        cert = search_presentation(image(incl), FibrationClass.INNER, 50000)
    if cert:
        triv = check_fibration(comp, FibrationClass.TRIVIAL, bound - 1)
        c.add("trivial_fibration", bool(triv),
              "inclusion certified inner anodyne")
    details = {"certified": bool(cert),
               "comparison_counts": list(comp.source.nondeg_counts())}
    return _report(claim, {"bound": bound}, c, details, started)


def run_stability_corpus(bound: int = 3, wide: bool = False,
                         precheck_dim: int = 2,
                         limit: Optional[int] = None) -> VerificationReport:
    """The stability statement over every corpus instance: functors
    between small posets, the three inclusion fixtures, and every map of
    the inclusion's target into the total space."""
    started = time.perf_counter()
    claim = "thmB" if wide else "thmA"
    c = _Checks()
    instances = 0
    failures = []
    certs = {name: _inclusion_certificate(name) for name in INCLUSION_FIXTURES}
    c.add("certificate_pattern",
          bool(certs["horn21"]) and certs["bnd1"] is None
          and certs["vertex01"] is None,
          "inner certificate found exactly for the inner-horn inclusion")
    functors = functor_corpus()
    if limit is not None:
        functors = functors[:limit]
    for F in functors:
        p = nerve_map(F, bound)
        if precheck_dim and not check_fibration(p, FibrationClass.INNER,
                                                precheck_dim):
            failures.append(("precheck", F))
            continue
        for name in INCLUSION_FIXTURES:
            incl = _inclusion_fixture(name)
            for u in enumerate_maps(incl.target, p.source):
                instances += 1
                rep = verify_slice_stability_instance(
                    incl, u, p, bound, certs[name], wide)
                if not rep:
                    failures.append((name, F, u))
    c.add("zero_counterexamples", not failures,
          f"{instances} instances, {len(failures)} failures")
    details = {"instances": instances, "functors": len(functors),
               "failures": len(failures)}
    return _report(claim, {"bound": bound, "corpus": "posets<=3"}, c,
                   details, started)


# -- cocartesian agreement ----------------------------------------------------------


def verify_cocartesian_agreement(p: SimplicialMap, bound: int,
                                 name: str = "") -> VerificationReport:
    """Both cocartesian-edge classifiers (horn extension and wide-slice
    comparison) agree exactly."""
    started = time.perf_counter()
    if bound < 3:
        raise SimplicialError("cocartesian agreement needs bound >= 3")
    c = _Checks()
    direct = cocartesian_edges(p, bound)
    via_slices = wide_cocartesian_edges(p, bound)
    only_direct = sorted(repr(e) for e in direct - via_slices)
    only_wide = sorted(repr(e) for e in via_slices - direct)
    c.add("classifiers_agree", direct == via_slices,
          f"{len(direct)} direct vs {len(via_slices)} wide")
    degenerate = {e for e in p.source.simplices(1) if not e.is_nondegenerate}
    c.add("degenerate_edges_cocartesian", degenerate <= direct,
          "every degenerate edge is in the classifier")
    details = {"direct": sorted(_edge_name(p.source, e) for e in direct),
               "only_direct": only_direct, "only_wide": only_wide}
    return _report("thmD", {"bound": bound, "fixture": name}, c, details,
                   started)


def _edge_name(X: SimplicialSet, e: EZForm) -> str:
    base = e.target.label or e.target.key()
    return base if e.is_nondegenerate else f"{base}~deg"


def run_cocartesian_fixtures(bound: int = 3) -> VerificationReport:
    started = time.perf_counter()
    c = _Checks()
    details = {}
    for name, proj in collage_fixtures():
        p = nerve_map(proj, bound)
        rep = verify_cocartesian_agreement(p, bound, name)
        c.add(f"fixture_{name}", rep.passed,
              "; ".join(rep.failing()) if not rep else
              f"{len(rep.details['direct'])} cocartesian edges")
        details[name] = rep.details["direct"]
    return _report("thmD", {"bound": bound}, c, {"cocartesian": details},
                   started)


# -- suite -------------------------------------------------------------------------


def _wjcount_corpus():
    d0, d1 = standard_simplex(0), standard_simplex(1)
    return (("pt,pt", d0, d0), ("pt,edge", d0, d1),
            ("edge,edge", d1, d1), ("ends,edge", boundary(1), d1))


def run_claim(claim: str, n: Optional[int] = None,
              bound: Optional[int] = None) -> list[VerificationReport]:
    """Run one named claim; n picks a single size where meaningful."""
    if claim == "prism":
        sizes = [n] if n else [1, 2, 3, 4]
        return [verify_prism_decomposition(m) for m in sizes]
    if claim == "afilt":
        sizes = [n] if n else [1, 2, 3, 4]
        return [verify_prism_filtration(m) for m in sizes]
    if claim == "bfilt":
        sizes = [n] if n else [1, 2, 3, 4]
        return [verify_horn_prism_filtration(m) for m in sizes]
    if claim == "thmC":
        sizes = [n] if n else [1, 2, 3]
        return [verify_wide_cone_filtration(m) for m in sizes]
    if claim == "wjcounts":
        cap = n if n else 4
        return [verify_wide_join_counts(a, b, cap, label)
                for label, a, b in _wjcount_corpus()]
    if claim == "thmA":
        return [run_stability_corpus(bound or n or 3, wide=False)]
    if claim == "thmB":
        return [run_stability_corpus(bound or n or 3, wide=True)]
    if claim == "thmD":
        return [run_cocartesian_fixtures(bound or n or 3)]
    raise SimplicialError(f"unknown claim {claim!r}")


ALL_CLAIMS = ("prism", "afilt", "bfilt", "thmC", "wjcounts",
              "thmA", "thmB", "thmD")


# -- mutation sensitivity -------------------------------------------------------


def mutation_fixtures():
    """The suite's corruptible fixtures with their reference batteries.

    Each battery check recomputes structure from scratch, so redirecting
    any single stored face entry must flip at least one of them."""
    d0, d1, d2 = (standard_simplex(k) for k in range(3))
    from .fixtures import collage_fixtures
    name, proj = collage_fixtures()[0]
    fixtures = [
        ("triangle", standard_simplex(2)),
        ("prism_1x2", _prism(2).space),
        ("wide_cone_edge", wide_join(d0, d1)),
        ("collage_nerve", nerve_map(proj, 3).source),
        ("spine_certificate_ambient", standard_simplex(3)),
    ]
    return fixtures


def single_face_mutants(X: SimplicialSet, alternatives: int = 3):
    """All sets obtained from X by redirecting one stored face entry to
    another normal form of the right dimension (up to `alternatives` per
    entry)."""
    for x in X.all_nondeg():
        if x.dim == 0:
            continue
        for i in range(x.dim + 1):
            original = X.faces(x)[i]
            produced = 0
            for alt in X.simplices(x.dim - 1):
                if alt == original:
                    continue
                faces = {y: list(X.faces(y)) for y in X.all_nondeg()}
                faces[x][i] = alt
                mutant = SimplicialSet(
                    X.nondeg, {y: tuple(fs) for y, fs in faces.items()},
                    truncation_dim=X.truncation_dim)
                yield (x, i, alt, mutant)
                produced += 1
                if produced >= alternatives:
                    break


def _spine3_certificate():
    from .build import spine
    d3 = standard_simplex(3)
    members = frozenset(
        x for x in d3.all_nondeg()
        if x.dim == 0 or (x.dim == 1 and
                          int(x.label.split(",")[1]) ==
                          int(x.label.split(",")[0]) + 1))
    sub = Subcomplex(d3, members)
    return search_presentation(sub, FibrationClass.INNER, 10000).presentation


def mutation_battery(name: str, reference: SimplicialSet, mutant) -> list:
    """Named checks the suite would run against this fixture; a mutant
    must fail at least one."""
    checks = [("validates", bool(validate(mutant)))]
    if validate(mutant):
        checks.append(("isomorphic_to_reference",
                       isomorphic(mutant, reference) is not None))
    if name == "spine_certificate_ambient":
        cert = _spine3_certificate()
        moved = CellPresentation(mutant, cert.base,
                                 frozenset(mutant.all_nondeg()),
                                 cert.kind, cert.steps)
        checks.append(("certificate_verifies",
                       bool(verify_presentation(moved))))
    return checks


def mutation_flips(name: str, reference: SimplicialSet, mutant) -> bool:
    return not all(ok for _, ok in mutation_battery(name, reference, mutant))


def run_suite(claims: Iterable[str] = ALL_CLAIMS,
              parallel: bool = True) -> list[VerificationReport]:
    """Run the named claims; reports are independent, so they may run
    concurrently, and the aggregation order is the input order either
    way."""
    claims = list(claims)
    if not parallel or len(claims) <= 1:
        out = []
        for claim in claims:
            out.extend(run_claim(claim))
        return out
    from concurrent.futures import ThreadPoolExecutor
    with ThreadPoolExecutor(max_workers=min(4, len(claims))) as pool:
        chunks = list(pool.map(run_claim, claims))
    return [report for chunk in chunks for report in chunk]
