import pytest

from ssetkit.core import (
    Subcomplex, full_subcomplex, generated_subcomplex, image, isomorphic,
    nondeg_form, skeleton,
)
from ssetkit.build import (
    boundary_inclusion, find_subset_simplex, horn, horn_inclusion,
    standard_simplex, vertex_map, wide_join_full,
)
from ssetkit.homs import FibrationClass, LiftingProblem, check_fibration, \
    solve_lift
from ssetkit.anodyne import (
    CellPresentation, cancellation_probe, search_presentation,
    verify_presentation,
)

from conftest import spine_subcomplex


def expected_spine_steps(n):
    # each step adds the attached simplex and its free face, so the count
    # is ((2^(n+1) - 1) - (2n + 1)) / 2
    return ((2 ** (n + 1) - 1) - (2 * n + 1)) // 2


def test_verify_single_step_spine2():
    d2 = standard_simplex(2)
    base = spine_subcomplex(2)
    cert = CellPresentation(d2, base.members, frozenset(d2.all_nondeg()),
                            FibrationClass.INNER,
                            ((2, 1, d2.simplex(2, 0)),))
    assert verify_presentation(cert)


def test_verify_rejects_wrong_class():
    d2 = standard_simplex(2)
    base = spine_subcomplex(2)
    cert = CellPresentation(d2, base.members, frozenset(d2.all_nondeg()),
                            FibrationClass.INNER,
                            ((2, 0, d2.simplex(2, 0)),))
    chk = verify_presentation(cert)
    assert not chk and chk.failing_step == 0
    # same step is fine in the left class
    left = CellPresentation(d2, base.members, frozenset(d2.all_nondeg()),
                            FibrationClass.LEFT,
                            ((2, 0, d2.simplex(2, 0)),))
    assert not verify_presentation(left)     # wrong free face for k=0
    horn20 = generated_subcomplex(
        d2, [d2.simplex(1, 0), d2.simplex(1, 1)])
    left_ok = CellPresentation(d2, horn20.members,
                               frozenset(d2.all_nondeg()),
                               FibrationClass.LEFT,
                               ((2, 0, d2.simplex(2, 0)),))
    assert verify_presentation(left_ok)


def test_verify_prism_filtration_steps():
    # the two inner steps presenting the middle of the prism filtration
    from ssetkit.claims import _prism, _prism_start_members, prism_tops
    fp = _prism(2)
    P = fp.space
    tops = prism_tops(2)
    base = _prism_start_members(2)
    target = set(base)
    steps = []
    for k in (2, 1):
        steps.append((3, k, tops[k]))
        target.add(tops[k])
        target.add(P.faces(tops[k])[k].target)
    cert = CellPresentation(P, base, frozenset(target),
                            FibrationClass.INNER, tuple(steps))
    assert verify_presentation(cert)


def test_search_spine3():
    res = search_presentation(spine_subcomplex(3), FibrationClass.INNER,
                              10000)
    assert res.status == "found"
    assert len(res.presentation) == 4
    assert verify_presentation(res.presentation)
    steps = [(n, k, x.label) for n, k, x in res.presentation.steps]
    assert steps == [(2, 1, "0,1,2"), (2, 1, "0,2,3"), (2, 1, "1,2,3"),
                     (3, 2, "0,1,2,3")]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_search_spine_step_counts(n):
    res = search_presentation(spine_subcomplex(n), FibrationClass.INNER,
                              200000)
    assert res.status == "found"
    assert len(res.presentation) == expected_spine_steps(n)
    assert verify_presentation(res.presentation)


def test_search_vertex_in_edge_exhausts():
    d1 = standard_simplex(1)
    sub = generated_subcomplex(d1, [d1.simplex(0, 0)])
    res = search_presentation(sub, FibrationClass.INNER, 1000)
    assert res.status == "exhausted" and res.presentation is None


def test_search_budget_status():
    res = search_presentation(spine_subcomplex(5), FibrationClass.INNER,
                              budget=3)
    assert res.status == "budget" and res.presentation is None


def test_wide_cone_end_inclusion_needs_outer_step():
    # the canonical end inclusion into the wide cone over the interval:
    # the inner search exhausts (the collapsed top simplex only frees its
    # zeroth face) while the full horn class presents it in two steps
    w = wide_join_full(standard_simplex(0), standard_simplex(1))
    W = w.space
    end = []
    for x in W.all_nondeg():
        if x.dim == 0:
            end.append(x)
        elif x.dim == 1:
            fs = W.faces(x)
            labels = {fs[0].target.index, fs[1].target.index}
            if labels in ({0, 1}, {1, 2}):
                end.append(x)
    sub = generated_subcomplex(W, end)
    assert len(sub.members) == 5
    inner = search_presentation(sub, FibrationClass.INNER, 10000)
    assert inner.status == "exhausted"
    kan = search_presentation(sub, FibrationClass.KAN, 10000)
    assert kan.status == "found" and len(kan.presentation) == 2


def test_plus_two_invariant():
    res = search_presentation(spine_subcomplex(4), FibrationClass.INNER,
                              100000)
    X = res.presentation.parent
    stage = set(res.presentation.base)
    for n, k, x in res.presentation.steps:
        before = len(stage)
        stage.add(x)
        stage.add(X.faces(x)[k].target)
        assert len(stage) == before + 2


def test_certificates_stable_under_relabeling():
    # search on an isomorphic copy finds a certificate of equal length
    h = horn(3, 1)
    d3 = standard_simplex(3)
    res = search_presentation(spine_subcomplex(3), FibrationClass.INNER,
                              10000)
    # relabel: the spine sits inside the 3-simplex with reversed vertex
    # order via the order-reversing symmetry applied by hand
    rev = {0: 3, 1: 2, 2: 1, 3: 0}
    members = [x for x in d3.all_nondeg()
               if x.dim == 0 and True or x.dim == 0]
    rev_members = []
    for x in d3.all_nondeg():
        if x.dim == 0:
            rev_members.append(x)
        elif x.dim == 1:
            a, b = (int(v) for v in x.label.split(","))
            if rev[b] == rev[a] - 1:
                rev_members.append(x)
    sub = Subcomplex(d3, rev_members)
    res2 = search_presentation(sub, FibrationClass.INNER, 10000)
    assert res2.status == "found"
    assert len(res2.presentation) == len(res.presentation)


def test_mutated_certificates_rejected():
    d3 = standard_simplex(3)
    res = search_presentation(spine_subcomplex(3), FibrationClass.INNER,
                              10000)
    cert = res.presentation
    mutants = []
    # drop the final step: coverage fails
    mutants.append(CellPresentation(cert.parent, cert.base, cert.target,
                                    cert.kind, cert.steps[:-1]))
    # duplicate the first step: the simplex is already present
    mutants.append(CellPresentation(cert.parent, cert.base, cert.target,
                                    cert.kind, cert.steps + cert.steps[:1]))
    for idx in range(len(cert.steps)):
        n, k, x = cert.steps[idx]
        # outer or out-of-range horn index
        for bad_k in (0, n, n + 1):
            mutants.append(CellPresentation(
                cert.parent, cert.base, cert.target, cert.kind,
                cert.steps[:idx] + ((n, bad_k, x),) + cert.steps[idx + 1:]))
        # attach a base member instead (already present, or wrong dim)
        base_simplex = min(cert.base, key=lambda y: (-y.dim, y.index))
        mutants.append(CellPresentation(
            cert.parent, cert.base, cert.target, cert.kind,
            cert.steps[:idx] + ((n, k, base_simplex),) + cert.steps[idx + 1:]))
        # reverse the remaining steps: a later simplex arrives too early
        if idx < len(cert.steps) - 1:
            mutants.append(CellPresentation(
                cert.parent, cert.base, cert.target, cert.kind,
                cert.steps[:idx] + tuple(reversed(cert.steps[idx:]))))
    assert len(mutants) >= 20
    for mutant in mutants:
        assert not verify_presentation(mutant)


def test_search_soundness_always_verifies():
    for n in (2, 3, 4):
        res = search_presentation(spine_subcomplex(n), FibrationClass.INNER,
                                  100000)
        assert verify_presentation(res.presentation)


def test_certified_inclusion_lifts_against_checked_fibrations():
    # a certificate yields lifts stepwise against maps that pass the
    # matching fibration check
    from ssetkit.cats import chain_category, nerve, poset_functors, nerve_map
    res = search_presentation(spine_subcomplex(2), FibrationClass.INNER, 100)
    cert = res.presentation
    F = poset_functors(chain_category(2), chain_category(1))[2]
    p = nerve_map(F, 3)
    assert check_fibration(p, FibrationClass.INNER, 3)
    sub, incl = spine_subcomplex(2).as_pair()
    from ssetkit.homs import enumerate_maps, extensions
    for top in enumerate_maps(sub, p.source)[:6]:
        for bottom in extensions(
                __import__("ssetkit.core", fromlist=["compose_maps"])
                .compose_maps(p, top), incl):
            lift = solve_lift(LiftingProblem(incl, p, top, bottom))
            assert lift is not None


def test_cancellation_probe_identity_tail():
    d2 = standard_simplex(2)
    sp = spine_subcomplex(2)
    full = full_subcomplex(d2)
    report = cancellation_probe(sp, full, FibrationClass.INNER, 10000)
    assert report.first and report.composite and report.second
    assert len(report.second.presentation) == 0
    assert not report.anomaly


def test_cancellation_probe_split_certificate():
    # split the 3-simplex certificate after its first step
    d3 = standard_simplex(3)
    sp = spine_subcomplex(3)
    res = search_presentation(sp, FibrationClass.INNER, 10000)
    n, k, x = res.presentation.steps[0]
    stage1 = Subcomplex(d3, sp.members | {x, d3.faces(x)[k].target})
    report = cancellation_probe(sp, stage1, FibrationClass.INNER, 100000)
    assert report.first and report.composite and report.second
    assert not report.anomaly
    assert len(report.first.presentation) == 1
    assert len(report.second.presentation) == 3


def test_cancellation_probe_wide_cone():
    # the end inclusion into the wide cone certifies into the first stage,
    # but neither the composite nor the stage-to-total leg admits a
    # restricted inner certificate: the probe records the incompleteness
    # datum without raising an anomaly (no expectation is triggered)
    w = wide_join_full(standard_simplex(0), standard_simplex(2))
    W = w.space
    # sigma_0 jumps to the far copy immediately: its cylinder chain is
    # (0,0),(1,0),(1,1),(1,2)
    from ssetkit.core import vertices_of

    def chain(top):
        out = []
        for ez in vertices_of(w.triple.space, nondeg_form(top)):
            st, spab = w.triple.pair_of(ez.target)
            out.append((int(st.target.label),
                        int(w.prod_ab.right(spab).target.label)))
        return tuple(out)

    t_top = next(x for x in w.triple.space.nondeg[3]
                 if chain(x) == ((0, 0), (1, 0), (1, 1), (1, 2)))
    sigma0 = w.po.locate_left(nondeg_form(t_top)).target
    t0 = generated_subcomplex(W, [sigma0])
    end_members = []
    for x in w.triple.space.all_nondeg():
        st, spab = w.triple.pair_of(x)
        base = w.prod_ab.right(spab)
        if base.target.label == "0" or st.target.label == "1":
            end_members.append(w.po.locate_left(nondeg_form(x)).target)
    end = generated_subcomplex(W, end_members)
    assert end <= t0
    report = cancellation_probe(end, t0, FibrationClass.INNER, 200000)
    assert report.first
    assert report.composite.status == "exhausted"
    assert report.second.status == "exhausted"
    assert not report.anomaly
