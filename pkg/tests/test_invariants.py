"""Cross-cutting invariants: lift completeness, classifier symmetry,
truncation discipline, suite concurrency, and the HTTP thin client."""

import random

import pytest

from ssetkit.core import (
    SimplicialError, compose_maps, isomorphic, map_to_point, nondeg_form,
    validate,
)
from ssetkit.build import (
    boundary_inclusion, horn, horn_inclusion, standard_simplex, vertex_map,
)
from ssetkit.cats import chain_category, nerve, nerve_map, poset_functors, \
    walking_iso
from ssetkit.homs import (
    FibrationClass, LiftingProblem, check_fibration, enumerate_maps,
    extensions, is_equivalence_edge, solve_lift,
)
from ssetkit.slices import slice_under, wide_slice, wide_cone


def test_solve_lift_matches_extension_filter():
    # completeness cross-check: the lift exists exactly when some
    # extension of the top lies over the bottom
    rng = random.Random(7)
    F = poset_functors(chain_category(2), chain_category(1))[3]
    p = nerve_map(F, 3)
    incl = horn_inclusion(2, 0)
    tops = enumerate_maps(horn(2, 0), p.source)
    for top in rng.sample(tops, min(12, len(tops))):
        below = compose_maps(p, top)
        for bottom in extensions(below, incl):
            problem = LiftingProblem(incl, p, top, bottom)
            brute = [d for d in extensions(top, incl)
                     if compose_maps(p, d) == bottom]
            found = solve_lift(problem)
            assert (found is not None) == bool(brute)
            if found is not None:
                assert found in brute or compose_maps(p, found) == bottom


def test_equivalence_edge_symmetry():
    # the witness roles are symmetric: both halves of an isomorphism pass
    N = nerve(walking_iso(), 3, truncate=True)
    edges = {x.label: nondeg_form(x) for x in N.nondeg[1]}
    assert is_equivalence_edge(N, edges["f"])
    assert is_equivalence_edge(N, edges["g"])


def test_truncation_comparison_refusal():
    s = slice_under(standard_simplex(2), vertex_map(0, 2), 2).space
    with pytest.raises(SimplicialError):
        isomorphic(s, standard_simplex(2))
    assert isomorphic(s, s, allow_truncation_mismatch=False) is not None


def test_inner_fillers_unique_dim4():
    chain = chain_category(4)
    N = nerve(chain, 5)
    p = map_to_point(N, standard_simplex(0))
    for k in FibrationClass.INNER.horn_indices(4):
        incl = horn_inclusion(4, k)
        tops = enumerate_maps(horn(4, k), N)
        for top in tops[:20]:
            assert len(extensions(top, incl)) == 1


def test_wide_slice_vertex_extension_bijection():
    from ssetkit.homs import extensions as exts
    d2 = standard_simplex(2)
    p = vertex_map(1, 2)
    s = wide_slice(d2, p, 0)
    cone0 = wide_cone(p.source, 0)
    assert s.space.nondeg_count(0) == len(exts(p, cone0.from_a))


def test_run_suite_parallel_deterministic():
    from ssetkit.claims import run_suite
    seq = run_suite(("prism", "wjcounts"), parallel=False)
    par = run_suite(("prism", "wjcounts"), parallel=True)
    assert [r.claim for r in seq] == [r.claim for r in par]
    assert all(r.passed for r in par)
    assert [r.params for r in seq] == [r.params for r in par]


def test_cli_thin_client_over_http(monkeypatch, capsys):
    from fastapi.testclient import TestClient
    from ssetkit import cli
    from ssetkit.service import create_app

    app = create_app()

    def asgi_init(self, base_url):
        self.base_url = "http://testserver"
        self.client = TestClient(app)

    monkeypatch.setattr(cli._Remote, "__init__", asgi_init)

    code = cli.main(["--server", "http://ignored", "count",
                     "wjoin(delta 0, delta 1)", "--dim", "2", "--nondeg"])
    out = capsys.readouterr().out
    assert code == 0 and out.strip() == "2"

    code = cli.main(["--server", "http://ignored", "build", "join(delta 0,"])
    err = capsys.readouterr().err
    assert code == 2 and "offset 13" in err
