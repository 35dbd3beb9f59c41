from math import comb

import pytest

from ssetkit.core import (
    SimplicialError, compose_maps, identity_map, image, is_mono, isomorphic,
    map_to_point, nondeg_form, simplex_count, validate, validate_map,
)
from ssetkit.build import (
    boundary, boundary_inclusion, comparison_map, coproduct, fiber_product,
    find_subset_simplex, horn, horn_inclusion, join, join_full, join_map,
    pp_map, product, pushout, simplex_map, spine, spine_inclusion,
    standard_simplex, subcomplex_inclusion, vertex_map, wide_join,
    wide_join_full, wide_join_map,
)
from ssetkit.operators import SimplicialOperator, face
from ssetkit.homs import enumerate_maps

from conftest import grid_chains


d0 = standard_simplex(0)
d1 = standard_simplex(1)
d2 = standard_simplex(2)


def test_standard_family_counts():
    assert standard_simplex(3).nondeg_counts() == (4, 6, 4, 1)
    assert boundary(2).nondeg_counts() == (3, 3)
    assert boundary(0).is_empty
    assert horn(3, 1).nondeg_counts() == (4, 6, 3)
    assert spine(2).nondeg_counts() == (3, 2)
    for X in (standard_simplex(4), boundary(3), horn(4, 2), spine(5)):
        assert validate(X)


def test_horn_vs_spine():
    assert isomorphic(spine(2), horn(2, 1)) is not None
    assert isomorphic(spine(3), horn(3, 1)) is None


def test_bad_indices():
    with pytest.raises(SimplicialError):
        horn(0, 0)
    with pytest.raises(SimplicialError):
        horn(2, 3)
    with pytest.raises(SimplicialError):
        standard_simplex(-1)


def test_canonical_inclusions():
    for incl in (boundary_inclusion(2), horn_inclusion(3, 1),
                 spine_inclusion(3), subcomplex_inclusion(horn(2, 0), 2)):
        assert is_mono(incl)
        assert validate_map(incl)


def test_simplex_map():
    f = simplex_map(SimplicialOperator(1, 2, (0, 2)))
    assert validate_map(f) and is_mono(f)
    s = simplex_map(SimplicialOperator(2, 1, (0, 0, 1)))
    assert validate_map(s) and not is_mono(s)
    v = vertex_map(1, 2)
    assert v.assign[d0.simplex(0, 0)].target.label == "1"


def test_product_counts_oracle():
    # oracle: strictly increasing chains in the grid poset
    for sizes in ((1, 1), (1, 2), (2, 2), (1, 3)):
        chains = grid_chains(*sizes)
        fp = product(standard_simplex(sizes[0]), standard_simplex(sizes[1]))
        got = fp.space.nondeg_counts()
        assert list(got) == [chains[d] for d in range(len(got))]
        assert validate(fp.space)
    assert product(d1, d1).space.nondeg_counts() == (4, 5, 2)
    assert product(d1, d2).space.nondeg_count(3) == 3


def test_product_unit():
    for X in (d2, horn(2, 1), spine(3)):
        fp = product(X, d0)
        assert isomorphic(fp.space, X) is not None
        assert validate_map(fp.left)


def test_product_projections_natural():
    fp = product(d1, d2)
    assert validate_map(fp.left) and validate_map(fp.right)


def test_coproduct():
    cp = coproduct(d1, d2)
    assert cp.space.nondeg_counts() == (5, 4, 1)
    assert is_mono(cp.inj_a) and is_mono(cp.inj_b)
    assert validate(cp.space)


def test_pushout_circle():
    incl = boundary_inclusion(1)
    collapse = map_to_point(boundary(1), d0)
    po = pushout(incl, collapse)
    assert po.space.nondeg_counts() == (1, 1)
    assert validate(po.space)
    assert compose_maps(po.left, incl) == compose_maps(po.right, collapse)


def test_pushout_glued_triangles():
    # two triangles glued along an inner horn: 3 shared vertices, the two
    # horn edges shared, one free edge each, two triangles (derived by
    # direct count; see the decisions ledger about the spec's (4,5,2))
    incl = horn_inclusion(2, 1)
    po = pushout(incl, incl)
    assert po.space.nondeg_counts() == (3, 4, 2)
    assert validate(po.space)


def test_pushout_wide_join_point_point():
    w = wide_join(d0, d0)
    assert isomorphic(w, d1) is not None


def test_pushout_along_identity_is_identity_like():
    h = horn(2, 1)
    po = pushout(identity_map(h), identity_map(h))
    assert isomorphic(po.space, h) is not None
    incl = horn_inclusion(2, 1)
    po2 = pushout(identity_map(h), incl)
    assert isomorphic(po2.space, d2) is not None


def test_pushout_cocone_commutes():
    incl = horn_inclusion(2, 1)
    collapse = map_to_point(horn(2, 1), d0)
    po = pushout(incl, collapse)
    assert validate(po.space)
    assert compose_maps(po.left, incl) == compose_maps(po.right, collapse)
    assert validate_map(po.left) and validate_map(po.right)


def test_join_examples():
    assert isomorphic(join(d0, d1), d2) is not None
    cone_b1 = join(d0, boundary(1))
    assert cone_b1.nondeg_counts() == (3, 2)
    assert simplex_count(join(d1, d1), 3, "nondegenerate") == 1
    assert join(d1, d1).top_dim == 1 + 1 + 1


def test_join_units():
    from ssetkit.core import empty_set
    assert join(d2, empty_set()) is d2
    assert join(empty_set(), d2) is d2


def test_join_formula_all_counts():
    # the defining count: (A*B)_n = A_n + B_n + sum_{i+j=n-1} A_i B_j
    cases = [(d1, d1), (d2, boundary(2)), (spine(2), d1), (d0, horn(2, 1))]
    for A, B in cases:
        J = join(A, B)
        for n in range(6):
            want = simplex_count(A, n) + simplex_count(B, n) + sum(
                simplex_count(A, i) * simplex_count(B, n - 1 - i)
                for i in range(n))
            assert simplex_count(J, n) == want
        assert validate(J)
        assert J.top_dim == A.top_dim + B.top_dim + 1


def test_join_map_functorial():
    ja = join_full(horn(2, 1), d1)
    jb = join_full(d2, d1)
    f = join_map(horn_inclusion(2, 1), identity_map(d1), ja, jb)
    assert validate_map(f) and is_mono(f)


def test_wide_join_counts():
    w = wide_join(d0, d1)
    assert w.nondeg_counts() == (3, 4, 2)
    assert simplex_count(w, 2, "nondegenerate") == 2
    assert isomorphic(w, d2) is None
    assert validate(w)


def test_wide_join_corrected_count_formula():
    cases = [(d0, d0), (d0, d1), (d1, d1), (boundary(1), d1), (d2, d1)]
    for A, B in cases:
        W = wide_join(A, B)
        for n in range(6):
            an, bn = simplex_count(A, n), simplex_count(B, n)
            assert simplex_count(W, n) == an + n * an * bn + bn
        assert W.top_dim <= A.top_dim + B.top_dim + 1


def test_wide_join_units():
    from ssetkit.core import empty_set
    assert wide_join(d2, empty_set()) is d2
    assert wide_join(empty_set(), d2) is d2


def test_wide_join_functorial_and_mono_stable():
    wa = wide_join_full(horn(2, 1), d0)
    wb = wide_join_full(d2, d1)
    u = horn_inclusion(2, 1)
    v = vertex_map(0, 1)
    f = wide_join_map(u, v, wa, wb)
    assert validate_map(f)
    assert is_mono(f)


def test_mono_stability_products_joins():
    u = horn_inclusion(2, 1)
    v = boundary_inclusion(1)
    pa, pb = product(u.source, v.source), product(u.target, v.target)
    from ssetkit.build import product_map
    pm = product_map(u, v, pa, pb)
    assert is_mono(pm)
    jm = join_map(u, v, join_full(u.source, v.source),
                  join_full(u.target, v.target))
    assert is_mono(jm)


def test_pp_map_example():
    # the degenerate-first-factor case: the union is the cone edge plus
    # the far copy of the interval
    from ssetkit.core import empty_set, from_empty
    u = from_empty(d0)
    v = vertex_map(0, 1)
    incl = pp_map(u, v)
    assert is_mono(incl) and validate_map(incl)
    assert incl.source.nondeg_counts() == (3, 2)
    W = incl.target
    assert isomorphic(W, wide_join(d0, d1)) is not None


def test_pp_map_requires_monos():
    from ssetkit.core import map_to_point
    with pytest.raises(SimplicialError):
        pp_map(map_to_point(d1, d0), vertex_map(0, 1))


def test_comparison_map_examples():
    iso = comparison_map(d0, d0)
    assert validate_map(iso)
    assert isomorphic(iso.source, iso.target) is not None

    cm = comparison_map(d0, d1)
    assert validate_map(cm)
    assert simplex_count(cm.source, 2, "nondegenerate") == 2
    assert simplex_count(cm.target, 2, "nondegenerate") == 1
    # surjective but not injective on 2-simplices
    images = {cm(s) for s in cm.source.simplices(2)}
    assert images == set(cm.target.simplices(2))


def test_comparison_map_natural():
    # naturality in the second argument along the initial vertex map
    v = vertex_map(0, 1)
    top = comparison_map(d0, d0)
    bot = comparison_map(d0, d1)
    left = wide_join_map(identity_map(d0), v,
                         wide_join_full(d0, d0), wide_join_full(d0, d1))
    right = join_map(identity_map(d0), v, join_full(d0, d0),
                     join_full(d0, d1))
    assert compose_maps(bot, left) == compose_maps(right, top)


def test_fiber_product_examples():
    x = product(d1, d1).space
    idx = identity_map(x)
    fp = fiber_product(idx, idx)
    assert isomorphic(fp.space, x) is not None

    over_pt = fiber_product(map_to_point(d1, d0), map_to_point(d2, d0))
    assert over_pt.space.nondeg_counts() == \
        product(d1, d2).space.nondeg_counts()

    v0, v1 = vertex_map(0, 1), vertex_map(1, 1)
    empty = fiber_product(v0, v1)
    assert empty.space.is_empty


def test_find_subset_simplex():
    h = horn(3, 0)
    assert find_subset_simplex(h, (0, 1)).label == "0,1"
    with pytest.raises(SimplicialError):
        find_subset_simplex(h, (1, 2, 3))
