import itertools

import pytest

from ssetkit.core import (
    SimplicialError, SimplicialMap, from_empty, identity_map, isomorphic,
    map_to_point, nondeg_form, simplex_count, validate, validate_map,
)
from ssetkit.build import (
    boundary_inclusion, fiber_product, horn_inclusion, standard_simplex,
    vertex_map,
)
from ssetkit.cats import (
    CatFunctor, chain_category, discrete_category, collage, nerve_map,
    poset_category, poset_functors,
)
from ssetkit.homs import FibrationClass, check_fibration
from ssetkit.slices import (
    cocartesian_edges, slice_comparison, slice_under, wide_cocartesian_edges,
    wide_slice, wide_slice_comparison,
)

d0 = standard_simplex(0)
d1 = standard_simplex(1)
d2 = standard_simplex(2)


def monotone_with_prefix(m, n, prefix):
    """Monotone maps [m] -> [n] with fixed leading values: an oracle for
    slice simplices of a simplex under a simplex map."""
    out = 0
    free = m + 1 - len(prefix)
    lo = prefix[-1] if prefix else 0
    for tail in itertools.combinations_with_replacement(
            range(lo, n + 1), free):
        out += 1
    return out


def test_slice_under_vertex_counts():
    # vertices of the slice of the triangle under its initial vertex are
    # the monotone maps [1] -> [2] with 0 |-> 0
    s = slice_under(d2, vertex_map(0, 2), 1)
    assert simplex_count(s.space, 0) == monotone_with_prefix(1, 2, (0,)) == 3
    assert s.space.truncation_dim == 1
    assert validate(s.space)

    s2 = slice_under(d1, vertex_map(1, 1), 0)
    assert simplex_count(s2.space, 0) == 1


def test_slice_under_empty_base():
    s = slice_under(d2, from_empty(d2), 2)
    trunc = slice_under(d2, from_empty(d2), 2).space
    assert isomorphic(trunc, s.space) is not None
    assert s.space.nondeg_counts() == d2.nondeg_counts()


def test_wide_slice_examples():
    s = wide_slice(d2, from_empty(d2), 2)
    assert s.space.nondeg_counts() == d2.nondeg_counts()

    to_point = wide_slice(d0, identity_map(d0), 2)
    assert to_point.space.nondeg_counts() == (1,)

    s3 = wide_slice(d2, vertex_map(0, 2), 0)
    assert simplex_count(s3.space, 0) == 3


def test_slice_vertices_are_extension_count():
    # adjunction sanity: slice vertices biject with extensions of p along
    # the cone inclusion at level zero
    from ssetkit.homs import extensions
    from ssetkit.slices import cone
    p = vertex_map(1, 2)
    s = slice_under(d2, p, 0)
    exts = extensions(p, cone(p.source, 0).from_a)
    assert simplex_count(s.space, 0) == len(exts)


def test_truncation_coherence():
    small = slice_under(d2, vertex_map(0, 2), 1)
    large = slice_under(d2, vertex_map(0, 2), 3)
    for n in (0, 1):
        assert small.space.nondeg_count(n) == large.space.nondeg_count(n)
    for x in small.space.all_nondeg():
        if x.dim:
            assert small.space.faces(x) == large.space.faces(x)


def test_fiber_product_of_truncated_sets():
    a = slice_under(d2, vertex_map(0, 2), 2)
    b = slice_under(d2, vertex_map(0, 2), 2)
    pa = map_to_point(a.space, d0)
    pb = map_to_point(b.space, d0)
    fp = fiber_product(pa, pb)
    assert fp.space.truncation_dim == 2


def test_comparison_refuses_low_bound_checks():
    p = nerve_map(poset_functors(chain_category(1), chain_category(1))[0], 3)
    from ssetkit.homs import enumerate_maps
    u = enumerate_maps(d2, p.source)[0]
    comp = slice_comparison(horn_inclusion(2, 1), u, p, 3)
    with pytest.raises(SimplicialError):
        check_fibration(comp, FibrationClass.LEFT, 3)


def test_comparison_identity_inclusion_is_iso():
    # incl = id: the comparison embeds the slice as the graph inside the
    # fiber product
    p = nerve_map(poset_functors(chain_category(1), chain_category(1))[0], 3)
    X = p.source
    comp = slice_comparison(identity_map(X), identity_map(X), p, 2)
    assert validate_map(comp)
    assert isomorphic(comp.source, comp.target,
                      allow_truncation_mismatch=True) is not None
    assert comp.source.nondeg_counts() == comp.target.nondeg_counts()


def test_comparison_empty_k():
    # K empty: the comparison source is the slice under u, the target the
    # product of the whole space's truncation with the base slice
    p = nerve_map(poset_functors(chain_category(1), chain_category(1))[0], 3)
    X = p.source
    from ssetkit.homs import enumerate_maps
    u = enumerate_maps(d1, X)[1]
    comp = slice_comparison(from_empty(d1), u, p, 2)
    assert validate_map(comp)
    assert check_fibration(comp, FibrationClass.LEFT, 1)


def test_slice_comparison_instance_left_and_trivial():
    vee = poset_category(["a", "b", "c"], [(0, 1), (0, 2)])
    F = poset_functors(vee, chain_category(1))[2]
    p = nerve_map(F, 3)
    X = p.source
    from ssetkit.homs import enumerate_maps
    u = enumerate_maps(d2, X)[0]
    comp = slice_comparison(horn_inclusion(2, 1), u, p, 3)
    assert check_fibration(comp, FibrationClass.LEFT, 2)
    assert check_fibration(comp, FibrationClass.TRIVIAL, 2)

    u1 = enumerate_maps(d1, X)[1]
    comp2 = slice_comparison(boundary_inclusion(1), u1, p, 3)
    assert check_fibration(comp2, FibrationClass.LEFT, 2)


def test_wide_slice_comparison_instance():
    F = poset_functors(chain_category(1), chain_category(1))[1]
    p = nerve_map(F, 3)
    X = p.source
    from ssetkit.homs import enumerate_maps
    f = enumerate_maps(d2, X)[0]
    comp = wide_slice_comparison(horn_inclusion(2, 1), f, p, 3)
    assert check_fibration(comp, FibrationClass.LEFT, 2)
    assert check_fibration(comp, FibrationClass.TRIVIAL, 2)


def test_cocartesian_collage_example():
    c0 = discrete_category(["a"])
    c1 = chain_category(1)
    F = CatFunctor(c0, c1, (0,), (c1.identities[0],))
    cat, proj = collage(F)
    p = nerve_map(proj, 3)
    direct = cocartesian_edges(p, 3)
    wide = wide_cocartesian_edges(p, 3)
    assert direct == wide
    nondeg_labels = sorted(e.target.label for e in direct
                           if e.is_nondegenerate)
    assert nondeg_labels == ["x:a/id:0"]
    degenerate = {e for e in p.source.simplices(1) if not e.is_nondegenerate}
    assert degenerate <= direct


def test_cocartesian_identity_map_all_edges():
    X = nerve_map(poset_functors(chain_category(1),
                                 chain_category(1))[0], 3).source
    p = identity_map(X)
    assert cocartesian_edges(p, 3) == frozenset(X.simplices(1))
    assert wide_cocartesian_edges(p, 3) == frozenset(X.simplices(1))


def test_cocartesian_bound_guard():
    X = nerve_map(poset_functors(chain_category(1),
                                 chain_category(1))[0], 3).source
    with pytest.raises(SimplicialError):
        cocartesian_edges(identity_map(X), 1)
