import itertools

import pytest

from ssetkit.core import Subcomplex
from ssetkit.build import standard_simplex


def grid_chains(*sizes):
    """Strictly increasing chains in a product of chain posets, counted by
    length; an oracle for nondegenerate product simplices that never
    touches the product construction."""
    points = list(itertools.product(*(range(s + 1) for s in sizes)))

    def leq(a, b):
        return all(x <= y for x, y in zip(a, b))

    counts = {}
    chains = [[p] for p in points]
    length = 0
    while chains:
        counts[length] = len(chains)
        nxt = []
        for chain in chains:
            for p in points:
                if p != chain[-1] and leq(chain[-1], p):
                    nxt.append(chain + [p])
        chains = nxt
        length += 1
    return counts


def monotone_functions(src_sizes, tgt_size):
    """All monotone maps from a product of chains to a chain; an oracle
    for maps into a simplex nerve."""
    points = list(itertools.product(*(range(s + 1) for s in src_sizes)))

    def leq(a, b):
        return all(x <= y for x, y in zip(a, b))

    out = []
    for values in itertools.product(range(tgt_size + 1), repeat=len(points)):
        ok = all(values[i] <= values[j]
                 for i in range(len(points)) for j in range(len(points))
                 if leq(points[i], points[j]))
        if ok:
            out.append(dict(zip(points, values)))
    return out


def spine_subcomplex(n):
    """The n-chain inside the n-simplex, as a subcomplex."""
    dn = standard_simplex(n)
    members = [x for x in dn.all_nondeg()
               if x.dim == 0 or
               (x.dim == 1 and
                [int(v) for v in x.label.split(",")][1] ==
                [int(v) for v in x.label.split(",")][0] + 1)]
    return Subcomplex(dn, members)


@pytest.fixture
def delta():
    return standard_simplex
