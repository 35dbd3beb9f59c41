"""Arithmetic of monotone maps between finite ordinals [n] = {0, ..., n}.

Everything downstream (simplicial sets, their maps, and all constructions)
reduces face/degeneracy bookkeeping to composition and epi-mono
factorization of these operators.  Operators are stored as full image
tuples, never as words in generators, so equality is structural and no
word-problem normalization is ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import comb


class OperatorError(ValueError):
    """Raised for out-of-range indices or non-composable operators."""


@dataclass(frozen=True)
class SimplicialOperator:
    """A monotone map [source_dim] -> [target_dim], stored by its images.

    images[t] is the value at t; entries weakly increase and lie in
    [0, target_dim].
    """

    source_dim: int
    target_dim: int
    images: tuple[int, ...]

    def __post_init__(self):
        if self.source_dim < 0 or self.target_dim < 0:
            raise OperatorError("dimensions must be nonnegative")
        if len(self.images) != self.source_dim + 1:
            raise OperatorError(
                f"expected {self.source_dim + 1} images, got {len(self.images)}")
        prev = 0
        for v in self.images:
            if not (prev <= v <= self.target_dim):
                raise OperatorError(f"images {self.images} not monotone into "
                                    f"[0, {self.target_dim}]")
            prev = v

    def __call__(self, t: int) -> int:
        return self.images[t]

    @property
    def is_mono(self) -> bool:
        return all(a < b for a, b in zip(self.images, self.images[1:]))

    @property
    def is_epi(self) -> bool:
        return set(self.images) == set(range(self.target_dim + 1))

    @property
    def is_identity(self) -> bool:
        return self.source_dim == self.target_dim and \
            self.images == tuple(range(self.source_dim + 1))

    def omitted(self) -> tuple[int, ...]:
        """Values of the codomain not hit; nonempty iff not epi."""
        hit = set(self.images)
        return tuple(v for v in range(self.target_dim + 1) if v not in hit)

    def collapsed(self) -> tuple[int, ...]:
        """Positions t with images[t] == images[t+1]; nonempty iff not mono."""
        return tuple(t for t in range(self.source_dim)
                     if self.images[t] == self.images[t + 1])

    def __repr__(self):
        return f"Op({list(self.images)}:{self.source_dim}->{self.target_dim})"


def operator(images, target_dim: int) -> SimplicialOperator:
    imgs = tuple(images)
    return SimplicialOperator(len(imgs) - 1, target_dim, imgs)


@lru_cache(maxsize=None)
def identity(n: int) -> SimplicialOperator:
    return SimplicialOperator(n, n, tuple(range(n + 1)))


@lru_cache(maxsize=None)
def face(n: int, i: int) -> SimplicialOperator:
    """The coface [n-1] -> [n] whose image omits i."""
    if n < 1 or not 0 <= i <= n:
        raise OperatorError(f"face({n},{i}) out of range")
    return SimplicialOperator(
        n - 1, n, tuple(v for v in range(n + 1) if v != i))


@lru_cache(maxsize=None)
def degeneracy(n: int, i: int) -> SimplicialOperator:
    """The codegeneracy [n+1] -> [n] repeating i."""
    if not 0 <= i <= n:
        raise OperatorError(f"degeneracy({n},{i}) out of range")
    images = list(range(i + 1)) + [i] + list(range(i + 1, n + 1))
    return SimplicialOperator(n + 1, n, tuple(images))


def compose(g: SimplicialOperator, f: SimplicialOperator) -> SimplicialOperator:
    """The composite g after f."""
    if f.target_dim != g.source_dim:
        raise OperatorError(
            f"cannot compose {g!r} after {f!r}: dimension mismatch")
    return SimplicialOperator(f.source_dim, g.target_dim,
                              tuple(g.images[v] for v in f.images))


def epi_mono_factor(op: SimplicialOperator) -> tuple[SimplicialOperator, SimplicialOperator]:
    """The unique factorization op = mono . epi.

    The epi collapses repeated values to their rank, the mono records the
    distinct values actually hit.
    """
    distinct = sorted(set(op.images))
    rank = {v: r for r, v in enumerate(distinct)}
    epi = SimplicialOperator(op.source_dim, len(distinct) - 1,
                             tuple(rank[v] for v in op.images))
    mono = SimplicialOperator(len(distinct) - 1, op.target_dim, tuple(distinct))
    return epi, mono


def squeeze_mono(mono: SimplicialOperator, i: int) -> SimplicialOperator:
    """Strip the coface at i off a mono: mono = face(target, i) . result.

    Requires i to be omitted by mono.
    """
    return SimplicialOperator(
        mono.source_dim, mono.target_dim - 1,
        tuple(v if v < i else v - 1 for v in mono.images))


def join_op(f: SimplicialOperator, g: SimplicialOperator) -> SimplicialOperator:
    """The join [p+r+1] -> [q+s+1] acting as f on the front block and as a
    shifted copy of g on the back block.  Joins of epis are epis."""
    shift = f.target_dim + 1
    images = f.images + tuple(v + shift for v in g.images)
    return SimplicialOperator(f.source_dim + g.source_dim + 1,
                              f.target_dim + g.target_dim + 1, images)


@lru_cache(maxsize=None)
def all_monotone(m: int, n: int) -> tuple[SimplicialOperator, ...]:
    """All monotone [m] -> [n], in lexicographic image order.

    There are C(n+m+1, m+1) of them.
    """
    return tuple(SimplicialOperator(m, n, imgs)
                 for imgs in combinations_with_replacement(range(n + 1), m + 1))


@lru_cache(maxsize=None)
def all_epis(n: int, m: int) -> tuple[SimplicialOperator, ...]:
    """All epis [n] ->> [m], in lexicographic image order; C(n, m) of them."""
    if m > n:
        return ()
    out = []
    # choose the m positions (among the n steps) where the value increases
    for steps in combinations(range(n), m):
        images = []
        v = 0
        for t in range(n + 1):
            images.append(v)
            if t in steps:
                v += 1
        # combinations are emitted in lex order of step sets, which is lex
        # order of image tuples reversed; sort once for a stable contract
        out.append(tuple(images))
    out.sort()
    return tuple(SimplicialOperator(n, m, imgs) for imgs in out)


@lru_cache(maxsize=None)
def all_monos(m: int, n: int) -> tuple[SimplicialOperator, ...]:
    """All monos [m] -> [n], in lexicographic image order; C(n+1, m+1) of them."""
    return tuple(SimplicialOperator(m, n, imgs)
                 for imgs in combinations(range(n + 1), m + 1))


def count_monotone(m: int, n: int) -> int:
    return comb(n + m + 1, m + 1)


def count_epis(n: int, m: int) -> int:
    return comb(n, m)


def op_to_json(op: SimplicialOperator) -> dict:
    return {"src": op.source_dim, "tgt": op.target_dim, "img": list(op.images)}


def op_from_json(data: dict) -> SimplicialOperator:
    return SimplicialOperator(data["src"], data["tgt"], tuple(data["img"]))
