"""Integer partitions, Frobenius coordinates and the content statistic kappa."""
from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple


class Partition(tuple):
    """Weakly decreasing tuple of positive integers; ``Partition()`` is empty."""

    __slots__ = ()

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            parts = tuple(p for p in parts if p != 0)
            if any(p < 0 for p in parts):
                raise ValueError(f"negative part in {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    def __repr__(self):
        return f"Partition({list(self)})"

    def render(self) -> str:
        return ",".join(map(str, self)) if self else "[]"


class FrobeniusCoords(NamedTuple):
    m: tuple
    n: tuple

    def render(self) -> str:
        return f"({','.join(map(str, self.m))}|{','.join(map(str, self.n))})"


def parse_partition(text: str) -> Partition:
    """Parse "3,1,1" or "[]" / "" for the empty partition."""
    text = text.strip()
    if text in ("", "[]", "()", "0"):
        return Partition()
    text = text.strip("[]()")
    return Partition(int(t) for t in text.split(",") if t.strip())


@lru_cache(maxsize=None)
def conjugate(mu: Partition) -> Partition:
    if not mu:
        return Partition()
    return Partition(sum(1 for p in mu if p >= i) for i in range(1, mu[0] + 1))


@lru_cache(maxsize=None)
def frobenius(mu: Partition) -> FrobeniusCoords:
    t = conjugate(mu)
    k = sum(1 for i, p in enumerate(mu, start=1) if p >= i)
    return FrobeniusCoords(tuple(mu[i] - i - 1 for i in range(k)),
                           tuple(t[i] - i - 1 for i in range(k)))


def from_frobenius(m, n) -> Partition:
    m, n = tuple(m), tuple(n)
    if len(m) != len(n):
        raise ValueError("Frobenius lists must have equal length")
    for seq in (m, n):
        if any(x < 0 for x in seq) or any(seq[i] <= seq[i + 1] for i in range(len(seq) - 1)):
            raise ValueError(f"Frobenius list must be strictly decreasing and nonnegative: {seq}")
    k = len(m)
    if k == 0:
        return Partition()
    # arm part: row i has length m_i + i (1-based); legs extend the columns
    rows = [m[i] + i + 1 for i in range(k)]
    cols = [n[j] + j + 1 for j in range(k)]
    extra = []
    for r in range(k, cols[0]):
        # rows below the diagonal block: count columns j with cols[j] > r
        extra.append(sum(1 for c in cols if c > r))
    return Partition(rows + extra)


@lru_cache(maxsize=None)
def kappa(mu: Partition) -> int:
    return sum(p * (p - 2 * i + 1) for i, p in enumerate(mu, start=1))


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple:
    """Partitions of exactly n, lexicographically descending."""
    out = []

    def rec(rest, cap, prefix):
        if rest == 0:
            out.append(Partition(prefix))
            return
        for p in range(min(rest, cap), 0, -1):
            rec(rest - p, p, prefix + [p])

    rec(n, n, [])
    return tuple(out)


def enumerate_partitions(d: int) -> list:
    """All partitions with |mu| <= d, by size then lexicographically descending."""
    out = []
    for n in range(d + 1):
        out.extend(partitions_of(n))
    return out


def contains(mu: Partition, eta: Partition) -> bool:
    """Whether the Young diagram of eta sits inside that of mu."""
    if len(eta) > len(mu):
        return False
    return all(e <= m for e, m in zip(eta, mu))


def hooks(mu: Partition) -> list:
    t = conjugate(mu)
    return [mu[i] - j + t[j] - i - 1 for i in range(len(mu)) for j in range(mu[i])]
