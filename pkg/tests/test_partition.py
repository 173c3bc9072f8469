from __future__ import annotations

import pytest
from hypothesis import given

from conftest import partitions
from vertexglue.partition import (Partition, conjugate, contains, enumerate_partitions, frobenius,
                                  from_frobenius, hooks, kappa, parse_partition, partitions_of)


def test_conjugate_examples():
    assert conjugate(Partition((2, 1))) == (2, 1)
    assert conjugate(Partition((3,))) == (1, 1, 1)
    assert conjugate(Partition((3, 1))) == (2, 1, 1)


def test_frobenius_examples():
    assert frobenius(Partition((1,))).render() == "(0|0)"
    assert frobenius(Partition((2, 1))).render() == "(1|1)"
    assert frobenius(Partition((3, 2, 1))).render() == "(2,0|2,0)"


def test_kappa_examples():
    assert kappa(Partition((1,))) == 0
    assert kappa(Partition((2,))) == 2
    assert kappa(Partition((2, 1))) == 0


def test_enumeration_order_and_counts():
    assert enumerate_partitions(0) == [()]
    assert enumerate_partitions(2) == [(), (1,), (2,), (1, 1)]
    assert [len(partitions_of(n)) for n in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]


def test_validation():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0, -1))
    with pytest.raises(ValueError):
        from_frobenius((0, 1), (1, 0))
    assert parse_partition("") == ()
    assert parse_partition("3,1,1") == (3, 1, 1)
    assert Partition((3, 1, 1)).render() == "3,1,1"
    assert Partition().render() == "[]"


@given(partitions(8))
def test_conjugation_involution(mu):
    assert conjugate(conjugate(mu)) == mu
    assert sum(conjugate(mu)) == sum(mu)


@given(partitions(8))
def test_frobenius_roundtrip_and_identities(mu):
    fc = frobenius(mu)
    assert from_frobenius(fc.m, fc.n) == mu
    assert sum(mu) == sum(m + n + 1 for m, n in zip(fc.m, fc.n))
    assert kappa(mu) == sum(m * (m + 1) - n * (n + 1) for m, n in zip(fc.m, fc.n))
    assert kappa(conjugate(mu)) == -kappa(mu)
    assert frobenius(conjugate(mu)) == (fc.n, fc.m)


@given(partitions(7))
def test_hooks_and_containment(mu):
    hs = hooks(mu)
    assert len(hs) == sum(mu)
    assert sorted(hs) == sorted(hooks(conjugate(mu)))
    assert contains(mu, Partition())
    assert contains(mu, mu)
