from __future__ import annotations

from fractions import Fraction
from itertools import product

from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import partitions
from vertexglue.partition import Partition, enumerate_partitions, hooks, kappa
from vertexglue.scalar import Scalar, quantum_integer
from vertexglue.vertex import (Framing, adkmv_entry, adkmv_matrix, adkmv_unframed_entry, framed_vertex,
                               framing_factor, vertex_W, verify_adkmv)

E = Partition()
INV1 = quantum_integer(1).inv()


def test_vacuum_and_single_boxes():
    assert vertex_W(E, E, E).is_one()
    box = Partition([1])
    for mus in [(box, E, E), (E, box, E), (E, E, box)]:
        assert vertex_W(*mus) == INV1


@settings(max_examples=20, deadline=None)
@given(partitions(5))
def test_one_leg_is_hook_content(mu):
    expected = Scalar.q_power(Fraction(kappa(mu), 4))
    for h in hooks(mu):
        expected = expected / quantum_integer(h)
    assert vertex_W(mu, E, E) == expected


def test_cyclic_symmetry():
    parts = [p for d in range(3) for p in enumerate_partitions(d)]
    for a, b, c in product(parts, repeat=3):
        if sum(a) + sum(b) + sum(c) > 4:
            continue
        w = vertex_W(a, b, c)
        assert w == vertex_W(b, c, a) == vertex_W(c, a, b)


@settings(max_examples=20, deadline=None)
@given(partitions(3), partitions(3), st.tuples(*[st.integers(-2, 2)] * 3), st.tuples(*[st.integers(-2, 2)] * 3))
def test_framing_difference(mu, nu, a, b):
    # C(a) / C(b) depends only on a - b through the framing factor
    mus = (mu, nu, E)
    diff = tuple(x - y for x, y in zip(a, b))
    assert framed_vertex(*mus, Framing(*a)) == framing_factor(mus, diff) * framed_vertex(*mus, Framing(*b))


def test_framing_factor_example():
    # one box on leg 1 at framing 1: (-1)^1 q^0
    assert framing_factor((Partition([1]), E, E), (1, 0, 0)) == -Scalar.one()
    assert framing_factor((Partition([2]), E, E), (1, 0, 0)) == Scalar.q_power(1)


def test_adkmv_leading_entries():
    a = (0, 0, 0)
    assert adkmv_entry(0, 0, 0, 0, a) == INV1
    assert adkmv_entry(0, 1, 0, 0, a) == Scalar.q_power(Fraction(1, 6))
    assert adkmv_entry(0, 2, 0, 0, a) == -Scalar.q_power(Fraction(-1, 6))


def test_unframed_list_matches_framed_at_zero():
    for i, j in product(range(3), repeat=2):
        for m in range(6):
            for n in range(6 - m):
                assert adkmv_unframed_entry(i, j, m, n) == adkmv_entry(i, j, m, n, (0, 0, 0))


def test_adkmv_matrix_cutoff():
    A = adkmv_matrix(energy=3)
    assert all(m + n + 1 <= 3 for (_, _, m, n) in A.entries)
    assert len(A.entries) == 9 * 6


def test_verify_adkmv_small():
    for a in [(0, 0, 0), (1, -1, 0), (2, 0, -2)]:
        rep = verify_adkmv(a, size_bound=3, legs=2)
        assert rep["checked"] > 0 and rep["mismatches"] == []


def test_verify_adkmv_restricted_legs():
    rep = verify_adkmv((1, 0, 0), size_bound=4, legs=1, only_legs=(0,))
    assert rep["checked"] == 1 + 1 + 2 + 3 + 5
    assert rep["mismatches"] == []


def test_flipped_lower_neighbour_list_disagrees_with_vertex():
    from vertexglue.amplitude import Amplitude
    from vertexglue.fock import QuadraticExponent, bogoliubov_amplitude
    d = 4
    A = QuadraticExponent(3, {(i, j, m, n): Amplitude.const(adkmv_unframed_entry(i, j, m, n, flipped=True))
                              for i in range(3) for j in range(3) for m in range(d) for n in range(d - m)})
    mus = (E, Partition([1]), Partition([2]))
    assert bogoliubov_amplitude(A, mus) != Amplitude.const(framed_vertex(*mus))
    # the two forms only differ where m(m+1) != n(n+1)
    assert adkmv_unframed_entry(0, 2, 1, 1, flipped=True) == adkmv_unframed_entry(0, 2, 1, 1)
