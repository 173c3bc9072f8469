from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vertexglue.amplitude import ONE, ZERO, Amplitude, TruncationConfig, qdeg2
from vertexglue.checks import _glue_input, lemma_expected, recursion_instance, self_gluing_instance
from vertexglue.fock import (VAC, FockState, QuadraticExponent, basis_state, bogoliubov_state, cp,
                             extract_quadratic_exponent, is_bogoliubov, random_exponent)
from vertexglue.glue import (GluingSpec, closed_part, epsilon, fermionic_glue, glue_pair, gluing_exponent,
                             gluing_vector, glued_closed_from_exponent, normalize, normalized_glue, pair_energy_budget,
                             r_series, r_series_passes)
from vertexglue.partition import Partition, conjugate, kappa, partitions_of
from vertexglue.scalar import Scalar

CFG = TruncationConfig.of(energy=6, q_degree=3)


def Q(k, c=1):
    return Amplitude.monomial(c, {"Q": 2 * k})


def test_epsilon_values():
    assert epsilon(0, 0).is_one()
    assert epsilon(1, 1) == -Scalar.i() * Scalar.q_power(1)
    assert epsilon(1, 1, primed=True) == -Scalar.i() * Scalar.q_power(-1)
    assert epsilon(1, 0, phase="shifted") == -Scalar.i()


def test_phase_validation():
    with pytest.raises(ValueError):
        GluingSpec.special(0, phase="nope")


def test_pairing_examples():
    P0 = gluing_vector(GluingSpec.special(0), CFG)
    assert P0.coefficient((cp((1,)), cp((1,)))) == Q(1, -1)
    P1 = gluing_vector(GluingSpec.special(1), CFG)
    assert P1.coefficient((cp((2,)), cp((1, 1)))) == Q(2, Scalar.q_power(1))
    assert P1.coefficient((cp((2,)), cp((2,)))).is_zero()
    assert P1.coefficient((VAC, VAC)).is_one()


@pytest.mark.parametrize("f", [-2, 0, 1])
def test_pairing_rule_small(f):
    P = gluing_vector(GluingSpec.special(f), CFG)
    parts = [p for d in range(4) for p in partitions_of(d)]
    for a in parts:
        for b in parts:
            assert P.coefficient((cp(a), cp(b))) == lemma_expected(a, b, f)


def test_shifted_phase_flips_q():
    P = gluing_vector(GluingSpec.special(1, "shifted"), CFG)
    for d in range(4):
        for mu in partitions_of(d):
            expected = lemma_expected(mu, conjugate(mu), 1)
            got = P.coefficient((cp(mu), cp(conjugate(mu))))
            assert got == (-expected if d % 2 else expected)


def test_gluing_exponent_bookkeeping():
    cfg = TruncationConfig.of(energy=2, q_degree=2)
    B = gluing_exponent(GluingSpec.special(0), cfg, loop="T")
    # pairs with n = 0, 1 carry Q^(1/2), Q^(3/2) and Theta^(+-1)
    assert set(B.entries) == {(0, 1, 0, 0), (1, 0, 0, 0), (0, 1, 1, 1), (1, 0, 1, 1)}
    (mono,) = B.get(1, 0, 1, 1).terms
    assert mono == ((("Q", 3),), (("T", -1),))
    G = gluing_exponent(GluingSpec.general({(0, 0, 0, 0): 2, (0, 1, 1, 1): 5}), cfg)
    assert set(G.entries) == {(0, 0, 0, 0)}
    assert pair_energy_budget(GluingSpec.special(0), cfg) == 4
    assert pair_energy_budget(GluingSpec.general({}), cfg) == 2


def test_vacuum_glue():
    G = fermionic_glue(FockState.vacuum(3), 1, 2, GluingSpec.special(1), CFG)
    assert G == FockState.vacuum(1)


def test_zero_outer_glue_is_closed_part():
    rng = random.Random(7)
    cfg = TruncationConfig.of(energy=3, q_degree=3)
    for spec in (GluingSpec.special(-1), GluingSpec.general({(0, 1, 0, 0): 3, (1, 1, 0, 1): -2})):
        A = random_exponent(2, TruncationConfig.of(energy=pair_energy_budget(spec, cfg), q_degree=0), rng)
        V = bogoliubov_state(A, TruncationConfig(pair_energy_budget(spec, cfg), cfg.q_half, cfg.theta_window))
        G = fermionic_glue(V, 0, 1, spec, cfg)
        assert G.coefficient(()) == closed_part(A, spec, cfg)


def test_charge_zero_glue_matches_pairing_sum():
    # (V, P^f) summed by hand over mu (x) mu^t for a charge-0 input
    rng = random.Random(2)
    f = 1
    parts = [p for d in range(3) for p in partitions_of(d)]
    V = FockState(3)
    for x in parts:
        for a in parts:
            for b in parts:
                c = Fraction(rng.randint(-3, 3))
                if c:
                    V.add_term((cp(x), cp(a), cp(b)), Amplitude.const(c))
    G = fermionic_glue(V, 1, 2, GluingSpec.special(f), CFG)
    for x in parts:
        expected = ZERO
        for mu in parts:
            expected = expected + V.coefficient((cp(x), cp(mu), cp(conjugate(mu)))).mul(lemma_expected(mu, conjugate(mu), f))
        assert G.coefficient((cp(x),)) == expected


def test_glue_pair_equals_tensor_then_self_glue():
    rng = random.Random(9)
    cfg = TruncationConfig.of(energy=3, q_degree=2)
    V1 = bogoliubov_state(random_exponent(2, cfg, rng, 0.5), cfg)
    V2 = bogoliubov_state(random_exponent(2, cfg, rng, 0.5), cfg)
    T = FockState(4)
    for b1, x in V1.items():
        for b2, y in V2.items():
            T.add_term(b1 + b2, x.mul(y))
    for spec in (GluingSpec.special(0), GluingSpec.general({(0, 1, 0, 0): 1, (1, 0, 0, 0): 2})):
        lhs = glue_pair(V1, 1, V2, 0, spec, cfg)
        rhs = fermionic_glue(T, 1, 2, spec, cfg)
        assert lhs.within(cfg) == rhs.within(cfg)


def test_loop_variable_parity():
    # each special pair carries Theta^(+-1) Q^(n+1/2): Q half-degree and Theta degree agree mod 2
    cfg, spec, A, V = _glue_input(0, 0, 1, 2, 3, 2, 0.7)
    assert spec.is_special
    G = fermionic_glue(V, 1, 2, spec, cfg, loop="T")
    odd = 0
    for _, amp in G.items():
        for mono in amp.terms:
            t = dict(mono[1]).get("T", 0)
            assert (qdeg2(mono) - t) % 2 == 0
            odd += t % 2
    assert odd > 0


def test_closed_part_factorization():
    cfg, spec, A, V = _glue_input(1, 1, 1, 3, 2, 2, 0.6)
    G = fermionic_glue(V, 1, 2, spec, cfg, loop="T")
    c = glued_closed_from_exponent(A, spec, cfg, loop="T")
    assert G.coefficient((VAC,)) == c
    R = r_series(A, spec, cfg, loop="T")
    assert G.within(cfg) == bogoliubov_state(R, cfg).scale(c, cfg).within(cfg)


def test_normalize_requires_invertible_vacuum():
    V = FockState(1, {(cp((1,)),): ONE})
    with pytest.raises(ZeroDivisionError):
        normalize(V, CFG)


def test_normalized_glue_has_unit_vacuum():
    cfg, spec, A, V = _glue_input(3, 0, 1, 2, 2, 2, 0.6)
    N = normalized_glue(V, 1, 2, spec, cfg, loop="T")
    assert N.coefficient((VAC,)).is_one()
    assert is_bogoliubov(N, cfg).is_zero()


def test_r_series_without_cross_terms():
    A = QuadraticExponent(3, {(0, 0, 0, 0): Amplitude.const(2), (1, 2, 0, 0): Amplitude.const(5)})
    passes = list(r_series_passes(A, GluingSpec.special(0), CFG, 1, 2))
    assert passes[-1][1] == 0
    assert r_series(A, GluingSpec.special(0), CFG, 1, 2) == QuadraticExponent(1, {(0, 0, 0, 0): Amplitude.const(2)})


def test_r_series_one_pass_by_hand():
    # A_ac, A_ca only at the lowest modes: R = -A_ac K A_ca with K the transposed P exponent
    A = QuadraticExponent(3, {(0, 1, 0, 0): Amplitude.const(2), (2, 0, 0, 0): Amplitude.const(3)})
    cfg = TruncationConfig.of(energy=2, q_degree=2)
    R = r_series(A, GluingSpec.special(0), cfg, 1, 2)
    # the only path: psi^0 psi^{1*} then P pairs b-particle with a-hole (coefficient eps'_0 Q^(1/2))
    assert R.get(0, 0, 0, 0) == Amplitude.monomial(-6 * epsilon(0, 0, True), {"Q": 1})
    assert R == extract_quadratic_exponent(normalized_glue(
        bogoliubov_state(A, TruncationConfig.of(energy=4, q_degree=2)), 1, 2, GluingSpec.special(0), cfg), cfg)


@settings(max_examples=6, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 3))
def test_r_series_matches_extraction(seed, k):
    r = recursion_instance((seed, k, 3, 2, 2, 0.6))
    assert r["equal"]


@settings(max_examples=4, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 3))
def test_self_gluing_stays_bogoliubov(seed, k):
    r = self_gluing_instance((seed, k, 2, 2, 2, 2, 0.6))
    assert r["vacuum_one"] and r["residual_terms"] == 0


def test_closed_part_factorization_two_outer():
    cfg, spec, A, V = _glue_input(4, 2, 2, 2, 2, 2, 0.5)
    G = fermionic_glue(V, 2, 3, spec, cfg, loop="T")
    c = glued_closed_from_exponent(A, spec, cfg, loop="T")
    R = r_series(A, spec, cfg, loop="T")
    assert G.within(cfg) == bogoliubov_state(R, cfg).scale(c, cfg).within(cfg)


@pytest.mark.parametrize("spec", [GluingSpec.special(2), GluingSpec.general({(0, 1, 0, 0): 1, (1, 1, 0, 0): -3})])
def test_gluing_two_transforms_stays_bogoliubov(spec):
    rng = random.Random(13)
    cfg = TruncationConfig.of(energy=2, q_degree=2)
    big = TruncationConfig(4, cfg.q_half, cfg.theta_window)
    V1 = bogoliubov_state(random_exponent(2, big, rng, 0.5), big)
    V2 = bogoliubov_state(random_exponent(3, big, rng, 0.5), big)
    N = normalize(glue_pair(V1, 1, V2, 0, spec, big), cfg)
    assert N.n_components == 3
    assert is_bogoliubov(N, cfg).is_zero()
