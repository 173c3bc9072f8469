"""The framed topological vertex and its fermionic (ADKMV) coefficient matrices."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .amplitude import Amplitude, TruncationConfig
from .fock import QuadraticExponent, bogoliubov_amplitude
from .partition import Partition, conjugate, contains, enumerate_partitions, kappa, partitions_of
from .scalar import Scalar, quantum_factorial, quantum_integer
from .symfunc import MINUS_RHO, Specialization, skew_schur_principal


class Framing(NamedTuple):
    a1: int = 0
    a2: int = 0
    a3: int = 0


def _q(e) -> Scalar:
    return Scalar.q_power(Fraction(e))


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def _subpartitions(mu: Partition, nu: Partition):
    """Partitions inside both mu and nu."""
    bound = min(sum(mu), sum(nu))
    return [eta for eta in enumerate_partitions(bound) if contains(mu, eta) and contains(nu, eta)]


@lru_cache(maxsize=None)
def vertex_W(mu1: Partition, mu2: Partition, mu3: Partition) -> Scalar:
    """W = (-1)^|mu2| q^(kappa(mu3)/2) s_{mu2^t}(q^-rho) sum_eta s_{mu1/eta}(q^{mu2^t+rho}) s_{mu3^t/eta}(q^{mu2+rho})."""
    mu1, mu2, mu3 = Partition(mu1), Partition(mu2), Partition(mu3)
    t2, t3 = conjugate(mu2), conjugate(mu3)
    spec_a = Specialization(t2, 1)
    spec_b = Specialization(mu2, 1)
    acc = Scalar.zero()
    for eta in _subpartitions(mu1, t3):
        x = skew_schur_principal(mu1, eta, spec_a)
        if x.is_zero():
            continue
        acc = acc + x * skew_schur_principal(t3, eta, spec_b)
    pref = skew_schur_principal(t2, Partition(), MINUS_RHO) * _q(Fraction(kappa(mu3), 2))
    out = acc * pref
    return -out if sum(mu2) % 2 else out


def framing_factor(mus, a) -> Scalar:
    """(-1)^(sum |mu^i| a_i) q^(sum a_i kappa(mu^i)/2)."""
    s = sum(sum(m) * ai for m, ai in zip(mus, a))
    e = Fraction(sum(ai * kappa(Partition(m)) for m, ai in zip(mus, a)), 2)
    out = _q(e)
    return -out if s % 2 else out


def framed_vertex(mu1, mu2, mu3, a=Framing()) -> Scalar:
    mus = (Partition(mu1), Partition(mu2), Partition(mu3))
    return framing_factor(mus, tuple(a)) * vertex_W(*mus)


# --- fermionic coefficients ----------------------------------------------

@lru_cache(maxsize=None)
def _inv_fact_sum(m: int, n: int, sgn: int) -> Scalar:
    """sum_{l<=min(m,n)} q^(sgn (l+1)(m+n-l)/2) / ([m-l]! [n-l]!)."""
    out = Scalar.zero()
    for ell in range(min(m, n) + 1):
        num = _q(Fraction(sgn * (ell + 1) * (m + n - ell), 2))
        out = out + num / (quantum_factorial(m - ell) * quantum_factorial(n - ell))
    return out


@lru_cache(maxsize=None)
def adkmv_entry(i: int, j: int, m: int, n: int, a: tuple) -> Scalar:
    """A^{ij}_{mn}(q; a) with legs 0, 1, 2 and cyclic neighbours (j = i +- 1 mod 3)."""
    ai, aj = a[i], a[j]
    if i == j:
        s = _sign((m + n + 1) * ai + n)
        e = Fraction((2 * ai + 1) * (m * (m + 1) - n * (n + 1)), 4)
        den = quantum_integer(m + n + 1) * quantum_factorial(m) * quantum_factorial(n)
        out = _q(e) / den
        return -out if s < 0 else out
    if j == (i + 1) % 3:
        s = _sign(m * ai + (n + 1) * aj + n)
        e = Fraction((2 * ai + 1) * m * (m + 1) - (2 * aj + 1) * n * (n + 1), 4) + Fraction(1, 6)
        out = _q(e) * _inv_fact_sum(m, n, 1)
        return -out if s < 0 else out
    if j == (i - 1) % 3:
        s = -_sign(m * ai + (n + 1) * aj + n)
        e = Fraction((2 * ai + 1) * m * (m + 1) - (2 * aj + 1) * n * (n + 1), 4) - Fraction(1, 6)
        out = _q(e) * _inv_fact_sum(m, n, -1)
        return -out if s < 0 else out
    raise ValueError("component indices must lie in 0..2")


def adkmv_unframed_entry(i: int, j: int, m: int, n: int, flipped: bool = False) -> Scalar:
    """The unframed coefficient list, written out independently of the framed one.

    For j = i - 1 the commonly quoted list has q^(-m(m+1)/4 + n(n+1)/4 - 1/6);
    that sign disagrees with the vertex once both m and n matter, so the default
    uses q^(m(m+1)/4 - n(n+1)/4 - 1/6), which is the a = 0 framed entry.
    ``flipped=True`` returns the quoted form.
    """
    if i == j:
        out = _q(Fraction(m * (m + 1) - n * (n + 1), 4)) / (
            quantum_integer(m + n + 1) * quantum_factorial(m) * quantum_factorial(n))
        return -out if n % 2 else out
    if j == (i + 1) % 3:
        out = _q(Fraction(m * (m + 1) - n * (n + 1), 4) + Fraction(1, 6)) * _inv_fact_sum(m, n, 1)
        return -out if n % 2 else out
    quad = Fraction(m * (m + 1) - n * (n + 1), 4)
    out = _q((-quad if flipped else quad) - Fraction(1, 6)) * _inv_fact_sum(m, n, -1)
    return -out if (n + 1) % 2 else out


def adkmv_matrix(a=Framing(), cfg: TruncationConfig | None = None, energy: int | None = None) -> QuadraticExponent:
    """All A^{ij}_{mn}(q; a) with m + n + 1 <= energy cutoff."""
    d = energy if energy is not None else cfg.energy
    a = tuple(a)
    out = {}
    for i in range(3):
        for j in range(3):
            for m in range(d):
                for n in range(d - m):
                    out[(i, j, m, n)] = Amplitude.const(adkmv_entry(i, j, m, n, a))
    return QuadraticExponent(3, out)


# --- verification ---------------------------------------------------------

def _tuples(size_bound: int, legs: int):
    """Partition triples of total size <= size_bound with at most ``legs`` nonempty entries."""
    out = []
    for total in range(size_bound + 1):
        for s1 in range(total + 1):
            for s2 in range(total - s1 + 1):
                s3 = total - s1 - s2
                if sum(1 for s in (s1, s2, s3) if s) > legs:
                    continue
                for m1 in partitions_of(s1):
                    for m2 in partitions_of(s2):
                        for m3 in partitions_of(s3):
                            out.append((m1, m2, m3))
    return out


def verify_adkmv(a=Framing(), size_bound: int = 3, legs: int = 2, only_legs=None) -> dict:
    """Compare framed_vertex with the Wick amplitude of adkmv_matrix(a).

    ``only_legs`` optionally restricts which slots may be nonempty (0-based).
    """
    a = Framing(*a)
    A = adkmv_matrix(a, energy=max(size_bound, 1))
    checked, mismatches = 0, []
    for mus in _tuples(size_bound, legs):
        if only_legs is not None and any(m and k not in only_legs for k, m in enumerate(mus)):
            continue
        lhs = framed_vertex(*mus, a)
        rhs = bogoliubov_amplitude(A, mus)
        checked += 1
        if Amplitude.const(lhs) != rhs:
            mismatches.append({"mu": [m.render() for m in mus], "vertex": lhs.render(),
                               "fermionic": rhs.render()})
    return {"framing": list(a), "size_bound": size_bound, "legs": legs,
            "checked": checked, "mismatches": mismatches}
