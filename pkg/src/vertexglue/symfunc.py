"""Littlewood-Richardson coefficients and Schur functions at principal specializations."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from .linalg import det_field
from .partition import Partition, contains, enumerate_partitions, partitions_of
from .scalar import Scalar


@dataclass(frozen=True)
class Specialization:
    """Variable list q^(nu_i - i + 1/2) for sign +1; q^(i - 1/2) for sign -1 (nu empty)."""

    nu: Partition = Partition()
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.sign == -1 and self.nu:
            raise ValueError("the sign -1 family is only defined for the empty partition")
        object.__setattr__(self, "nu", Partition(self.nu))


RHO = Specialization(Partition(), 1)
MINUS_RHO = Specialization(Partition(), -1)


# --- Schur polynomials in finitely many variables ------------------------

@lru_cache(maxsize=None)
def _horizontal_strips(lam: Partition):
    """Partitions mu with lam/mu a horizontal strip, paired with the strip size."""
    out = []
    ell = len(lam)

    def rec(i, prefix):
        if i == ell:
            mu = Partition(prefix)
            out.append((mu, sum(lam) - sum(mu)))
            return
        lo = lam[i + 1] if i + 1 < ell else 0
        for v in range(lam[i], lo - 1, -1):
            rec(i + 1, prefix + [v])

    rec(0, [])
    return tuple(out)


@lru_cache(maxsize=None)
def schur_polynomial(lam: Partition, n: int) -> dict:
    """s_lam(x_1..x_n) as {exponent tuple: coefficient}, via branching on x_n."""
    if len(lam) > n:
        return {}
    if n == 0:
        return {(): 1} if not lam else {}
    out: dict = {}
    for mu, k in _horizontal_strips(lam):
        for e, c in schur_polynomial(mu, n - 1).items():
            key = e + (k,)
            out[key] = out.get(key, 0) + c
    return out


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            key = tuple(x + y for x, y in zip(ea, eb))
            out[key] = out.get(key, 0) + ca * cb
    return out


def _perm_sign(p) -> int:
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@lru_cache(maxsize=None)
def littlewood_richardson(nu: Partition, lam: Partition, mu: Partition) -> int:
    """c^mu_{nu,lam}, read off s_nu*s_lam against the bialternant basis."""
    nu, lam, mu = Partition(nu), Partition(lam), Partition(mu)
    if sum(nu) + sum(lam) != sum(mu) or not contains(mu, nu) or not contains(mu, lam):
        return 0
    n = max(len(mu), 1)
    prod = _poly_mul(schur_polynomial(nu, n), schur_polynomial(lam, n))
    delta = tuple(range(n - 1, -1, -1))
    target = tuple((mu[i] if i < len(mu) else 0) + delta[i] for i in range(n))
    total = 0
    for w in permutations(range(n)):
        key = tuple(target[i] - delta[w[i]] for i in range(n))
        if min(key) < 0:
            continue
        c = prod.get(key)
        if c:
            total += _perm_sign(w) * c
    return total


# --- principal specializations ------------------------------------------

def _q(e) -> Scalar:
    return Scalar.q_power(Fraction(e))


@lru_cache(maxsize=None)
def principal_power_sum(n: int, spec: Specialization) -> Scalar:
    """p_n evaluated at the specialization, in closed form."""
    if n < 1:
        raise ValueError("power sums are indexed by positive integers")
    half = Fraction(1, 2)
    if spec.sign == -1:
        return (_q(-n * half) - _q(n * half)).inv()
    nu = spec.nu
    ell = len(nu)
    out = Scalar.zero()
    for i, part in enumerate(nu, start=1):
        out = out + _q(n * (part - i + half))
    tail = _q(-n * (ell + half)) / (Scalar.one() - _q(-n))
    return out + tail


@lru_cache(maxsize=None)
def complete_h(k: int, spec: Specialization) -> Scalar:
    """h_k at the specialization via Newton's identities k h_k = sum p_i h_{k-i}."""
    if k < 0:
        return Scalar.zero()
    if k == 0:
        return Scalar.one()
    acc = Scalar.zero()
    for i in range(1, k + 1):
        acc = acc + principal_power_sum(i, spec) * complete_h(k - i, spec)
    return acc / k


@lru_cache(maxsize=None)
def skew_schur_principal(mu: Partition, eta: Partition, spec: Specialization) -> Scalar:
    """s_{mu/eta} at the specialization: det(h_{mu_i - eta_j - i + j})."""
    mu, eta = Partition(mu), Partition(eta)
    if not contains(mu, eta):
        return Scalar.zero()
    ell = len(mu)
    if ell == 0:
        return Scalar.one()
    e = list(eta) + [0] * (ell - len(eta))
    rows = [[complete_h(mu[i] - e[j] - i + j, spec) for j in range(ell)] for i in range(ell)]
    return det_field(rows, Scalar.zero(), Scalar.one())


def schur_principal(mu: Partition, spec: Specialization) -> Scalar:
    return skew_schur_principal(Partition(mu), Partition(), spec)


def skew_via_lr(mu: Partition, eta: Partition, spec: Specialization) -> Scalar:
    """s_{mu/eta} as sum_lam c^mu_{eta,lam} s_lam; slow cross-check path."""
    mu, eta = Partition(mu), Partition(eta)
    k = sum(mu) - sum(eta)
    if k < 0:
        return Scalar.zero()
    out = Scalar.zero()
    for lam in partitions_of(k):
        c = littlewood_richardson(eta, lam, mu)
        if c:
            out = out + schur_principal(lam, spec) * c
    return out


__all__ = [
    "Specialization", "RHO", "MINUS_RHO", "littlewood_richardson", "principal_power_sum",
    "complete_h", "skew_schur_principal", "schur_principal", "skew_via_lr",
    "schur_polynomial", "enumerate_partitions",
]
