"""Truncated multi-component fermionic Fock space.

Half-integers r = k + 1/2 are encoded by the integer k throughout.  A basis
vector of one component is a :class:`ChargedPartition` (c, lam), the wedge
over the Maya set {lam_i - i + c + 1/2}.  Several components are combined with
the Koszul rule: an operator on component i picks up (-1) for every odd-charge
component to its left.
"""
from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .amplitude import ONE, ZERO, Amplitude, TruncationConfig
from .linalg import det_ring
from .partition import Partition, frobenius
from .scalar import Scalar


class ChargedPartition(NamedTuple):
    charge: int
    shape: Partition

    def energy2(self) -> int:
        """Twice the energy |lam| + c^2/2."""
        return 2 * sum(self.shape) + self.charge * self.charge

    def render(self) -> str:
        return f"{self.charge}:{self.shape.render()}"


VAC = ChargedPartition(0, Partition())


def cp(shape=(), charge: int = 0) -> ChargedPartition:
    return ChargedPartition(int(charge), Partition(shape))


# --- Maya-diagram helpers -------------------------------------------------

@lru_cache(maxsize=None)
def maya(c: ChargedPartition):
    """(tops, floor): occupied set is tops plus every integer <= floor."""
    lam = c.shape
    ell = len(lam)
    tops = tuple(lam[i] - (i + 1) + c.charge for i in range(ell))
    return tops, c.charge - ell - 1


def _from_tops(tops, charge) -> ChargedPartition:
    parts = [a + i + 1 - charge for i, a in enumerate(tops)]
    while parts and parts[-1] == 0:
        parts.pop()
    return ChargedPartition(charge, Partition(parts))


@lru_cache(maxsize=None)
def psi1(c: ChargedPartition, k: int):
    """psi_{k+1/2} on one component: (sign, result) or None."""
    tops, floor = maya(c)
    if k <= floor or k in tops:
        return None
    above = sum(1 for t in tops if t > k)
    new = tuple(sorted(tops + (k,), reverse=True))
    return (-1 if above % 2 else 1), _from_tops(new, c.charge + 1)


@lru_cache(maxsize=None)
def psi_star1(c: ChargedPartition, k: int):
    """psi*_{k+1/2} on one component: (sign, result) or None."""
    tops, floor = maya(c)
    if k > floor:
        if k not in tops:
            return None
        ext = tops
    else:
        ext = tops + tuple(range(floor, k - 1, -1))
    pos = ext.index(k)
    new = ext[:pos] + ext[pos + 1:]
    return (-1 if pos % 2 else 1), _from_tops(new, c.charge - 1)


def particles_holes(c: ChargedPartition):
    """Occupied k >= 0 (particles) and empty k < 0 (holes), both descending."""
    tops, floor = maya(c)
    parts = [t for t in tops if t >= 0] + list(range(floor, -1, -1))
    holes = [k for k in range(-1, floor, -1) if k not in tops]
    return parts, holes


def apply_op(basis: tuple, comp: int, k: int, star: bool):
    """Apply psi^comp_{k+1/2} (or its dual) to a basis tuple: (sign, basis) or None."""
    res = (psi_star1 if star else psi1)(basis[comp], k)
    if res is None:
        return None
    s, new = res
    for j in range(comp):
        if basis[j].charge & 1:
            s = -s
    return s, basis[:comp] + (new,) + basis[comp + 1:]


def tuple_energy2(basis) -> int:
    return sum(c.energy2() for c in basis)


def cp_sort_key(c: ChargedPartition):
    return (c.energy2(), c.charge, tuple(-p for p in c.shape))


def basis_sort_key(basis):
    return tuple(cp_sort_key(c) for c in basis)


# --- states ---------------------------------------------------------------

class FockState:
    """Finite combination of basis tuples with Amplitude coefficients."""

    __slots__ = ("n_components", "terms", "dropped")

    def __init__(self, n_components: int, terms=None, dropped: bool = False):
        self.n_components = n_components
        self.terms = {} if terms is None else terms
        self.dropped = dropped

    @staticmethod
    def vacuum(n_components: int) -> "FockState":
        return FockState(n_components, {(VAC,) * n_components: ONE})

    def coefficient(self, basis) -> Amplitude:
        return self.terms.get(tuple(basis), ZERO)

    def add_term(self, basis, amp: Amplitude):
        if amp.is_zero():
            return
        w = self.terms.get(basis)
        if w is None:
            self.terms[basis] = amp
        else:
            s = w + amp
            if s.is_zero():
                del self.terms[basis]
            else:
                self.terms[basis] = s

    def __add__(self, o: "FockState") -> "FockState":
        out = FockState(self.n_components, dict(self.terms), self.dropped or o.dropped)
        for b, a in o.terms.items():
            out.add_term(b, a)
        return out

    def __neg__(self):
        return FockState(self.n_components, {b: -a for b, a in self.terms.items()}, self.dropped)

    def __sub__(self, o):
        return self + (-o)

    def scale(self, amp: Amplitude, cfg: TruncationConfig | None = None) -> "FockState":
        out = FockState(self.n_components, dropped=self.dropped)
        for b, a in self.terms.items():
            out.add_term(b, a.mul(amp, cfg))
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def restrict(self, pred) -> "FockState":
        return FockState(self.n_components, {b: a for b, a in self.terms.items() if pred(b)}, self.dropped)

    def within(self, cfg: TruncationConfig) -> "FockState":
        """Keep basis tuples with energy <= cfg.energy and truncate amplitudes."""
        out = FockState(self.n_components, dropped=self.dropped)
        for b, a in self.terms.items():
            if tuple_energy2(b) <= 2 * cfg.energy:
                out.add_term(b, a.truncate(cfg))
        return out

    def map_amplitudes(self, fn) -> "FockState":
        out = FockState(self.n_components, dropped=self.dropped)
        for b, a in self.terms.items():
            out.add_term(b, fn(a))
        return out

    def theta_constant(self) -> "FockState":
        return self.map_amplitudes(lambda a: a.theta_constant())

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: basis_sort_key(kv[0]))

    def __eq__(self, o):
        return isinstance(o, FockState) and self.n_components == o.n_components and self.terms == o.terms

    def dump(self) -> str:
        lines = []
        for b, a in self.items():
            charges = ",".join(str(c.charge) for c in b)
            shapes = " | ".join(c.shape.render() for c in b)
            lines.append(f"[{charges}] {shapes} : {a.render()}")
        return "\n".join(lines)

    def __repr__(self):
        return f"FockState(n={self.n_components}, {len(self.terms)} terms)"


def _apply(state: FockState, comp: int, k: int, star: bool, cfg=None) -> FockState:
    out = FockState(state.n_components, dropped=state.dropped)
    for b, a in state.terms.items():
        res = apply_op(b, comp, k, star)
        if res is None:
            continue
        s, nb = res
        if cfg is not None and tuple_energy2(nb) > 2 * cfg.energy:
            out.dropped = True
            continue
        out.add_term(nb, a if s > 0 else -a)
    return out


def _k_of(r) -> int:
    r = Fraction(r)
    k = r - Fraction(1, 2)
    if k.denominator != 1:
        raise ValueError(f"{r} is not a half-integer")
    return int(k)


def apply_psi(comp: int, r, state: FockState, cfg=None) -> FockState:
    """psi^comp_r; r is a half-integer (Fraction or float-free string like '1/2')."""
    return _apply(state, comp, _k_of(r), False, cfg)


def apply_psi_star(comp: int, r, state: FockState, cfg=None) -> FockState:
    return _apply(state, comp, _k_of(r), True, cfg)


def basis_state(shapes, charges=None, cfg=None) -> FockState:
    shapes = [Partition(s) for s in shapes]
    charges = list(charges) if charges is not None else [0] * len(shapes)
    basis = tuple(ChargedPartition(c, s) for c, s in zip(charges, shapes))
    if cfg is not None and tuple_energy2(basis) > 2 * cfg.energy:
        raise ValueError("basis state exceeds the energy cutoff")
    return FockState(len(basis), {basis: ONE})


def frobenius_creator_state(mu: Partition) -> FockState:
    """(-1)^(n_1+..+n_k) prod_i psi_{m_i+1/2} psi*_{-n_i-1/2} |0>, applied right to left."""
    fc = frobenius(Partition(mu))
    st = FockState.vacuum(1)
    for m, n in reversed(list(zip(fc.m, fc.n))):
        st = _apply(st, 0, -n - 1, True)
        st = _apply(st, 0, m, False)
    if sum(fc.n) % 2:
        st = -st
    return st


def inner(u: FockState, v: FockState) -> Amplitude:
    """Bilinear pairing sum_b u_b v_b (no conjugation)."""
    acc = ZERO
    small, big = (u, v) if len(u.terms) <= len(v.terms) else (v, u)
    for b, a in small.terms.items():
        w = big.terms.get(b)
        if w is not None:
            acc = acc + a * w
    return acc


# --- quadratic exponents --------------------------------------------------

class QuadraticExponent:
    """Coefficients A^{ij}_{mn} of sum A psi^i_{m+1/2} psi^{j*}_{-n-1/2}."""

    __slots__ = ("n_components", "entries")

    def __init__(self, n_components: int, entries=None):
        self.n_components = n_components
        self.entries = {}
        for key, v in (entries or {}).items():
            if not isinstance(v, Amplitude):
                v = Amplitude.const(v)
            if not v.is_zero():
                self.entries[tuple(key)] = v

    def get(self, i, j, m, n) -> Amplitude:
        return self.entries.get((i, j, m, n), ZERO)

    def items(self):
        return sorted(self.entries.items())

    def restrict(self, comps) -> "QuadraticExponent":
        """Entries with both indices in comps, re-indexed in the given order."""
        pos = {c: idx for idx, c in enumerate(comps)}
        out = {}
        for (i, j, m, n), v in self.entries.items():
            if i in pos and j in pos:
                out[(pos[i], pos[j], m, n)] = v
        return QuadraticExponent(len(comps), out)

    def cut(self, cfg: TruncationConfig) -> "QuadraticExponent":
        out = {}
        for (i, j, m, n), v in self.entries.items():
            if m + n + 1 <= cfg.energy:
                t = v.truncate(cfg)
                if not t.is_zero():
                    out[(i, j, m, n)] = t
        return QuadraticExponent(self.n_components, out)

    def __eq__(self, o):
        return isinstance(o, QuadraticExponent) and self.n_components == o.n_components \
            and self.entries == o.entries

    def __sub__(self, o):
        keys = set(self.entries) | set(o.entries)
        return QuadraticExponent(self.n_components,
                                 {k: self.entries.get(k, ZERO) - o.entries.get(k, ZERO) for k in keys})

    def dump(self) -> str:
        return "\n".join(f"A[{i},{j}]_({m},{n}) = {v.render()}" for (i, j, m, n), v in self.items())

    def __repr__(self):
        return f"QuadraticExponent(n={self.n_components}, {len(self.entries)} entries)"


def pair_basis(n_components: int, i: int, j: int, m: int, n: int):
    """(sign, basis) of psi^i_{m+1/2} psi^{j*}_{-n-1/2}|0>."""
    b = (VAC,) * n_components
    s1, b = apply_op(b, j, -n - 1, True)
    s2, b = apply_op(b, i, m, False)
    return s1 * s2, b


def bogoliubov_state(A: QuadraticExponent, cfg: TruncationConfig, caps=None) -> FockState:
    """exp(sum A psi psi*)|0> through the cutoff.

    The pair operators commute and square to zero, so the exponential is the
    ordered product of (1 + A_e X_e); applying the factors one at a time
    enumerates exactly the multisets of distinct pairs.  ``caps`` optionally
    lists (components, max twice-energy) budgets in addition to the global one.
    A pair psi^i_{m+1/2} psi^{j*}_{-n-1/2} raises twice the energy of component
    i by 2m+1 and of component j by 2n+1, so budgets are checked before the
    operators are applied.
    """
    N = A.n_components
    limit = 2 * cfg.energy
    caps = [(tuple(range(N)), limit)] + [(tuple(c), lim) for c, lim in (caps or [])]
    terms = {(VAC,) * N: ONE}
    # basis tuples grouped by their remaining budget per cap
    buckets = {tuple(lim for _, lim in caps): [(VAC,) * N]}
    placed = {(VAC,) * N}
    for (i, j, m, n), coef in A.items():
        if m + n + 1 > cfg.energy:
            continue
        coef = coef.truncate_q(cfg)
        if coef.is_zero():
            continue
        neg = -coef
        cost = tuple((2 * m + 1 if i in comps else 0) + (2 * n + 1 if j in comps else 0)
                     for comps, _ in caps)
        new_terms = dict(terms)
        fresh = []
        for sl, members in buckets.items():
            if any(y > x for x, y in zip(sl, cost)):
                continue
            nsl = tuple(x - y for x, y in zip(sl, cost))
            for b in members:
                a = terms.get(b)
                if a is None:
                    continue
                r1 = apply_op(b, j, -n - 1, True)
                if r1 is None:
                    continue
                r2 = apply_op(r1[1], i, m, False)
                if r2 is None:
                    continue
                nb = r2[1]
                c = (coef if r1[0] * r2[0] > 0 else neg).mul(a, cfg)
                if c.is_zero():
                    continue
                w = new_terms.get(nb)
                if w is None:
                    new_terms[nb] = c
                    fresh.append((nsl, nb))
                else:
                    s = w + c
                    if s.is_zero():
                        del new_terms[nb]
                    else:
                        new_terms[nb] = s
        for nsl, nb in fresh:
            if nb not in placed:
                placed.add(nb)
                buckets.setdefault(nsl, []).append(nb)
        terms = new_terms
    return FockState(N, terms)


def bogoliubov_amplitude(A: QuadraticExponent, mus, cfg: TruncationConfig | None = None) -> Amplitude:
    """Coefficient of a basis tuple in exp(sum A psi psi*)|0> via a Wick determinant.

    ``mus`` holds partitions (charge 0) or ChargedPartitions.
    """
    basis = tuple(m if isinstance(m, ChargedPartition) else ChargedPartition(0, Partition(m)) for m in mus)
    N = A.n_components
    rows, cols = [], []
    for comp, c in enumerate(basis):
        parts, holes = particles_holes(c)
        rows += [(comp, k) for k in parts]
        cols += [(comp, -k - 1) for k in holes]
    if len(rows) != len(cols):
        return ZERO
    if not rows:
        return ONE
    # sign of the ordered monomial prod (psi_row psi*_col)|0> on this basis tuple
    b = (VAC,) * N
    sign = 1
    for (ci, m), (cj, n) in reversed(list(zip(rows, cols))):
        r = apply_op(b, cj, -n - 1, True)
        s1, b = r
        r = apply_op(b, ci, m, False)
        s2, b = r
        sign *= s1 * s2
    if b != basis:
        raise AssertionError("Wick monomial does not reproduce the basis tuple")
    mat = [[A.get(ci, cj, m, n) for (cj, n) in cols] for (ci, m) in rows]
    mul = (lambda x, y: x.mul(y, cfg)) if cfg is not None else None
    d = det_ring(mat, ZERO, ONE, mul)
    return d if sign > 0 else -d


def extract_quadratic_exponent(V: FockState, cfg: TruncationConfig) -> QuadraticExponent:
    """Read A^{ij}_{mn} off the single-pair amplitudes of a normalized state."""
    N = V.n_components
    if not V.coefficient((VAC,) * N).is_one():
        raise ValueError("normalize first: vacuum amplitude is not 1")
    out = {}
    for i in range(N):
        for j in range(N):
            for m in range(cfg.energy):
                for n in range(cfg.energy - m):
                    s, b = pair_basis(N, i, j, m, n)
                    a = V.terms.get(b)
                    if a is not None:
                        out[(i, j, m, n)] = a if s > 0 else -a
    return QuadraticExponent(N, out)


def is_bogoliubov(V: FockState, cfg: TruncationConfig) -> FockState:
    """Residual V - exp(extracted exponent)|0> inside the truncation window.

    The exponent is read off with every Theta sector kept; the window only
    filters the residual.
    """
    R = extract_quadratic_exponent(V, cfg)
    return (V - bogoliubov_state(R, cfg)).within(cfg)


# --- bosons ---------------------------------------------------------------

def alpha(n: int, state: FockState, cfg: TruncationConfig | None = None) -> FockState:
    """alpha_n = sum_r psi_r psi*_{r+n} on a single-component state (n != 0)."""
    if state.n_components != 1:
        raise ValueError("alpha acts on a single component")
    if n == 0:
        raise ValueError("alpha_0 is the charge operator; use n != 0")
    out = FockState(1, dropped=state.dropped)
    for b, a in state.terms.items():
        c = b[0]
        tops, floor = maya(c)
        cands = set(tops)
        if n < 0:
            cands.update(range(floor + n + 1, floor + 1))
        for src in sorted(cands):
            r = psi_star1(c, src)
            if r is None:
                continue
            r2 = psi1(r[1], src - n)
            if r2 is None:
                continue
            nb = (r2[1],)
            if cfg is not None and tuple_energy2(nb) > 2 * cfg.energy:
                out.dropped = True
                continue
            out.add_term(nb, a if r[0] * r2[0] > 0 else -a)
    return out


def _power_sum_partitions(d):
    from .partition import partitions_of
    return partitions_of(d)


def _z(lam) -> int:
    from collections import Counter
    from math import factorial
    z = 1
    for part, mult in Counter(lam).items():
        z *= part ** mult * factorial(mult)
    return z


def boson_fermion_image(state: FockState, max_degree: int) -> dict:
    """<0| exp(sum t_n alpha_n) |state> with t_n = p_n/n, as {power-sum partition: coefficient}.

    Only charge-0 single-component states are accepted.
    """
    if state.n_components != 1:
        raise ValueError("single-component state expected")
    out: dict = {}
    for b, a in state.terms.items():
        c = b[0]
        if c.charge != 0:
            raise ValueError("charge-0 state expected")
        d = sum(c.shape)
        if d > max_degree:
            continue
        for lam in _power_sum_partitions(d):
            st = FockState(1, {b: ONE})
            for part in lam:
                st = alpha(part, st)
            amp = st.coefficient((VAC,))
            if amp.is_zero():
                continue
            val = amp.mul(a).scale(Scalar.from_int(Fraction(1, _z(lam))))
            key = tuple(lam)
            out[key] = out.get(key, ZERO) + val
    return {k: v for k, v in out.items() if not v.is_zero()}


def kp_bilinear_residual(V: FockState, cfg: TruncationConfig) -> FockState:
    """sum_r psi_r V (x) psi*_r V, exact for tensor energies <= cfg.energy."""
    if V.n_components != 1:
        raise ValueError("single-component state expected")
    V = V.within(cfg)
    lim = 2 * cfg.energy
    out = FockState(2)
    for k in range(-cfg.energy - 1, cfg.energy + 1):
        left = _apply(V, 0, k, False)
        right = _apply(V, 0, k, True)
        if left.is_zero() or right.is_zero():
            continue
        for bl, al in left.terms.items():
            el = tuple_energy2(bl)
            for br, ar in right.terms.items():
                if el + tuple_energy2(br) > lim:
                    continue
                out.add_term((bl[0], br[0]), al.mul(ar, cfg))
    return out


# --- random data ----------------------------------------------------------

def random_rational(rng: random.Random, allow_zero=True) -> Fraction:
    while True:
        v = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        if v or allow_zero:
            return v


def random_exponent(n_components: int, cfg: TruncationConfig, rng: random.Random,
                    density: float = 0.7) -> QuadraticExponent:
    """Random rational creator-quadratic exponent within the energy cutoff."""
    out = {}
    for i in range(n_components):
        for j in range(n_components):
            for m in range(cfg.energy):
                for n in range(cfg.energy - m):
                    if rng.random() < density:
                        v = random_rational(rng)
                        if v:
                            out[(i, j, m, n)] = Amplitude.const(v)
    return QuadraticExponent(n_components, out)
