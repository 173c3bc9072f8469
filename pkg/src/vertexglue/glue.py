"""Gluing vectors, (self-)gluing of Bogoliubov transforms and the commutator recursion."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .amplitude import ONE, ZERO, Amplitude, TruncationConfig
from .fock import (VAC, FockState, QuadraticExponent, bogoliubov_state, tuple_energy2)
from .scalar import Scalar

A_SIDE, B_SIDE = 0, 1


@dataclass(frozen=True)
class GluingSpec:
    """Either the special family (``f`` set) or general matrices ``E[(i, j, m, n)]``.

    In ``E`` the component labels are 0 for a and 1 for b.  ``phase`` selects
    the sign convention of the special family: "pairing" (default) reproduces
    the pairing rule delta (-1)^((f+1)|mu|) q^(f kappa/2) Q^|mu|; "shifted"
    uses eps_n = i^(1+f) (-1)^((1+f)n) q^(f n(n+1)/2), one extra factor i, which yields
    the same rule with Q replaced by -Q.
    """

    f: int | None = None
    E: dict = field(default_factory=dict)
    phase: str = "pairing"

    @staticmethod
    def special(f: int, phase: str = "pairing") -> "GluingSpec":
        if phase not in ("pairing", "shifted"):
            raise ValueError("phase must be 'pairing' or 'shifted'")
        return GluingSpec(f=int(f), phase=phase)

    @staticmethod
    def general(E: dict) -> "GluingSpec":
        return GluingSpec(f=None, E={k: Scalar.coerce(v) for k, v in E.items()})

    @property
    def is_special(self) -> bool:
        return self.f is not None

    def __hash__(self):
        return hash((self.f, self.phase, tuple(sorted(self.E.items(), key=lambda kv: kv[0]))))


def _ipow(k: int) -> Scalar:
    k %= 4
    return [Scalar.one(), Scalar.i(), -Scalar.one(), -Scalar.i()][k]


def epsilon(n: int, f: int, primed: bool = False, phase: str = "pairing") -> Scalar:
    """The diagonal coefficients of the special gluing vectors."""
    e = Scalar.q_power(Fraction((-1 if primed else 1) * f * n * (n + 1), 2))
    if phase == "shifted":
        ph = _ipow(1 + f) * (-1 if ((1 + f) * n) % 2 else 1)
    else:
        ph = _ipow(f) * (-1 if (f * n) % 2 else 1)
    return ph * e


def gluing_exponent(spec: GluingSpec, cfg: TruncationConfig, edge: str = "Q",
                    loop: str | None = None) -> QuadraticExponent:
    """Exponent of P on components (a, b) = (0, 1), with Q and Theta attached."""
    out = {}
    theta = (lambda s: {loop: s}) if loop is not None else (lambda s: {})
    if spec.is_special:
        n = 0
        while 2 * n + 1 <= cfg.q_half:
            qh = {edge: 2 * n + 1}
            out[(A_SIDE, B_SIDE, n, n)] = Amplitude.monomial(
                epsilon(n, spec.f, False, spec.phase), qh, theta(1))
            out[(B_SIDE, A_SIDE, n, n)] = Amplitude.monomial(
                epsilon(n, spec.f, True, spec.phase), qh, theta(-1))
            n += 1
    else:
        for (i, j, m, n), v in spec.E.items():
            if 2 * (m + n + 1) > cfg.q_half or v.is_zero():
                continue
            eps = 1 if (i, j) == (A_SIDE, B_SIDE) else (-1 if (i, j) == (B_SIDE, A_SIDE) else 0)
            out[(i, j, m, n)] = Amplitude.monomial(v, {edge: 2 * (m + n + 1)}, theta(eps))
    return QuadraticExponent(2, out)


def pair_energy_budget(spec: GluingSpec, cfg: TruncationConfig) -> int:
    """Largest energy of an F_a (x) F_b state that pairs with |P> inside the Q-degree.

    Special pairs carry Q^(n+1/2) for energy 2n+1; general ones Q^(m+n+1) for energy m+n+1.
    """
    return cfg.q_half if spec.is_special else cfg.q_half // 2


def _pairing_cfg(cfg: TruncationConfig, spec: GluingSpec | None = None) -> TruncationConfig:
    e = cfg.q_half if spec is None else pair_energy_budget(spec, cfg)
    return TruncationConfig(energy=max(e, 1), q_half=cfg.q_half, theta_window=cfg.theta_window)


def theta_constant_term(obj):
    """Theta^0 part of an Amplitude or FockState."""
    return obj.theta_constant()


def gluing_vector(spec: GluingSpec, cfg: TruncationConfig, edge: str = "Q",
                  loop: str | None = None) -> FockState:
    """|P> in F_a (x) F_b through the Q-degree of cfg."""
    return bogoliubov_state(gluing_exponent(spec, cfg, edge, loop), _pairing_cfg(cfg, spec))


def _reorder_sign(basis, order) -> int:
    """Koszul sign of permuting graded tensor factors into ``order``."""
    par = [c.charge & 1 for c in basis]
    s = 0
    seen = []
    for idx in order:
        # factors already placed that originally sat to the right of idx
        if par[idx]:
            s += sum(par[j] for j in seen if j > idx)
        seen.append(idx)
    return -1 if s % 2 else 1


def fermionic_glue(V: FockState, a: int, b: int, spec: GluingSpec, cfg: TruncationConfig,
                   edge: str = "Q", loop: str | None = None, P: FockState | None = None) -> FockState:
    """(V, P_ab): bilinear pairing over components a, b (moved last, in that order)."""
    N = V.n_components
    rest = [k for k in range(N) if k not in (a, b)]
    order = rest + [a, b]
    P = P if P is not None else gluing_vector(spec, cfg, edge, loop)
    pvals = P.terms
    out = FockState(len(rest))
    lim = 2 * cfg.energy
    for basis, amp in V.terms.items():
        p = pvals.get((basis[a], basis[b]))
        if p is None:
            continue
        nb = tuple(basis[k] for k in rest)
        if tuple_energy2(nb) > lim:
            continue
        val = amp.mul(p, cfg)
        if val.is_zero():
            continue
        if _reorder_sign(basis, order) < 0:
            val = -val
        out.add_term(nb, val)
    return out


def glue_pair(V1: FockState, a: int, V2: FockState, b: int, spec: GluingSpec,
              cfg: TruncationConfig, edge: str = "Q", loop: str | None = None,
              P: FockState | None = None) -> FockState:
    """Self-gluing of V1 (x) V2 over a (in V1) and b (in V2), without forming the tensor product.

    Output components: those of V1 without a, then those of V2 without b.
    """
    P = P if P is not None else gluing_vector(spec, cfg, edge, loop)
    n1, n2 = V1.n_components, V2.n_components
    rest1 = [k for k in range(n1) if k != a]
    rest2 = [k for k in range(n2) if k != b]
    g1: dict = {}
    for basis, amp in V1.terms.items():
        s = _reorder_sign(basis, rest1 + [a])
        g1.setdefault(basis[a], []).append((tuple(basis[k] for k in rest1), amp if s > 0 else -amp))
    g2: dict = {}
    for basis, amp in V2.terms.items():
        s = _reorder_sign(basis, [b] + rest2)
        g2.setdefault(basis[b], []).append((tuple(basis[k] for k in rest2), amp if s > 0 else -amp))
    lim = 2 * cfg.energy
    out = FockState(len(rest1) + len(rest2))
    for (sa, sb), p in P.terms.items():
        l1 = g1.get(sa)
        l2 = g2.get(sb)
        if not l1 or not l2:
            continue
        # (a, b) carries even total parity, so moving it past V2's rest costs nothing
        for t1, x1 in l1:
            e1 = tuple_energy2(t1)
            if e1 > lim:
                continue
            y = x1.mul(p, cfg)
            if y.is_zero():
                continue
            for t2, x2 in l2:
                if e1 + tuple_energy2(t2) > lim:
                    continue
                out.add_term(t1 + t2, y.mul(x2, cfg))
    return out


def closed_part(A_ab: QuadraticExponent, spec: GluingSpec, cfg: TruncationConfig,
                edge: str = "Q", loop: str | None = None) -> Amplitude:
    """(exp(A restricted to a, b)|0>_ab, P_ab)."""
    W = bogoliubov_state(A_ab, _pairing_cfg(cfg, spec))
    P = gluing_vector(spec, cfg, edge, loop)
    acc = ZERO
    for basis, amp in W.terms.items():
        p = P.terms.get(basis)
        if p is not None:
            acc = acc + amp.mul(p, cfg)
    return acc


def normalize(G: FockState, cfg: TruncationConfig, closed: Amplitude | None = None) -> FockState:
    """Divide by the vacuum amplitude (or a supplied closed part) as a truncated series."""
    c = closed if closed is not None else G.coefficient((VAC,) * G.n_components)
    inv = c.inverse_series(cfg)
    return G.scale(inv, cfg)


def normalized_glue(V: FockState, a: int, b: int, spec: GluingSpec, cfg: TruncationConfig,
                    edge: str = "Q", loop: str | None = None) -> FockState:
    G = fermionic_glue(V, a, b, spec, cfg, edge, loop)
    return normalize(G, cfg)


# --- the commutator recursion -------------------------------------------

class _Mat:
    """Sparse matrix of Amplitudes keyed by (row label, column label)."""

    __slots__ = ("rows",)

    def __init__(self, rows=None):
        self.rows = rows or {}

    def set(self, r, c, v):
        if not v.is_zero():
            self.rows.setdefault(r, {})[c] = v

    def is_zero(self):
        return not any(self.rows.values())

    def mul(self, o: "_Mat", cfg) -> "_Mat":
        out = _Mat()
        for r, row in self.rows.items():
            acc: dict = {}
            for k, v in row.items():
                orow = o.rows.get(k)
                if not orow:
                    continue
                for c, w in orow.items():
                    p = v.mul(w, cfg)
                    if p.is_zero():
                        continue
                    acc[c] = acc[c] + p if c in acc else p
            for c, v in acc.items():
                out.set(r, c, v)
        return out

    def neg(self) -> "_Mat":
        return _Mat({r: {c: -v for c, v in row.items()} for r, row in self.rows.items()})

    def add(self, o: "_Mat") -> "_Mat":
        out = _Mat({r: dict(row) for r, row in self.rows.items()})
        for r, row in o.rows.items():
            for c, v in row.items():
                cur = out.rows.get(r, {}).get(c)
                s = v if cur is None else cur + v
                if s.is_zero():
                    out.rows.get(r, {}).pop(c, None)
                else:
                    out.rows.setdefault(r, {})[c] = s
        return out


def _blocks(A: QuadraticExponent, T, C):
    """Split A into T-T, T-C, C-T, C-C blocks; rows are particle modes, columns hole modes."""
    tset, cset = set(T), set(C)
    tt, tc, ct, cc = _Mat(), _Mat(), _Mat(), _Mat()
    for (i, j, m, n), v in A.entries.items():
        target = {(True, True): tt, (True, False): tc, (False, True): ct, (False, False): cc}
        if (i in tset or i in cset) and (j in tset or j in cset):
            target[(i in tset, j in tset)].set((i, m), (j, n), v)
    return tt, tc, ct, cc


def r_series_passes(A: QuadraticExponent, spec: GluingSpec, cfg: TruncationConfig,
                    a: int | None = None, b: int | None = None, edge: str = "Q",
                    loop: str | None = None, max_passes: int | None = None):
    """Yield the running exponent R after each pass of the commutator recursion.

    One pass conjugates the annihilator exponential of P past the current
    cross terms A_ca (gives B_ca = [P*, A_ca]) and A_ac (gives B_ac), and
    collects  R += -A_ac K A_ca + A_ac K A_cc K A_ca, with K the transposed
    P-exponent; the cross terms are replaced by -A_cc K A_ca and -A_ac K A_cc,
    each divisible by at least one more power of Q^(1/2).
    """
    N = A.n_components
    a = N - 2 if a is None else a
    b = N - 1 if b is None else b
    C = [a, b]
    T = [k for k in range(N) if k not in C]
    tt, a12, a21, a22 = _blocks(A, T, C)
    # K[(j,n) hole of C, (i,m) particle of C] = B^{ij}_{mn}; relabel 0/1 -> a/b
    B = gluing_exponent(spec, cfg, edge, loop)
    K = _Mat()
    for (i, j, m, n), v in B.entries.items():
        K.set((C[j], n), (C[i], m), v)
    R = tt
    passes = 0
    while not (a12.is_zero() or a21.is_zero()):
        if max_passes is not None and passes >= max_passes:
            break
        t1 = a12.mul(K, cfg)            # -B^{12}:  A_ac K
        b21 = K.mul(a21, cfg)           # B^{21} = K A_ca
        new21 = a22.mul(b21, cfg).neg()  # A^{21,j} = -A_cc B^{21}
        R = R.add(t1.mul(a21, cfg).neg())          # A^{2112,j} = -A_ac B^{21}
        R = R.add(t1.mul(new21, cfg).neg())        # A^{1221,j} = B^{12} A^{21,j}
        a12 = t1.mul(a22, cfg).neg()    # A^{12,j} = B^{12} A_cc
        a21 = new21
        passes += 1
        yield _to_exponent(R, T, cfg), passes
    if passes == 0:
        yield _to_exponent(R, T, cfg), 0


def _to_exponent(M: _Mat, T, cfg) -> QuadraticExponent:
    pos = {c: idx for idx, c in enumerate(T)}
    out = {}
    for (i, m), row in M.rows.items():
        for (j, n), v in row.items():
            if m + n + 1 <= cfg.energy:
                out[(pos[i], pos[j], m, n)] = v
    return QuadraticExponent(len(T), out)


def r_series(A: QuadraticExponent, spec: GluingSpec, cfg: TruncationConfig,
             a: int | None = None, b: int | None = None, edge: str = "Q",
             loop: str | None = None) -> QuadraticExponent:
    """Exponent R of the normalized self-gluing, computed by the commutator recursion."""
    R = None
    for R, _ in r_series_passes(A, spec, cfg, a, b, edge, loop):
        pass
    return R


def glued_closed_from_exponent(A: QuadraticExponent, spec: GluingSpec, cfg: TruncationConfig,
                               a: int | None = None, b: int | None = None, edge="Q", loop=None) -> Amplitude:
    N = A.n_components
    a = N - 2 if a is None else a
    b = N - 1 if b is None else b
    return closed_part(A.restrict([a, b]), spec, cfg, edge, loop)
