"""Truncation settings and Amplitude: Scalar polynomials in Q (half-integer powers) and Theta."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .scalar import Scalar


@dataclass(frozen=True)
class TruncationConfig:
    """Window inside which every reported equality is exact.

    energy: max total creation energy of the basis tuples that are kept.
    q_half: max total Q-exponent, counted in units of 1/2.
    theta_window: max |Theta-exponent| per loop variable, applied when
        results are reported or compared.  Products never cut Theta: a
        Theta^k term outside the window can return inside it after a later
        factor, and |k| is bounded by twice the Q-degree anyway.
    """

    energy: int = 4
    q_half: int = 8
    theta_window: int = 2

    @classmethod
    def of(cls, energy: int = 4, q_degree=4, theta_window: int = 2) -> "TruncationConfig":
        q2 = Fraction(q_degree) * 2
        if q2.denominator != 1 or q2 < 0 or energy < 0 or theta_window < 0:
            raise ValueError("truncation parameters must be nonnegative (q_degree in (1/2)Z)")
        return cls(int(energy), int(q2), int(theta_window))

    @property
    def q_degree(self) -> Fraction:
        return Fraction(self.q_half, 2)

    def to_dict(self) -> dict:
        return {"energy_cutoff": self.energy, "q_degree": str(self.q_degree),
                "theta_window": self.theta_window}


# A monomial is (qpart, tpart); each part is a sorted tuple of (name, exponent).
# Q exponents are stored in half-units.
ONE_MONO = ((), ())


@lru_cache(maxsize=200000)
def _merge(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for k, v in b:
        nv = d.get(k, 0) + v
        if nv:
            d[k] = nv
        else:
            d.pop(k, None)
    return tuple(sorted(d.items()))


def mono_mul(x: tuple, y: tuple) -> tuple:
    return (_merge(x[0], y[0]), _merge(x[1], y[1]))


def qdeg2(mono) -> int:
    return sum(e for _, e in mono[0])


def _theta_ok(mono, window) -> bool:
    return all(-window <= e <= window for _, e in mono[1])


class Amplitude:
    """Finite sum of Scalar * monomial(Q, Theta); immutable by convention."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {} if terms is None else terms

    @staticmethod
    def const(c) -> "Amplitude":
        c = Scalar.coerce(c)
        return Amplitude({ONE_MONO: c}) if not c.is_zero() else Amplitude()

    @staticmethod
    def monomial(c, q=None, theta=None) -> "Amplitude":
        """c * prod Q_name^(e/2) * prod Theta_name^k; q maps name -> half-exponent."""
        c = Scalar.coerce(c)
        if c.is_zero():
            return Amplitude()
        qpart = tuple(sorted((k, v) for k, v in (q or {}).items() if v))
        tpart = tuple(sorted((k, v) for k, v in (theta or {}).items() if v))
        return Amplitude({(qpart, tpart): c})

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return len(self.terms) == 1 and ONE_MONO in self.terms and self.terms[ONE_MONO].is_one()

    def __eq__(self, o):
        if not isinstance(o, Amplitude):
            try:
                o = Amplitude.const(o)
            except TypeError:
                return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, o):
        if not isinstance(o, Amplitude):
            o = Amplitude.const(o)
        if not o.terms:
            return self
        if not self.terms:
            return o
        out = dict(self.terms)
        for k, v in o.terms.items():
            w = out.get(k)
            if w is None:
                out[k] = v
            else:
                s = w + v
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
        return Amplitude(out)

    __radd__ = __add__

    def __neg__(self):
        return Amplitude({k: -v for k, v in self.terms.items()})

    def __sub__(self, o):
        if not isinstance(o, Amplitude):
            o = Amplitude.const(o)
        return self + (-o)

    def scale(self, c) -> "Amplitude":
        c = Scalar.coerce(c)
        if c.is_zero():
            return Amplitude()
        if c.is_one():
            return self
        return Amplitude({k: v * c for k, v in self.terms.items()})

    def mul(self, o: "Amplitude", cfg: TruncationConfig | None = None) -> "Amplitude":
        """Product, dropping terms above the Q-degree of cfg when given."""
        a, b = self.terms, o.terms
        if not a or not b:
            return Amplitude()
        if len(b) == 1 and ONE_MONO in b:
            return self.scale(b[ONE_MONO])
        if len(a) == 1 and ONE_MONO in a:
            return o.scale(a[ONE_MONO])
        qmax = cfg.q_half if cfg is not None else None
        out: dict = {}
        for ka, va in a.items():
            da = qdeg2(ka)
            for kb, vb in b.items():
                if qmax is not None and da + qdeg2(kb) > qmax:
                    continue
                k = mono_mul(ka, kb)
                p = va * vb
                w = out.get(k)
                if w is None:
                    out[k] = p
                else:
                    s = w + p
                    if s.is_zero():
                        del out[k]
                    else:
                        out[k] = s
        return Amplitude(out)

    __mul__ = mul

    def truncate(self, cfg: TruncationConfig) -> "Amplitude":
        return Amplitude({k: v for k, v in self.terms.items()
                          if qdeg2(k) <= cfg.q_half and _theta_ok(k, cfg.theta_window)})

    def truncate_q(self, cfg: TruncationConfig) -> "Amplitude":
        return Amplitude({k: v for k, v in self.terms.items() if qdeg2(k) <= cfg.q_half})

    def theta_constant(self) -> "Amplitude":
        return Amplitude({k: v for k, v in self.terms.items() if not k[1]})

    def theta_sector(self, theta: dict) -> "Amplitude":
        want = tuple(sorted((k, v) for k, v in theta.items() if v))
        return Amplitude({(k[0], ()): v for k, v in self.terms.items() if k[1] == want})

    def constant_term(self) -> Scalar:
        return self.terms.get(ONE_MONO, Scalar.zero())

    def min_qdeg2(self) -> int:
        return min((qdeg2(k) for k in self.terms), default=None)

    def rename_q(self, mapping: dict) -> "Amplitude":
        """Substitute Q-variable names (Kahler identification)."""
        out = Amplitude()
        for (qp, tp), v in self.terms.items():
            d: dict = {}
            for name, e in qp:
                n2 = mapping.get(name, name)
                d[n2] = d.get(n2, 0) + e
            out = out + Amplitude({(tuple(sorted(d.items())), tp): v})
        return out

    def inverse_series(self, cfg: TruncationConfig) -> "Amplitude":
        """1/self as a truncated series; the Q^0 Theta^0 part must be 1 and nothing else Q-free."""
        c0 = self.terms.get(ONE_MONO)
        if c0 is None or c0.is_zero():
            raise ZeroDivisionError("vanishing leading closed part")
        if any(qdeg2(k) == 0 and k != ONE_MONO for k in self.terms):
            raise ValueError("series has Q-free non-constant terms; cannot invert")
        c0inv = c0.inv()
        u = Amplitude({k: v * c0inv for k, v in self.terms.items() if k != ONE_MONO})
        # 1/(c0 (1+u)) = c0^-1 sum (-u)^k ; each power raises Q-degree by >= 1/2
        out = Amplitude.const(1)
        power = Amplitude.const(1)
        neg_u = -u
        for _ in range(cfg.q_half + 1):
            power = power.mul(neg_u, cfg)
            if power.is_zero():
                break
            out = out + power
        return out.scale(c0inv)

    def items_sorted(self):
        return sorted(self.terms.items(), key=lambda kv: _mono_sort_key(kv[0]))

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.items_sorted():
            m = render_monomial(mono)
            s = c.render()
            if not m:
                parts.append(s)
            elif c.is_one():
                parts.append(m)
            else:
                parts.append(f"({s})*{m}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Amplitude({self.render()!r})"


def _mono_sort_key(mono):
    return (qdeg2(mono), mono[0], mono[1])


def render_monomial(mono) -> str:
    bits = []
    for name, e in mono[0]:
        f = Fraction(e, 2)
        bits.append(name if f == 1 else f"{name}^({f})")
    for name, e in mono[1]:
        bits.append(name if e == 1 else f"{name}^({e})")
    return "*".join(bits)


ZERO = Amplitude()
ONE = Amplitude.const(1)
