from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from vertexglue.partition import Partition
from vertexglue.scalar import Scalar


@st.composite
def scalars(draw, max_terms=3):
    """Small elements of Q(i)(q^(1/12)) built from Laurent monomials and one division."""
    def laurent():
        out = Scalar.zero()
        for _ in range(draw(st.integers(0, max_terms))):
            c = Fraction(draw(st.integers(-3, 3)), draw(st.integers(1, 3)))
            e = draw(st.integers(-12, 12))
            coeff = Scalar.from_int(c)
            if draw(st.booleans()):
                coeff = coeff * Scalar.i()
            out = out + coeff * Scalar.monomial(e)
        return out
    num = laurent()
    den = laurent()
    return num if den.is_zero() else num / den


@st.composite
def partitions(draw, max_size=6):
    n = draw(st.integers(0, max_size))
    parts, rest = [], n
    while rest:
        p = draw(st.integers(1, min(rest, parts[-1] if parts else rest)))
        parts.append(p)
        rest -= p
    return Partition(parts)


# one "PASS/FAIL criterion N" line per acceptance check, echoed after the run
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(':'))):
            terminalreporter.write_line(line)
