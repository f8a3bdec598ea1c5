from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from qballs import quantale as qt

settings.register_profile("default", deadline=None, max_examples=150,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ORDINAL = qt.parse_spec("ordinal_sum[1/4..1/2:lukasiewicz]")
TWO_SUMMANDS = qt.parse_spec("ordinal_sum[0..1/3:product, 1/2..1:lukasiewicz]")
TNORMS = [qt.GODEL, qt.PRODUCT, qt.LUKASIEWICZ, ORDINAL, TWO_SUMMANDS]
ALL_SPECS = TNORMS + [qt.LAWVERE, qt.BOOLEAN]


def unit_values(max_den: int = 64):
    return st.builds(lambda d, n: Fraction(n % (d + 1), d), st.integers(1, max_den), st.integers(0, 10 ** 6))


def values_for(spec: qt.QuantaleSpec):
    if spec.kind is qt.Kind.BOOLEAN:
        return st.sampled_from([qt.ZERO, qt.ONE])
    if spec.is_lawvere:
        finite = st.builds(lambda d, n: Fraction(n, d), st.integers(1, 16), st.integers(0, 80))
        return st.one_of(finite, st.just(qt.INF))
    return unit_values()


# acceptance lines collected by tests/test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
