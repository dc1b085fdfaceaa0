from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def fractions(lo=-4, hi=4, max_den=9):
    return st.builds(
        lambda n, d: Fraction(n, d),
        st.integers(lo * max_den, hi * max_den),
        st.integers(1, max_den),
    )


def positive_fractions(hi=4, max_den=9):
    return st.builds(lambda n, d: Fraction(n, d), st.integers(1, hi * max_den), st.integers(1, max_den))


def points(lo=-3, hi=3):
    return st.tuples(*(fractions(lo, hi) for _ in range(5)))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
