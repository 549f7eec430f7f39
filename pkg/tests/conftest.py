from fractions import Fraction

from hypothesis import settings, strategies as st

from detmoments.algebra import FormalSeries
from detmoments.moments import MomentVector

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


def rationals(max_num: int = 9, max_den: int = 5):
    return st.builds(Fraction, st.integers(-max_num, max_num), st.integers(1, max_den))


def series(order: int = 12, zero_constant: bool = False):
    coeffs = st.lists(rationals(), min_size=order + 1, max_size=order + 1)
    if zero_constant:
        coeffs = coeffs.map(lambda cs: [Fraction(0)] + cs[1:])
    return coeffs.map(lambda cs: FormalSeries.from_coefficients(cs, order))


@st.composite
def moment_vectors(draw, nondegenerate: bool = True):
    """Arbitrary rational (m1, m2, m3, m4); optionally with mu2 != 0."""
    m1, m3, m4 = draw(rationals()), draw(rationals()), draw(rationals())
    mu2 = draw(rationals().filter(lambda x: x != 0) if nondegenerate else rationals())
    return MomentVector.of(m1, mu2 + m1**2, m3, m4)


# One summary line per acceptance criterion, taken from the "criterion"
# property each acceptance test records before doing any work.
_criteria: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    label = dict(report.user_properties).get("criterion")
    if label:
        _criteria.append((label, "PASS" if report.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome in sorted(_criteria, key=lambda x: int(x[0].split(".")[0])):
        terminalreporter.write_line(f"{outcome}  {label}")
