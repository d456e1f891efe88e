import sys
from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

small_rationals = st.builds(
    Fraction, st.integers(-4, 4), st.sampled_from([1, 1, 1, 2, 3])
)


def vectors(n, min_size=0, max_size=5):
    return st.lists(
        st.lists(small_rationals, min_size=n, max_size=n),
        min_size=min_size, max_size=max_size,
    )


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for i in sorted(module.RESULTS):
        ok, detail = module.RESULTS[i]
        terminalreporter.write_line(module.format_line(i, ok, detail))
