import os
import sys

from hypothesis import HealthCheck, settings, strategies as st

from veronese import MonomialIdeal, RingCtx, VeroneseSpec

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def monomial_ideals(draw, max_n=4, max_gens=5, max_deg=3, squarefree=False):
    n = draw(st.integers(1, max_n))
    top = 1 if squarefree else max_deg
    exps = st.lists(st.integers(0, top), min_size=n, max_size=n).filter(lambda e: 0 < sum(e) <= max_deg)
    gens = draw(st.lists(exps, min_size=1, max_size=max_gens))
    return MonomialIdeal(RingCtx.standard(n), tuple(map(tuple, gens)))


@st.composite
def veronese_specs(draw, max_n=5, max_s=3, max_power=3):
    n = draw(st.integers(1, max_n))
    support = st.sets(st.integers(1, n), min_size=1)
    comps = draw(st.lists(st.tuples(support, st.integers(1, max_power)), min_size=1, max_size=max_s))
    return VeroneseSpec(RingCtx.standard(n), tuple(comps))


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = module.pytest_terminal_lines() if module else []
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
