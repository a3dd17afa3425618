import os
import random
from math import gcd

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from liftoracle.ramification import upper_to_lower

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        ok, label, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  [{key}] {label}" + (f"  ({detail})" if detail else ""))


def admissible_upper(rnd: random.Random, p: int, h: int, m: int, w0_max: int = 12, slack: int = 6):
    """One random upper-jump sequence satisfying the existence conditions with m' = 1."""
    w0 = rnd.choice([w for w in range(1, w0_max + 1) if w % p and gcd(w, m) == 1])
    seq = [w0]
    for _ in range(1, h):
        prev = seq[-1]
        options = [p * prev] + [w for w in range(p * prev + 1, p * prev + slack * m + 1) if w % p]
        options = [w for w in options if (w - w0) % m == 0]
        seq.append(rnd.choice(options))
    return seq


@st.composite
def jump_cases(draw, primes=(3, 5, 7), max_h=3, ms=(1, 2, 3, 4)):
    p = draw(st.sampled_from(primes))
    h = draw(st.integers(1, max_h))
    m = draw(st.sampled_from([m for m in ms if gcd(m, p) == 1]))
    seed = draw(st.integers(0, 2**32 - 1))
    upper = admissible_upper(random.Random(seed), p, h, m)
    return p, h, m, upper, upper_to_lower(upper, p)


@pytest.fixture
def d125_w0_9():
    return 5, 3, [9, 189, 4689]
