import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semiprimal.errors import EmptySample
from semiprimal.experiments import (
    fraction_by_size,
    murskii_sample,
    random_expansion,
    route_fuzz,
    wilson_interval,
)
from semiprimal.primality import is_semi_primal


def test_same_seed_same_report():
    a = murskii_sample(3, [2], 60, seed=7)
    b = murskii_sample(3, [2], 60, seed=7)
    assert a == b
    assert murskii_sample(3, [2], 60, seed=8) != a or a.fraction in (0.0, 1.0)


def test_shorter_run_is_a_prefix():
    # sample i depends only on (seed, i): rebuild the first 20 of a 40-sample spawn by hand
    children = np.random.SeedSequence(3).spawn(40)[:20]
    hits = sum(is_semi_primal(random_expansion(3, (2,), np.random.default_rng(c)),
                              route="T-route").semi_primal for c in children)
    assert murskii_sample(3, [2], 20, seed=3).semi_primal_count == hits


@settings(max_examples=50)
@given(st.integers(1, 500), st.data())
def test_wilson_interval_is_valid(trials, data):
    k = data.draw(st.integers(0, trials))
    lo, hi = wilson_interval(k, trials)
    assert 0.0 <= lo <= k / trials <= hi <= 1.0


def test_route_fuzz_finds_no_disagreement():
    assert route_fuzz(3, [2], 50, seed=1) == 0


def test_report_json_and_budget():
    r = murskii_sample(2, [2], 40, seed=0, all_routes=True)
    d = r.to_json()
    assert d["sample_count"] == 40 and d["disagreements"] == 0 and d["completed"]
    partial = murskii_sample(4, [2], 10_000, seed=0, budget=0.2)
    assert not partial.completed and 0 < partial.sample_count < 10_000


def test_errors():
    with pytest.raises(EmptySample):
        murskii_sample(3, [2], 0, seed=0)
    with pytest.raises(ValueError):
        murskii_sample(7, [2], 10, seed=0)


def test_fraction_by_size():
    out = fraction_by_size([2, 3], [2], 20, seeds=[0, 1])
    assert set(out) == {2, 3} and all(0 <= v <= 1 for v in out.values())
