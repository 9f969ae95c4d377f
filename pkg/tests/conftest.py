import itertools

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from semiprimal.core import FiniteAlgebra, is_homomorphism
from semiprimal.experiments import random_expansion

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def small_algebras(draw, max_size=3, arities=(1, 2)):
    """Arbitrary small algebras with a random signature (no lattice assumed)."""
    n = draw(st.integers(1, max_size))
    sig, tables = [], {}
    for j, k in enumerate(draw(st.lists(st.sampled_from(arities), min_size=1, max_size=2))):
        cells = n ** k
        flat = draw(st.lists(st.integers(0, n - 1), min_size=cells, max_size=cells))
        sig.append((f"f{j}", k))
        tables[f"f{j}"] = np.array(flat).reshape((n,) * k)
    return FiniteAlgebra(n, sig, tables)


@st.composite
def chain_expansions(draw, sizes=(2, 3, 4), arities=(2,)):
    """A bounded chain plus random operations, reproducible from a drawn seed."""
    n = draw(st.sampled_from(sizes))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_expansion(n, arities, np.random.default_rng(seed))


def brute_force_homs(A, B):
    """Every map A -> B checked exhaustively: the oracle for the backtracking search."""
    return sorted(m for m in itertools.product(range(B.size), repeat=A.size)
                  if is_homomorphism(A, B, m))


def brute_force_congruences(A):
    """Every compatible partition of a small algebra, as canonical label tuples."""
    out = []
    for labels in _set_partitions(A.size):
        if all(labels[t[x]] == labels[t[y]]
               for _, k, t in A._ops
               for x in itertools.product(range(A.size), repeat=k)
               for y in itertools.product(range(A.size), repeat=k)
               if all(labels[a] == labels[b] for a, b in zip(x, y))):
            out.append(labels)
    return out


def _set_partitions(n):
    def rec(i, labels, blocks):
        if i == n:
            yield tuple(labels)
            return
        for b in range(blocks + 1):
            yield from rec(i + 1, labels + [b], max(blocks, b + 1))

    yield from rec(0, [], 0)


@pytest.fixture(scope="session")
def luk4_base():
    from semiprimal.catalog import lukasiewicz
    from semiprimal.functors import Base

    return Base(lukasiewicz(4))


@pytest.fixture(scope="session")
def luk6_base():
    from semiprimal.catalog import lukasiewicz
    from semiprimal.functors import Base

    return Base(lukasiewicz(6))


ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
