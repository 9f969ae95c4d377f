"""Random lattice expansions: how often are they semi-primal, and do the
three tests ever disagree?

Each sample gets its own generator spawned from the master seed, so a run
is reproducible sample by sample regardless of how it is split up.
"""
from __future__ import annotations

import time
from dataclasses import asdict, dataclass

import numpy as np
from scipy.stats import binomtest

from .catalog import BOUNDS, LATTICE_OPS, chain_lattice, chain_names
from .core import FiniteAlgebra
from .errors import EmptySample, RouteDisagreement
from .primality import is_semi_primal


@dataclass(frozen=True)
class SampleReport:
    base_chain_size: int
    extra_ops: tuple
    sample_count: int
    semi_primal_count: int
    fraction: float
    interval: tuple
    seed: int
    disagreements: int = 0
    completed: bool = True

    def to_json(self):
        d = asdict(self)
        d["extra_ops"] = list(self.extra_ops)
        d["interval"] = list(self.interval)
        return d


def random_expansion(chain_size, arities, rng):
    """Bounded chain on ``chain_size`` elements plus uniformly random operations."""
    n = chain_size - 1
    meet, join = chain_lattice(n)
    sig = list(LATTICE_OPS)
    tables = {"meet": meet, "join": join, "zero": 0, "one": n}
    for j, k in enumerate(arities):
        sig.append((f"r{j}", int(k)))
        tables[f"r{j}"] = rng.integers(0, chain_size, size=(chain_size,) * int(k))
    sig += list(BOUNDS)
    return FiniteAlgebra(chain_size, sig, tables, name="random", element_names=chain_names(n),
                         lattice=("meet", "join"))


def wilson_interval(successes, trials, confidence=0.95):
    ci = binomtest(successes, trials).proportion_ci(confidence_level=confidence, method="wilson")
    return float(ci.low), float(ci.high)


def _check(chain_size, extra_ops, samples, seed, routes, budget):
    if samples <= 0:
        raise EmptySample("at least one sample is needed")
    if not 2 <= chain_size <= 5:
        raise ValueError("chain size must be between 2 and 5")
    children = np.random.SeedSequence(seed).spawn(samples)
    start = time.monotonic()
    hits = done = disagreements = 0
    for child in children:
        if budget is not None and time.monotonic() - start > budget:
            break
        A = random_expansion(chain_size, extra_ops, np.random.default_rng(child))
        try:
            v = is_semi_primal(A, route=routes)
        except RouteDisagreement:
            disagreements += 1
            done += 1
            continue
        hits += v.semi_primal
        done += 1
    return hits, done, disagreements


def murskii_sample(chain_size, extra_ops, samples, seed, budget=None, all_routes=False):
    """Fraction of random expansions that are semi-primal, with a Wilson 95% interval.

    Uses the T-route unless ``all_routes``.  ``budget`` (seconds) stops the
    run early; the report then covers the samples finished in time and has
    ``completed=False``.
    """
    extra_ops = tuple(int(k) for k in extra_ops)
    routes = "all" if all_routes else "T-route"
    hits, done, bad = _check(chain_size, extra_ops, samples, seed, routes, budget)
    if done == 0:
        raise EmptySample("budget expired before the first sample")
    return SampleReport(chain_size, extra_ops, done, hits, hits / done,
                        wilson_interval(hits, done), seed, bad, done == samples)


def route_fuzz(chain_size, extra_ops, samples, seed, budget=None):
    """Number of random expansions on which the three routes disagree."""
    _, _, bad = _check(chain_size, tuple(extra_ops), samples, seed, "all", budget)
    return bad


def fraction_by_size(sizes, extra_ops, samples, seeds):
    """Mean observed fraction per chain size over several seeds (for reporting)."""
    return {n: float(np.mean([murskii_sample(n, extra_ops, samples, s).fraction for s in seeds]))
            for n in sizes}
