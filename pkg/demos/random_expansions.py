"""How often is a bounded chain with one random binary operation semi-primal?

The fraction is estimated per chain size with a 95% Wilson interval; every
sample is also run through all three tests to confirm they agree.

Run: python3 demos/random_expansions.py [samples]
"""
import sys

from semiprimal.experiments import murskii_sample

samples = int(sys.argv[1]) if len(sys.argv) > 1 else 300
print(f"{'chain':>5} {'semi-primal':>12} {'fraction':>9}  95% interval   disagreements")
for size in (2, 3, 4, 5):
    r = murskii_sample(size, [2], samples, seed=2024, all_routes=True)
    lo, hi = r.interval
    print(f"{size:>5} {r.semi_primal_count:>6}/{r.sample_count:<5} {r.fraction:>9.3f}"
          f"  [{lo:.3f}, {hi:.3f}]   {r.disagreements}")
