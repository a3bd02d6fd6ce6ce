#!/usr/bin/env python3
"""Random two-coloring extraction from the difference set of powers of five.

The family {5^n - 5^m : 0 <= m < n} is not a finite union of
bounded-repetition sum sets, yet every finite piece contains a large
subset that repeats no sum more than twice: color each index upper or
lower at random and keep the elements whose high index is upper and low
index is lower. A kept pair sum has no cancellation, so the four indices
are recoverable and only two pairings remain. Each element survives with
probability 1/4.
"""

from b2sets import build_meyer, is_b2, meyer_extract

family = build_meyer(9)
print(f"family: {family.describe()}")

extraction = meyer_extract(family, seed=7, trials=1000)
print(f"trials: {extraction.trials}, seed: {extraction.seed}")
print(f"mean extracted fraction: {float(extraction.mean_ratio):.4f} (expected 0.25)")
print(f"largest extraction: {extraction.best_size} of {extraction.n_elements}")
print(f"  upper indices: {extraction.best_upper}")

best_values = [e.value for e in extraction.best_elements]
verdict = is_b2(best_values, 2)
print(f"largest extraction repeats no sum more than twice -> {verdict.passed}")
print(f"every extracted subset across all trials passed -> {extraction.all_pass}")
