"""
How ensemble size drives down wrong verdicts
============================================

Noisy classifiers sometimes robustly agree on the wrong class.  Adding
more independent agents makes a joint wrong verdict exponentially less
likely: some other agent eventually contradicts it and the intersection
empties out.  This script measures that trend on a synthetic 2-D task
and writes the sweep as a CSV report.
"""
import numpy as np

from masks import (Explicit, HalfplaneNoise, dataset_from_arrays,
                   report_to_csv, run_experiment)

# --- a synthetic labeled dataset ------------------------------------------------
# ground truth: sign of the first coordinate
rng = np.random.default_rng(2024)
points = rng.uniform(-1.0, 1.0, size=(200, 2)).astype(np.float32)
labels = ["pos" if p[0] >= 0 else "neg" for p in points]
dataset = dataset_from_arrays(list(points), labels)

# --- nine noisy agents ------------------------------------------------------------
# each classifier answers the halfplane question but flips pseudo-randomly
# inside a band around the boundary; seeds make the noise independent
nets = [HalfplaneNoise(seed=300 + s, band=0.3) for s in range(9)]

# --- sweep the ensemble size -------------------------------------------------------
report = run_experiment(nets, dataset, Explicit(()),
                        agent_counts=[1, 3, 5, 9], seed=5,
                        config={"task": "synthetic-halfplane"})

print(f"{'agents':>6} {'right':>6} {'wrong':>6} {'open':>6} {'clash':>6}")
for row in report.rows:
    print(f"{row.n_agents:>6} {row.verified_correct:>6} "
          f"{row.verified_wrong:>6} {row.unverified:>6} "
          f"{row.inconsistent:>6}")

# wrong verdicts collapse as agents are added; inconsistencies (an agent
# clash, detectable and safe) take their place
csv_text = report_to_csv(report)
with open("halfplane_report.csv", "w", newline="") as fh:
    fh.write(csv_text)
print("\nwrote halfplane_report.csv:")
print("\n".join(csv_text.splitlines()[:6]))
