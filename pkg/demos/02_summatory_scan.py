"""
Scanning L(n) and M(n) with checkpoints
=======================================

L(n) stays non-positive for a long time. This scan goes to 10^7 by default;
pass a larger bound (e.g. 906180359) to reach the first positive values,
which takes a minute or two on one core.
"""

import sys
import tempfile
from pathlib import Path

from liouville import log_density_negative, scan_summatory
from liouville.scan import load_checkpoint

n_max = int(sys.argv[1]) if len(sys.argv) > 1 else 10**7

with tempfile.TemporaryDirectory() as tmp:
    ckpt = Path(tmp) / "scan.ckpt"

    # scan half way and stop, as if interrupted
    scan_summatory(n_max // 2, checkpoint_path=ckpt)
    state = load_checkpoint(ckpt)
    print(f"checkpoint at n = {state.next_n - 1}: L = {state.running_L}, M = {state.running_M}")

    # resume to the end; the report equals an uninterrupted run
    report = scan_summatory(n_max, state)

print(f"L({n_max}) = {report.final_L}, M({n_max}) = {report.final_M}")
print(f"min L = {report.min_L}, max L on [2, {n_max}] = {report.max_L_on_range}")
print(f"{len(report.nonneg_events)} values of n with L(n) >= 0, first positive n: {report.first_positive_n}")

# logarithmic density of {n : L(n) < 0}, creeping upwards
for k in range(3, 8):
    print(f"density up to 10^{k}: {log_density_negative(10**k):.4f}")
