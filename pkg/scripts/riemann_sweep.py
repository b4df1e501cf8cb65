"""Embedded norm of f(x) = x on [0, 1] along a divisibility chain; CSV to stdout."""

import sys

from finite_qm.sweep import SweepSpec, run_sweep

chain = tuple(10**k for k in range(1, 6)) if len(sys.argv) < 2 else tuple(int(n) for n in sys.argv[1:])
report = run_sweep(SweepSpec("embedded_norm_sq", chain, 1e-6, {"coeffs": [0, 1]}))
sys.stdout.write(report.to_csv())
print(f"# stabilized={report.stabilized} (tolerance {report.tolerance}); exact value 1/3", file=sys.stderr)
