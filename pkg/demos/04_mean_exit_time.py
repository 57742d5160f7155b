#!/usr/bin/env python3
"""Mean first exit time of a tempered stable particle.

Solving the operator equation with unit source and absorbing exterior gives
the expected time for a particle started at x to leave (-r, r).  Without
tempering the answer is known in closed form; with tempering the long jumps
are exponentially suppressed, so escapes take longer, and larger orders
beta (more mass in short jumps) escape faster.
"""

import numpy as np

from templap import (
    ExperimentConfig,
    Grid,
    SchemeParams,
    assemble_operator,
    build_tchan_precond,
    example3_exact,
    pcg_solve,
    run_convergence_study,
)

r = 1.0
M = 1023
grid = Grid(-r, r, M)
probes = np.array([-0.8, -0.4, 0.0, 0.4, 0.8])
idx = np.searchsorted(grid.interior, probes)

print(f"exit time from (-{r}, {r}), M = {M}\n")
print(f"{'beta':>5} {'lam':>4} | " + " ".join(f"u({p:+.1f})" for p in probes))
for beta in (0.5, 1.0, 1.5):
    s, s1 = (1, 1) if beta >= 1 else (0, 0)
    for lam in (0.0, 0.5, 3.0):
        params = SchemeParams(beta=beta, lam=lam, s=s, s1=s1)
        op = assemble_operator(params, grid)
        U, rep = pcg_solve(op, np.ones(M), build_tchan_precond(op))
        vals = " ".join(f"{U[i]:7.4f}" for i in idx)
        print(f"{beta:>5} {lam:>4} | {vals}")
    if beta != 1.5:
        print()

print("\nclosed form at lam = 0 for comparison (beta = 0.5):")
exact = example3_exact(0.5, r, probes)
print("  " + " ".join(f"{v:7.4f}" for v in exact))

print("\nconvergence to the closed form validates the kernel normalization:")
cfg = ExperimentConfig(example=3, params=SchemeParams(beta=0.5, lam=0.0, s=0, s1=0),
                       levels=(8, 9, 10), radius=r)
report = run_convergence_study(cfg)
for lv in report.levels:
    rate = "  --" if lv.linf_rate is None else f"{lv.linf_rate:.2f}"
    print(f"  M={lv.M:5d}  max error {lv.linf_err:.3e}  rate {rate}")
