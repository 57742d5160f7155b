#!/usr/bin/env python3
"""Convergence studies for the three benchmark problems.

Orders depend on the selector pair (s, s1) and the solution regularity:

  * beta < 1:  (0,0) gives 2 - beta, (1,1) gives 2
  * beta = 1:  (0,1) gives 1,       (1,1) gives 2 up to a log factor
  * beta > 1:  (0,1) gives 2 - beta, (1,1) gives 3 - beta

Problem 1 (smooth manufactured solution) shows the clean orders; problem 2
adds nonzero exterior data; problem 3's solution is only Holder continuous
at the boundary, so the observed orders degrade accordingly.
"""

from templap import ExperimentConfig, SchemeParams, format_report, run_convergence_study


def show(title, config):
    print(f"\n== {title} ==")
    report = run_convergence_study(config)
    print(format_report(report, "markdown"), end="")


show("problem 1: beta=0.5, lam=3, selectors (0,0) -> order 1.5",
     ExperimentConfig(example=1, params=SchemeParams(beta=0.5, lam=3.0, s=0, s1=0),
                      levels=(9, 10, 11)))

show("problem 1: beta=1, lam=0.5, selectors (1,1) -> order 2 (log-corrected rate)",
     ExperimentConfig(example=1, params=SchemeParams(beta=1.0, lam=0.5, s=1, s1=1),
                      levels=(9, 10, 11)))

show("problem 2: beta=1.5, lam=3, selectors (1,1) -> order 1.5, exterior data",
     ExperimentConfig(example=2, params=SchemeParams(beta=1.5, lam=3.0, s=1, s1=1),
                      levels=(9, 10, 11)))

show("problem 3: beta=0.5, lam=0 -> boundary-limited orders 0.75 / 0.25",
     ExperimentConfig(example=3, params=SchemeParams(beta=0.5, lam=0.0, s=0, s1=0),
                      levels=(9, 10, 11), radius=1.0))

show("problem 3: beta=0.5, lam=3 -> successive-refinement errors (no closed form)",
     ExperimentConfig(example=3, params=SchemeParams(beta=0.5, lam=3.0, s=1, s1=1),
                      levels=(9, 10, 11), radius=1.0))
