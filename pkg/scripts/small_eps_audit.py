"""Compare the exact steady state with the three-level closed form as eps1 -> 0.

For each gamma the Lindblad kernel is solved at decreasing eps1 and set
against two candidate limits: the closed-form three-level populations and
the flux-balance limit (1 + 6g, 2g, g) / (1 + 9g).  Only the latter is
approached, with first-order error.
"""
import numpy as np

from hardosc.analytic import lindblad_limit_populations, populations_gamma
from hardosc.liouvillian import solve_steady
from hardosc.model import HardParams

EPS = (1e-2, 1e-3, 1e-4)

print(f"{'gamma':>6} {'eps1':>7}   {'rho0':>7} {'rho1':>7} {'rho2':>7}   {'|closed|':>9} {'|limit|':>9}")
for g in (0.05, 1 / 6, 0.25, 1 / 3, 0.5, 1.0, 3.0, 10.0):
    closed = np.array(populations_gamma(g))
    limit = np.array(lindblad_limit_populations(g))
    for eps1 in EPS:
        pops = solve_steady(HardParams.from_gamma(g, eps1)).populations[:3]
        print(
            f"{g:6.3f} {eps1:7.0e}   {pops[0]:7.4f} {pops[1]:7.4f} {pops[2]:7.4f}"
            f"   {np.abs(pops - closed).max():9.2e} {np.abs(pops - limit).max():9.2e}"
        )
