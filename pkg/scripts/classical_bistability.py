"""Hard-excitation bistability of the classical amplitude equation."""
import numpy as np

from hardosc.classical import converged_to, fixed_points, integrate
from hardosc.model import HardParams

p = HardParams(eps1=0.1, eps2=1.0, c=1.0, omega=1.0)
fp = fixed_points(p)
print(f"unstable cycle r- = {fp.r_minus:.6f}, stable cycle r+ = {fp.r_plus:.6f}")
for r0 in (0.02, 0.05, 0.1, 0.12, 0.2, 0.5, 1.5):
    tr = integrate(p, np.sqrt(r0), 200.0)
    end = tr.abs2[-1]
    where = "rest" if converged_to(tr, 0.0) else "r+" if converged_to(tr, fp.r_plus) else "?"
    print(f"|z0|^2 = {r0:5.2f} -> |z|^2 = {end:.3e}  ({where})")
