"""Regression anchors for the universality scans.

Grid scan (numpy) followed by golden-section polish of the candidate minima
with mpmath at 30 digits. Prints JSON.
"""
import json
import sys
import numpy as np
import mpmath as mp
from scanlib import shifted_values, box_points, golden, polish_candidates

mp.mp.dps = 30


def anchor(target, alpha, tau_max=1000.0, step=0.01):
    pts = box_points(0.74, 0.76, 0.05, 5, 5)
    K = int(round(tau_max / step))
    taus = np.arange(K + 1) * step
    vals = shifted_values(pts, taus, alpha)
    J = np.abs(target - vals).max(axis=1)
    kstar = int(J.argmin())
    mp_pts = [mp.mpc(p.real, p.imag) for p in pts]

    def Jmp(tau):
        t = mp.mpf(tau)
        return float(max(abs(target - mp.zeta(p + 1j * t, alpha)) for p in mp_pts))

    best = (J[kstar], taus[kstar])
    for k in polish_candidates(J, taus):
        a = taus[max(k - 1, 0)]
        b = taus[min(k + 1, K)]
        t, v = golden(Jmp, a, b)
        if v < best[0]:
            best = (v, t)
    return {"grid_J_star": float(J[kstar]), "grid_tau_star": float(taus[kstar]),
            "J_star": float(best[0]), "tau_star": float(best[1])}


out = {"zeta_const1": anchor(1.0, 1.0), "hurwitz_third_const_half": anchor(0.5, 1.0 / 3.0)}
json.dump(out, sys.stdout, indent=2)
print()
