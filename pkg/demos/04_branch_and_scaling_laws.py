"""Continuation of the trigger-front heteroclinic in the speed c, and the two
scaling laws it carries: the 3/2-power frequency correction and the
inverse-square-root interface recession.

Run:  python demos/04_branch_and_scaling_laws.py [out_dir]  (about five minutes)
"""

import math
import sys
from pathlib import Path

import numpy as np

from cglfronts import blowup, continuation, dispersion, scaling
from cglfronts.dispersion import CGLParams


def main(out_dir="demo_out"):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    params = CGLParams(alpha=-0.1, gamma=-0.2)
    cl = dispersion.c_lin(params)
    a2 = 1.0 + params.alpha**2

    scaled = scaling.scaled_at_linear_point(params)
    shot = blowup.shoot_free_front(scaled, params, delta=1e-5)
    dz = blowup.delta_Z(params, shot.z_star)

    dcs = np.geomspace(1e-1, 1e-3, 9)
    w0 = 2.0 * abs(dz.im) / math.pi * (dcs[0] / math.sqrt(a2)) ** 1.5
    print("continuing the branch over delta_c in [1e-3, 1e-1] ...")
    branch = continuation.continue_in_c(params, [cl - d for d in dcs], w0,
                                        with_condition=False)
    branch.write_csv(out / "branch.csv")
    print(f"{'delta_c':>10} {'omega_hat':>12} {'k_tf':>10} {'xi_star':>9}")
    for pt in branch.points:
        print(f"{pt.delta_c:10.4e} {pt.solution.omega_hat:12.4e} "
              f"{pt.k_tf:10.6f} {pt.xi_star:9.2f}")

    dws = np.array([pt.omega_tf - dispersion.omega_abs(params, pt.c)
                    for pt in branch.points])
    slope, logpref = np.polyfit(np.log(dcs), np.log(dws), 1)
    theory = 2.0 * abs(dz.im) / (math.pi * a2**0.75)
    print(f"\n3/2 law: exponent {slope:.4f}, prefactor {math.exp(logpref):.5f}"
          f" (theory {theory:.5f})")
    xis = np.array([pt.xi_star for pt in branch.points])
    print(f"interface leading coefficient (theory): "
          f"{math.pi * a2**0.75:.4f}")

    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib unavailable; skipping the figure")
        return
    fig, axes = plt.subplots(1, 3, figsize=(12, 3.4))
    zeta, z, R = branch.points[-1].solution.profile()
    axes[0].plot(zeta, np.sqrt(R))
    axes[0].set_xlabel("zeta"), axes[0].set_ylabel("|a|")
    axes[0].set_title(f"profile at delta_c = {dcs[-1]:.0e}")
    axes[1].loglog(dcs, dws, "o", label="branch")
    axes[1].loglog(dcs, theory * dcs**1.5, "--", label="3/2 law")
    axes[1].set_xlabel("delta_c"), axes[1].set_ylabel("omega_tf - omega_abs")
    axes[1].legend()
    axes[2].loglog(dcs, xis, "o", label="branch")
    axes[2].loglog(dcs, math.pi * a2**0.75 / np.sqrt(dcs), "--",
                   label="leading term")
    axes[2].set_xlabel("delta_c"), axes[2].set_ylabel("xi_star")
    axes[2].legend()
    fig.tight_layout()
    path = out / "branch_laws.png"
    fig.savefig(path, dpi=150)
    print(f"wrote {path}")


if __name__ == "__main__":
    main(*sys.argv[1:2])
