"""Closed-form landscape of the problem: spreading speed, absolute spectrum,
wave trains, and the trigger-front predictions below the spreading speed.

Run:  python demos/01_dispersion_and_predictions.py [out_dir]
"""

import math
import sys
from pathlib import Path

import numpy as np

from cglfronts import blowup, dispersion, predict, scaling
from cglfronts.dispersion import CGLParams


def main(out_dir="demo_out"):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    params = CGLParams(alpha=-0.1, gamma=-0.2)
    lin = dispersion.linear_spreading(params)
    print(f"parameters            alpha={params.alpha}, gamma={params.gamma}")
    print(f"spreading speed       c_lin   = {lin.c_lin:.6f}")
    print(f"marginal frequency    om_lin  = {lin.omega_lin:.6f}")
    print(f"selected wavenumber   k_lin   = {dispersion.k_lin(params):.6f}")

    # the frequency-matching identity: the wave train emitted at the linear
    # point oscillates at exactly the marginal frequency
    kl = dispersion.k_lin(params)
    om_match = dispersion.nonlinear_dispersion(params, kl, lin.c_lin)
    print(f"Omega(k_lin; c_lin)   = {om_match:.12f}  (= om_lin to "
          f"{abs(om_match - lin.omega_lin):.1e})")

    # correction coefficient from one shooting run
    scaled = scaling.scaled_at_linear_point(params)
    shot = blowup.shoot_free_front(scaled, params, delta=1e-5)
    dz = blowup.delta_Z(params, shot.z_star)
    print(f"correction coeff      DZ      = {dz.re:.4f} {dz.im:+.5f}i")

    # prediction curves for c just below c_lin
    cs = np.linspace(1.8, 0.999 * lin.c_lin, 60)
    preds = [predict.make_prediction(params, float(c), dz) for c in cs]
    print(f"\n{'c':>8} {'omega_tf':>12} {'k_exact':>10} {'k_series':>10} "
          f"{'xi_star':>9}")
    for p in preds[::12]:
        print(f"{p.c:8.4f} {p.omega_tf:12.6f} {p.k_tf_exact:10.6f} "
              f"{p.k_tf_expansion:10.6f} {p.xi_star:9.2f}")

    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("\nmatplotlib unavailable; skipping the figure")
        return
    fig, axes = plt.subplots(1, 3, figsize=(12, 3.4))
    dcs = lin.c_lin - cs
    axes[0].plot(cs, [p.omega_tf for p in preds], label="omega_tf")
    axes[0].plot(cs, [dispersion.omega_abs(params, c) for c in cs], "--",
                 label="omega_abs")
    axes[0].set_xlabel("c"), axes[0].set_ylabel("frequency"), axes[0].legend()
    axes[1].plot(cs, [p.k_tf_exact for p in preds], label="exact inversion")
    axes[1].plot(cs, [p.k_tf_expansion for p in preds], "--", label="series")
    axes[1].axhline(kl, color="k", lw=0.5, label="k_lin")
    axes[1].set_xlabel("c"), axes[1].set_ylabel("wake wavenumber")
    axes[1].legend()
    axes[2].loglog(dcs, [p.xi_star for p in preds])
    axes[2].loglog(dcs, math.pi * 1.01**0.75 / np.sqrt(dcs), "--",
                   label="leading term")
    axes[2].set_xlabel("c_lin - c"), axes[2].set_ylabel("interface distance")
    axes[2].legend()
    fig.tight_layout()
    path = out / "predictions.png"
    fig.savefig(path, dpi=150)
    print(f"\nwrote {path}")


if __name__ == "__main__":
    main(*sys.argv[1:2])
