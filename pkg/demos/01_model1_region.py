"""Gaussian relay network with an orthogonal source-to-relay link.

The source splits its power between a private stream to the destination
(fraction v) and a stream routed through the relay.  Anything sent to the
relay is seen by it, so only the direct stream can carry secret bits.
"""

# %% setup
from relaysec import GaussianModel1Params, model1_optimum, model1_region

params = GaussianModel1Params(a=2.0, b=1.0, gamma=1.0, p_total=1.0)

# %% the region: each corner is (total rate, equivocation)
region = model1_region(params, grid=64)
print(f"{len(region)} Pareto corners")
for pt, (v, rho) in list(zip(region.points, region.provenance))[::8]:
    print(f"  v={v:.3f} rho={rho:.3f}  R1={pt.r1:.4f}  Re={pt.re:.4f}")

# %% secrecy capacity: all power on the direct link, no correlation with the relay
cap, v, rho = model1_optimum(params, grid=256)
print(f"secrecy capacity {cap:.6f} at v={v}, rho={rho}")

# %% the relay's own power and link quality do not change it
for b, gamma in [(0.0, 0.0), (10.0, 4.0)]:
    other = GaussianModel1Params(a=2.0, b=b, gamma=gamma, p_total=1.0)
    print(f"b={b:>4}, gamma={gamma}: {model1_optimum(other, 256)[0]:.6f}")
