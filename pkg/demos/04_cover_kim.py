"""The deterministic relay channel with anticorrelated noises.

The destination sees X + Z and the relay sees alpha X - Z.  A noiseless
relay link of rate R0 lets the destination cancel noise, so the secrecy rate
can exceed the capacity of the direct link alone.
"""

# %%
from relaysec import CoverKimParams, ck_capacity, ck_curve

for row in ck_curve(p_max=1.0, r0=0.5, alpha_values=[0, 0.5, 1, 1.5, 2, 3]):
    cap = ck_capacity(CoverKimParams(row.alpha, 1.0, 0.5))
    known = "unknown" if cap is None else f"{cap:.4f}"
    print(f"alpha={row.alpha:<4} achievable={row.achievable:.4f} upper={row.upper:.4f} "
          f"capacity={known}")

# %% with a generous relay link the rate outgrows C(P) = 0.5
print(ck_curve(1.0, 2.0, [1.0])[0])
