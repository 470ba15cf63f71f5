"""Power control when the untrusted relay hears the source better than
the destination does.

With a = 1.2 the relay's link is stronger than the direct one.  Full power
then hands the relay more than it hands the destination, and both relaying
schemes do best at a reduced source power.
"""

# %%
from relaysec import GaussianModel2Params, af_optimize, af_rate, cf_optimize, cf_rate, power_sweep

params = GaussianModel2Params(a=1.2, b=0.8, p_max=1.0, p_relay=1.0)

# %% sweep the source power
for row in power_sweep(params, 16):
    print(f"p={row.p:.4f}  CF={row.cf_re:.5f}  AF={row.af_re:.5f}")

# %% optimal powers sit well inside the budget
cf_p, cf_re = cf_optimize(params)
af_p, af_re = af_optimize(params)
print(f"CF: p*={cf_p:.4f} rate {cf_re:.5f}")
print(f"AF: p*={af_p:.4f} rate {af_re:.5f}")

# %% AF gains more from backing off (pre-clamp rates, both are negative at p = P)
print("CF gain", cf_rate(params, cf_p).re_unclamped - cf_rate(params, 1.0).re_unclamped)
print("AF gain", af_rate(params, af_p).re_unclamped - af_rate(params, 1.0).re_unclamped)
