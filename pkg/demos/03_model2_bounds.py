"""How close compress-and-forward gets to the upper bound as the
relay-to-destination link improves."""

# %%
import numpy as np

from relaysec import b_sweep

rows = b_sweep(a=1.0, p_max=1.0, p_relay=1.0, b_values=np.geomspace(0.01, 100, 9))
print(f"{'b':>8} {'CF':>9} {'AF':>9} {'bound':>9}")
for r in rows:
    print(f"{r.b:8.3g} {r.cf_re_star:9.5f} {r.af_re_star:9.5f} {r.upper_bound:9.5f}")

# %% a strong relay link makes the bound tight for CF
last = rows[-1]
print(f"gap at b={last.b:g}: {last.upper_bound - last.cf_re_star:.2e} bits")
