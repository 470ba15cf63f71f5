"""Exact evaluation and exhaustive search for discrete relay channels."""

# %%
import numpy as np

from relaysec import (DiscreteRelayChannel, DistributionTriple, build_joint, mutual_info,
                      thm1_point, thm1_search)

# Y = X noiseless; the relay sees X through a BSC(0.1)
bsc = DiscreteRelayChannel.from_functions(
    (2, 2, 2, 2), lambda x, xr: {(x, x): 0.9, (x, 1 - x): 0.1})

# %% one distribution triple: uniform input, quantiser that discards everything
triple = DistributionTriple.constant_quantizer([0.5, 0.5], [0.5, 0.5], 2)
print("corner point:", thm1_point(bsc, triple))

# %% the search agrees: the best equivocation is the relay's residual uncertainty h2(0.1)
region = thm1_search(bsc, 8, yhat_size=2)
h = -(0.1 * np.log2(0.1) + 0.9 * np.log2(0.9))
print(f"max Re {region.max_re:.6f}  (h2(0.1) = {h:.6f})")
index, best = region.provenance[-1]
print("found at index", index, "with p(x) =", best.px)

# %% a one-time pad through the relay input: Yr = X xor Xr
pad = DiscreteRelayChannel.from_functions((2, 2, 2, 2), lambda x, xr: {(x, x ^ xr): 1.0})
j = build_joint(pad, triple)
print("I(X;Yr) =", mutual_info(j, "X", "Yr"), " I(X;Yr|Xr) =", mutual_info(j, "X", "Yr", "Xr"))
