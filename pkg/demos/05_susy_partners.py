# %% [markdown]
# # SUSY partners of the oscillator

# %%
import numpy as np

from phachain.susy import (
    SeedSpec,
    nonsingularity_check,
    partner_potential,
    schrodinger_residual,
    transformed_state,
)

xs = np.linspace(-6, 6, 2001)
h = xs[1] - xs[0]

# deleting the ground state just shifts the potential up by one
v = partner_potential([SeedSpec(0.5, 0)], xs)
print("max |V1 - (x^2/2 + 1)|:", np.max(np.abs(v - xs**2 / 2 - 1)))

# %% a nodeless seed below the ground state adds a level
seeds = [SeedSpec(-0.5, 0)]
v = partner_potential(seeds, xs)
for n in range(4):
    phi = transformed_state(seeds, n, xs)
    r = np.nanmax(np.abs(schrodinger_residual(phi, v, n + 0.5, h)))
    print(f"phi_{n}: residual {r:.1e}, norm {np.trapezoid(phi**2, xs):.8f}")

# %% seeds with nodes give singular partners
print(nonsingularity_check([SeedSpec(-0.5, 2)]))

# two even seeds: the Wronskian is odd and vanishes at x = 0
print(nonsingularity_check([SeedSpec(-0.6, 0), SeedSpec(-1.2, 0)]).ok)
print(nonsingularity_check([SeedSpec(-0.6, 0), SeedSpec(-1.2, 2)]).ok)
