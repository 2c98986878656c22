# %% [markdown]
# # Integrating an odd-period chain with RK4

# %%
import numpy as np

from phachain import apply_s, symmetric_seed
from phachain.numeric import Grid, rk4_integrate, sampled_residuals

seed = symmetric_seed(3, 1)
grid = Grid(1.0, 2.0, 1000)
sc = rk4_integrate(seed.sample([1.0])[:, 0], seed.params, grid)
print("max error on the seed:", np.max(np.abs(sc.f - seed.sample(grid.points))))
print("max sampled residual :", sampled_residuals(sc).max())

# %% convergence order on a nonlinear member
sol = apply_s(0, seed)
errs = []
for steps in (10, 20, 40, 80):
    g = Grid(1.0, 2.0, steps)
    out = rk4_integrate(sol.sample([1.0])[:, 0], sol.params, g)
    errs.append(np.max(np.abs(out.f - sol.sample(g.points))))
print("error ratios:", [round(float(a / b), 2) for a, b in zip(errs, errs[1:])])
