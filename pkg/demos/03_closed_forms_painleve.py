# %% [markdown]
# # Closed-form solutions and Painleve IV

# %%
from fractions import Fraction as F

from phachain import X, is_chain_solution, symmetric_seed
from phachain.closed_form import (
    P4Params,
    fit_painleve4_params,
    g_from_f1,
    painleve4_residual,
    pha1_solution,
)

sol = pha1_solution(2, 0, 0, F(-1, 2))
print("period 2:", [str(f) for f in sol.f], is_chain_solution(sol))

# %% symbolic residuals vanish identically
print(painleve4_residual(-2 * X, P4Params(0, -2)))
print(painleve4_residual(-2 * X / 3, P4Params(0, F(-2, 9))))
print(painleve4_residual(-2 * X + F(1, 10), P4Params(0, -2)))

# %% fit (b0, b1) from g alone
print(fit_painleve4_params(-2 * X / 3))

# %% the seed's g is not covered by any (b0, b1)
seed = symmetric_seed(3, 1)
g = g_from_f1(seed.f[0], seed.params.lam, seed.params.c0)
params, res = fit_painleve4_params(g)
print("g =", g, "fit:", params, "residual:", res)
