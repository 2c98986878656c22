# %% [markdown]
# # Ladder polynomials

# %%
from fractions import Fraction as F

from phachain.susy import ladder_polynomial, ladder_spectrum

lp = ladder_polynomial([F(-1, 2)])
print("N(E) =", lp.N)
print("P(E) =", lp.P)

# %%
for k in range(1, 5):
    lp = ladder_polynomial([F(-i - 1, 3) for i in range(k)])
    print(k, "seeds: deg P =", lp.P.degree, "lead =", lp.P.lead)

# %% ladders climbing from the roots of N
out = ladder_spectrum([F(1, 2), F(-1, 2), F(1, 2)], 4)
for lad in out["ladders"]:
    print([str(e) for e in lad])
print("duplicate ladders:", out["duplicates"])
