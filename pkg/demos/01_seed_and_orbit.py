# %% [markdown]
# # Seed solution and its Backlund orbit
#
# The equal-component chain f_i = x/n is the simplest exact solution.
# Reflections s_j and the rotation pi move it around to new rational solutions.

# %%
from phachain import apply_s, apply_word, is_chain_solution, orbit, symmetric_seed

seed = symmetric_seed(3, lam=1)
print("seed f:", [str(f) for f in seed.f])
print("alpha :", [str(a) for a in seed.alpha])

# %%
img = apply_s(0, seed)
print("s0 seed:", [str(f) for f in img.f])
print("still a solution?", is_chain_solution(img))

# %% words compose left to right
print(apply_word("pi s0", seed) == apply_word("s1 pi", seed))

# %%
orb = orbit(3, depth=3)
print(len(orb), "distinct members up to length 3")
for m in list(orb)[:6]:
    print(" ".join(map(str, m.word)) or "(seed)", "->", [str(f) for f in m.solution.f])
