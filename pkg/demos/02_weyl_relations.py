# %% [markdown]
# # Checking the group relations
#
# Each relation is tested exactly on random rational parameter vectors.

# %%
from phachain import verify_relations

for m in (2, 3, 4):
    rep = verify_relations(m, trials=30)
    print(f"m={m}: ok={rep.ok}, {len(rep.checks)} relations checked")

# %% [markdown]
# For m=1 the Cartan entry is -2, so s0 s1 acts as a translation and the
# braid relation (s0 s1)^3 = 1 cannot hold. The report shows the witness.

# %%
rep = verify_relations(1, trials=10)
for c in rep.violations:
    print(c.name, "violated at", c.witness)
