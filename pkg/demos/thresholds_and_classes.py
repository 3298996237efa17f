# %% [markdown]
# Thresholds for the classical systems
#
# The system with digits 0..M and a common base q has only trivial unique
# expansions up to the generalized golden ratio q_GR(M), and continuum many
# from the Thue-Morse threshold q_KL(M) on.  Both constants are computed
# as certified enclosures; the classifier then walks across them.

# %%
from __future__ import annotations

from fractions import Fraction

from multibase import classical_system, classify, format_scalar, q_gr, q_kl

for M in range(1, 5):
    print(f"M = {M}: q_GR = {format_scalar(q_gr(M, 64), 14)}   q_KL = {format_scalar(q_kl(M, 64), 14)}")

# %% [markdown]
# Classes of S_{1,q} for q on a grid between 3/2 and 2.

# %%
for i in range(0, 11):
    q = Fraction(3, 2) + Fraction(i, 20)
    result = classify(classical_system(1, q))
    notes = f"  ({result.notes[0]})" if result.notes else ""
    print(f"q = {format_scalar(q):>5}: {result}{notes}")

# %% [markdown]
# The evidence behind one answer: each comparison of a characteristic
# sequence with the reference sequences, and where it was decided.

# %%
result = classify(classical_system(2, Fraction(5, 2)))
print(result)
for item in result.evidence:
    print("  ", item)
