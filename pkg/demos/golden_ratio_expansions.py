# %% [markdown]
# Four expansions of one point
#
# In base phi = (1 + sqrt 5)/2 with digits {0, 1}, the number 1 has many
# expansions.  The greedy one is the lexicographically largest, the lazy one
# the smallest; the quasi variants are the extreme infinite and co-infinite
# ones.  The digit rules compute them one digit at a time, and a brute-force
# search over all cylinders confirms each answer.

# %%
from __future__ import annotations

from fractions import Fraction

from multibase import AlphabetBaseSystem, ExpansionKind, expand, format_sequence, parse_scalar
from multibase.oracle import enumerate_expansions, verify_extremal

phi = parse_scalar("(1+sqrt(5))/2")
golden = AlphabetBaseSystem((Fraction(0), Fraction(1)), (phi, phi))
print("system:", golden, " regular:", golden.is_regular())

# %%
for kind in ExpansionKind:
    state = expand(golden, 1, kind, 24)
    print(f"{kind.value:>12}: {format_sequence(state.sequence)}")

# %% [markdown]
# Every length-8 word whose cylinder contains 1, and the extremality check.

# %%
tree = enumerate_expansions(golden, 1, 8)
print(len(tree.surviving_prefixes), "prefixes of length 8")
for word in tree.surviving_prefixes:
    print("  ", "".join(map(str, word)))
print("digit rules match brute force:", all(verify_extremal(golden, 1, k, 8) for k in ExpansionKind))

# %% [markdown]
# Two bases at once: digit 0 multiplies by 3/2, digit 1 by 9/5.  Rational
# points whose orbit repeats are reported with an exact periodic tail.

# %%
mixed = AlphabetBaseSystem((Fraction(0), Fraction(1)), (Fraction(3, 2), Fraction(9, 5)))
lam, Lam = mixed.bounds()
print("range:", lam, "to", Lam)
for x in (Fraction(5, 9), Fraction(1, 2), Fraction(1)):
    state = expand(mixed, x, ExpansionKind.GREEDY, 20)
    print(f"  x = {x}: {format_sequence(state.sequence)}")
