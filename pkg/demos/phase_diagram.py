# %% [markdown]
# Where unique expansions appear
#
# For two digits {0, 1} with bases q0, q1 in (1, 2], the set of unique
# expansions is either just {0^inf, 1^inf} or infinite.  The split is
# exact: infinite iff q0 > 1 + 1/q1 and q1 > 1 + 1/q0.  This script draws
# the two regions on a coarse grid and then looks at the unique-prefix
# census on both sides.

# %%
from __future__ import annotations

from fractions import Fraction

from multibase import AlphabetBaseSystem, UniquenessClass, classify_two_element
from multibase.oracle import census_agreement

N = 24
grid = [1 + Fraction(i, N) for i in range(1, N + 1)]


def binary(q0, q1):
    return AlphabetBaseSystem((Fraction(0), Fraction(1)), (q0, q1))


# %%
print("rows: q1 from 2 down to 1; columns: q0 from 1 to 2;  # = infinite, . = trivial only")
for q1 in reversed(grid):
    row = "".join("#" if classify_two_element(binary(q0, q1)).value is UniquenessClass.INFINITE else "."
                  for q0 in grid)
    print(f"{float(q1):5.3f} {row}")

# %% [markdown]
# Census counts: length-n words not yet ruled out as prefixes of unique
# expansions, computed two independent ways that must agree.  Constant on
# the trivial side, linear just past the golden ratio threshold, exponential
# for larger bases.

# %%
for q in (Fraction(3, 2), Fraction(17, 10), Fraction(19, 10)):
    counts = [census_agreement(binary(q, q), n) for n in (6, 10, 14)]
    print(f"q0 = q1 = {q}: census at depths 6, 10, 14 -> {counts}")
