"""Finite fields and the weak orthogonal squares they generate.

Builds GF(4) and GF(9), prints the canonical enumeration 0, 1, a, a^2, ...
and checks that the q - 1 squares (i + a^s j) are pairwise orthogonal and
weak orthogonal.
"""
from ameb_forge import gf, latin

for q in (4, 9):
    F = gf.field_of_order(q)
    alpha = gf.primitive_element(F)
    print(f"GF({q}): modulus {F.modulus} (constant term first), generator {alpha}")
    print("  enumeration:", [e.coeffs for e in gf.enumerate_field(F)])

fam = latin.gf_mwols_family(4)
for s, L in enumerate(fam):
    print(f"\nsquare {s}:\n{latin.format_square(L)}", end="")
print("\nfailing pairs, orthogonal:", latin.check_family(fam, "mols"))
print("failing pairs, weak orthogonal:", latin.check_family(fam, "mwols"))

# weak orthogonality is about rows meeting rows: out[i, j] counts shared cells
print("\nrow intersections of squares 0 and 1:\n", latin.weak_intersections(fam[0], fam[1]))

# the row-constant array meets every row of every Latin square exactly once
M = latin.row_constant_array(4)
print("row-constant array is weak orthogonal to all three:",
      all(latin.are_mwols(M, L) for L in fam))
