"""Transversal resolutions and the companion square they induce.

Odd cyclic squares split into broken diagonals; even cyclic squares have
no transversal at all. When a resolution exists, listing each transversal
as a row gives a square weak orthogonal to the (row-normalized) original.
"""
from ameb_forge import latin
from ameb_forge.errors import NonexistentResolution

L = latin.cyclic_square(5)
R = latin.find_resolution(L)
for t in R:
    print("cells", t.cells, "entries", t.entries(L))
comp = latin.transversal_companion(L, R)
print(latin.format_square(comp.square), end="")
print("weak orthogonal:", latin.are_mwols(comp.base, comp.square))

for n in (2, 4):
    try:
        latin.find_resolution(latin.cyclic_square(n))
    except NonexistentResolution as exc:
        print(f"cyclic({n}): {exc}")

# a row-shuffled input is normalized first; the permutation is kept
shuffled = latin.LatinSquare(latin.cyclic_square(7).grid[[3, 1, 6, 0, 2, 5, 4]])
comp = latin.transversal_companion(shuffled, latin.find_resolution(shuffled))
print("row permutation used:", comp.row_perm)
