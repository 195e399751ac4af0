"""Order 10: no finite field, no usable factor product, but a bundled pair.

The two bundled order-10 squares are weak orthogonal without being
orthogonal. They give two AME bases in C^2 (x) C^5 (x) C^10, and the first
square also admits a resolution into transversals, so a companion can be
derived from it directly.
"""
import time

from ameb_forge import catalog, latin
from ameb_forge.verify import verify_mub_family

L1, L2 = catalog.square("ex4_L1"), catalog.square("ex4_L2")
print("orthogonal:", latin.are_mols(L1, L2), " weak orthogonal:", latin.are_mwols(L1, L2))

fam = catalog.construct_muameb_family(2, 5, 2)
bases = catalog.append_product_basis(fam)
print(fam.provenance, "->", verify_mub_family(bases, ame=[0, 1]).passed)

t0 = time.perf_counter()
res = latin.find_resolution(L1)
comp = latin.transversal_companion(L1, res)
print(f"resolution of the first square found in {time.perf_counter() - t0:.2f}s;"
      f" companion weak orthogonal: {latin.are_mwols(comp.base, comp.square)}")
