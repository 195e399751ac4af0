"""A pair of mutually unbiased AME bases in C^3 (x) C^3 (x) C^3.

One basis uses the left square of the bundled order-3 pair with unit
weights, the other the right square weighted by the flat sequence
(1, 1, w3). Every cross overlap has modulus 1/(3 sqrt 3).
"""
import numpy as np

from ameb_forge import build_ameb_equal_dims, load_datum, verify

left = load_datum("fig1_left").payload
right = load_datum("fig1_right").payload
a = load_datum("ex1_coeffs").payload

phi = build_ameb_equal_dims(left)
psi = build_ameb_equal_dims(right, a)

v = phi.state(0, 0, 0)
print("phi_{0,0,0} support (k, i, j):",
      [tuple(np.unravel_index(x, (3, 3, 3))) for x in np.flatnonzero(v)])

overlaps = np.abs(phi.vectors.conj() @ psi.vectors.T)
print(f"cross moduli: min {overlaps.min():.12f}, max {overlaps.max():.12f}, "
      f"target {1 / (3 * np.sqrt(3)):.12f}")

# without the weights the same two squares are not unbiased
plain = build_ameb_equal_dims(right)
print("unweighted right square unbiased?", verify.unbiased_check(phi, plain).passed)

rho = verify.partial_trace(psi.vector(5), 1)
print("reduced state of a psi vector on the first party:\n", np.round(rho, 12))
for B in (phi, psi):
    print(B.provenance, "->", verify.ame_check(B).passed)
