"""Three AME bases and a product basis in C^2 (x) C^2 (x) C^4.

The bundled order-4 triple gives three mutually unbiased AME bases; the
Fourier product basis is unbiased to all of them, but it is of course not
entangled.
"""
from ameb_forge import append_product_basis, build_ameb_mixed_dims, load_datum, verify_mub_family
from ameb_forge.verify import ame_deviations

squares = [load_datum(k).payload for k in ("fig2_a", "fig2_b", "fig2_c")]
bases = [build_ameb_mixed_dims(L, 2, 2, s=s + 1) for s, L in enumerate(squares)]
family = append_product_basis(bases)

report = verify_mub_family(family, ame=[0, 1, 2])
print("four mutually unbiased bases, three of them AME:", report.passed)
for kind, dev in report.max_deviation.items():
    print(f"  worst {kind} deviation {dev:.2e}")

for keep, (dev, r) in ame_deviations(family[3]).items():
    print(f"product basis, subsystem {keep}: distance from I/dim = {dev:.2f}")
