"""Rebuild the summary table of MUAMEB and MUB counts.

Prime powers use the finite-field family, orders whose prime-power factors
are all at least 3 use direct products, order 10 uses the bundled pair and
the remaining orders fall back to a budgeted transversal search.
"""
import sys

from ameb_forge import catalog

workers = int(sys.argv[1]) if len(sys.argv) > 1 else None
for r in catalog.reproduce_table(workers=workers):
    print(f"{r.d1d2:3d} = {r.d1} x {r.d2:<2d} {r.route:15s} M {r.constructed_M:2d}/{r.M_claimed:<2d} "
          f"N {r.constructed_N:2d}/{r.N_claimed:<2d} {r.status:10s} {r.runtime:6.2f}s")
