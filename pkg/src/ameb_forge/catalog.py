"""Bundled squares from the worked examples and the pipelines that rebuild them.

``construct_muameb_family`` picks a construction route from the factorization
of ``d1*d2``; ``reproduce_table`` runs it for the rows of the summary table
and certifies every family it builds.
"""
from __future__ import annotations

import json
import math
import os
import time
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Optional, Sequence, Union

from . import gf
from .basis import (
    TOL,
    CoefficientVector,
    LabeledBasis,
    build_ameb_equal_dims,
    build_ameb_mixed_dims,
    build_product_basis,
    root_of_unity,
    write_basis,
)
from .errors import (
    CountUnreachable,
    DimsMismatch,
    NonexistentResolution,
    BudgetExhausted,
    UnknownDatum,
)
from .latin import (
    DEFAULT_BUDGET,
    LatinSquare,
    are_mols,
    are_mwols,
    cyclic_square,
    direct_product_family,
    find_resolution,
    generic_square,
    gf_mwols_family,
    is_latin,
    parse_squares,
    require_pair_order,
    transversal_companion,
)
from .verify import FamilyReport, verify_mub_family

SQUARE_IDS = ("fig1_left", "fig1_right", "fig2_a", "fig2_b", "fig2_c", "ex4_L1", "ex4_L2")
DATUM_IDS = SQUARE_IDS + ("ex1_coeffs",)

# pairs that must be weak orthogonal; the fig1 pair must also be orthogonal
MWOLS_PAIRS = (("fig1_left", "fig1_right"), ("fig2_a", "fig2_b"), ("fig2_a", "fig2_c"),
               ("fig2_b", "fig2_c"), ("ex4_L1", "ex4_L2"))
MOLS_PAIRS = (("fig1_left", "fig1_right"),)


@dataclass(frozen=True)
class BundledDatum:
    id: str
    payload: Union[LatinSquare, CoefficientVector]


@lru_cache(maxsize=None)
def _raw_square(name: str) -> LatinSquare:
    text = resources.files("ameb_forge").joinpath("data", f"{name}.txt").read_text()
    (sq,) = parse_squares(text)
    return sq


@lru_cache(maxsize=None)
def _validated() -> bool:
    for name in SQUARE_IDS:
        if not is_latin(_raw_square(name)):
            raise AssertionError(f"bundled square {name} is not Latin")
    for a, b in MWOLS_PAIRS:
        if not are_mwols(_raw_square(a), _raw_square(b)):
            raise AssertionError(f"bundled pair {a}/{b} is not weak orthogonal")
    for a, b in MOLS_PAIRS:
        if not are_mols(_raw_square(a), _raw_square(b)):
            raise AssertionError(f"bundled pair {a}/{b} is not orthogonal")
    return True


def load_datum(id: str) -> BundledDatum:
    if id not in DATUM_IDS:
        raise UnknownDatum(f"unknown datum {id!r}; known: {', '.join(DATUM_IDS)}")
    _validated()
    if id == "ex1_coeffs":
        return BundledDatum(id, CoefficientVector([1, 1, root_of_unity(3, 1)]))
    return BundledDatum(id, _raw_square(id))


def square(id: str) -> LatinSquare:
    return load_datum(id).payload


# -- summary table ---------------------------------------------------------

@dataclass(frozen=True)
class TableRow:
    d1d2: int
    route: str
    M_claimed: int
    N_claimed: int


TABLE = (
    TableRow(4, "prime-power", 3, 4),
    TableRow(8, "prime-power", 7, 8),
    TableRow(9, "prime-power", 8, 9),
    TableRow(10, "bundled", 2, 3),
    TableRow(12, "factor-product", 2, 3),
    TableRow(14, "search", 2, 3),
    TableRow(15, "factor-product", 2, 3),
    TableRow(16, "prime-power", 15, 16),
    TableRow(18, "search", 2, 3),
    TableRow(20, "factor-product", 3, 4),
)
TABLE_BY_ORDER = {row.d1d2: row for row in TABLE}


def split_dims(q: int) -> tuple[int, int]:
    """Most balanced ``(d1, d2)`` with ``d1 * d2 == q`` and ``d1 <= d2``."""
    d1 = max(d for d in range(1, math.isqrt(q) + 1) if q % d == 0)
    return d1, q // d1


def coprime_prime_powers(q: int) -> Optional[list[int]]:
    """Prime-power factors of q when every one of them is at least 3, else None."""
    parts = [p ** e for p, e in sorted(gf.factorize(q).items())]
    if len(parts) < 2 or any(x < 3 for x in parts):
        return None
    return parts


def max_count(q: int) -> int:
    """Number of weak orthogonal squares the automatic route guarantees."""
    try:
        gf.prime_power(q)
        return q - 1
    except gf.NotPrimePower:
        pass
    parts = coprime_prime_powers(q)
    if parts:
        return min(x - 1 for x in parts)
    return 2 if q not in (2, 6) else 1


@dataclass
class MuamebFamily:
    bases: list
    route: str
    squares: list
    provenance: str

    def __len__(self):
        return len(self.bases)


def select_route(q: int, square: Optional[LatinSquare] = None) -> str:
    if square is not None:
        return "search"
    try:
        gf.prime_power(q)
        return "prime-power"
    except gf.NotPrimePower:
        pass
    if coprime_prime_powers(q):
        return "factor-product"
    if q == 10:
        return "bundled"
    return "search"


def route_squares(q: int, route: str, *, budget: int = DEFAULT_BUDGET,
                  square: Optional[LatinSquare] = None) -> list[LatinSquare]:
    """The weak orthogonal squares of order q that a route produces."""
    if route == "prime-power":
        return list(gf_mwols_family(q))
    if route == "factor-product":
        parts = coprime_prime_powers(q)
        if not parts:
            raise CountUnreachable(f"{q} has a prime-power factor below 3")
        return list(direct_product_family(*(gf_mwols_family(x) for x in parts)))
    if route == "bundled":
        if q != 10:
            raise CountUnreachable(f"no bundled squares of order {q}")
        return [load_datum("ex4_L1").payload, load_datum("ex4_L2").payload]
    if route == "search":
        if q == 1:
            return [cyclic_square(1)]
        base = square if square is not None else (cyclic_square(q) if q % 2 else generic_square(q))
        comp = transversal_companion(base, find_resolution(base, budget))
        return [comp.base, comp.square]
    raise ValueError(f"unknown route {route!r}")


def construct_muameb_family(d1: int, d2: int, count_requested: int, *,
                            budget: int = DEFAULT_BUDGET, route: Optional[str] = None,
                            square: Optional[LatinSquare] = None) -> MuamebFamily:
    """``count_requested`` mutually unbiased AME bases in C^d1 (x) C^d2 (x) C^(d1 d2).

    Routes: prime power -> the finite-field family; every prime-power factor
    at least 3 -> componentwise direct products; order 10 -> the bundled
    pair; otherwise a transversal resolution search (``budget`` placements)
    on ``square``, or a default candidate, and its companion.
    """
    q = d1 * d2
    if count_requested < 1:
        raise ValueError("count_requested must be >= 1")
    if count_requested >= 2:
        require_pair_order(q)
    if count_requested == 1 and route is None and square is None:
        squares = [cyclic_square(q)]
        route = "single"
    else:
        route = route or select_route(q, square)
        squares = route_squares(q, route, budget=budget, square=square)
    if count_requested > len(squares):
        raise CountUnreachable(
            f"route {route} gives {len(squares)} squares of order {q}, {count_requested} requested")
    squares = squares[:count_requested]
    bases = [build_ameb_mixed_dims(L, d1, d2, s=k + 1) for k, L in enumerate(squares)]
    prov = f"route={route} d1={d1} d2={d2} count={count_requested}"
    return MuamebFamily(bases, route, squares, prov)


def append_product_basis(family: Sequence[LabeledBasis]) -> list[LabeledBasis]:
    family = list(family.bases if isinstance(family, MuamebFamily) else family)
    if not family:
        raise ValueError("cannot extend an empty family")
    dims = {B.dims for B in family}
    if len(dims) != 1:
        raise DimsMismatch("family mixes dimensions")
    (dm,) = dims
    if dm.d3 != dm.d1 * dm.d2:
        raise DimsMismatch(f"dims {dm.as_tuple()} are not of the form (d1, d2, d1*d2)")
    return family + [build_product_basis(dm.d1, dm.d2)]


# -- worked examples -------------------------------------------------------

def example_bases(k: int) -> tuple[list[LabeledBasis], list[int]]:
    """Bases of worked example k and the indices of those that must be AME."""
    if k == 1:
        phi = build_ameb_equal_dims(square("fig1_left"))
        psi = build_ameb_equal_dims(square("fig1_right"), load_datum("ex1_coeffs").payload)
        return [phi, psi], [0, 1]
    if k in (2, 3):
        bases = [build_ameb_mixed_dims(square(name), 2, 2, s=s + 1)
                 for s, name in enumerate(("fig2_a", "fig2_b", "fig2_c"))]
        if k == 3:
            bases = append_product_basis(bases)
        return bases, [0, 1, 2]
    if k == 4:
        bases = [build_ameb_mixed_dims(square(name), 2, 5, s=s + 1)
                 for s, name in enumerate(("ex4_L1", "ex4_L2"))]
        return append_product_basis(bases), [0, 1]
    raise UnknownDatum(f"no worked example {k}")


def reproduce_example(k: int, tol: float = TOL, *, workers: Optional[int] = None):
    bases, ame = example_bases(k)
    return bases, verify_mub_family(bases, tol, ame=ame, workers=workers)


@dataclass
class RowResult:
    d1d2: int
    d1: int
    d2: int
    route: str
    M_claimed: int
    N_claimed: int
    constructed_M: int = 0
    constructed_N: int = 0
    verified: bool = False
    status: str = "failed"  # verified | failed | unresolved
    worst_deviation: dict = field(default_factory=dict)
    runtime: float = 0.0
    note: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


def reproduce_table(rows: Optional[Sequence[int]] = None, budget: int = DEFAULT_BUDGET, *,
                    tol: float = TOL, out_dir: Union[str, os.PathLike, None] = None,
                    workers: Optional[int] = None) -> list[RowResult]:
    """Rebuild and certify the requested rows of the summary table.

    A resolution search that runs out of budget, or whose candidate square
    has no resolution, marks the row ``unresolved`` rather than failed.
    """
    rows = [r.d1d2 for r in TABLE] if rows is None else list(rows)
    results = []
    for q in rows:
        if q not in TABLE_BY_ORDER:
            raise ValueError(f"{q} is not a row of the table ({sorted(TABLE_BY_ORDER)})")
        row = TABLE_BY_ORDER[q]
        d1, d2 = split_dims(q)
        res = RowResult(q, d1, d2, row.route, row.M_claimed, row.N_claimed)
        t0 = time.perf_counter()
        try:
            fam = construct_muameb_family(d1, d2, row.M_claimed, budget=budget)
        except (BudgetExhausted, NonexistentResolution) as exc:
            res.status, res.note = "unresolved", f"{type(exc).__name__}: {exc}"
            res.runtime = time.perf_counter() - t0
            results.append(res)
            continue
        res.route = fam.route
        bases = append_product_basis(fam)
        report: FamilyReport = verify_mub_family(bases, tol, ame=range(len(fam)), workers=workers)
        res.constructed_M = len(fam)
        res.constructed_N = len(bases)
        res.verified = report.passed
        res.status = "verified" if report.passed else "failed"
        res.worst_deviation = report.max_deviation
        if out_dir is not None:
            os.makedirs(out_dir, exist_ok=True)
            for k, B in enumerate(bases):
                tag = f"s{k + 1}" if k < len(fam) else "product"
                write_basis(os.path.join(out_dir, f"row{q}_{tag}.json"), B)
        res.runtime = time.perf_counter() - t0
        results.append(res)
    return results


def table_summary_json(results: Sequence[RowResult]) -> str:
    return json.dumps({"rows": [r.to_dict() for r in results]}, indent=2)
