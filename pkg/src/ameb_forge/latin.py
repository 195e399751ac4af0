"""Latin squares: data model, orthogonality predicates and constructions.

Symbols are always ``0..n-1``. Grids are stored as read-only ``int64``
arrays so squares can be shared freely.
"""
from __future__ import annotations

import io
import itertools
import os
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, NamedTuple, Sequence, Union

import numpy as np

from . import gf
from .errors import (
    BudgetExhausted,
    NonexistentResolution,
    NotAResolution,
    NotLatin,
    OrderMismatch,
    ShapeError,
    ShiftOutOfRange,
    UnsupportedOrder,
)

DEFAULT_BUDGET = 1_000_000

# orders with no pair of orthogonal (hence no pair of weak orthogonal) squares
EXCLUDED_PAIR_ORDERS = frozenset({2, 6})


def _as_grid(grid) -> np.ndarray:
    a = np.asarray(grid)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeError(f"expected a square array, got shape {a.shape}")
    if a.size and not np.issubdtype(a.dtype, np.integer):
        if not np.all(a == np.round(a)):
            raise ShapeError("entries must be integers")
    return a.astype(np.int64)


def is_latin(grid) -> bool:
    """True iff every row and every column is a permutation of ``0..n-1``."""
    if isinstance(grid, (LatinSquare, RowConstantArray)):
        grid = grid.grid
    a = _as_grid(grid)
    n = a.shape[0]
    if a.size and (a.min() < 0 or a.max() >= n):
        return False
    want = np.arange(n)
    return bool(np.all(np.sort(a, axis=1) == want) and np.all(np.sort(a, axis=0).T == want))


@dataclass(frozen=True, eq=False)
class LatinSquare:
    grid: np.ndarray

    def __post_init__(self):
        a = _as_grid(self.grid)
        if not is_latin(a):
            raise NotLatin("grid is not a Latin square on symbols 0..n-1")
        a.setflags(write=False)
        object.__setattr__(self, "grid", a)

    @property
    def order(self) -> int:
        return self.grid.shape[0]

    def __getitem__(self, ij):
        return self.grid[ij]

    def __eq__(self, other):
        if not isinstance(other, LatinSquare):
            return NotImplemented
        return np.array_equal(self.grid, other.grid)

    def __hash__(self):
        return hash(self.grid.tobytes())

    def rows(self) -> list[list[int]]:
        return self.grid.tolist()

    def __repr__(self):
        return f"LatinSquare({self.rows()})"


@dataclass(frozen=True)
class RowConstantArray:
    """The array with ``entry(i, j) = i``; not Latin, but weak orthogonal to every Latin square."""

    order: int

    @property
    def grid(self) -> np.ndarray:
        g = np.repeat(np.arange(self.order, dtype=np.int64)[:, None], self.order, axis=1)
        g.setflags(write=False)
        return g

    def __getitem__(self, ij):
        return self.grid[ij]

    def rows(self) -> list[list[int]]:
        return self.grid.tolist()


Square = Union[LatinSquare, RowConstantArray]


def row_constant_array(n: int) -> RowConstantArray:
    if n < 1:
        raise ValueError("order must be >= 1")
    return RowConstantArray(n)


@dataclass(frozen=True)
class SquareFamily:
    order: int
    squares: tuple = ()

    def __post_init__(self):
        sq = tuple(self.squares)
        for s in sq:
            if _order(s) != self.order:
                raise OrderMismatch(f"member of order {_order(s)} in a family of order {self.order}")
        object.__setattr__(self, "squares", sq)

    @classmethod
    def of(cls, squares: Iterable[Square]) -> SquareFamily:
        squares = tuple(squares)
        if not squares:
            raise ValueError("empty family")
        return cls(_order(squares[0]), squares)

    def __len__(self):
        return len(self.squares)

    def __iter__(self):
        return iter(self.squares)

    def __getitem__(self, k):
        return self.squares[k]


def _order(s) -> int:
    return s.order if isinstance(s, (LatinSquare, RowConstantArray)) else _as_grid(s).shape[0]


def _grid(s) -> np.ndarray:
    return s.grid if isinstance(s, (LatinSquare, RowConstantArray)) else _as_grid(s)


def _pair(L, K):
    a, b = _grid(L), _grid(K)
    if a.shape != b.shape:
        raise OrderMismatch(f"orders {a.shape[0]} and {b.shape[0]} differ")
    return a, b


def are_mols(L, K) -> bool:
    """Superposition of L and K contains every ordered symbol pair exactly once."""
    a, b = _pair(L, K)
    n = a.shape[0]
    return len(np.unique(a * n + b)) == n * n


def weak_intersections(L, K) -> np.ndarray:
    """``out[i, j]`` = number of columns s with ``L[i, s] == K[j, s]``."""
    a, b = _pair(L, K)
    return (a[:, None, :] == b[None, :, :]).sum(axis=2)


def are_mwols(L, K) -> bool:
    """Every row of L meets every row of K in exactly one column."""
    return bool(np.all(weak_intersections(L, K) == 1))


def check_family(family, mode: str = "mwols") -> list[tuple[int, int]]:
    """Indices ``(i, j)``, ``i < j``, of member pairs failing the chosen predicate.

    Pairs involving a RowConstantArray are always judged by weak orthogonality.
    """
    if mode not in ("mols", "mwols"):
        raise ValueError(f"mode must be 'mols' or 'mwols', not {mode!r}")
    members = list(family)
    if not members:
        raise ValueError("empty family")
    orders = {_order(s) for s in members}
    if len(orders) > 1:
        raise OrderMismatch(f"family mixes orders {sorted(orders)}")
    failures = []
    for i, j in itertools.combinations(range(len(members)), 2):
        A, B = members[i], members[j]
        weak_only = isinstance(A, RowConstantArray) or isinstance(B, RowConstantArray)
        ok = are_mwols(A, B) if (mode == "mwols" or weak_only) else are_mols(A, B)
        if not ok:
            failures.append((i, j))
    return failures


def require_pair_order(n: int) -> None:
    if n in EXCLUDED_PAIR_ORDERS:
        raise UnsupportedOrder(f"no pair of weak orthogonal Latin squares of order {n} (d != 2, 6)")


# -- constructions ---------------------------------------------------------

def cyclic_square(n: int) -> LatinSquare:
    if n < 1:
        raise ValueError("order must be >= 1")
    i = np.arange(n)
    return LatinSquare((i[:, None] + i[None, :]) % n)


def gf_mwols_family(q: int) -> SquareFamily:
    """The q - 1 squares ``(i + a^s j)`` over GF(q), s = 0..q-2.

    Symbol k stands for the k-th element of :func:`gf.enumerate_field`.
    """
    spec = gf.field_of_order(q)
    elems = gf.enumerate_field(spec)
    index = {e: k for k, e in enumerate(elems)}
    squares = []
    for s in range(q - 1):
        coef = elems[s + 1]  # a^s
        scaled = [coef * e for e in elems]
        grid = [[index[elems[i] + scaled[j]] for j in range(q)] for i in range(q)]
        squares.append(LatinSquare(grid))
    return SquareFamily(q, tuple(squares))


def shift_symbols(L: LatinSquare, l: int) -> LatinSquare:
    n = L.order
    if not 0 <= l < n:
        raise ShiftOutOfRange(f"shift {l} outside [0, {n})")
    return LatinSquare((L.grid + l) % n)


def column_of(L: Square, row: int, entry: int) -> int:
    """Column j with ``L[row, j] == entry``."""
    hits = np.flatnonzero(_grid(L)[row] == entry)
    if len(hits) != 1:
        raise ValueError(f"entry {entry} occurs {len(hits)} times in row {row}")
    return int(hits[0])


def column_lookup(L: LatinSquare) -> np.ndarray:
    """``pos[i, k]`` = column holding entry k in row i."""
    n = L.order
    pos = np.empty((n, n), dtype=np.int64)
    pos[np.arange(n)[:, None], L.grid] = np.arange(n)[None, :]
    return pos


def direct_product(L: LatinSquare, K: LatinSquare) -> LatinSquare:
    """Order ``d1*d2`` square with entry ``d2*L[i,j] + K[s,t]`` at ``(d2*i+s, d2*j+t)``."""
    d1, d2 = L.order, K.order
    g = d2 * L.grid[:, None, :, None] + K.grid[None, :, None, :]
    return LatinSquare(g.reshape(d1 * d2, d1 * d2))


def direct_product_family(*families: Sequence[LatinSquare]) -> SquareFamily:
    """Componentwise direct product, after truncating every factor to the shortest."""
    if not families:
        raise ValueError("need at least one factor family")
    m = min(len(f) for f in families)
    squares = [reduce(direct_product, [list(f)[k] for f in families]) for k in range(m)]
    return SquareFamily.of(squares)


# -- transversals ----------------------------------------------------------

@dataclass(frozen=True)
class Transversal:
    cells: tuple  # ((row, col), ...) ordered by column

    def __post_init__(self):
        cells = tuple(sorted(((int(r), int(c)) for r, c in self.cells), key=lambda rc: rc[1]))
        object.__setattr__(self, "cells", cells)

    def entries(self, L: LatinSquare) -> list[int]:
        return [int(L.grid[r, c]) for r, c in self.cells]

    def is_valid_for(self, L: LatinSquare) -> bool:
        n = L.order
        rows = sorted(r for r, _ in self.cells)
        cols = [c for _, c in self.cells]
        return (
            len(self.cells) == n
            and rows == list(range(n))
            and cols == list(range(n))
            and sorted(self.entries(L)) == list(range(n))
        )


@dataclass(frozen=True)
class TransversalResolution:
    transversals: tuple

    def __post_init__(self):
        object.__setattr__(self, "transversals", tuple(self.transversals))

    def __len__(self):
        return len(self.transversals)

    def __iter__(self):
        return iter(self.transversals)

    def is_valid_for(self, L: LatinSquare) -> bool:
        n = L.order
        if len(self.transversals) != n or not all(t.is_valid_for(L) for t in self.transversals):
            return False
        cells = {cell for t in self.transversals for cell in t.cells}
        return len(cells) == n * n


def enumerate_transversals(L: LatinSquare, budget: int = DEFAULT_BUDGET) -> list[tuple[int, ...]]:
    """All transversals of L as column tuples ``cols[r]``, in lexicographic order.

    Raises BudgetExhausted once more than ``budget`` cells have been placed.
    """
    return _enumerate_transversals(L, budget)[0]


def _enumerate_transversals(L, budget):
    n = L.order
    g = L.grid.tolist()
    out: list[tuple[int, ...]] = []
    cols: list[int] = []
    nodes = 0

    def dfs(r, colmask, symmask):
        nonlocal nodes
        if r == n:
            out.append(tuple(cols))
            return
        row = g[r]
        for c in range(n):
            if (colmask >> c) & 1 or (symmask >> row[c]) & 1:
                continue
            nodes += 1
            if nodes > budget:
                raise BudgetExhausted(
                    f"transversal enumeration for order {n} exceeded {budget} placements",
                    nodes=nodes)
            cols.append(c)
            dfs(r + 1, colmask | (1 << c), symmask | (1 << row[c]))
            cols.pop()

    dfs(0, 0, 0)
    return out, nodes


def find_resolution(L: LatinSquare, budget: int = DEFAULT_BUDGET) -> TransversalResolution:
    """Partition the cells of L into n disjoint transversals.

    Every transversal is enumerated first (rows in index order, columns
    ascending); the partition is then an exact cover of the n*n cells,
    solved by Algorithm X taking the cell with the fewest covering
    transversals first (ties broken row-major) and trying transversals in
    lexicographic order. Deterministic. ``budget`` caps the total number
    of placements over both phases.

    Raises NonexistentResolution when the search space is exhausted and
    BudgetExhausted when the budget runs out first.
    """
    n = L.order
    transversals, nodes = _enumerate_transversals(L, budget)

    opts = [tuple(r * n + c for r, c in enumerate(cols)) for cols in transversals]
    items: dict[int, set] = {cell: set() for cell in range(n * n)}
    for k, cells in enumerate(opts):
        for cell in cells:
            items[cell].add(k)

    solution: list[int] = []

    def select(k):
        removed = []
        for cell in opts[k]:
            for other in items[cell]:
                for c2 in opts[other]:
                    if c2 != cell:
                        items[c2].discard(other)
            removed.append(items.pop(cell))
        return removed

    def deselect(k, removed):
        for cell in reversed(opts[k]):
            items[cell] = removed.pop()
            for other in items[cell]:
                for c2 in opts[other]:
                    if c2 != cell:
                        items[c2].add(other)

    def search():
        nonlocal nodes
        if not items:
            return True
        cell = min(items, key=lambda c: len(items[c]))
        for k in sorted(items[cell]):
            nodes += 1
            if nodes > budget:
                raise BudgetExhausted(
                    f"no resolution decided for order {n} within {budget} placements", nodes=nodes)
            removed = select(k)
            solution.append(k)
            if search():
                return True
            solution.pop()
            deselect(k, removed)
        return False

    if not search():
        raise NonexistentResolution(
            f"this square of order {n} has no resolution of transversals", nodes=nodes)
    chosen = sorted(transversals[k] for k in solution)
    return TransversalResolution(
        tuple(Transversal(tuple(enumerate(cols))) for cols in chosen))


class Companion(NamedTuple):
    square: LatinSquare      # the weak orthogonal mate
    base: LatinSquare        # source with column 0 reordered to 0..n-1
    row_perm: tuple          # base row i is source row row_perm[i]


def normalize_first_column(L: LatinSquare) -> tuple[LatinSquare, tuple]:
    perm = tuple(int(r) for r in np.argsort(L.grid[:, 0]))
    return LatinSquare(L.grid[list(perm)]), perm


def transversal_companion(L: LatinSquare, R: TransversalResolution) -> Companion:
    """Weak orthogonal mate of L whose k-th row is the transversal through entry k of column 0."""
    if not R.is_valid_for(L):
        raise NotAResolution("the transversals do not partition the square")
    n = L.order
    base, perm = normalize_first_column(L)
    grid = np.empty((n, n), dtype=np.int64)
    for t in R:
        entries = t.entries(L)
        grid[entries[0]] = entries  # cells are ordered by column, so entries[0] sits in column 0
    return Companion(LatinSquare(grid), base, perm)


def generic_square(n: int, seed: int = 0) -> LatinSquare:
    """A seeded, non-group-based Latin square built row by row.

    Each row is a min-cost perfect matching of columns to unused symbols
    under random costs, so the output is deterministic for a given seed.
    """
    from scipy.optimize import linear_sum_assignment

    rng = np.random.default_rng(seed)
    grid = np.empty((n, n), dtype=np.int64)
    allowed = np.ones((n, n), dtype=bool)  # allowed[col, sym]
    for r in range(n):
        cost = np.where(allowed, rng.random((n, n)), n * n + 1.0)
        cols, syms = linear_sum_assignment(cost)
        grid[r, cols] = syms
        allowed[cols, syms] = False
    return LatinSquare(grid)


# -- text format -----------------------------------------------------------

def format_square(L: Square) -> str:
    rows = _grid(L).tolist()
    return "\n".join([str(len(rows))] + [" ".join(str(x) for x in row) for row in rows]) + "\n"


def format_squares(squares: Iterable[Square]) -> str:
    return "\n".join(format_square(s) for s in squares)


def parse_squares(text: str) -> list[Square]:
    """Parse one or more squares. Row-constant grids come back as RowConstantArray."""
    lines = [ln.strip() for ln in io.StringIO(text)]
    out: list[Square] = []
    k = 0
    while k < len(lines):
        if not lines[k]:
            k += 1
            continue
        try:
            n = int(lines[k])
        except ValueError:
            raise ShapeError(f"line {k + 1}: expected the order, got {lines[k]!r}") from None
        body = lines[k + 1:k + 1 + n]
        if len(body) != n:
            raise ShapeError(f"square at line {k + 1} has {len(body)} rows, expected {n}")
        try:
            rows = [[int(x) for x in ln.split()] for ln in body]
        except ValueError as exc:
            raise ShapeError(f"non-integer symbol near line {k + 2}: {exc}") from None
        if any(len(r) != n for r in rows):
            raise ShapeError(f"square at line {k + 1} is not {n}x{n}")
        a = np.array(rows, dtype=np.int64).reshape(n, n)
        if n and np.array_equal(a, RowConstantArray(n).grid) and n > 1:
            out.append(RowConstantArray(n))
        else:
            out.append(LatinSquare(a))
        k += 1 + n
    if not out:
        raise ShapeError("no square found")
    return out


def parse_grids(text: str) -> list[np.ndarray]:
    """Like :func:`parse_squares` but without the Latin check (for diagnostics)."""
    lines = [ln.strip() for ln in text.splitlines()]
    out, k = [], 0
    while k < len(lines):
        if not lines[k]:
            k += 1
            continue
        try:
            n = int(lines[k])
            rows = [[int(x) for x in ln.split()] for ln in lines[k + 1:k + 1 + n]]
            a = np.array(rows, dtype=np.int64)
        except ValueError:
            raise ShapeError(f"malformed square near line {k + 1}") from None
        if a.shape != (n, n):
            raise ShapeError(f"square at line {k + 1} is not {n}x{n}")
        out.append(a)
        k += 1 + n
    if not out:
        raise ShapeError("no square found")
    return out


def read_squares(path: Union[str, os.PathLike]) -> list[Square]:
    with open(path) as fh:
        return parse_squares(fh.read())


def write_squares(path: Union[str, os.PathLike], squares: Iterable[Square]) -> None:
    with open(path, "w") as fh:
        fh.write(format_squares(squares))
