"""Orthonormal bases of C^d1 (x) C^d2 (x) C^d3 built from Latin squares.

Every basis is stored densely: ``vectors[r]`` is the r-th basis state and
the amplitude of ``|i>|j>|k>`` sits at index ``(i*d2 + j)*d3 + k``. For the
equal-dimension constructions the first register holds the symbol ``k`` of
the square and the last two hold the cell ``(row, column)``, so the kets read
``|k>|i j>``.
"""
from __future__ import annotations

import hashlib
import json
import math
import os
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence, Union

import numpy as np

from .errors import DimensionMismatch, FlatnessViolation, NotNormalized, OrderMismatch
from .latin import LatinSquare, column_lookup

TOL = 1e-9


@dataclass(frozen=True)
class TripartiteDims:
    d1: int
    d2: int
    d3: int

    def __post_init__(self):
        if min(self.d1, self.d2, self.d3) < 1:
            raise DimensionMismatch(f"dimensions must be positive, got {self.as_tuple()}")

    @property
    def D(self) -> int:
        return self.d1 * self.d2 * self.d3

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.d1, self.d2, self.d3)

    def subsystem(self, which: int) -> int:
        return self.as_tuple()[which - 1]


class BasisLabel(NamedTuple):
    n: int
    m: int
    l: int
    s: Optional[int] = None

    def __str__(self):
        tail = "" if self.s is None else f"^{self.s}"
        return f"({self.n},{self.m},{self.l}){tail}"


def root_of_unity(d: int, e: int = 1) -> complex:
    """``exp(2*pi*i*e/d)``; the exponent is reduced mod d first."""
    if d < 1:
        raise ValueError("d must be >= 1")
    t = 2 * math.pi * (e % d) / d
    return complex(math.cos(t), math.sin(t))


def _powers(d: int) -> np.ndarray:
    return np.array([root_of_unity(d, e) for e in range(d)])


@dataclass(frozen=True, eq=False)
class CoefficientVector:
    """Unimodular ``(a_0, ..., a_{d-1})`` with ``|sum_k w^(tk) a_k| = sqrt(d)`` for every t."""

    a: np.ndarray
    tol: float = TOL

    def __post_init__(self):
        a = np.asarray(self.a, dtype=complex).ravel()
        a.setflags(write=False)
        object.__setattr__(self, "a", a)
        dev_mod, dev_dft = flatness_deviation(a)
        if dev_mod > self.tol:
            raise FlatnessViolation(f"|a_k| deviates from 1 by {dev_mod:.3g}")
        if dev_dft > self.tol:
            raise FlatnessViolation(f"Fourier modulus deviates from sqrt(d) by {dev_dft:.3g}")

    @property
    def d(self) -> int:
        return len(self.a)

    def __len__(self):
        return len(self.a)


def flatness_deviation(a) -> tuple[float, float]:
    """Worst ``||a_k| - 1|`` and worst ``||sum_k w^(tk) a_k| - sqrt(d)|``."""
    a = np.asarray(a, dtype=complex)
    d = len(a)
    F = _powers(d)[np.outer(np.arange(d), np.arange(d)) % d]
    return (float(np.max(np.abs(np.abs(a) - 1))),
            float(np.max(np.abs(np.abs(F @ a) - math.sqrt(d)))))


def flat_fourier_coeffs(d: int) -> CoefficientVector:
    """Quadratic-phase sequence: ``w_d^(k^2)`` for odd d, ``w_2d^(k^2)`` for even d."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if d % 2:
        a = [root_of_unity(d, k * k) for k in range(d)]
    else:
        a = [root_of_unity(2 * d, k * k) for k in range(d)]
    return CoefficientVector(np.array(a))


@dataclass(frozen=True, eq=False)
class StateVector:
    dims: TripartiteDims
    amps: np.ndarray
    tol: float = TOL

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex).ravel()
        if amps.size != self.dims.D:
            raise DimensionMismatch(f"{amps.size} amplitudes for dimension {self.dims.D}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        if abs(np.linalg.norm(amps) - 1) > self.tol:
            raise NotNormalized(f"norm {np.linalg.norm(amps)!r} is not 1")
        object.__setattr__(self, "amps", amps)

    def tensor(self) -> np.ndarray:
        return self.amps.reshape(self.dims.as_tuple())


@dataclass(frozen=True, eq=False)
class LabeledBasis:
    dims: TripartiteDims
    vectors: np.ndarray  # shape (D, D), one basis vector per row
    labels: tuple
    provenance: str = ""

    def __post_init__(self):
        V = np.asarray(self.vectors, dtype=complex)
        D = self.dims.D
        if V.shape != (D, D):
            raise DimensionMismatch(f"expected {D} vectors of length {D}, got {V.shape}")
        labels = tuple(BasisLabel(*lab) for lab in self.labels)
        if len(labels) != D:
            raise ValueError(f"{len(labels)} labels for {D} vectors")
        if len({lab[:3] for lab in labels}) != D:
            raise ValueError("labels are not pairwise distinct")
        V.setflags(write=False)
        object.__setattr__(self, "vectors", V)
        object.__setattr__(self, "labels", labels)

    def __len__(self):
        return len(self.labels)

    def vector(self, r: int) -> StateVector:
        return StateVector(self.dims, self.vectors[r])

    def index(self, n: int, m: int, l: int) -> int:
        for r, lab in enumerate(self.labels):
            if lab[:3] == (n, m, l):
                return r
        raise KeyError((n, m, l))

    def state(self, n: int, m: int, l: int) -> np.ndarray:
        return self.vectors[self.index(n, m, l)]


def _digest(L: LatinSquare) -> str:
    return hashlib.sha1(L.grid.tobytes()).hexdigest()[:10]


def build_ameb_equal_dims(L: LatinSquare, coeffs: Union[CoefficientVector, Sequence, None] = None,
                          *, s: Optional[int] = None) -> LabeledBasis:
    """The d^3 states ``(1/d) sum_k a_k w^(nk) |k> (x) sum_i w^(mi) |i j>``.

    ``j`` is the column of entry ``k + l (mod d)`` in row ``i`` of L. Without
    ``coeffs`` every ``a_k`` is 1.
    """
    d = L.order
    if coeffs is None:
        a = np.ones(d, dtype=complex)
        kind = "equal-dims"
    else:
        if not isinstance(coeffs, CoefficientVector):
            coeffs = CoefficientVector(coeffs)
        if coeffs.d != d:
            raise DimensionMismatch(f"{coeffs.d} coefficients for a square of order {d}")
        a = coeffs.a
        kind = "equal-dims-weighted"
    w = _powers(d)
    pos = column_lookup(L)
    K, I = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
    N, M, Lb = (x.ravel() for x in np.meshgrid(np.arange(d), np.arange(d), np.arange(d), indexing="ij"))
    V = np.zeros((d ** 3, d ** 3), dtype=complex)
    for r, (n, m, l) in enumerate(zip(N, M, Lb)):
        J = pos[I, (K + l) % d]
        idx = (K * d + I) * d + J
        V[r, idx.ravel()] = (a[K] * w[(n * K + m * I) % d]).ravel() / d
    labels = tuple(BasisLabel(int(n), int(m), int(l), s) for n, m, l in zip(N, M, Lb))
    return LabeledBasis(TripartiteDims(d, d, d), V, labels, f"{kind} d={d} square={_digest(L)}")


def f_index(i: int, j: int, d2: int) -> int:
    """Bijection Z_d1 x Z_d2 -> Z_(d1 d2), ``(i, j) -> d2*i + j``."""
    if i < 0 or not 0 <= j < d2:
        raise ValueError(f"({i}, {j}) outside the index range for d2={d2}")
    return d2 * i + j


def _mixed(grid: np.ndarray, d1: int, d2: int, s, provenance: str) -> LabeledBasis:
    d3 = d1 * d2
    D = d3 * d3
    w1, w2 = _powers(d1), _powers(d2)
    I, J = np.meshgrid(np.arange(d1), np.arange(d2), indexing="ij")
    F = d2 * I + J
    N, M, Lb = (x.ravel() for x in np.meshgrid(np.arange(d1), np.arange(d2), np.arange(d3), indexing="ij"))
    V = np.zeros((D, D), dtype=complex)
    norm = 1 / math.sqrt(d3)
    for r, (n, m, l) in enumerate(zip(N, M, Lb)):
        Kk = grid[l, F]
        idx = (I * d2 + J) * d3 + Kk
        V[r, idx.ravel()] = (w1[(n * I) % d1] * w2[(m * J) % d2]).ravel() * norm
    labels = tuple(BasisLabel(int(n), int(m), int(l), s) for n, m, l in zip(N, M, Lb))
    return LabeledBasis(TripartiteDims(d1, d2, d3), V, labels, provenance)


def build_ameb_mixed_dims(L: LatinSquare, d1: int, d2: int, *, s: Optional[int] = None) -> LabeledBasis:
    """States ``(1/sqrt(d1 d2)) sum_ij w1^(ni) w2^(mj) |i>|j>|L[l, d2*i + j]>``."""
    if L.order != d1 * d2:
        raise OrderMismatch(f"square of order {L.order} cannot serve dims ({d1}, {d2}, {d1 * d2})")
    tag = "" if s is None else f" s={s}"
    return _mixed(L.grid, d1, d2, s, f"mixed-dims d1={d1} d2={d2}{tag} square={_digest(L)}")


def build_product_basis(d1: int, d2: int) -> LabeledBasis:
    """Fourier vector (x) Fourier vector (x) |l>; the row-constant case of the mixed construction."""
    if d1 < 1 or d2 < 1:
        raise DimensionMismatch("dimensions must be positive")
    d3 = d1 * d2
    grid = np.repeat(np.arange(d3)[:, None], d3, axis=1)
    return _mixed(grid, d1, d2, None, f"product d1={d1} d2={d2}")


# -- JSON basis files ------------------------------------------------------

def _num(x: float) -> str:
    return format(float(x), ".17g")


def basis_to_json(B: LabeledBasis) -> str:
    d1, d2, d3 = B.dims.as_tuple()
    head = json.dumps({"dims": {"d1": d1, "d2": d2, "d3": d3}, "provenance": B.provenance})
    rows = []
    for lab, v in zip(B.labels, B.vectors):
        label = json.dumps({"n": lab.n, "m": lab.m, "l": lab.l, "s": lab.s})
        amps = ",".join(f"[{_num(z.real)},{_num(z.imag)}]" for z in v)
        rows.append(f'{{"label":{label},"amps":[{amps}]}}')
    return head[:-1] + ', "vectors": [\n' + ",\n".join(rows) + "\n]}\n"


def basis_from_json(text: str) -> LabeledBasis:
    doc = json.loads(text)
    try:
        dims = TripartiteDims(**{k: int(doc["dims"][k]) for k in ("d1", "d2", "d3")})
        vecs = doc["vectors"]
        V = np.array([[complex(re, im) for re, im in v["amps"]] for v in vecs], dtype=complex)
        labels = [BasisLabel(v["label"]["n"], v["label"]["m"], v["label"]["l"], v["label"].get("s"))
                  for v in vecs]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed basis document: {exc}") from None
    if V.ndim != 2:
        raise DimensionMismatch("vectors have inconsistent lengths")
    return LabeledBasis(dims, V, tuple(labels), doc.get("provenance", ""))


def write_basis(path: Union[str, os.PathLike], B: LabeledBasis) -> None:
    with open(path, "w") as fh:
        fh.write(basis_to_json(B))


def read_basis(path: Union[str, os.PathLike]) -> LabeledBasis:
    with open(path) as fh:
        return basis_from_json(fh.read())
