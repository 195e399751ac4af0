"""Numerical certificates: orthonormality, mutual unbiasedness, maximal entanglement.

All deviations are absolute. A report passes iff ``max_deviation <= tol``.
"""
from __future__ import annotations

import itertools
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np

from .basis import TOL, LabeledBasis, StateVector, TripartiteDims
from .errors import DimsMismatch

KINDS = ("gram", "unbiased", "ame")


@dataclass
class VerificationReport:
    kind: str
    max_deviation: float
    target: float
    tol: float
    passed: bool
    worst_witness: Optional[list] = None
    subject: str = ""

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d

    @classmethod
    def from_dict(cls, d: dict) -> VerificationReport:
        d = dict(d)
        d["passed"] = d.pop("pass")
        if d["kind"] not in KINDS:
            raise ValueError(f"unknown report kind {d['kind']!r}")
        return cls(**d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _report(kind, dev, target, tol, witness, subject=""):
    dev = float(dev)
    return VerificationReport(kind, dev, float(target), float(tol), dev <= tol, witness, subject)


def _label(B: LabeledBasis, r: int) -> list:
    return list(B.labels[r])


def gram_check(B: LabeledBasis, tol: float = TOL) -> VerificationReport:
    """Largest ``|<u|v> - delta_uv|`` over all pairs of basis vectors."""
    V = B.vectors
    G = V.conj() @ V.T
    G[np.diag_indices_from(G)] -= 1
    dev = np.abs(G)
    r, c = np.unravel_index(np.argmax(dev), dev.shape)
    return _report("gram", dev[r, c], 0.0, tol, [_label(B, r), _label(B, c)], B.provenance)


def unbiased_check(B1: LabeledBasis, B2: LabeledBasis, tol: float = TOL) -> VerificationReport:
    """Largest ``||<u|v>| - 1/sqrt(D)|`` over u in B1, v in B2."""
    if B1.dims != B2.dims:
        raise DimsMismatch(f"{B1.dims.as_tuple()} vs {B2.dims.as_tuple()}")
    target = 1 / math.sqrt(B1.dims.D)
    dev = np.abs(np.abs(B1.vectors.conj() @ B2.vectors.T) - target)
    r, c = np.unravel_index(np.argmax(dev), dev.shape)
    return _report("unbiased", dev[r, c], target, tol, [_label(B1, r), _label(B2, c)],
                   f"{B1.provenance} | {B2.provenance}")


def _reduce(psi: np.ndarray, keep: int) -> np.ndarray:
    """Reduced states of a stack of tripartite tensors ``psi[..., i, j, k]``."""
    spec = {1: "...abc,...dbc->...ad", 2: "...abc,...adc->...bd", 3: "...abc,...abd->...cd"}[keep]
    rho = np.einsum(spec, psi, psi.conj())
    return (rho + np.swapaxes(rho, -1, -2).conj()) / 2


def partial_trace(v, keep: int, dims: Optional[TripartiteDims] = None) -> np.ndarray:
    """Density matrix of subsystem ``keep`` (1, 2 or 3) of a pure tripartite state."""
    if keep not in (1, 2, 3):
        raise ValueError("keep must be 1, 2 or 3")
    if isinstance(v, StateVector):
        dims, amps = v.dims, v.amps
    else:
        if dims is None:
            raise ValueError("dims are required for a bare amplitude array")
        amps = np.asarray(v, dtype=complex)
    return _reduce(amps.reshape(dims.as_tuple()), keep)


def is_density_matrix(rho: np.ndarray, tol: float = TOL) -> bool:
    rho = np.asarray(rho)
    if np.max(np.abs(rho - rho.conj().T)) > tol or abs(np.trace(rho) - 1) > tol:
        return False
    return bool(np.linalg.eigvalsh(rho).min() >= -tol)


def ame_deviations(B: LabeledBasis) -> dict[int, tuple[float, int]]:
    """Per subsystem: worst entrywise deviation from I/dim and the vector attaining it."""
    psi = B.vectors.reshape((-1,) + B.dims.as_tuple())
    out = {}
    for keep in (1, 2, 3):
        dA = B.dims.subsystem(keep)
        dev = np.abs(_reduce(psi, keep) - np.eye(dA) / dA).reshape(len(psi), -1).max(axis=1)
        r = int(np.argmax(dev))
        out[keep] = (float(dev[r]), r)
    return out


def ame_check(B: LabeledBasis, tol: float = TOL) -> VerificationReport:
    """Largest entrywise deviation of any single-party reduction from I/dim.

    For a pure tripartite state the two-party reductions share their nonzero
    spectrum with the complementary single-party ones, so these three cover
    every bipartition.
    """
    devs = ame_deviations(B)
    keep = max(devs, key=lambda k: devs[k][0])  # first subsystem wins ties
    worst, r = devs[keep]
    return _report("ame", worst, 0.0, tol, [_label(B, r), keep], B.provenance)


@dataclass
class FamilyReport:
    reports: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    @property
    def max_deviation(self) -> dict:
        out: dict = {}
        for r in self.reports:
            out[r.kind] = max(out.get(r.kind, 0.0), r.max_deviation)
        return out

    def failures(self) -> list:
        return [r for r in self.reports if not r.passed]

    def to_dict(self) -> dict:
        return {"pass": self.passed, "max_deviation": self.max_deviation,
                "reports": [r.to_dict() for r in self.reports]}


def verify_mub_family(bases: Sequence[LabeledBasis], tol: float = TOL, *,
                      ame: Sequence[int] = (), workers: Optional[int] = None) -> FamilyReport:
    """Gram check of every basis and unbiasedness of every unordered pair.

    ``ame`` lists indices of bases that must also pass :func:`ame_check`.
    With ``workers`` the checks run on a thread pool; the reports come back
    in the same order either way.
    """
    bases = list(bases)
    if not bases:
        raise ValueError("empty family")
    dims = {B.dims for B in bases}
    if len(dims) > 1:
        raise DimsMismatch(f"family mixes dimensions {sorted(d.as_tuple() for d in dims)}")
    jobs = [(gram_check, (B, tol)) for B in bases]
    jobs += [(unbiased_check, (bases[i], bases[j], tol))
             for i, j in itertools.combinations(range(len(bases)), 2)]
    jobs += [(ame_check, (bases[i], tol)) for i in ame]
    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            reports = list(pool.map(lambda job: job[0](*job[1]), jobs))
    else:
        reports = [fn(*args) for fn, args in jobs]
    return FamilyReport(reports)
