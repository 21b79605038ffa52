"""Schmidt analysis and maximal-entanglement predicates.

Three notions of "maximally entangled" coexist here, because they genuinely
differ once the local dimensions are unequal:

* :class:`Strict` -- the reduced state equals I/dim(H_A) on every
  bipartition.  In 2x3x3 no state satisfies this (a rank-2 coefficient
  matrix cannot produce I/3), so verdicts under it are uniformly negative
  there; they are still reported.
* :class:`GhzType` -- on every bipartition the reduced state has exactly
  ``d`` nonzero eigenvalues, all equal to 1/d.  The GHZ state satisfies
  this with d=2 in 2x2x2, and so do the lifted 2x3x3 bases.
* :class:`CutRestricted` -- Schmidt coefficients across one designated
  bipartition all equal 1/sqrt(d); the other cuts are ignored.

Each predicate has a smooth nonnegative defect that vanishes exactly on
its satisfying set; the defect is what the unextendibility search
minimizes over complement subspaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .hilbert import (
    Bipartition,
    Ket,
    all_bipartitions,
    hermitian_eigenvalues,
    partial_trace,
    stack_amps,
)


@dataclass(frozen=True)
class Strict:
    """Reduced state exactly I/dim(H_A) on every bipartition."""


@dataclass(frozen=True)
class GhzType:
    """Every bipartition's reduced spectrum is d copies of 1/d (plus zeros)."""

    d: int

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"GhzType needs d >= 2, got {self.d}")


@dataclass(frozen=True)
class CutRestricted:
    """Schmidt coefficients across one designated cut all equal 1/sqrt(d)."""

    cut: Bipartition
    d: int

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"CutRestricted needs d >= 2, got {self.d}")


Predicate = Union[Strict, GhzType, CutRestricted]


def predicate_label(pred: Predicate) -> str:
    """Short display name: ``strict``, ``ghz2``, ``cut1``, ..."""
    if isinstance(pred, Strict):
        return "strict"
    if isinstance(pred, GhzType):
        return f"ghz{pred.d}"
    if isinstance(pred, CutRestricted):
        return "cut" + "+".join(str(s + 1) for s in pred.cut.sites)
    raise TypeError(f"unknown predicate {pred!r}")


def predicate_cuts(pred: Predicate, shape) -> list[Bipartition]:
    """Bipartitions a predicate evaluates on a given shape."""
    if isinstance(pred, CutRestricted):
        if pred.cut.shape != shape:
            raise ValueError(f"predicate cut is over {pred.cut.shape}, state is over {shape}")
        _check_d(pred.d, shape)
        return [pred.cut]
    if isinstance(pred, (Strict, GhzType)):
        if isinstance(pred, GhzType):
            _check_d(pred.d, shape)
        cuts = all_bipartitions(shape)
        if not cuts:
            raise ValueError("predicate needs at least two subsystems")
        return cuts
    raise TypeError(f"unknown predicate {pred!r}")


def _check_d(d: int, shape) -> None:
    if d > min(shape.dims):
        raise ValueError(
            f"predicate parameter d={d} exceeds the smallest subsystem dimension "
            f"of {shape}"
        )


@dataclass(frozen=True, eq=False)
class SchmidtSpectrum:
    """Descending Schmidt coefficients of a state across one cut."""

    coefficients: np.ndarray
    cut: Bipartition


@dataclass(frozen=True, eq=False)
class EntanglementCheck:
    """Verdict of :func:`is_maximally_entangled` with per-cut residuals."""

    ok: bool
    residuals: tuple[tuple[Bipartition, float], ...]

    @property
    def max_residual(self) -> float:
        return max(r for _, r in self.residuals)


def _small_side(cut: Bipartition) -> Bipartition:
    if cut.dim_a <= cut.dim_b:
        return cut
    return Bipartition(cut.shape, cut.other_sites)


def schmidt_coefficients(v: Ket, cut: Bipartition, unit_tol: float = 1e-10) -> SchmidtSpectrum:
    """Schmidt coefficients of a unit ket across a cut, descending.

    Square roots of the reduced-state eigenvalues, computed on whichever
    side of the cut is smaller (the nonzero spectrum is the same on both).
    """
    rho = partial_trace(v, _small_side(cut), unit_tol)
    evals = hermitian_eigenvalues(rho)
    return SchmidtSpectrum(np.sqrt(np.clip(evals, 0.0, None)), cut)


def schmidt_number(v: Ket, cut: Bipartition, tol: float = 1e-10) -> int:
    """Count of Schmidt coefficients above ``tol``."""
    return int(np.sum(schmidt_coefficients(v, cut).coefficients > tol))


def cut_residual(v: Ket, cut: Bipartition, pred: Predicate) -> float:
    """Distance of one cut's reduced state from the predicate's target.

    Strict: Frobenius norm of rho_A - I/dim(H_A).  GhzType(d): 2-norm
    distance of the sorted spectrum from (1/d, ..., 1/d, 0, ...).
    CutRestricted(d): 2-norm distance of the Schmidt coefficients from
    (1/sqrt(d), ..., 1/sqrt(d), 0, ...).
    """
    if isinstance(pred, Strict):
        rho = partial_trace(v, cut).entries
        da = cut.dim_a
        return float(np.linalg.norm(rho - np.eye(da) / da))
    if isinstance(pred, GhzType):
        rho = partial_trace(v, cut)
        evals = hermitian_eigenvalues(rho)
        target = np.zeros_like(evals)
        target[: pred.d] = 1.0 / pred.d
        return float(np.linalg.norm(evals - target))
    if isinstance(pred, CutRestricted):
        lam = schmidt_coefficients(v, cut).coefficients
        target = np.zeros_like(lam)
        target[: pred.d] = 1.0 / np.sqrt(pred.d)
        return float(np.linalg.norm(lam - target))
    raise TypeError(f"unknown predicate {pred!r}")


def is_maximally_entangled(v: Ket, pred: Predicate, tol: float = 1e-8) -> EntanglementCheck:
    """Evaluate a maximal-entanglement predicate on a unit ket."""
    if not v.is_unit(1e-10):
        raise ValueError(f"ket is not normalized (norm {v.norm():.6g})")
    cuts = predicate_cuts(pred, v.shape)
    residuals = tuple((cut, cut_residual(v, cut, pred)) for cut in cuts)
    return EntanglementCheck(ok=all(r < tol for _, r in residuals), residuals=residuals)


def defect(v: Ket, pred: Predicate) -> float:
    """Smooth nonnegative defect; zero exactly on the predicate's states.

    Strict sums ``||rho_A - I/N_A||_F^2`` over all cuts.  GhzType(d) sums
    the polynomial surrogate ``||rho_A^2 - rho_A/d||_F^2``, which vanishes
    iff every cut spectrum lies in {0, 1/d} (and the unit trace then forces
    exactly d nonzero values); unlike the sorted-spectrum residual it is
    differentiable everywhere, which is what the optimizer needs.
    CutRestricted(d) penalizes the squared Schmidt coefficients mu_i:
    sum of (mu_i - 1/d)^2 over the top d plus sum of mu_i^2 over the rest.
    """
    if not v.is_unit(1e-10):
        raise ValueError(f"ket is not normalized (norm {v.norm():.6g})")
    cuts = predicate_cuts(pred, v.shape)
    if isinstance(pred, Strict):
        total = 0.0
        for cut in cuts:
            rho = partial_trace(v, cut).entries
            da = cut.dim_a
            total += float(np.sum(np.abs(rho - np.eye(da) / da) ** 2))
        return total
    if isinstance(pred, GhzType):
        total = 0.0
        for cut in cuts:
            rho = partial_trace(v, cut).entries
            x = rho @ rho - rho / pred.d
            total += float(np.sum(np.abs(x) ** 2))
        return total
    if isinstance(pred, CutRestricted):
        mu = schmidt_coefficients(v, cuts[0]).coefficients ** 2
        top, rest = mu[: pred.d], mu[pred.d :]
        return float(np.sum((top - 1.0 / pred.d) ** 2) + np.sum(rest**2))
    raise TypeError(f"unknown predicate {pred!r}")


# --- coordinate form used by the unextendibility search ------------------
#
# A point of the complement is encoded as 2c real coordinates w, pairs of
# (real, imag) parts of the expansion coefficients in an orthonormal frame.
# The objective normalizes the encoded vector, so it is invariant under
# scaling of w and under a global phase.


def coords_to_ket(w: np.ndarray, frame: Sequence[Ket]) -> Ket:
    """Decode coordinates into the normalized ket they represent."""
    w = np.asarray(w, dtype=np.float64)
    if w.size != 2 * len(frame):
        raise ValueError(f"expected {2 * len(frame)} coordinates, got {w.size}")
    amps = (w[0::2] + 1j * w[1::2]) @ stack_amps(frame)
    nrm = np.linalg.norm(amps)
    if nrm <= 1e-6:
        raise ValueError("coordinates encode a near-zero vector")
    return Ket(frame[0].shape, amps / nrm)


def defect_coords(w: np.ndarray, pred: Predicate, frame: Sequence[Ket]) -> float:
    """Defect of the normalized vector encoded by coordinates ``w``."""
    return float(defect_coords_batch(np.asarray(w, dtype=np.float64)[None, :], pred, frame)[0])


def defect_coords_batch(W: np.ndarray, pred: Predicate, frame: Sequence[Ket]) -> np.ndarray:
    """Defect of many coordinate vectors at once (rows of ``W``).

    Vectorized twin of :func:`defect` on the coordinate encoding; the
    search and the finite-difference gradient call this in batches.  For
    CutRestricted the batched spectra come from LAPACK rather than the
    Jacobi solver; the two routes are cross-checked in the test suite.
    """
    W = np.atleast_2d(np.asarray(W, dtype=np.float64))
    if W.shape[1] != 2 * len(frame):
        raise ValueError(f"expected {2 * len(frame)} coordinates per row, got {W.shape[1]}")
    shape = frame[0].shape
    coeffs = W[:, 0::2] + 1j * W[:, 1::2]
    vecs = coeffs @ stack_amps(frame)
    norms = np.linalg.norm(vecs, axis=1)
    if np.any(norms <= 1e-6):
        raise ValueError("coordinates encode a near-zero vector")
    vecs = vecs / norms[:, None]

    cuts = predicate_cuts(pred, shape)
    out = np.zeros(W.shape[0])
    if isinstance(pred, CutRestricted):
        rho = _batched_rho(vecs, shape, _small_side(cuts[0]))
        mu = np.linalg.eigvalsh(rho)[:, ::-1]
        top, rest = mu[:, : pred.d], mu[:, pred.d :]
        return np.sum((top - 1.0 / pred.d) ** 2, axis=1) + np.sum(rest**2, axis=1)
    for cut in cuts:
        rho = _batched_rho(vecs, shape, cut)
        if isinstance(pred, Strict):
            x = rho - np.eye(cut.dim_a) / cut.dim_a
        else:
            x = rho @ rho - rho / pred.d
        out += np.sum(np.abs(x) ** 2, axis=(1, 2))
    return out


def _batched_rho(vecs: np.ndarray, shape, cut: Bipartition) -> np.ndarray:
    """Reduced states of a batch of flat state vectors on ``cut.sites``."""
    n = vecs.shape[0]
    t = vecs.reshape((n,) + shape.dims)
    perm = (0,) + tuple(s + 1 for s in cut.sites) + tuple(s + 1 for s in cut.other_sites)
    m = np.transpose(t, perm).reshape(n, cut.dim_a, cut.dim_b)
    return m @ m.conj().transpose(0, 2, 1)


def defect_gradient(
    w: np.ndarray,
    pred: Predicate,
    frame: Sequence[Ket],
    step: float = 1e-5,
) -> np.ndarray:
    """Gradient of the coordinate-form defect by central finite differences.

    The encoded vector must be unit within 1e-8; because the objective
    renormalizes internally, radial (scale and global-phase) directions
    contribute nothing and the result is tangent-dominant.
    """
    w = np.asarray(w, dtype=np.float64)
    n = w.size
    if n != 2 * len(frame):
        raise ValueError(f"expected {2 * len(frame)} coordinates, got {n}")
    if abs(np.linalg.norm(w) - 1.0) > 1e-8:
        raise ValueError("coordinate vector must encode a unit ket (norm within 1e-8 of 1)")
    eye = np.eye(n) * step
    probes = np.vstack([w[None, :] + eye, w[None, :] - eye])
    vals = defect_coords_batch(probes, pred, frame)
    return (vals[:n] - vals[n:]) / (2.0 * step)
