"""Dense complex matrix kernel: exponential, principal logarithm, inverse.

Matrices are plain complex numpy arrays. Matrix functions go through the
eigendecomposition when the eigenvector matrix is well conditioned and fall
back to scaling-and-squaring style routines (scipy) otherwise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (
    BranchCutError,
    ConvergenceError,
    ShapeError,
    SingularError,
)

# Eigenvector-matrix condition number beyond which diagonalization is not
# trusted for matrix functions.
COND_LIMIT = 1e8

EPS_BRANCH_DEFAULT = 1e-8


def as_operator(m) -> np.ndarray:
    """Validate and return a square, finite, complex matrix."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ShapeError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ShapeError("matrix entries must be finite")
    return a


def identity_like(m: np.ndarray) -> np.ndarray:
    return np.eye(m.shape[0], dtype=complex)


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues of an operator plus an eigenvector conditioning estimate."""

    eigenvalues: np.ndarray
    conditioning: float


def spectrum_of(m) -> Spectrum:
    """Eigenvalues and the condition number of the eigenvector matrix."""
    a = as_operator(m)
    try:
        w, v = np.linalg.eig(a)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"eigensolver failed: {exc}") from exc
    try:
        cond = float(np.linalg.cond(v))
    except np.linalg.LinAlgError:
        cond = np.inf
    return Spectrum(eigenvalues=w, conditioning=cond)


def op_norm(m) -> float:
    """Operator (spectral) norm: the largest singular value."""
    return float(np.linalg.norm(as_operator(m), 2))


def _apply_spectral(a: np.ndarray, f) -> np.ndarray | None:
    """f(a) via diagonalization, or None if the eigenbasis is ill conditioned."""
    try:
        w, v = np.linalg.eig(a)
    except np.linalg.LinAlgError:
        return None
    try:
        cond = np.linalg.cond(v)
    except np.linalg.LinAlgError:
        return None
    if not np.isfinite(cond) or cond > COND_LIMIT:
        return None
    return v @ (f(w)[:, None] * np.linalg.inv(v))


def mat_exp(m) -> np.ndarray:
    """Matrix exponential exp(M)."""
    a = as_operator(m)
    if not a.any():
        return identity_like(a)
    out = _apply_spectral(a, np.exp)
    if out is None:
        out = scipy.linalg.expm(a)
    if not np.all(np.isfinite(out)):
        raise OverflowError("matrix exponential exceeds floating-point range")
    return out


def branch_distance(eigenvalues: np.ndarray) -> float:
    """Smallest distance from the eigenvalues to the cut (-inf, 0]."""
    w = np.asarray(eigenvalues, dtype=complex)
    d = np.where(w.real > 0.0, np.abs(w), np.abs(w.imag))
    return float(np.min(d)) if d.size else np.inf


def mat_log_principal(m, eps_branch: float = EPS_BRANCH_DEFAULT) -> np.ndarray:
    """Principal matrix logarithm Log(M).

    Refuses input whose spectrum comes within ``eps_branch`` of the closed
    negative real axis, where the principal branch is not usable.
    """
    a = as_operator(m)
    w = np.linalg.eigvals(a)
    dist = branch_distance(w)
    if dist <= eps_branch:
        raise BranchCutError(
            f"eigenvalue within {dist:.3e} of the cut (-inf, 0]; "
            f"threshold {eps_branch:.3e}"
        )
    out = _apply_spectral(a, np.log)
    if out is None:
        out = scipy.linalg.logm(a)
    return np.asarray(out, dtype=complex)


def mat_inv(m, eps_sing_rel: float = 1e-12) -> np.ndarray:
    """Matrix inverse, refusing near-singular input.

    The singularity threshold is relative: smin <= eps_sing_rel * ||M||.
    """
    a = as_operator(m)
    s = np.linalg.svd(a, compute_uv=False)
    if s[-1] <= eps_sing_rel * s[0]:
        raise SingularError(
            f"smallest singular value {s[-1]:.3e} below threshold "
            f"{eps_sing_rel * s[0]:.3e}"
        )
    return np.linalg.inv(a)


def operator_to_json(m) -> str:
    """Serialize a matrix as {"dim": n, "re": [...], "im": [...]} row-major."""
    a = as_operator(m)
    return json.dumps(
        {
            "dim": a.shape[0],
            "re": a.real.ravel().tolist(),
            "im": a.imag.ravel().tolist(),
        }
    )


def operator_from_json(text: str) -> np.ndarray:
    obj = json.loads(text)
    n = int(obj["dim"])
    re = np.asarray(obj["re"], dtype=float)
    im = np.asarray(obj["im"], dtype=float)
    if re.size != n * n or im.size != n * n:
        raise ShapeError(f"fixture claims dim {n} but holds {re.size} entries")
    return as_operator((re + 1j * im).reshape(n, n))
