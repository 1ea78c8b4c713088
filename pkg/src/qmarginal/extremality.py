"""Extreme-point certification for states with a prescribed first marginal.

A state factored as rho = Z Z* (columns scaled eigenvectors) is an extreme
point of the set of states sharing its first marginal exactly when the
family of folded products { [z_i][z_j]* } is linearly independent. The
test stacks the vectorized products into a matrix and inspects its
singular values; a null direction doubles as an explicit dependency
certificate from which a proper convex splitting is built.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidCertificateError
from .linalg import BipartiteState, bipartite, fold, hermitian_eig

INDEP_TOL = 1e-8
MARGINAL_INDEP_TOL = 1e-6
CERT_RESIDUAL_TOL = 1e-7


@dataclass(frozen=True)
class ExtremalityReport:
    """Verdict plus the Gram evidence and, when dependent, a certificate.

    ``certificate`` is a Hermitian r x r matrix H with
    sum_ij H[i,j] [z_i][z_j]* = 0; present exactly when not extreme.
    ``marginal`` flags verdicts that flip between the primary and the
    looser re-check threshold, i.e. numerically borderline inputs.
    """

    is_extreme: bool
    rank: int
    gram_min_eig: float
    certificate: np.ndarray | None
    marginal: bool


def _scaled_factors(state: BipartiteState) -> np.ndarray:
    w, v = hermitian_eig(state.matrix)
    r = state.rank
    return v[:, :r] * np.sqrt(np.clip(w[:r], 0.0, None))


def _stacked_products(z: np.ndarray, m: int, n: int) -> np.ndarray:
    r = z.shape[1]
    folds = [fold(z[:, i], m, n) for i in range(r)]
    rows = np.empty((r * r, n * n), dtype=complex)
    for i in range(r):
        fi = folds[i]
        for j in range(r):
            rows[i * r + j] = (fi @ folds[j].conj().T).reshape(-1)
    return rows


def is_extreme(state: BipartiteState) -> ExtremalityReport:
    """Certify whether a state is extreme among states with its first marginal."""
    z = _scaled_factors(state)
    r = z.shape[1]
    rows = _stacked_products(z, state.m, state.n)
    svals = np.linalg.svd(rows, compute_uv=False)
    gram_max = float(svals[0] ** 2)
    gram_min = float(svals[-1] ** 2) if r * r <= state.n ** 2 else 0.0
    extreme = gram_min > INDEP_TOL * gram_max
    marginal = extreme != (gram_min > MARGINAL_INDEP_TOL * gram_max)
    if extreme:
        return ExtremalityReport(True, r, gram_min, None, marginal)
    u, _, _ = np.linalg.svd(rows, full_matrices=True)
    null = u[:, -1].reshape(r, r)
    sym = null + null.conj().T
    skew = 1j * null - 1j * null.conj().T
    cert = sym if np.linalg.norm(sym) >= np.linalg.norm(skew) else skew
    cert = cert / np.linalg.norm(cert)
    return ExtremalityReport(False, r, gram_min, cert, marginal)


def split_nonextreme(
    state: BipartiteState, certificate: np.ndarray
) -> tuple[BipartiteState, BipartiteState]:
    """Split a non-extreme state into (rho1 + rho2)/2 with rank(rho1) < rank(state).

    Both halves keep the first marginal. The step size 1/max|eig(cert)|
    makes I +- t*cert singular on one side; rho1 takes the singular side.
    """
    cert = np.asarray(certificate, dtype=complex)
    z = _scaled_factors(state)
    r = z.shape[1]
    if cert.shape != (r, r):
        raise InvalidCertificateError(
            f"certificate shape {cert.shape} does not match rank {r}"
        )
    rows = _stacked_products(z, state.m, state.n)
    residual = float(np.abs(cert.reshape(-1) @ rows).max())
    scale = float(np.abs(cert).max()) * float(np.abs(rows).max()) + 1e-300
    if residual > CERT_RESIDUAL_TOL * scale:
        raise InvalidCertificateError(
            f"certificate does not annihilate the factor products (residual {residual:.3e})"
        )
    eta = np.linalg.eigvalsh((cert + cert.conj().T) / 2.0)
    extreme_eig = eta[-1] if abs(eta[-1]) >= abs(eta[0]) else eta[0]
    t = 1.0 / abs(extreme_eig)
    shift = z @ (t * cert) @ z.conj().T
    base = z @ z.conj().T
    plus = base + shift
    minus = base - shift
    singular_first = (minus, plus) if extreme_eig > 0 else (plus, minus)
    rho1 = bipartite(singular_first[0], state.m, state.n)
    rho2 = bipartite(singular_first[1], state.m, state.n)
    return rho1, rho2
