"""Gaussian-state linear algebra on quadrature covariance matrices.

Conventions used throughout:

* Quadratures are ordered mode by mode, ``r = (q_1, p_1, q_2, p_2, ...)``,
  with commutator ``[q, p] = 2i`` so that the vacuum covariance matrix is
  the identity and a thermal mode has variance ``2*nbar + 1``.
* The covariance matrix is the doubled symmetrized second moment,
  ``V_jk = <r_j r_k + r_k r_j> - 2 <r_j><r_k>``.
* A state is physical when every symplectic eigenvalue (modulus of an
  eigenvalue of ``i Omega V``) is at least 1.

All functions are pure and operate on plain ``float64`` arrays, so they
are safe to call concurrently from worker processes.
"""

from __future__ import annotations

from collections.abc import Iterable

import numpy as np
import numpy.typing as npt
import scipy.linalg

from .errors import (
    NotStableError,
    NumericalFailureError,
    ShapeMismatchError,
    SolveFailureError,
    ZeroVectorError,
)

FloatArray = npt.NDArray[np.float64]

#: Tolerance below which a symplectic eigenvalue counts as unphysical.
PHYSICALITY_TOL = 1e-6

#: Spectral abscissa threshold for accepting a drift matrix as Hurwitz.
STABILITY_TOL = -1e-12


def symplectic_form(n_modes: int) -> FloatArray:
    """Block-diagonal symplectic form with one [[0,1],[-1,0]] block per mode."""
    omega = np.zeros((2 * n_modes, 2 * n_modes))
    for m in range(n_modes):
        omega[2 * m, 2 * m + 1] = 1.0
        omega[2 * m + 1, 2 * m] = -1.0
    return omega


def vacuum_state(n_modes: int) -> FloatArray:
    """Covariance matrix of the n-mode vacuum (identity in this convention)."""
    return np.eye(2 * n_modes)


def thermal_state(n_modes: int, nbar: float) -> FloatArray:
    """Covariance matrix of n uncoupled thermal modes with occupation nbar."""
    return (2.0 * nbar + 1.0) * np.eye(2 * n_modes)


def two_mode_squeezed_state(r: float) -> FloatArray:
    """Covariance matrix of a two-mode squeezed vacuum with squeezing r.

    Diagonal entries are cosh(2r); position correlations are +sinh(2r) and
    momentum correlations -sinh(2r).  Its log-negativity across the 1|1
    split is exactly 2r.
    """
    c, s = np.cosh(2.0 * r), np.sinh(2.0 * r)
    return np.array(
        [
            [c, 0.0, s, 0.0],
            [0.0, c, 0.0, -s],
            [s, 0.0, c, 0.0],
            [0.0, -s, 0.0, c],
        ]
    )


def _check_square(mat: FloatArray, name: str) -> int:
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ShapeMismatchError(f"{name} must be square, got shape {mat.shape}")
    if mat.shape[0] % 2 != 0:
        raise ShapeMismatchError(f"{name} dimension must be even, got {mat.shape[0]}")
    return mat.shape[0]


def _check_modes(modes: Iterable[int], n_modes: int) -> list[int]:
    idx = sorted(set(int(m) for m in modes))
    if not idx:
        raise IndexError("mode set must be nonempty")
    if idx[0] < 0 or idx[-1] >= n_modes:
        raise IndexError(f"mode indices {idx} out of range for {n_modes} modes")
    return idx


def lyapunov_solve(drift: FloatArray, diffusion: FloatArray) -> FloatArray:
    """Solve A V + V A^T + N = 0 for the steady-state covariance matrix.

    The equation is vectorized as (A (x) I + I (x) A) vec(V) = -vec(N) and
    solved densely; at the system sizes used here (dim <= 12) this is more
    robust than iterative schemes.  The result is symmetrized.

    Parameters
    ----------
    drift:
        Hurwitz drift matrix A.
    diffusion:
        Symmetric positive semidefinite noise matrix N.

    Returns
    -------
    Covariance matrix V with residual ``max|AV + VA^T + N|`` at most
    ``1e-8 * max(1, max|N|)``.

    Raises
    ------
    NotStableError
        If any eigenvalue of A has real part >= -1e-12.
    SolveFailureError
        If the linear system is singular or the residual is unacceptable.
    """
    n = _check_square(drift, "drift")
    if diffusion.shape != (n, n):
        raise ShapeMismatchError(
            f"diffusion shape {diffusion.shape} does not match drift dimension {n}"
        )
    eigs = np.linalg.eigvals(drift)
    if float(eigs.real.max()) >= STABILITY_TOL:
        raise NotStableError(
            f"drift spectral abscissa {eigs.real.max():.3e} is not below {STABILITY_TOL}"
        )
    ident = np.eye(n)
    system = np.kron(drift, ident) + np.kron(ident, drift)
    try:
        lu_piv = scipy.linalg.lu_factor(system, check_finite=False)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise SolveFailureError(f"Lyapunov linear system is singular: {exc}") from exc

    def residual_of(cov: FloatArray) -> FloatArray:
        return drift @ cov + cov @ drift.T + diffusion

    cov = scipy.linalg.lu_solve(lu_piv, -diffusion.reshape(-1)).reshape(n, n)
    cov = 0.5 * (cov + cov.T)
    bound = 1e-8 * max(1.0, float(np.abs(diffusion).max()))
    res = residual_of(cov)
    # A few rounds of iterative refinement handle the stiff damping
    # hierarchy (gamma ~ 1e-10 against couplings ~ 0.1).
    for _ in range(3):
        if float(np.abs(res).max()) <= bound:
            break
        delta = scipy.linalg.lu_solve(lu_piv, -res.reshape(-1)).reshape(n, n)
        cov = cov + 0.5 * (delta + delta.T)
        res = residual_of(cov)
    residual = float(np.abs(res).max())
    if not residual <= bound or not np.isfinite(residual):
        raise SolveFailureError(f"Lyapunov residual {residual:.3e} exceeds {bound:.3e}")
    return cov


def symplectic_eigenvalues(cov: FloatArray) -> FloatArray:
    """Moduli of the eigenvalues of i Omega V, one per mode, ascending.

    Works for physical covariance matrices and their partial transposes.
    """
    n = _check_square(cov, "covariance")
    omega = symplectic_form(n // 2)
    try:
        eigs = np.linalg.eigvals(1j * omega @ cov)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(f"eigen-decomposition failed: {exc}") from exc
    moduli = np.sort(np.abs(eigs))
    # Eigenvalues come in +/- pairs with equal modulus; keep one per pair.
    return moduli[0::2]


def min_symplectic_eigenvalue(cov: FloatArray) -> float:
    """Smallest symplectic eigenvalue of a covariance matrix."""
    return float(symplectic_eigenvalues(cov)[0])


def is_physical(cov: FloatArray, tol: float = PHYSICALITY_TOL) -> bool:
    """Whether all symplectic eigenvalues are >= 1 - tol."""
    return min_symplectic_eigenvalue(cov) >= 1.0 - tol


def partial_transpose(cov: FloatArray, party: Iterable[int]) -> FloatArray:
    """Flip the sign of momentum rows and columns of the given modes.

    Applying the operation twice returns the input exactly.
    """
    n = _check_square(cov, "covariance")
    idx = _check_modes(party, n // 2)
    signs = np.ones(n)
    for m in idx:
        signs[2 * m + 1] = -1.0
    return cov * np.outer(signs, signs)


def reduce_state(cov: FloatArray, keep: Iterable[int]) -> FloatArray:
    """Covariance matrix of the subsystem formed by the kept modes."""
    n = _check_square(cov, "covariance")
    idx = _check_modes(keep, n // 2)
    rows = [2 * m + o for m in idx for o in (0, 1)]
    return cov[np.ix_(rows, rows)]


def log_negativity(
    cov: FloatArray,
    party_a: Iterable[int],
    party_b: Iterable[int] | None = None,
) -> float:
    """Logarithmic negativity of a bipartition of a Gaussian state.

    Computes ``sum(max(0, -ln nu))`` over the symplectic eigenvalues of the
    partial transpose with respect to ``party_a``.  For 1x1 and 1x2 splits
    a zero value is necessary and sufficient for separability.

    Parameters
    ----------
    cov:
        Covariance matrix of the full state.
    party_a:
        Mode indices of the transposed party.
    party_b:
        Mode indices of the second party; defaults to the complement of
        ``party_a``.  Must be disjoint from ``party_a``.
    """
    n_modes = _check_square(cov, "covariance") // 2
    set_a = set(_check_modes(party_a, n_modes))
    if party_b is None:
        set_b = set(range(n_modes)) - set_a
        if not set_b:
            raise IndexError("party_a covers all modes; nothing to bipartition")
    else:
        set_b = set(_check_modes(party_b, n_modes))
    if set_a & set_b:
        raise IndexError(f"parties overlap: {sorted(set_a & set_b)}")
    union = sorted(set_a | set_b)
    sub = reduce_state(cov, union) if len(union) < n_modes else cov
    local_a = [union.index(m) for m in sorted(set_a)]
    nus = symplectic_eigenvalues(partial_transpose(sub, local_a))
    with np.errstate(divide="ignore"):
        log_nus = np.log(nus)
    return float(np.sum(np.maximum(0.0, -log_nus)))


def quadrature_variance(cov: FloatArray, coeffs: Iterable[float]) -> float:
    """Variance of a collective quadrature c . r for unit-normalized c.

    The coefficient vector spans all quadratures of the state in the same
    (q, p) interleaved order as the covariance matrix; it is normalized
    internally.  A value below 1 means squeezing below the vacuum level.
    """
    n = _check_square(cov, "covariance")
    c = np.asarray(list(coeffs), dtype=float)
    if c.shape != (n,):
        raise ShapeMismatchError(f"coefficient vector length {c.size} != dimension {n}")
    norm = float(np.linalg.norm(c))
    if norm == 0.0:
        raise ZeroVectorError("coefficient vector is identically zero")
    c = c / norm
    return float(c @ cov @ c)


def min_variance_quadrature(
    cov: FloatArray, modes: Iterable[int] | None = None
) -> tuple[float, FloatArray]:
    """Smallest quadrature variance over a mode subset and its direction.

    Returns the minimum of ``c V c`` over unit coefficient vectors c
    supported on the given modes (all modes by default), which is the
    smallest eigenvalue of the reduced covariance block, together with the
    corresponding unit eigenvector.
    """
    n_modes = _check_square(cov, "covariance") // 2
    sub = cov if modes is None else reduce_state(cov, modes)
    try:
        vals, vecs = np.linalg.eigh(sub)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(f"eigen-decomposition failed: {exc}") from exc
    return float(vals[0]), vecs[:, 0].copy()
