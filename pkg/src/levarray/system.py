"""Construction of the coupled cavity/nanoparticle array dynamics.

Builds coupling tables from cyclic Bogoliubov mode specifications, and
assembles the drift and diffusion matrices whose Lyapunov fixed point is
the steady-state covariance matrix.  All rates are expressed in units of
the mechanical frequency ``omega_m = 1``; the rotating-frame dynamics has
no diagonal frequency blocks.

Quadrature ordering matches :mod:`levarray.gaussian`: cavity modes first,
``(X_1, Y_1, ..., X_Nc, Y_Nc)``, then mechanical modes
``(x_1, p_1, ..., x_Nm, p_Nm)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NotNormalizedError, ShapeMismatchError
from .gaussian import STABILITY_TOL, FloatArray

#: Tolerance on the Bogoliubov normalization -l1^2 + l2^2 + l3^2 = 1.
NORMALIZATION_TOL = 1e-12


def _per_mode(value: float | tuple[float, ...], n: int, name: str) -> tuple[float, ...]:
    """Broadcast a scalar rate to a per-mode tuple and validate it."""
    if isinstance(value, (int, float)):
        vec = (float(value),) * n
    else:
        vec = tuple(float(v) for v in value)
        if len(vec) != n:
            raise ShapeMismatchError(f"{name} has {len(vec)} entries, expected {n}")
    if any(v < 0.0 for v in vec) or (name != "nbar" and any(v <= 0.0 for v in vec)):
        raise ValueError(f"{name} entries must be positive (nbar may be zero): {vec}")
    return vec


@dataclass(frozen=True)
class SystemParams:
    """Physical parameters of the cavity/particle array.

    Rates may be given as scalars (applied to every mode, the default
    configuration) or as per-mode tuples for asymmetry studies.

    Attributes
    ----------
    n_cavities, n_particles:
        Number of cavity and mechanical modes.
    kappa:
        Cavity amplitude decay rate(s), units of omega_m.
    gamma:
        Mechanical damping rate(s), units of omega_m (1 / quality factor).
    nbar:
        Mean thermal phonon occupation(s) of the mechanical baths.
    """

    n_cavities: int = 3
    n_particles: int = 3
    kappa: float | tuple[float, ...] = 0.4
    gamma: float | tuple[float, ...] = 2e-10
    nbar: float | tuple[float, ...] = 2e7

    def __post_init__(self) -> None:
        if self.n_cavities < 1 or self.n_particles < 1:
            raise ValueError("need at least one cavity and one particle")
        _per_mode(self.kappa, self.n_cavities, "kappa")
        _per_mode(self.gamma, self.n_particles, "gamma")
        _per_mode(self.nbar, self.n_particles, "nbar")

    @property
    def kappa_vec(self) -> FloatArray:
        return np.array(_per_mode(self.kappa, self.n_cavities, "kappa"))

    @property
    def gamma_vec(self) -> FloatArray:
        return np.array(_per_mode(self.gamma, self.n_particles, "gamma"))

    @property
    def nbar_vec(self) -> FloatArray:
        return np.array(_per_mode(self.nbar, self.n_particles, "nbar"))

    @property
    def n_modes(self) -> int:
        return self.n_cavities + self.n_particles

    @property
    def dim(self) -> int:
        return 2 * self.n_modes


@dataclass(frozen=True)
class BogoliubovSpec:
    """Cyclic collective-mode parametrization and per-mode coupling rates.

    The three collective modes are
    ``beta_k = lambda1 * b_k^dag + lambda2 * b_{k+1} + lambda3 * b_{k+2}``
    (indices cyclic), each coupled to its own cavity mode at rate
    ``couplings[k]``.  The coefficients must satisfy the bosonic
    normalization ``-lambda1^2 + lambda2^2 + lambda3^2 = 1``.
    """

    lambda1: float
    lambda2: float
    lambda3: float
    couplings: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self) -> None:
        defect = -self.lambda1**2 + self.lambda2**2 + self.lambda3**2 - 1.0
        if abs(defect) > NORMALIZATION_TOL:
            raise NotNormalizedError(
                f"-l1^2 + l2^2 + l3^2 = {1.0 + defect!r} differs from 1 "
                f"by more than {NORMALIZATION_TOL}"
            )
        object.__setattr__(self, "couplings", tuple(float(g) for g in self.couplings))
        if len(self.couplings) != 3:
            raise ShapeMismatchError("couplings must have exactly three entries")
        if any(g < 0.0 for g in self.couplings):
            raise ValueError(f"coupling rates must be nonnegative: {self.couplings}")

    @classmethod
    def from_lambda12(
        cls, lambda1: float, lambda2: float, couplings: tuple[float, float, float]
    ) -> "BogoliubovSpec":
        """Complete (lambda1, lambda2) with the nonnegative root for lambda3.

        Raises
        ------
        NotNormalizedError
            If ``1 + lambda1^2 - lambda2^2 < 0`` so no real lambda3 exists.
        """
        disc = 1.0 + lambda1**2 - lambda2**2
        if disc < 0.0:
            raise NotNormalizedError(
                f"no real lambda3 for lambda1={lambda1}, lambda2={lambda2}"
            )
        return cls(lambda1, lambda2, math.sqrt(disc), couplings)

    @classmethod
    def two_particle(
        cls, lambda1: float, couplings: tuple[float, float, float]
    ) -> "BogoliubovSpec":
        """Two-particle variant: lambda3 = 0, lambda2 = sqrt(1 + lambda1^2).

        Each collective mode then mixes only two neighboring particles,
        ``beta_k = lambda1 * b_k^dag + lambda2 * b_{k+1}``.
        """
        return cls(lambda1, math.sqrt(1.0 + lambda1**2), 0.0, couplings)


def lambda_feasible(lambda1: float, lambda2: float) -> bool:
    """Whether (lambda1, lambda2) admits a real lambda3."""
    return 1.0 + lambda1**2 - lambda2**2 >= 0.0


@dataclass(frozen=True, eq=False)
class CouplingMatrix:
    """Beam-splitter and two-mode-squeezing rates between particles and cavities.

    ``g_minus[j, k]`` (``g_plus[j, k]``) is the beam-splitter (two-mode
    squeezing) rate between particle j and cavity k.  At most one of the
    two is nonzero per pair: each scattered sideband drives one process.
    """

    g_minus: FloatArray
    g_plus: FloatArray

    def __post_init__(self) -> None:
        gm = np.array(self.g_minus, dtype=float)
        gp = np.array(self.g_plus, dtype=float)
        if gm.shape != gp.shape:
            raise ShapeMismatchError(
                f"g_minus shape {gm.shape} != g_plus shape {gp.shape}"
            )
        if np.any((gm != 0.0) & (gp != 0.0)):
            raise ValueError("g_minus and g_plus overlap on at least one (j, k) pair")
        gm.flags.writeable = False
        gp.flags.writeable = False
        object.__setattr__(self, "g_minus", gm)
        object.__setattr__(self, "g_plus", gp)

    @property
    def n_particles(self) -> int:
        return self.g_minus.shape[0]

    @property
    def n_cavities(self) -> int:
        return self.g_minus.shape[1]


def couplings_from_bogoliubov(spec: BogoliubovSpec) -> CouplingMatrix:
    """Expand a cyclic Bogoliubov specification into sideband coupling rates.

    Cavity k cools collective mode k, which fixes exactly nine rates:
    ``g_plus[k, k] = lambda1 * G_k`` and beam-splitter rates
    ``g_minus[k+1, k] = lambda2 * G_k``, ``g_minus[k+2, k] = lambda3 * G_k``
    (particle indices cyclic).  All other entries are zero.
    """
    gm = np.zeros((3, 3))
    gp = np.zeros((3, 3))
    for k, g in enumerate(spec.couplings):
        gp[k, k] = spec.lambda1 * g
        gm[(k + 1) % 3, k] = spec.lambda2 * g
        gm[(k + 2) % 3, k] = spec.lambda3 * g
    return CouplingMatrix(g_minus=gm, g_plus=gp)


def effective_coupling(coupling: CouplingMatrix, cavity: int) -> float:
    """Squared effective rate G^2 = sum_j (g_minus^2 - g_plus^2) for one cavity.

    Negative values signal a two-mode-squeezing dominated, unstable column.
    """
    gm = coupling.g_minus[:, cavity]
    gp = coupling.g_plus[:, cavity]
    return float(np.sum(gm**2) - np.sum(gp**2))


def cooperativity(coupling: CouplingMatrix, cavity: int, params: SystemParams) -> float:
    """Collective cooperativity C = 4 G^2 / (kappa * gamma * nbar) of one cavity.

    Returns ``math.inf`` when the thermal occupation is zero.  C > 1 marks
    the regime where the addressed collective mode can be cooled near its
    ground state.
    """
    g2 = effective_coupling(coupling, cavity)
    kappa = float(params.kappa_vec[cavity])
    gamma_nbar = float(np.mean(params.gamma_vec * params.nbar_vec))
    if gamma_nbar == 0.0:
        return math.inf if g2 > 0.0 else 0.0
    return 4.0 * g2 / (kappa * gamma_nbar)


def _coupling_block(gm: float, gp: float) -> FloatArray:
    return np.array([[0.0, gm - gp], [-(gm + gp), 0.0]])


def assemble_drift(coupling: CouplingMatrix, params: SystemParams) -> FloatArray:
    """Drift matrix A of the linearized rotating-frame dynamics.

    Diagonal blocks are pure damping, ``-kappa/2`` per cavity quadrature
    and ``-gamma/2`` per mechanical quadrature.  Each particle/cavity pair
    contributes the same 2x2 block ``[[0, g- - g+], [-(g- + g+), 0]]`` at
    both mirrored off-diagonal positions.
    """
    nc, nm = coupling.n_cavities, coupling.n_particles
    if nc != params.n_cavities or nm != params.n_particles:
        raise ShapeMismatchError(
            f"coupling is {nm} particles x {nc} cavities, params declare "
            f"{params.n_particles} x {params.n_cavities}"
        )
    dim = params.dim
    drift = np.zeros((dim, dim))
    for k, kappa in enumerate(params.kappa_vec):
        drift[2 * k : 2 * k + 2, 2 * k : 2 * k + 2] = -0.5 * kappa * np.eye(2)
    off = 2 * nc
    for j, gamma in enumerate(params.gamma_vec):
        sl = slice(off + 2 * j, off + 2 * j + 2)
        drift[sl, sl] = -0.5 * gamma * np.eye(2)
    for j in range(nm):
        for k in range(nc):
            block = _coupling_block(coupling.g_minus[j, k], coupling.g_plus[j, k])
            drift[2 * k : 2 * k + 2, off + 2 * j : off + 2 * j + 2] = block
            drift[off + 2 * j : off + 2 * j + 2, 2 * k : 2 * k + 2] = block
    return drift


def assemble_diffusion(params: SystemParams) -> FloatArray:
    """Diagonal diffusion matrix N of the input noise.

    Cavity quadratures carry kappa (vacuum optical input); mechanical
    quadratures carry gamma * (2 nbar + 1) (thermal bath).
    """
    cavity = np.repeat(params.kappa_vec, 2)
    mech = np.repeat(params.gamma_vec * (2.0 * params.nbar_vec + 1.0), 2)
    return np.diag(np.concatenate([cavity, mech]))


@dataclass(frozen=True)
class StabilityReport:
    """Diagnostic summary of the drift spectrum and effective couplings."""

    stable: bool
    spectral_abscissa: float
    effective_couplings: tuple[float, ...] = field(default=())


def stability_check(drift: FloatArray, coupling: CouplingMatrix | None = None) -> StabilityReport:
    """Evaluate dynamical stability of an assembled drift matrix.

    The system is stable when every eigenvalue real part lies below
    -1e-12.  When a coupling table is supplied, the per-cavity squared
    effective rates are included for diagnosis (negative G^2 indicates a
    squeezing-dominated column).
    """
    abscissa = float(np.linalg.eigvals(drift).real.max())
    g2 = ()
    if coupling is not None:
        g2 = tuple(effective_coupling(coupling, k) for k in range(coupling.n_cavities))
    return StabilityReport(
        stable=abscissa < STABILITY_TOL,
        spectral_abscissa=abscissa,
        effective_couplings=g2,
    )


def _mode_vectors(spec: BogoliubovSpec) -> tuple[FloatArray, FloatArray]:
    """Coefficient rows (u on b, w on b^dag) of each collective mode."""
    u = np.zeros((3, 3))
    w = np.zeros((3, 3))
    for k in range(3):
        w[k, k] = spec.lambda1
        u[k, (k + 1) % 3] = spec.lambda2
        u[k, (k + 2) % 3] = spec.lambda3
    return u, w


def bogoliubov_commutators(spec: BogoliubovSpec) -> dict[tuple[int, int], tuple[float, float]]:
    """Pairwise commutators of the collective modes.

    Returns ``{(a, b): ([beta_a, beta_b], [beta_a, beta_b^dag])}`` for the
    cyclically ordered pairs (0, 1), (1, 2), (2, 0).  By the cyclic
    symmetry these equal ``lambda1 * (lambda2 - lambda3)`` and
    ``lambda2 * lambda3`` for every such pair (reversing a pair flips the
    sign of the first form); nonzero values mean the modes are not
    mutually orthogonal.
    """
    u, w = _mode_vectors(spec)
    out: dict[tuple[int, int], tuple[float, float]] = {}
    for a in range(3):
        b = (a + 1) % 3
        comm = float(u[a] @ w[b] - w[a] @ u[b])
        cross = float(u[a] @ u[b] - w[a] @ w[b])
        out[(a, b)] = (comm, cross)
    return out


def nonorthogonal_cooling_bound(
    u1: float, u2: float, v1: float, v2: float, n1: float = 0.0, n2: float = 0.0
) -> float:
    """Residual occupation of a second collective mode after cooling the first.

    For two two-particle collective modes ``beta_1 = u1 b_1^dag + u2 b_2``
    and ``beta_2 = v1 b_1 + v2 b_2^dag``, perfectly cooling beta_1 leaves
    beta_2 with occupation

    ``v1^2 (1 - u1 v2 / (u2 v1)) n1 + v2^2 (1 - u2 v1 / (u1 v2)) n2
    + v2^2 (1 - u1 v1 / (u2 v2))``

    given initial occupations n1, n2.  The result vanishes only when
    ``u1 v1 = u2 v2``, which is exactly the orthogonality condition of the
    two modes; simultaneous ground-state cooling is otherwise impossible.

    Raises
    ------
    ZeroDivisionError
        If any of the four coefficients is zero.
    """
    if 0.0 in (u1, u2, v1, v2):
        raise ZeroDivisionError("all four Bogoliubov coefficients must be nonzero")
    return (
        v1**2 * (1.0 - u1 * v2 / (u2 * v1)) * n1
        + v2**2 * (1.0 - u2 * v1 / (u1 * v2)) * n2
        + v2**2 * (1.0 - u1 * v1 / (u2 * v2))
    )
