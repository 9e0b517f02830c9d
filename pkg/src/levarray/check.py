"""Fast self-contained invariant suite behind ``levarray check``.

Each check exercises a structural property that must hold independently
of any published reference value: solver residuals, state physicality,
partial-transpose involution, analytic two-mode-squeezed negativity,
label covariance under cyclic coupling shifts, and optimizer dominance
over a brute-force coupling lattice.  One PASS/FAIL line is printed per
check; the exit status is nonzero if any check fails.
"""

from __future__ import annotations

import numpy as np

from .analysis import (
    dyadic_negativities,
    figures_of_merit,
    mechanical_block,
    steady_state,
    triadic_negativities,
)
from .errors import NotStableError
from .gaussian import (
    log_negativity,
    min_symplectic_eigenvalue,
    partial_transpose,
    symplectic_eigenvalues,
    thermal_state,
    two_mode_squeezed_state,
    vacuum_state,
)
from .optimize import OptimizationProblem, brute_force_verify, optimize_couplings
from .system import (
    BogoliubovSpec,
    SystemParams,
    assemble_diffusion,
    assemble_drift,
    bogoliubov_commutators,
    couplings_from_bogoliubov,
    nonorthogonal_cooling_bound,
)

_SEED = 20260823


def _random_spec(rng: np.random.Generator, g_max: float = 0.4) -> BogoliubovSpec:
    lam1 = float(rng.uniform(0.0, 1.2))
    lam2 = float(rng.uniform(0.0, 0.98) * np.sqrt(1.0 + lam1**2))
    g = tuple(float(v) for v in rng.uniform(0.0, g_max, size=3))
    return BogoliubovSpec.from_lambda12(lam1, lam2, g)


def _random_stable_system(
    rng: np.random.Generator, params: SystemParams
) -> tuple[BogoliubovSpec, np.ndarray, np.ndarray]:
    for _ in range(200):
        spec = _random_spec(rng)
        drift = assemble_drift(couplings_from_bogoliubov(spec), params)
        if float(np.linalg.eigvals(drift).real.max()) < -1e-12:
            return spec, drift, assemble_diffusion(params)
    raise RuntimeError("failed to draw a stable random system")


def check_lyapunov_and_physicality() -> str:
    """Residual and symplectic physicality of 20 random steady states."""
    rng = np.random.default_rng(_SEED)
    params = SystemParams()
    worst_res, worst_nu = 0.0, np.inf
    for _ in range(20):
        spec, drift, diffusion = _random_stable_system(rng, params)
        cov = steady_state(spec, params)
        res = float(np.abs(drift @ cov + cov @ drift.T + diffusion).max())
        bound = 1e-8 * max(1.0, float(np.abs(diffusion).max()))
        if res > bound:
            raise AssertionError(f"residual {res:.3e} exceeds {bound:.3e}")
        nu = min_symplectic_eigenvalue(mechanical_block(cov, params))
        nu_full = min_symplectic_eigenvalue(cov)
        if min(nu, nu_full) < 1.0 - 1e-6:
            raise AssertionError(f"unphysical state: min nu = {min(nu, nu_full)}")
        worst_res = max(worst_res, res / bound)
        worst_nu = min(worst_nu, nu, nu_full)
    return f"20 systems, residual/bound <= {worst_res:.2e}, min nu = {worst_nu:.9f}"


def check_partial_transpose_involution() -> str:
    """Applying the partial transpose twice is the exact identity."""
    rng = np.random.default_rng(_SEED + 1)
    for _ in range(10):
        raw = rng.standard_normal((6, 6))
        cov = raw + raw.T
        party = tuple(rng.choice(3, size=int(rng.integers(1, 3)), replace=False))
        twice = partial_transpose(partial_transpose(cov, party), party)
        if not np.array_equal(twice, cov):
            raise AssertionError("double transpose differs from input")
    return "10 random matrices, bitwise identity"


def check_tmsv_negativity() -> str:
    """Two-mode squeezed vacuum has log-negativity exactly 2r."""
    worst = 0.0
    for r in (0.1, 0.5, 1.0, 2.0):
        cov = two_mode_squeezed_state(r)
        nus = symplectic_eigenvalues(cov)
        if np.abs(nus - 1.0).max() > 1e-8:
            raise AssertionError(f"TMSV spectrum {nus} is not vacuum-like")
        err = abs(log_negativity(cov, (0,)) - 2.0 * r)
        if err > 1e-8:
            raise AssertionError(f"E_N(r={r}) off by {err:.2e}")
        worst = max(worst, err)
    return f"r in {{0.1, 0.5, 1, 2}}, max |E_N - 2r| = {worst:.2e}"


def check_zero_coupling_thermal() -> str:
    """With no coupling the steady state is vacuum (x) thermal exactly."""
    params = SystemParams()
    spec = BogoliubovSpec.from_lambda12(0.3, 0.8, (0.0, 0.0, 0.0))
    cov = steady_state(spec, params)
    expected = np.block(
        [
            [vacuum_state(3), np.zeros((6, 6))],
            [np.zeros((6, 6)), thermal_state(3, float(params.nbar_vec[0]))],
        ]
    )
    rel = float(np.abs(cov - expected).max() / np.abs(expected).max())
    if rel > 1e-8:
        raise AssertionError(f"relative deviation {rel:.3e}")
    return f"relative deviation {rel:.2e}"


def check_permutation_covariance() -> str:
    """Cycling the coupling rates cyclically relabels the negativities."""
    rng = np.random.default_rng(_SEED + 2)
    params = SystemParams()
    pair_cycle = {"12": "23", "23": "31", "31": "12"}
    split_cycle = {"1|23": "2|31", "2|31": "3|12", "3|12": "1|23"}
    worst = 0.0
    for _ in range(5):
        spec, _, _ = _random_stable_system(rng, params)
        shifted = BogoliubovSpec(
            spec.lambda1,
            spec.lambda2,
            spec.lambda3,
            (spec.couplings[2], spec.couplings[0], spec.couplings[1]),
        )
        try:
            v0 = mechanical_block(steady_state(spec, params), params)
            v1 = mechanical_block(steady_state(shifted, params), params)
        except NotStableError:
            continue
        d0, d1 = dyadic_negativities(v0), dyadic_negativities(v1)
        t0, t1 = triadic_negativities(v0), triadic_negativities(v1)
        for label, succ in pair_cycle.items():
            worst = max(worst, abs(d0[label] - d1[succ]))
        for label, succ in split_cycle.items():
            worst = max(worst, abs(t0[label] - t1[succ]))
    if worst > 1e-8:
        raise AssertionError(f"label covariance violated by {worst:.3e}")
    return f"max label mismatch {worst:.2e}"


def check_rotation_invariance() -> str:
    """Single-mode phase-space rotations leave log-negativity unchanged."""
    rng = np.random.default_rng(_SEED + 3)
    params = SystemParams()
    spec, _, _ = _random_stable_system(rng, params)
    v_mech = mechanical_block(steady_state(spec, params), params)
    worst = 0.0
    for mode in range(3):
        theta = float(rng.uniform(0.0, 2.0 * np.pi))
        rot = np.eye(6)
        c, s = np.cos(theta), np.sin(theta)
        rot[2 * mode : 2 * mode + 2, 2 * mode : 2 * mode + 2] = [[c, s], [-s, c]]
        rotated = rot @ v_mech @ rot.T
        for party in ((0,), (1,), (2,), (0, 1)):
            worst = max(
                worst,
                abs(log_negativity(rotated, party) - log_negativity(v_mech, party)),
            )
    if worst > 1e-8:
        raise AssertionError(f"rotation changed negativity by {worst:.3e}")
    return f"max change {worst:.2e}"


def check_figure_gates() -> str:
    """Gate arithmetic of the figures of merit on worked examples."""
    fom = figures_of_merit((0.4, 0.3, 0.2))
    if abs(fom.e3 - 0.024 ** (1.0 / 3.0)) > 1e-12 or fom.e2 != 0.0 or fom.e1 != 0.0:
        raise AssertionError(f"(0.4, 0.3, 0.2) -> {fom}")
    fom = figures_of_merit((0.4, 0.3, 0.0))
    if abs(fom.e2 - np.sqrt(0.12)) > 1e-12 or fom.e1 != 0.0:
        raise AssertionError(f"(0.4, 0.3, 0.0) -> {fom}")
    fom = figures_of_merit((1.8, 0.0, 0.0))
    if fom.e1 != 1.8 or fom.e2 != 0.0 or fom.e3 != 0.0:
        raise AssertionError(f"(1.8, 0, 0) -> {fom}")
    return "three worked examples"


def check_commutators() -> str:
    """Collective-mode commutators match their closed forms."""
    rng = np.random.default_rng(_SEED + 4)
    worst = 0.0
    for _ in range(5):
        spec = _random_spec(rng)
        expect_comm = spec.lambda1 * (spec.lambda2 - spec.lambda3)
        expect_cross = spec.lambda2 * spec.lambda3
        for comm, cross in bogoliubov_commutators(spec).values():
            worst = max(worst, abs(comm - expect_comm), abs(cross - expect_cross))
    if worst > 1e-12:
        raise AssertionError(f"closed-form mismatch {worst:.3e}")
    orth = nonorthogonal_cooling_bound(0.6, np.sqrt(1.36), np.sqrt(1.36), 0.6)
    if abs(orth) > 1e-12:
        raise AssertionError(f"orthogonal modes leave occupation {orth}")
    return f"closed forms to {max(worst, abs(orth)):.2e}"


def check_optimizer_dominance() -> str:
    """Refined optimizer dominates the 0.05 coupling lattice."""
    rng = np.random.default_rng(_SEED + 5)
    margin = np.inf
    for _ in range(3):
        lam1 = float(rng.uniform(0.1, 1.0))
        lam2 = float(rng.uniform(0.1, 0.9) * np.sqrt(1.0 + lam1**2))
        problem = OptimizationProblem(
            lambda1=lam1,
            lambda2=lam2,
            arity=int(rng.choice((2, 3))),
            count=int(rng.choice((1, 2, 3))),
        )
        lattice_value, _ = brute_force_verify(problem, 0.05)
        result = optimize_couplings(problem)
        if result.value < lattice_value - 1e-6:
            raise AssertionError(
                f"optimizer {result.value:.6g} < lattice {lattice_value:.6g}"
            )
        margin = min(margin, result.value - lattice_value)
    return f"3 problems, min margin over lattice {margin:+.2e}"


CHECKS = (
    ("lyapunov-residual-and-physicality", check_lyapunov_and_physicality),
    ("partial-transpose-involution", check_partial_transpose_involution),
    ("tmsv-log-negativity", check_tmsv_negativity),
    ("zero-coupling-thermal-state", check_zero_coupling_thermal),
    ("cyclic-permutation-covariance", check_permutation_covariance),
    ("local-rotation-invariance", check_rotation_invariance),
    ("figure-of-merit-gates", check_figure_gates),
    ("collective-mode-commutators", check_commutators),
    ("optimizer-lattice-dominance", check_optimizer_dominance),
)


def run_checks() -> int:
    """Run every invariant check, printing one PASS/FAIL line per check."""
    failures = 0
    for name, fn in CHECKS:
        try:
            detail = fn()
            print(f"PASS {name}: {detail}")
        except Exception as exc:
            failures += 1
            print(f"FAIL {name}: {exc}")
    if failures:
        print(f"{failures} of {len(CHECKS)} checks failed")
    else:
        print(f"all {len(CHECKS)} checks passed")
    return 1 if failures else 0
