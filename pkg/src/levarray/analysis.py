"""Entanglement classification of the three-particle mechanical steady state.

Dyadic entanglement is the pairwise log-negativity after tracing out the
third particle; triadic entanglement is the log-negativity across each
one-versus-two split of the full mechanical state.  Gated figures of
merit summarize how many pairs or splits are simultaneously entangled,
and a fixed catalog of collective quadratures is scanned for squeezing
below the vacuum level.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import ShapeMismatchError, UnsortedInputError
from .gaussian import (
    FloatArray,
    log_negativity,
    lyapunov_solve,
    quadrature_variance,
    reduce_state,
    symplectic_form,
)
from .system import (
    BogoliubovSpec,
    SystemParams,
    assemble_diffusion,
    assemble_drift,
    couplings_from_bogoliubov,
)

#: Pair labels, ordered cyclically; pair "12" traces out particle 3, etc.
PAIR_LABELS = ("12", "23", "31")

#: One-versus-two split labels of the three-particle state.
SPLIT_LABELS = ("1|23", "2|31", "3|12")

#: Mechanical mode indices (0-based) of each labeled pair.
PAIR_MODES = {"12": (0, 1), "23": (1, 2), "31": (2, 0)}

#: Mechanical mode index (0-based) of the isolated particle of each split.
SPLIT_PARTY = {"1|23": 0, "2|31": 1, "3|12": 2}

#: Absolute negativity below which a bipartition counts as negligible.
GATE_ABS = 1e-3

#: Ratio defining "much smaller than" in the figure-of-merit gates.
GATE_RATIO = 0.05

#: Margin below 1 required before a variance counts as squeezed.
SQUEEZING_TOL = 1e-6


def steady_state(spec: BogoliubovSpec, params: SystemParams) -> FloatArray:
    """Full steady-state covariance matrix of the coupled array.

    Assembles the coupling table, drift, and diffusion for the given
    collective-mode specification and solves the Lyapunov equation.

    Raises
    ------
    NotStableError
        If the assembled drift matrix is not Hurwitz.
    """
    coupling = couplings_from_bogoliubov(spec)
    drift = assemble_drift(coupling, params)
    return lyapunov_solve(drift, assemble_diffusion(params))


def mechanical_block(cov: FloatArray, params: SystemParams) -> FloatArray:
    """Mechanical-mode covariance block of a full steady state."""
    keep = range(params.n_cavities, params.n_cavities + params.n_particles)
    return reduce_state(cov, keep)


def _check_mech(v_mech: FloatArray) -> None:
    if v_mech.shape != (6, 6):
        raise ShapeMismatchError(
            f"expected a 6x6 three-particle block, got shape {v_mech.shape}"
        )


def dyadic_negativities(v_mech: FloatArray) -> dict[str, float]:
    """Log-negativity of each particle pair after tracing out the third."""
    _check_mech(v_mech)
    out = {}
    for label in PAIR_LABELS:
        pair = reduce_state(v_mech, PAIR_MODES[label])
        out[label] = log_negativity(pair, (0,))
    return out


def triadic_negativities(v_mech: FloatArray) -> dict[str, float]:
    """Log-negativity across each one-versus-two split of the full state."""
    _check_mech(v_mech)
    return {
        label: log_negativity(v_mech, (SPLIT_PARTY[label],)) for label in SPLIT_LABELS
    }


def sorted_negativities(labeled: Mapping[str, float]) -> tuple[float, float, float]:
    """Values in descending order; exact ties broken by label for determinism."""
    ordered = sorted(labeled.items(), key=lambda kv: (-kv[1], kv[0]))
    return tuple(v for _, v in ordered)


@dataclass(frozen=True)
class FiguresOfMerit:
    """Gated figures of merit for one arity (pairs or splits).

    ``e3`` is the geometric mean of all three values and is large only
    when all three bipartitions are entangled.  ``e2`` is the geometric
    mean of the top two, reported only when the third value is negligible
    (gate open); ``e1`` is the largest value, reported only when the
    second is negligible.
    """

    arity: int
    e1: float
    e2: float
    e3: float
    e1_gate_open: bool
    e2_gate_open: bool

    def by_count(self, count: int) -> float:
        """Figure of merit for the given number of entangled bipartitions."""
        return {1: self.e1, 2: self.e2, 3: self.e3}[count]


def figures_of_merit(values: Sequence[float], arity: int = 2) -> FiguresOfMerit:
    """Gated figures of merit from descending-sorted negativities.

    The gates implement the requirement that lower-count figures only
    count configurations where the remaining bipartitions are negligible:
    negligible means below ``max(GATE_ABS, GATE_RATIO * figure)``.

    Raises
    ------
    UnsortedInputError
        If the three values are not sorted in descending order.
    """
    if len(values) != 3:
        raise ShapeMismatchError(f"expected three values, got {len(values)}")
    v1, v2, v3 = (float(v) for v in values)
    if not (v1 >= v2 >= v3):
        raise UnsortedInputError(f"values {values} are not sorted descending")
    if v3 < 0.0:
        raise ValueError(f"negativities must be nonnegative: {values}")
    e3 = (v1 * v2 * v3) ** (1.0 / 3.0)
    pair_mean = float(np.sqrt(v1 * v2))
    e2_open = v3 < max(GATE_ABS, GATE_RATIO * pair_mean)
    e1_open = v2 < max(GATE_ABS, GATE_RATIO * v1)
    return FiguresOfMerit(
        arity=arity,
        e1=v1 if e1_open else 0.0,
        e2=pair_mean if e2_open else 0.0,
        e3=e3,
        e1_gate_open=e1_open,
        e2_gate_open=e2_open,
    )


def shared_pair(triadic: Mapping[str, float]) -> str:
    """Pair of particles common to the two most entangled splits.

    When two splits are entangled, the particles they isolate form the
    one pair contained in both entangled bipartitions; that pair can
    inherit dyadic entanglement.
    """
    ordered = sorted(triadic.items(), key=lambda kv: (-kv[1], kv[0]))
    isolated = sorted(SPLIT_PARTY[label] + 1 for label, _ in ordered[:2])
    return {(1, 2): "12", (2, 3): "23", (1, 3): "31"}[tuple(isolated)]


def quadrature_catalog() -> tuple[tuple[str, FloatArray], ...]:
    """Fixed catalog of collective mechanical quadratures to scan.

    Contains all two-particle sums and differences of positions and of
    momenta, all sign patterns of three-particle position and momentum
    sums, and the mixed position/momentum forms ``x_i -+ p_j +- p_k`` for
    cyclic (i, j, k).  Coefficient vectors are unnormalized; variance
    evaluation normalizes them.
    """
    entries: list[tuple[str, FloatArray]] = []

    def vec(terms: Sequence[tuple[str, int, float]]) -> tuple[str, FloatArray]:
        c = np.zeros(6)
        label = ""
        for kind, mode, sign in terms:
            c[2 * mode + (0 if kind == "x" else 1)] = sign
            part = f"{kind}{mode + 1}"
            label += ("-" if sign < 0 else ("+" if label else "")) + part
        return label, c

    for i, j in ((0, 1), (1, 2), (0, 2)):
        for kind in ("x", "p"):
            for sign in (1.0, -1.0):
                entries.append(vec([(kind, i, 1.0), (kind, j, sign)]))
    for kind in ("x", "p"):
        for signs in ((1, 1, 1), (-1, 1, 1), (1, -1, 1), (1, 1, -1)):
            entries.append(vec([(kind, m, float(s)) for m, s in enumerate(signs)]))
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        for sj in (-1.0, 1.0):
            entries.append(vec([("x", i, 1.0), ("p", j, sj), ("p", k, -sj)]))
    return tuple(entries)


_CATALOG = quadrature_catalog()


def all_quadrature_variances(v_mech: FloatArray) -> dict[str, float]:
    """Variance of every catalog quadrature (normalized coefficients)."""
    _check_mech(v_mech)
    return {label: quadrature_variance(v_mech, c) for label, c in _CATALOG}


def squeezing_scan(v_mech: FloatArray) -> tuple[tuple[str, float], ...]:
    """Catalog quadratures squeezed below vacuum, with their variances."""
    return tuple(
        (label, var)
        for label, var in all_quadrature_variances(v_mech).items()
        if var < 1.0 - SQUEEZING_TOL
    )


def collective_mode_occupations(
    v_mech: FloatArray, spec: BogoliubovSpec
) -> tuple[float, float, float]:
    """Effective occupation of each collective mode in a mechanical state.

    Expands ``beta_k = lambda1 b_k^dag + lambda2 b_{k+1} + lambda3 b_{k+2}``
    over the mechanical quadratures and evaluates ``<beta_k^dag beta_k>``
    from the covariance block.  Values below 1 indicate the mode has been
    cooled into the quantum ground-state regime.
    """
    _check_mech(v_mech)
    moment = v_mech / 2.0 + 0.5j * symplectic_form(3)
    out = []
    for k in range(3):
        annih = np.zeros(3)
        creat = np.zeros(3)
        creat[k] = spec.lambda1
        annih[(k + 1) % 3] = spec.lambda2
        annih[(k + 2) % 3] = spec.lambda3
        f = np.zeros(6, dtype=complex)
        for m in range(3):
            f[2 * m] = (annih[m] + creat[m]) / np.sqrt(2.0)
            f[2 * m + 1] = 1j * (annih[m] - creat[m]) / np.sqrt(2.0)
        occ = float(np.real(np.conj(f) @ moment @ f))
        out.append(max(occ, 0.0))
    return tuple(out)


@dataclass(frozen=True)
class EntanglementReport:
    """Full entanglement classification of a three-particle state.

    Holds the labeled dyadic and triadic log-negativities, their sorted
    values, the gated figures of merit for both arities, and the list of
    squeezed catalog quadratures.
    """

    dyadic: dict[str, float]
    triadic: dict[str, float]
    dyadic_sorted: tuple[float, float, float]
    triadic_sorted: tuple[float, float, float]
    dyadic_fom: FiguresOfMerit
    triadic_fom: FiguresOfMerit
    squeezed: tuple[tuple[str, float], ...]

    def flat(self) -> dict[str, float]:
        """Flat record of negativities and figures, keyed by CSV-style names."""
        out: dict[str, float] = {}
        for label in PAIR_LABELS:
            out[f"E_pair_{label}"] = self.dyadic[label]
        for label in SPLIT_LABELS:
            out[f"E_split_{label.replace('|', '_')}"] = self.triadic[label]
        for arity, fom in (("pair", self.dyadic_fom), ("split", self.triadic_fom)):
            out[f"fom_{arity}_E1"] = fom.e1
            out[f"fom_{arity}_E2"] = fom.e2
            out[f"fom_{arity}_E3"] = fom.e3
        return out


def analyze_mechanical_state(
    v_mech: FloatArray, include_squeezing: bool = True
) -> EntanglementReport:
    """Classify dyadic and triadic entanglement of a mechanical state."""
    dyads = dyadic_negativities(v_mech)
    triads = triadic_negativities(v_mech)
    dy_sorted = sorted_negativities(dyads)
    tri_sorted = sorted_negativities(triads)
    return EntanglementReport(
        dyadic=dyads,
        triadic=triads,
        dyadic_sorted=dy_sorted,
        triadic_sorted=tri_sorted,
        dyadic_fom=figures_of_merit(dy_sorted, arity=2),
        triadic_fom=figures_of_merit(tri_sorted, arity=3),
        squeezed=squeezing_scan(v_mech) if include_squeezing else (),
    )
