"""Distance and quasidistance functionals on truncated states.

Covers the pure-state distances (Fubini-Study, minimal, Wootters
angle), the trace-norm distance, the Bures-Uhlmann distance, the
Hilbert-Schmidt distance with its f(rho) modifications and moment-series
form, the polarized (reference-operator weighted) variants, and the two
variance-like quasidistances.  All functions are pure and operate on
``DensityOperator`` / ``FockVector`` values of equal dimension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatchError,
    NumericalToleranceError,
    StateValidationError,
)
from .fock_core import (
    DensityOperator,
    FockVector,
    _psd_sqrt,
    annihilation,
    hermitian_sqrt,
    number_diagonal,
    trace_norm,
    trace_product,
)
from .states import MomentTable

# Squared distances are clamped at zero before the square root; a clamp
# larger than this is reported as a numerical warning.
CLAMP_WARN = 1e-9


@dataclass(frozen=True)
class PolarizationOperator:
    """Diagonal positive reference operator weighting a distance."""

    kind: str
    diag: np.ndarray

    def __post_init__(self):
        if self.kind not in ("identity", "number", "custom_diagonal"):
            raise StateValidationError(f"unknown polarization kind {self.kind!r}")
        d = np.array(self.diag, dtype=float)
        if d.ndim != 1 or (d < 0).any():
            raise StateValidationError("polarization diagonal must be 1-d and nonnegative")
        d.setflags(write=False)
        object.__setattr__(self, "diag", d)

    @property
    def dim(self) -> int:
        return self.diag.size

    def sqrt_diag(self) -> np.ndarray:
        # Z^{1/2} of a diagonal operator is the entrywise square root.
        return np.sqrt(self.diag)


def identity_polarization(dim: int) -> PolarizationOperator:
    return PolarizationOperator("identity", np.ones(dim))


def number_polarization(dim: int) -> PolarizationOperator:
    return PolarizationOperator("number", number_diagonal(dim))


@dataclass
class DistanceReport:
    """A metric value plus the bookkeeping the CLI prints."""

    kind: str
    value: float
    dim: int
    clamped: float = 0.0  # size of any negative-square clamp that was applied
    flags: list = field(default_factory=list)


def _clamped_sqrt(sq: float, report: DistanceReport | None = None) -> float:
    if sq < 0.0:
        if -sq > CLAMP_WARN:
            if report is not None:
                report.flags.append("clamp")
            else:
                raise NumericalToleranceError(f"squared distance {sq:.3e} below -{CLAMP_WARN}")
        if report is not None:
            report.clamped = max(report.clamped, -sq)
        sq = 0.0
    return math.sqrt(sq)


def _check_dims(r1, r2):
    if r1.dim != r2.dim:
        raise DimensionMismatchError(f"dims {r1.dim} != {r2.dim}")


# ---------------------------------------------------------------------------
# pure-state distances
# ---------------------------------------------------------------------------

def pure_state_distance(a: FockVector, b: FockVector, kind: str = "fubini_study") -> float:
    """Distance between rays: fubini_study, minimal, or wootters."""
    _check_dims(a, b)
    ov = min(abs(a.overlap(b)), 1.0)
    if kind == "fubini_study":
        return math.sqrt(max(2.0 * (1.0 - ov * ov), 0.0))
    if kind == "minimal":
        return math.sqrt(max(2.0 * (1.0 - ov), 0.0))
    if kind == "wootters":
        return math.acos(ov)
    raise StateValidationError(f"unknown pure-state distance kind {kind!r}")


# ---------------------------------------------------------------------------
# density-operator distances
# ---------------------------------------------------------------------------

def hilbert_schmidt(r1: DensityOperator, r2: DensityOperator) -> float:
    """sqrt(Tr rho1^2 + Tr rho2^2 - 2 Tr rho1 rho2), at most sqrt(2)."""
    _check_dims(r1, r2)
    sq = trace_product(r1, r1) + trace_product(r2, r2) - 2.0 * trace_product(r1, r2)
    d = _clamped_sqrt(sq)
    if d > math.sqrt(2.0) + 1e-9:
        raise NumericalToleranceError(f"Hilbert-Schmidt distance {d!r} exceeds sqrt(2)")
    return d


def jmg_distance(r1: DensityOperator, r2: DensityOperator) -> float:
    """Half the trace norm of rho1 - rho2; equals the best projector test."""
    _check_dims(r1, r2)
    return 0.5 * trace_norm(r1.mat - r2.mat)


def bures_uhlmann(r1: DensityOperator, r2: DensityOperator) -> float:
    """sqrt(2 - 2 Tr sqrt(sqrt(rho1) rho2 sqrt(rho1))).

    The trace of the nested root equals the nuclear norm of
    sqrt(rho2) sqrt(rho1), which is how it is evaluated: singular
    values are nonnegative by construction, so eigensolver noise in a
    null space cannot get amplified by the outer square root.
    """
    _check_dims(r1, r2)
    s1 = _psd_sqrt(r1.mat, threshold_null=True)
    s2 = _psd_sqrt(r2.mat, threshold_null=True)
    fid_root = float(np.linalg.svd(s2 @ s1, compute_uv=False).sum())
    return _clamped_sqrt(2.0 - 2.0 * fid_root)


def _matrix_power_psd(rho: DensityOperator, p: float) -> np.ndarray:
    # null-space eigenvalue noise is thresholded away, matching the
    # Bures-Uhlmann evaluation so the commuting-pair identity holds
    # to close to machine precision
    vals, vecs = np.linalg.eigh(rho.mat)
    tiny = rho.dim * np.finfo(float).eps * max(float(vals[-1]), 0.0)
    powed = np.where(vals > tiny, np.clip(vals, 0.0, None), 0.0) ** p
    out = (vecs * powed) @ vecs.conj().T
    return 0.5 * (out + out.conj().T)


def modified_hs(r1: DensityOperator, r2: DensityOperator, p: float) -> float:
    """Hilbert-Schmidt distance between rho1^p and rho2^p, p in (0, 1].

    p = 1 is the plain Hilbert-Schmidt distance; p = 1/2 agrees with
    the Bures-Uhlmann distance whenever the operators commute.
    """
    if not 0.0 < p <= 1.0:
        raise StateValidationError(f"power p must lie in (0, 1], got {p!r}")
    _check_dims(r1, r2)
    diff = _matrix_power_psd(r1, p) - _matrix_power_psd(r2, p)
    return float(np.linalg.norm(diff))


# ---------------------------------------------------------------------------
# polarized distances and quasidistances
# ---------------------------------------------------------------------------

def _check_polarization(r1: DensityOperator, z: PolarizationOperator):
    if z.dim != r1.dim:
        raise DimensionMismatchError(f"polarization dim {z.dim} != state dim {r1.dim}")


def polarized(r1: DensityOperator, r2: DensityOperator, z: PolarizationOperator) -> float:
    """sqrt(Tr(Z [rho1 - rho2]^2)); the identity Z recovers Hilbert-Schmidt."""
    _check_dims(r1, r2)
    _check_polarization(r1, z)
    delta = r1.mat - r2.mat
    sq = float((z.diag * np.einsum("ij,ji->i", delta, delta).real).sum())
    if sq < -1e-10:
        raise NumericalToleranceError(f"polarized squared distance {sq:.3e} < -1e-10")
    return math.sqrt(max(sq, 0.0))


def polarized_sqrt(r1: DensityOperator, r2: DensityOperator, z: PolarizationOperator) -> float:
    """sqrt(Tr(Z [sqrt(rho1) - sqrt(rho2)]^2)); matches `polarized` on pure pairs."""
    _check_dims(r1, r2)
    _check_polarization(r1, z)
    delta = hermitian_sqrt(r1) - hermitian_sqrt(r2)
    sq = float((z.diag * np.einsum("ij,ji->i", delta, delta).real).sum())
    if sq < -1e-10:
        raise NumericalToleranceError(f"polarized squared distance {sq:.3e} < -1e-10")
    return math.sqrt(max(sq, 0.0))


def quasidistance_DZ(r1: DensityOperator, r2: DensityOperator, z: PolarizationOperator) -> float:
    """Variance-like functional Tr(dZd) - Tr(d Z^{1/2} d)^2 / Tr(d^2), d = rho1-rho2.

    Identical states make the ratio 0/0; by convention the value is then 0.
    """
    _check_dims(r1, r2)
    _check_polarization(r1, z)
    delta = r1.mat - r2.mat
    dd = np.einsum("ij,ji->i", delta, delta).real
    t_norm = float(dd.sum())
    if t_norm < 1e-14:
        return 0.0
    t_z = float((z.diag * dd).sum())
    t_zroot = float((z.sqrt_diag() * dd).sum())
    sq = t_z - t_zroot * t_zroot / t_norm
    return math.sqrt(max(sq, 0.0))


def quasidistance_Da(r1: DensityOperator, r2: DensityOperator) -> float:
    """Quasidistance with the lowering-operator cross term, d = rho1-rho2."""
    _check_dims(r1, r2)
    delta = r1.mat - r2.mat
    d2 = delta @ delta
    t_norm = float(np.trace(d2).real)
    if t_norm < 1e-14:
        return 0.0
    t_n = float((number_diagonal(r1.dim) * d2.diagonal().real).sum())
    t_a = complex(np.einsum("ij,ji->", annihilation(r1.dim), d2))
    sq = t_n - abs(t_a) ** 2 / t_norm
    return math.sqrt(max(sq, 0.0))


# ---------------------------------------------------------------------------
# Hilbert-Schmidt distance from moments, and neighbour-state bounds
# ---------------------------------------------------------------------------

def hs_from_moments(m1: MomentTable, m2: MomentTable, s_max: int):
    """Squared-distance series over moment differences, order by order.

    Returns ``(distance, partial_squared)`` where ``partial_squared[s]``
    is the partial sum of the squared distance through order s.  The
    distance is the square root of the final partial sum clamped at 0.
    """
    if m1.cutoff != m2.cutoff:
        raise DimensionMismatchError("moment tables have different cutoffs")
    if s_max > m1.cutoff:
        raise StateValidationError(f"s_max {s_max} exceeds table cutoff {m1.cutoff}")
    dm = m1.m - m2.m
    partials = np.zeros(s_max + 1)
    total = 0.0
    for s in range(s_max + 1):
        k = np.arange(s + 1)
        binom = np.array([math.comb(s, int(i)) for i in k], dtype=float)
        sign = (-1.0) ** k
        # coefficient (-1)^{s+k+l} s! / (k!(s-k)! l!(s-l)!) = (-1)^s/s! * C(s,k)C(s,l) (-1)^{k+l}
        w = sign * binom
        block = dm[: s + 1, : s + 1]
        flipped = dm[s::-1, s::-1]  # entry (k, l) holds dM^{(s-k, s-l)}
        term = np.einsum("k,l,kl,kl->", w, w, block, flipped)
        total += ((-1.0) ** s / math.factorial(s)) * float(term.real)
        partials[s] = total
    return math.sqrt(max(total, 0.0)), partials


@dataclass(frozen=True)
class HSBounds:
    """Upper bounds on the Hilbert-Schmidt distance to a number state."""

    b0: float
    bn: float
    bvar: float


def hs_bounds(rho: DensityOperator, n: int) -> HSBounds:
    """The three neighbour-state bounds for the reference state |n><n|.

    b0 = sqrt(2 nbar) applies only at n = 0; bn and bvar bound the
    distance to |n><n| for any n below the truncation.
    """
    if not 0 <= n < rho.dim:
        raise StateValidationError(f"need 0 <= n < dim, got n={n}")
    p = rho.mat.diagonal().real
    lv = np.arange(rho.dim)
    nbar = float((lv * p).sum())
    n2bar = float((lv * lv * p).sum())
    var = n2bar - nbar * nbar
    b0 = math.sqrt(2.0 * nbar)
    bn = math.sqrt(2.0 * max(p[0] + nbar - n * p[n], 0.0))
    bvar = math.sqrt(2.0 * max(var + (n - nbar) ** 2, 0.0))
    return HSBounds(b0=b0, bn=bn, bvar=bvar)


# ---------------------------------------------------------------------------
# metric dispatch (shared by the CLI and the test harness)
# ---------------------------------------------------------------------------

METRIC_NAMES = ("fs", "minimal", "wootters", "hs", "jmg", "bu", "hs-p", "dn", "dn-sqrt", "DZ", "Da")


def evaluate_metric(name, a, b, p: float = 0.5) -> DistanceReport:
    """Compute a named metric between two states.

    ``a`` and ``b`` are FockVector or DensityOperator values of equal
    dimension.  The pure-only metrics (fs, minimal, wootters) reject
    density-operator input.
    """
    from .errors import UnsupportedCombinationError
    from .fock_core import outer

    base = name.split(":", 1)[0]
    if base not in METRIC_NAMES:
        raise StateValidationError(f"unknown metric {name!r}")
    if base in ("fs", "minimal", "wootters"):
        if not (isinstance(a, FockVector) and isinstance(b, FockVector)):
            raise UnsupportedCombinationError(f"metric {base!r} needs two pure states")
        kind = {"fs": "fubini_study", "minimal": "minimal", "wootters": "wootters"}[base]
        return DistanceReport(base, pure_state_distance(a, b, kind), a.dim)
    ra = a if isinstance(a, DensityOperator) else outer(a)
    rb = b if isinstance(b, DensityOperator) else outer(b)
    if base == "hs":
        value = hilbert_schmidt(ra, rb)
    elif base == "jmg":
        value = jmg_distance(ra, rb)
    elif base == "bu":
        value = bures_uhlmann(ra, rb)
    elif base == "hs-p":
        if ":" in name:
            try:
                p = float(name.split(":", 1)[1])
            except ValueError:
                raise StateValidationError(f"bad power in metric {name!r}") from None
        value = modified_hs(ra, rb, p)
    elif base == "dn":
        value = polarized(ra, rb, number_polarization(ra.dim))
    elif base == "dn-sqrt":
        value = polarized_sqrt(ra, rb, number_polarization(ra.dim))
    elif base == "DZ":
        value = quasidistance_DZ(ra, rb, number_polarization(ra.dim))
    else:  # Da
        value = quasidistance_Da(ra, rb)
    return DistanceReport(base, value, ra.dim)
