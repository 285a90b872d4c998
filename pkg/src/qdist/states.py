"""Constructors for the supported state families, plus moment machinery.

Pure families (Fock, coherent, generalized coherent, cat, squeezed
vacuum, coherent phase) produce ``FockVector``; the thermal family
produces a diagonal ``DensityOperator``.  Every constructor enforces a
truncation-tail budget of 1e-12 and renormalizes the retained
amplitudes, recording the discarded mass on the returned object.

Global phase convention: the first nonvanishing amplitude is made real
and positive, so state equality is testable despite the projective
nature of pure states.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateStateError,
    DimensionMismatchError,
    InsufficientCutoffError,
    SpecParseError,
    StateValidationError,
    TailMassError,
    TruncationInfeasibleError,
    UndefinedQuantityError,
)
from .fock_core import DensityOperator, FockVector, annihilation

TAIL_TOL = 1e-12
MODULUS_MARGIN = 1e-9  # squeezed/phase parameters must satisfy |z| < 1 - this
MAX_DIM = 512

FAMILIES = (
    "fock",
    "coherent",
    "generalized_coherent",
    "cat",
    "squeezed_vacuum",
    "coherent_phase",
    "thermal",
)

PURE_FAMILIES = tuple(f for f in FAMILIES if f != "thermal")


@dataclass(frozen=True)
class StateSpec:
    """Symbolic description of a state family plus its parameters.

    This is the shared currency of the CLI, the closed-form oracles and
    the tomography front end.  ``params`` keys by family:

    - fock: n
    - coherent / generalized_coherent: alpha (+ phases list for gencoh)
    - cat: alpha, phi
    - squeezed_vacuum: zeta
    - coherent_phase: epsilon
    - thermal: nbar
    """

    family: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise StateValidationError(f"unknown family {self.family!r}")
        p = self.params
        if self.family == "fock":
            n = p.get("n")
            if not isinstance(n, int) or n < 0:
                raise StateValidationError("fock requires an integer n >= 0")
        elif self.family in ("coherent", "generalized_coherent", "cat"):
            if "alpha" not in p:
                raise StateValidationError(f"{self.family} requires alpha")
            if self.family == "cat" and "phi" not in p:
                raise StateValidationError("cat requires a phase phi")
            if self.family == "generalized_coherent":
                phases = p.get("phases")
                if phases is None or len(phases) == 0:
                    raise StateValidationError("generalized_coherent requires a phase table")
        elif self.family == "squeezed_vacuum":
            if abs(p.get("zeta", 1.0)) >= 1.0 - MODULUS_MARGIN:
                raise StateValidationError("squeezed_vacuum requires |zeta| < 1 - 1e-9")
        elif self.family == "coherent_phase":
            if abs(p.get("epsilon", 1.0)) >= 1.0 - MODULUS_MARGIN:
                raise StateValidationError("coherent_phase requires |epsilon| < 1 - 1e-9")
        elif self.family == "thermal":
            nbar = p.get("nbar")
            if nbar is None or nbar < 0:
                raise StateValidationError("thermal requires nbar >= 0")

    @property
    def is_pure(self) -> bool:
        return self.family != "thermal"


# ---------------------------------------------------------------------------
# photon-number distributions and truncation tails
# ---------------------------------------------------------------------------

def _poisson_terms(lam: float, nmax: int) -> np.ndarray:
    """Poisson probabilities p_0..p_{nmax-1}, by stable recurrence."""
    p = np.zeros(nmax)
    p[0] = math.exp(-lam)
    for n in range(1, nmax):
        p[n] = p[n - 1] * lam / n
    return p


def _squeezed_even_terms(abs_z: float, kmax: int) -> np.ndarray:
    """|c_{2k}|^2 for k = 0..kmax-1 of a squeezed vacuum with |zeta| = abs_z."""
    w = np.zeros(kmax)
    w[0] = math.sqrt(1.0 - abs_z * abs_z)
    z2 = abs_z * abs_z
    for k in range(1, kmax):
        w[k] = w[k - 1] * z2 * (2 * k - 1) / (2 * k)
    return w


def photon_distribution_terms(spec: StateSpec, nmax: int) -> np.ndarray:
    """Exact (untruncated-formula) level populations p_0..p_{nmax-1}."""
    f, p = spec.family, spec.params
    if f == "fock":
        out = np.zeros(nmax)
        if p["n"] < nmax:
            out[p["n"]] = 1.0
        return out
    if f in ("coherent", "generalized_coherent"):
        return _poisson_terms(abs(p["alpha"]) ** 2, nmax)
    if f == "cat":
        alpha, phi = p["alpha"], p["phi"]
        q = math.exp(-2.0 * abs(alpha) ** 2)
        denom = 1.0 + math.cos(phi) * q
        if denom <= 1e-14:
            raise DegenerateStateError("cat normalization denominator ~ 0")
        pois = _poisson_terms(abs(alpha) ** 2, nmax)
        signs = np.where(np.arange(nmax) % 2 == 0, 1.0, -1.0)
        return pois * (1.0 + signs * math.cos(phi)) / denom
    if f == "squeezed_vacuum":
        w = _squeezed_even_terms(abs(p["zeta"]), (nmax + 1) // 2)
        out = np.zeros(nmax)
        out[: 2 * w.size : 2] = w[: (nmax + 1) // 2]
        return out
    if f == "coherent_phase":
        x = abs(p["epsilon"]) ** 2
        return (1.0 - x) * x ** np.arange(nmax)
    if f == "thermal":
        nbar = p["nbar"]
        x = nbar / (1.0 + nbar)
        return (x ** np.arange(nmax)) / (1.0 + nbar)
    raise StateValidationError(f"unknown family {f!r}")


def truncation_tail(spec: StateSpec, dim: int) -> float:
    """Probability mass on levels >= dim."""
    f, p = spec.family, spec.params
    if f == "fock":
        return 0.0 if p["n"] < dim else 1.0
    if f in ("coherent_phase", "thermal"):
        # geometric tail has a closed form
        if f == "coherent_phase":
            x = abs(p["epsilon"]) ** 2
        else:
            nbar = p["nbar"]
            x = nbar / (1.0 + nbar) if nbar > 0 else 0.0
        return float(x**dim)
    # sum the tail termwise: free of the cancellation a 1 - cumsum would have
    nmax = _tail_horizon(spec, dim)
    terms = photon_distribution_terms(spec, nmax)
    return float(terms[dim:].sum())


def _tail_horizon(spec: StateSpec, dim: int) -> int:
    """Index beyond which level populations are negligible (< 1e-25)."""
    if spec.family in ("coherent", "generalized_coherent", "cat"):
        lam = abs(spec.params["alpha"]) ** 2
        # Poisson tail: mean + generous multiple of the standard deviation
        return max(dim + 64, int(lam + 30.0 * math.sqrt(lam + 1.0)) + 64)
    if spec.family == "squeezed_vacuum":
        az = abs(spec.params["zeta"])
        if az < 1e-12:
            return dim + 8
        k = int(-60.0 / math.log(az * az)) + 8 if az < 1.0 else MAX_DIM
        return max(dim + 64, 2 * k)
    return dim + 64


def adaptive_dim(spec: StateSpec, tail_tol: float = TAIL_TOL, max_dim: int = MAX_DIM) -> int:
    """Smallest admissible truncation, rounded up to the next multiple of 8.

    The returned dim satisfies truncation_tail(spec, dim) < tail_tol.
    Rounding is to the *next* multiple of 8 strictly above the minimal
    level count, so a state needing exactly 40 levels gets dim 48.
    """
    if not (0.0 < tail_tol <= 1e-6):
        raise StateValidationError("tail_tol must lie in (0, 1e-6]")
    if spec.family == "fock":
        k = spec.params["n"] + 1
    else:
        k = None
        nmax = _tail_horizon(spec, max_dim)
        terms = photon_distribution_terms(spec, nmax)
        suffix = np.cumsum(terms[::-1])[::-1]  # suffix[k] = mass on levels >= k
        for cand in range(1, min(nmax, max_dim) + 1):
            tail = float(suffix[cand]) if cand < nmax else 0.0
            if tail < tail_tol:
                k = cand
                break
        if k is None:
            raise TruncationInfeasibleError(
                f"{spec.family} state needs more than {max_dim} levels for tail < {tail_tol}"
            )
    dim = 8 * (k // 8 + 1)
    if dim > max_dim:
        raise TruncationInfeasibleError(f"required dim {dim} exceeds cap {max_dim}")
    return dim


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def _fix_global_phase(amp: np.ndarray) -> np.ndarray:
    mags = np.abs(amp)
    first = int(np.argmax(mags > 1e-12 * mags.max()))
    ph = amp[first] / abs(amp[first])
    return amp * ph.conjugate()


def _finalize(amp: np.ndarray, tail: float) -> FockVector:
    if tail >= TAIL_TOL:
        raise TailMassError(f"truncation discards {tail:.3e} > {TAIL_TOL} probability")
    amp = _fix_global_phase(amp / np.linalg.norm(amp))
    return FockVector(amp, tail_mass=tail)


def fock(n: int, dim: int) -> FockVector:
    """Number state |n> in a dim-dimensional truncation."""
    if not 0 <= n < dim:
        raise StateValidationError(f"need 0 <= n < dim, got n={n}, dim={dim}")
    amp = np.zeros(dim, dtype=complex)
    amp[n] = 1.0
    return FockVector(amp)


def coherent(alpha: complex, dim: int) -> FockVector:
    """Coherent state: c_n proportional to alpha^n / sqrt(n!)."""
    spec = StateSpec("coherent", {"alpha": complex(alpha)})
    amp = np.zeros(dim, dtype=complex)
    amp[0] = math.exp(-abs(alpha) ** 2 / 2.0)
    for n in range(1, dim):
        amp[n] = amp[n - 1] * alpha / math.sqrt(n)
    return _finalize(amp, truncation_tail(spec, dim))


def generalized_coherent(alpha: complex, phases, dim: int) -> FockVector:
    """Coherent amplitudes with per-level phases exp(i phi(n)) attached."""
    phases = np.asarray(phases, dtype=float)
    if phases.size < dim:
        raise StateValidationError(f"phase table has {phases.size} entries, need >= {dim}")
    base = coherent(alpha, dim)
    amp = base.amp * np.exp(1j * phases[:dim])
    return _finalize(amp, base.tail_mass)


def yurke_stoler_phases(dim: int) -> np.ndarray:
    """Phase table phi(2k) = 0, phi(2k+1) = -pi/2."""
    ph = np.zeros(dim)
    ph[1::2] = -math.pi / 2.0
    return ph


def cat(alpha: complex, phi: float, dim: int) -> FockVector:
    """Superposition (|alpha> + e^{i phi} |-alpha>) / sqrt(2[1 + cos(phi) e^{-2|alpha|^2}])."""
    q = math.exp(-2.0 * abs(alpha) ** 2)
    denom = 1.0 + math.cos(phi) * q
    if denom <= 1e-14:
        raise DegenerateStateError(
            "cat normalization is 0/0 at alpha -> 0, phi -> pi; use fock(1) directly"
        )
    spec = StateSpec("cat", {"alpha": complex(alpha), "phi": float(phi)})
    plus = np.zeros(dim, dtype=complex)
    plus[0] = math.exp(-abs(alpha) ** 2 / 2.0)
    for n in range(1, dim):
        plus[n] = plus[n - 1] * alpha / math.sqrt(n)
    signs = np.where(np.arange(dim) % 2 == 0, 1.0, -1.0)
    amp = plus + cmath.exp(1j * phi) * signs * plus
    return _finalize(amp, truncation_tail(spec, dim))


def squeezed_vacuum(zeta: complex, dim: int) -> FockVector:
    """Squeezed vacuum: even-level amplitudes proportional to sqrt((2n)!)/(2^n n!) zeta^n."""
    spec = StateSpec("squeezed_vacuum", {"zeta": complex(zeta)})
    amp = np.zeros(dim, dtype=complex)
    amp[0] = (1.0 - abs(zeta) ** 2) ** 0.25
    c = amp[0]
    for k in range(1, (dim + 1) // 2):
        c = c * zeta * math.sqrt((2 * k - 1) / (2 * k))
        amp[2 * k] = c
    return _finalize(amp, truncation_tail(spec, dim))


def coherent_phase(epsilon: complex, dim: int) -> FockVector:
    """Lowering-operator phase eigenstate: c_n = sqrt(1-|eps|^2) eps^n."""
    spec = StateSpec("coherent_phase", {"epsilon": complex(epsilon)})
    amp = math.sqrt(1.0 - abs(epsilon) ** 2) * np.power(complex(epsilon), np.arange(dim))
    return _finalize(amp, truncation_tail(spec, dim))


def thermal(nbar: float, dim: int) -> DensityOperator:
    """Thermal state: diagonal geometric populations with mean nbar."""
    spec = StateSpec("thermal", {"nbar": float(nbar)})
    tail = truncation_tail(spec, dim)
    if tail >= TAIL_TOL:
        raise TailMassError(f"truncation discards {tail:.3e} > {TAIL_TOL} probability")
    p = photon_distribution_terms(spec, dim)
    return DensityOperator(np.diag(p / p.sum()).astype(complex), tail_mass=tail)


def build_state(spec: StateSpec, dim: int):
    """Construct the state a spec describes; FockVector unless thermal."""
    f, p = spec.family, spec.params
    if f == "fock":
        return fock(p["n"], dim)
    if f == "coherent":
        return coherent(p["alpha"], dim)
    if f == "generalized_coherent":
        return generalized_coherent(p["alpha"], p["phases"], dim)
    if f == "cat":
        return cat(p["alpha"], p["phi"], dim)
    if f == "squeezed_vacuum":
        return squeezed_vacuum(p["zeta"], dim)
    if f == "coherent_phase":
        return coherent_phase(p["epsilon"], dim)
    if f == "thermal":
        return thermal(p["nbar"], dim)
    raise StateValidationError(f"unknown family {f!r}")


def as_density(spec: StateSpec, dim: int) -> DensityOperator:
    from .fock_core import outer

    state = build_state(spec, dim)
    return state if isinstance(state, DensityOperator) else outer(state)


# ---------------------------------------------------------------------------
# observables and moments
# ---------------------------------------------------------------------------

def mandel_q(rho: DensityOperator) -> float:
    """<N^2>/<N> - <N> - 1; zero for Poissonian photon statistics."""
    p = rho.mat.diagonal().real
    n = np.arange(rho.dim)
    nbar = float((n * p).sum())
    if nbar <= 1e-12:
        raise UndefinedQuantityError("Mandel Q undefined for the vacuum")
    n2 = float((n * n * p).sum())
    return n2 / nbar - nbar - 1.0


def _as_matrix(rho) -> np.ndarray:
    return rho.mat if isinstance(rho, DensityOperator) else np.asarray(rho, dtype=complex)


def moment(rho, k: int, l: int) -> complex:
    """Normally ordered moment Tr(adag^k a^l rho).

    ``rho`` may be a DensityOperator or a raw matrix (useful for
    diagnosing unconverged moment reconstructions).
    """
    mat = _as_matrix(rho)
    dim = mat.shape[0]
    if k < 0 or l < 0:
        raise StateValidationError("moment orders must be nonnegative")
    if k >= dim or l >= dim:
        raise StateValidationError(f"orders ({k},{l}) overflow truncation dim {dim}")
    a = annihilation(dim)
    ak = np.linalg.matrix_power(a, k)
    al = np.linalg.matrix_power(a, l)
    return complex(np.trace(ak.conj().T @ al @ mat))


@dataclass(frozen=True)
class MomentTable:
    """Normally ordered moments M^{(k,l)} for k, l = 0..cutoff."""

    cutoff: int
    m: np.ndarray

    def __post_init__(self):
        m = np.array(self.m, dtype=complex)
        want = (self.cutoff + 1, self.cutoff + 1)
        if m.shape != want:
            raise StateValidationError(f"moment table shape {m.shape} != {want}")
        defect = float(np.abs(m - m.conj().T).max())
        if defect > 1e-9 * max(1.0, float(np.abs(m).max())):
            raise StateValidationError(f"moment table breaks M(k,l) = M(l,k)*: {defect:.3e}")
        m.setflags(write=False)
        object.__setattr__(self, "m", m)


def moment_table(rho, cutoff: int) -> MomentTable:
    """All moments up to the cutoff, sharing one ladder-power sweep."""
    mat = _as_matrix(rho)
    dim = mat.shape[0]
    if cutoff >= dim:
        raise StateValidationError(f"cutoff {cutoff} overflows truncation dim {dim}")
    a = annihilation(dim)
    powers = [np.eye(dim, dtype=complex)]
    for _ in range(cutoff):
        powers.append(a @ powers[-1])
    right = [p @ mat for p in powers]  # a^l rho
    m = np.empty((cutoff + 1, cutoff + 1), dtype=complex)
    for k in range(cutoff + 1):
        for l in range(cutoff + 1):
            # Tr(adag^k X) = <a^k, X> in the Frobenius inner product
            m[k, l] = np.vdot(powers[k], right[l])
    return MomentTable(cutoff, m)


def reconstruction_matrix(table: MomentTable, dim: int) -> np.ndarray:
    """Truncated moment-series reconstruction, Hermitized and renormalized.

    The low-order moments of the result reproduce the table exactly (the
    expansion operators are dual to the moment monomials), but the
    matrix itself approaches a physical state only as the cutoff grows;
    states with factorially growing moments need cutoffs well above the
    matrix size.  A trace deviating from 1 by more than 1e-3 indicates
    an inconsistent table and raises ``InsufficientCutoffError``.
    """
    K = table.cutoff
    fact = np.array([math.factorial(i) for i in range(K + 1)], dtype=float)
    rho = np.zeros((dim, dim), dtype=complex)
    for k in range(K + 1):
        for l in range(K + 1):
            mval = table.m[k, l]
            if mval == 0:
                continue
            jmax = min(k, l)
            for j in range(jmax + 1):
                r, c = l - j, k - j
                if r < dim and c < dim:
                    rho[r, c] += mval * ((-1) ** j) / (fact[j] * math.sqrt(fact[k - j] * fact[l - j]))
    rho = 0.5 * (rho + rho.conj().T)
    tr = float(np.trace(rho).real)
    if abs(tr - 1.0) > 1e-3:
        raise InsufficientCutoffError(f"reconstructed trace {tr!r}; raise the cutoff")
    return rho / tr


def reconstruct_from_moments(table: MomentTable, dim: int) -> DensityOperator:
    """Rebuild a density operator from its normally ordered moments.

    Raises ``InsufficientCutoffError`` when the truncated series has not
    yet converged to a positive-semidefinite matrix.
    """
    from .errors import NotPositiveSemidefiniteError

    rho = reconstruction_matrix(table, dim)
    try:
        return DensityOperator(rho)
    except NotPositiveSemidefiniteError as exc:
        raise InsufficientCutoffError(f"reconstruction not yet physical: {exc}") from exc


# ---------------------------------------------------------------------------
# textual grammar (shared with the CLI)
# ---------------------------------------------------------------------------

def _parse_complex(fields: list[str], what: str) -> complex:
    try:
        if len(fields) == 1:
            return complex(float(fields[0]), 0.0)
        if len(fields) == 2:
            return complex(float(fields[0]), float(fields[1]))
    except ValueError as exc:
        raise SpecParseError(f"bad {what} in {fields!r}") from exc
    raise SpecParseError(f"{what} takes 're' or 're,im', got {fields!r}")


def parse_state_spec(text: str) -> StateSpec:
    """Parse the grammar shared with the CLI.

    fock:n | coherent:re[,im] | cat:re,im,phi | squeezed:re[,im] |
    phase:re[,im] | thermal:nbar | gencoh:re,im,@phasefile
    """
    head, sep, rest = text.partition(":")
    if not sep:
        raise SpecParseError(f"missing ':' in state spec {text!r}")
    fields = rest.split(",") if rest else []
    try:
        if head == "fock":
            if len(fields) != 1:
                raise SpecParseError("fock takes exactly one integer")
            return StateSpec("fock", {"n": int(fields[0])})
        if head == "coherent":
            return StateSpec("coherent", {"alpha": _parse_complex(fields, "alpha")})
        if head == "cat":
            if len(fields) != 3:
                raise SpecParseError("cat takes re,im,phi")
            return StateSpec(
                "cat",
                {"alpha": _parse_complex(fields[:2], "alpha"), "phi": float(fields[2])},
            )
        if head == "squeezed":
            return StateSpec("squeezed_vacuum", {"zeta": _parse_complex(fields, "zeta")})
        if head == "phase":
            return StateSpec("coherent_phase", {"epsilon": _parse_complex(fields, "epsilon")})
        if head == "thermal":
            if len(fields) != 1:
                raise SpecParseError("thermal takes exactly one real")
            return StateSpec("thermal", {"nbar": float(fields[0])})
        if head == "gencoh":
            if len(fields) != 3 or not fields[2].startswith("@"):
                raise SpecParseError("gencoh takes re,im,@phasefile")
            alpha = _parse_complex(fields[:2], "alpha")
            try:
                with open(fields[2][1:], "r", encoding="utf-8") as fh:
                    phases = [float(line) for line in fh if line.strip()]
            except OSError as exc:
                raise SpecParseError(f"cannot read phase file {fields[2][1:]!r}") from exc
            return StateSpec("generalized_coherent", {"alpha": alpha, "phases": phases})
    except (ValueError, StateValidationError) as exc:
        raise SpecParseError(f"bad state spec {text!r}: {exc}") from exc
    raise SpecParseError(f"unknown family {head!r}")
