"""Analytic distance formulas for each state-family pairing.

These are the cross-validation oracles: every function here evaluates a
printed closed form directly from scalar parameters, sharing no code
with the matrix-based numerics in ``distances``.  Keys in the returned
``values`` map: ``hs`` (Hilbert-Schmidt), ``bu`` (Bures-Uhlmann),
``dN`` (number-polarized), ``dN_sqrt`` (number-polarized on square
roots), ``DN`` / ``Da`` (quasidistances).

Asymptotic simplifications are never mixed into ``values``; they live
in the separate ``approximations`` map.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DegenerateStateError, StateValidationError

SQRT2 = math.sqrt(2.0)


def _abs2(z: complex) -> float:
    # re^2 + im^2, so |z|^2 and (z conj(z)).real round identically and
    # equal-argument distances cancel to exactly zero
    z = complex(z)
    return z.real * z.real + z.imag * z.imag


@dataclass(frozen=True)
class ClosedFormResult:
    values: dict = field(default_factory=dict)
    approximations: dict = field(default_factory=dict)
    validity: dict = field(default_factory=dict)

    def __post_init__(self):
        bad = {k: v for k, v in self.values.items() if v < 0.0}
        if bad:
            raise StateValidationError(f"negative closed-form distances: {bad}")

    def __getitem__(self, key: str) -> float:
        return self.values[key]


def coherent_pair(alpha: complex, beta: complex) -> ClosedFormResult:
    """hs, dN and Da between two coherent states."""
    alpha, beta = complex(alpha), complex(beta)
    gap2 = _abs2(alpha - beta)
    e = math.exp(-gap2)
    hs = SQRT2 * math.sqrt(1.0 - e)
    dn_sq = _abs2(alpha) + _abs2(beta) - 2.0 * (beta.conjugate() * alpha).real * e
    da = math.sqrt(gap2 * (1.0 + e) / 2.0)
    return ClosedFormResult({"hs": hs, "dN": math.sqrt(max(dn_sq, 0.0)), "Da": da})


def coherent_fock(alpha: complex, m: int) -> ClosedFormResult:
    """hs and dN between a coherent state and the number state |m>."""
    if m < 0:
        raise StateValidationError("m must be >= 0")
    lam = abs(alpha) ** 2
    pm = math.exp(-lam) * lam**m / math.factorial(m)
    hs = SQRT2 * math.sqrt(max(1.0 - pm, 0.0))
    cross = 0.0 if m == 0 else 2.0 * math.exp(-lam) * lam**m / math.factorial(m - 1)
    dn = math.sqrt(max(m + lam - cross, 0.0))
    return ClosedFormResult({"hs": hs, "dN": dn})


def fock_pair(m: int, n: int) -> ClosedFormResult:
    """dN and quasidistance DN between two number states."""
    if m < 0 or n < 0:
        raise StateValidationError("occupation numbers must be >= 0")
    dn = 0.0 if m == n else math.sqrt(m + n)
    dn_star = abs(math.sqrt(n) - math.sqrt(m)) / SQRT2
    return ClosedFormResult({"dN": dn, "DN": dn_star})


def squeezed_pair(zeta1: complex, zeta2: complex) -> ClosedFormResult:
    """hs and dN between two squeezed vacua.

    When the two squeezing phases coincide, the simplified forms in the
    squeeze-parameter tau = artanh|zeta| are evaluated as well and
    exposed under ``hs_samephase`` / ``dN_samephase``.
    """
    if abs(zeta1) >= 1.0 or abs(zeta2) >= 1.0:
        raise StateValidationError("squeezing parameters must satisfy |zeta| < 1")
    zeta1, zeta2 = complex(zeta1), complex(zeta2)
    zz = zeta1 * zeta2.conjugate()
    denom = abs(1.0 - zz)
    m1, m2 = _abs2(zeta1), _abs2(zeta2)
    root = math.sqrt((1.0 - m1) * (1.0 - m2))
    hs = SQRT2 * abs(zeta1 - zeta2) / math.sqrt(denom * (denom + root))
    dn_sq = m1 / (1.0 - m1) + m2 / (1.0 - m2) + 2.0 * (_abs2(zz) - zz.real) / denom**3 * root
    values = {"hs": hs, "dN": math.sqrt(max(dn_sq, 0.0))}
    phase_gap = abs((zeta1 * zeta2.conjugate()).imag) if abs(zeta1) * abs(zeta2) > 0 else 0.0
    if phase_gap < 1e-12:
        t1, t2 = math.atanh(abs(zeta1)), math.atanh(abs(zeta2))
        # the tau-parametrized same-phase specializations
        hs_sp = 2.0 * abs(math.sinh(0.5 * (t1 - t2))) / math.sqrt(math.cosh(t1 - t2))
        dn_sp_sq = (
            math.sinh(t1) ** 2
            + math.sinh(t2) ** 2
            - 2.0 * math.sinh(t1) * math.sinh(t2) / math.cosh(t1 - t2) ** 2
        )
        values["hs_samephase"] = hs_sp
        values["dN_samephase"] = math.sqrt(max(dn_sp_sq, 0.0))
    return ClosedFormResult(values, validity={"same_phase": phase_gap < 1e-12})


def cat_distances(alpha: complex, phi1: float, phi2: float) -> ClosedFormResult:
    """Distances around the cat family at a fixed displacement alpha.

    Keys: d_to_coherent / d_to_vacuum / dN_to_vacuum use phi1;
    d_between / dN_between compare the phases phi1 and phi2.

    The vacuum-distance formula is the corrected one
    2 (1 - x)(1 - x cos(phi)) / (1 + x^2 cos(phi)), x = exp(-|alpha|^2):
    it reproduces the direct overlap computation for every phi and in
    particular makes the odd cat orthogonal to the vacuum.
    """
    a2 = abs(alpha) ** 2
    x = math.exp(-a2)
    q = x * x
    den1 = 1.0 + math.cos(phi1) * q
    den2 = 1.0 + math.cos(phi2) * q
    if den1 <= 1e-14 or den2 <= 1e-14:
        raise DegenerateStateError("cat normalization denominator ~ 0")
    d_coh_sq = (1.0 - q * q) / den1
    d_vac_sq = 2.0 * (1.0 - x) * (1.0 - math.cos(phi1) * x) / den1
    d_between_sq = (1.0 - q * q) * (1.0 - math.cos(phi1 - phi2)) / (den1 * den2)
    dn_vac_sq = a2 * (1.0 - math.cos(phi1) * q) / den1
    dn_between_sq = a2 * (1.0 + q * q) * (1.0 - math.cos(phi1 - phi2)) / (den1 * den2)
    return ClosedFormResult(
        {
            "d_to_coherent": math.sqrt(max(d_coh_sq, 0.0)),
            "d_to_vacuum": math.sqrt(max(d_vac_sq, 0.0)),
            "d_between": math.sqrt(max(d_between_sq, 0.0)),
            "dN_to_vacuum": math.sqrt(max(dn_vac_sq, 0.0)),
            "dN_between": math.sqrt(max(dn_between_sq, 0.0)),
        }
    )


def phase_pair(eps1: complex, eps2: complex) -> ClosedFormResult:
    """hs and dN between two coherent phase states."""
    if abs(eps1) >= 1.0 or abs(eps2) >= 1.0:
        raise StateValidationError("phase-state parameters must satisfy |eps| < 1")
    eps1, eps2 = complex(eps1), complex(eps2)
    ee = eps1 * eps2.conjugate()
    hs = SQRT2 * abs(eps1 - eps2) / abs(1.0 - ee)
    m1, m2 = _abs2(eps1), _abs2(eps2)
    denom = (1.0 - 2.0 * ee.real + m1 * m2) ** 2
    dn_sq = (
        m1 / (1.0 - m1)
        + m2 / (1.0 - m2)
        + 2.0 * (1.0 - m1) * (1.0 - m2) * (m1 * m2 - ee.real) / denom
    )
    return ClosedFormResult({"hs": hs, "dN": math.sqrt(max(dn_sq, 0.0))})


def thermal_pair(nbar1: float, nbar2: float) -> ClosedFormResult:
    """All thermal-pair distances, plus large-nbar approximations.

    ``dN_min_pseudo`` is the minimal number-polarized distance between
    two phase states with the same mean photon numbers, attained when
    the two phase parameters are aligned.
    """
    if nbar1 < 0 or nbar2 < 0:
        raise StateValidationError("mean photon numbers must be >= 0")
    n1, n2 = float(nbar1), float(nbar2)
    s = 1.0 + n1 + n2
    hs = SQRT2 * abs(n1 - n2) / math.sqrt((1.0 + 2.0 * n1) * (1.0 + 2.0 * n2) * s)
    cross = (math.sqrt((1.0 + n1) * (1.0 + n2)) + math.sqrt(n1 * n2)) / s
    bu = SQRT2 * math.sqrt(max(1.0 - cross, 0.0))
    dn = (
        abs(n1 - n2)
        * math.sqrt(s * s + 2.0 * n1 * n2 * (1.0 + 2.0 * n1) * (1.0 + 2.0 * n2))
        / ((1.0 + 2.0 * n1) * (1.0 + 2.0 * n2) * s)
    )
    g = math.sqrt(n1 * n2)
    dn_sqrt_sq = n1 + n2 - 2.0 * g * cross**2
    dn_min_sq = n1 + n2 - 2.0 * g * cross**3
    values = {
        "hs": hs,
        "bu": bu,
        "dN": dn,
        "dN_sqrt": math.sqrt(max(dn_sqrt_sq, 0.0)),
        "dN_min_pseudo": math.sqrt(max(dn_min_sq, 0.0)),
    }
    approx = {}
    if n1 > 0 and n2 > 0:
        # valid for nbar >> 1; the close-gap forms additionally need
        # |nbar1 - nbar2| << nbar.  All are for the *unsquared* distances.
        approx["bu_large"] = SQRT2 * abs(math.sqrt(n1) - math.sqrt(n2)) / math.sqrt(n1 + n2)
        approx["dN_sqrt_large"] = math.sqrt(max(n1 + n2 - 8.0 * g**3 / (n1 + n2) ** 2, 0.0))
        approx["dN_min_large"] = math.sqrt(max(n1 + n2 - 16.0 * g**4 / (n1 + n2) ** 3, 0.0))
        gap_root = abs(math.sqrt(n1) - math.sqrt(n2))
        approx["dN_sqrt_close"] = math.sqrt(3.0) * gap_root
        approx["dN_min_close"] = 2.0 * gap_root
    return ClosedFormResult(values, approximations=approx)
