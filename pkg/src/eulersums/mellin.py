"""Numeric checks of the Mellin transform pair and the three-term factorization formula.

Contours are straight vertical lines Re z = c, truncated at |Im z| = T.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .quadrature import exp_sinh


class ValidityViolation(ValueError):
    """Arguments outside the region where the contour formula holds."""


class TruncationTooSmall(ValueError):
    """The discarded contour tail may exceed the requested tolerance."""


@dataclass(frozen=True)
class ContourSpec:
    c: float = 1.0
    T: float = 60.0
    nodes: int = 2000

    def __post_init__(self):
        if not (self.c > 0 and self.T > 0 and self.nodes >= 2):
            raise ValidityViolation(f"invalid contour {self}")


def mellin_forward_example(k: int, z: float) -> float:
    """int_1^inf x^(-z-1) log^k x dx, via x = e^u; equals k!/z^(k+1)."""
    if int(k) != k or k < 0:
        raise specfun.DomainError("k must be a non-negative integer")
    if not z > 0:
        raise specfun.DomainError("mellin_forward_example requires z > 0")
    k = int(k)
    # rescale u = s/z so the integrand peak sits near s = k for every z
    r = exp_sinh(lambda s: np.exp(-s) * s**k, 0.0, tol=1e-15)
    return r.value / z ** (k + 1)


# ------------------------------------------------------------ inverse transform

GL_ORDER = 20
INVERSE_TOL = 1e-4


def inverse_tail_bound(k: int, x: float, c: float, T: float) -> float:
    """Bound on the discarded part of the inverse integral beyond |Im z| = T.

    One integration by parts of x^(c+it) k!/(c+it)^(k+1) over t > T gives
    at most 2 k! x^c / (pi log(x) T^(k+1)) for the two half-lines together.
    """
    return 2.0 * math.factorial(k) * x**c / (math.pi * math.log(x) * T ** (k + 1))


def default_inverse_contour(k: int, x: float, tol: float = INVERSE_TOL, c: float = 1.0) -> ContourSpec:
    """Smallest T with tail bound <= tol/2, rounded up to whole periods of x^(it)."""
    lx = math.log(x)
    t_min = (4.0 * math.factorial(k) * x**c / (math.pi * lx * tol)) ** (1.0 / (k + 1))
    period = 2.0 * math.pi / lx
    T = period * math.ceil(t_min / period)
    return ContourSpec(c=c, T=T, nodes=_panel_count(T, c, lx) * GL_ORDER)


def _panel_count(T: float, c: float, lx: float) -> int:
    # half an oscillation period per panel, and no wider than c near the origin scale
    width = min(math.pi / lx, c)
    return max(1, math.ceil(T / width))


def inverse_mellin_example(k: int, x: float, spec: ContourSpec | None = None, tol: float = INVERSE_TOL) -> float:
    """Re (1/2 pi i) int_{c-iT}^{c+iT} x^z k!/z^(k+1) dz, which approximates log^k x.

    With ``spec=None`` the contour from :func:`default_inverse_contour` is used.
    The integrand is conjugate-symmetric, so only t in [0, T] is integrated.
    """
    if int(k) != k or k < 0:
        raise specfun.DomainError("k must be a non-negative integer")
    if not x > 1:
        raise ValidityViolation("inverse_mellin_example requires x > 1")
    k = int(k)
    if spec is None:
        spec = default_inverse_contour(k, x, tol)
    bound = inverse_tail_bound(k, x, spec.c, spec.T)
    if bound > tol:
        raise TruncationTooSmall(f"tail bound {bound:.3g} exceeds tolerance {tol:.3g} at T={spec.T}")
    panels = max(1, spec.nodes // GL_ORDER)
    xg, wg = np.polynomial.legendre.leggauss(GL_ORDER)
    edges = np.linspace(0.0, spec.T, panels + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])[:, None]
    half = 0.5 * (edges[1:] - edges[:-1])[:, None]
    t = (mid + half * xg).ravel()
    w = (half * wg).ravel()
    z = spec.c + 1j * t
    vals = np.exp(z * math.log(x) - (k + 1) * np.log(z)).real * math.factorial(k)
    return math.fsum(vals * w) / math.pi


# ------------------------------------------------------------ factorization

FACTORIZATION_TOL = 1e-3
EPS = 2.220446049250313e-16

# directions on the unit max-norm circle where the exponential rate is extremal
_DIRECTIONS = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)]


@dataclass(frozen=True)
class FactorizationResult:
    lhs: complex
    rhs: complex
    abs_diff: float
    tail_bound: float
    refinement_delta: float
    rounding: float

    @property
    def error_estimate(self) -> float:
        return self.tail_bound + self.refinement_delta + self.rounding


def _decay_rate(args: tuple[float, float, float]) -> float:
    # log|integrand| ~ t1 a1 + t2 a2 - (t1+t2) a3 - pi/2 (|t1| + |t2| + |t1+t2|)
    a1, a2, a3 = args
    rates = []
    for t1, t2 in _DIRECTIONS:
        e = t1 * a1 + t2 * a2 - (t1 + t2) * a3 - 0.5 * math.pi * (abs(t1) + abs(t2) + abs(t1 + t2))
        rates.append(-e)
    return min(rates)


def factorization_check(
    A1: complex,
    A2: complex,
    A3: complex,
    p: float,
    c1: float,
    c2: float,
    spec: ContourSpec | None = None,
    tol: float = FACTORIZATION_TOL,
) -> FactorizationResult:
    """Compare (A1+A2+A3)^-p with its double Mellin-Barnes representation

        (1/(2 pi i)^2) int int G(z1) G(z2) G(p-z1-z2)/G(p) A1^-z1 A2^-z2 A3^(z1+z2-p) dz1 dz2

    on Re z1 = c1, Re z2 = c2, truncated to the square |Im z| <= T and summed
    by the trapezoid rule with ``spec.nodes`` points per axis.
    """
    spec = spec or ContourSpec()
    A = [complex(a) for a in (A1, A2, A3)]
    if any(not a.imag > 0 for a in A):
        raise ValidityViolation("each A_i needs a positive imaginary part")
    if not (c1 > 0 and c2 > 0 and p - c1 - c2 > 0):
        raise ValidityViolation("need c1 > 0, c2 > 0 and p - c1 - c2 > 0")
    logs = [cmath.log(a) for a in A]
    kappa = _decay_rate(tuple(l.imag for l in logs))

    n = spec.nodes
    # both grids come from the same step so that t1 + t2 lands exactly on tsum
    h = 2.0 * spec.T / (n - 1)
    t = -spec.T + h * np.arange(n)
    z1 = c1 + 1j * t
    z2 = c2 + 1j * t
    # L1[j1] + L2[j2] + L3[j1 + j2]: the third Gamma depends only on t1 + t2
    l1 = specfun.log_gamma_complex(z1) - z1 * logs[0]
    l2 = specfun.log_gamma_complex(z2) - z2 * logs[1]
    tsum = -2.0 * spec.T + h * np.arange(2 * n - 1)
    zs = c1 + c2 + 1j * tsum
    l3 = specfun.log_gamma_complex(p - zs) + (zs - p) * logs[2]
    log_gp = specfun.log_gamma_complex(complex(p))
    idx = np.arange(n)
    grid = l1[:, None] + l2[None, :] + l3[idx[:, None] + idx[None, :]] - log_gp
    F = np.exp(grid)
    scale = 1.0 / (4.0 * math.pi**2)

    fine = F.sum() * h * h * scale
    coarse = F[::2, ::2].sum() * (2 * h) ** 2 * scale
    delta = abs(fine - coarse)
    # each term carries relative error ~ eps * |exponent| from log-gamma and exp
    rounding = 8 * EPS * float(np.sum((np.abs(grid) + 1.0) * np.abs(F))) * h * h * scale

    edge = max(np.abs(F[0]).max(), np.abs(F[-1]).max(), np.abs(F[:, 0]).max(), np.abs(F[:, -1]).max())
    # |F| <= edge * exp(-kappa (s - T)) on the square of half-width s > T
    tail = scale * edge * 8.0 * (spec.T / kappa + 1.0 / kappa**2) if kappa > 0 else math.inf
    if tail > tol:
        raise TruncationTooSmall(f"contour tail bound {tail:.3g} exceeds {tol:.3g}; raise T")

    lhs = cmath.exp(-p * cmath.log(sum(A)))
    rhs = complex(fine)
    return FactorizationResult(lhs, rhs, abs(lhs - rhs), float(tail), float(delta), rounding)
