"""Deformed Laplace-inversion contours for the semigroup kernels.

The residual (non-heat) part of the per-mode Green's function is recovered from
the resolvent kernel by a Bromwich integral

    R(t, y, z) = (1/2 pi i) int_Gamma exp(lambda t) R_lambda(y, z) dlambda.

The contour Gamma is deformed into the left half plane around the branch cut
lambda + nu |xi|^2 in (-inf, 0].  Two deformations are used, both built around
the saddle of exp(lambda t - mu s) with s = y + z and vertex parameter
a = s / (2 nu t):

* low frequency (nu |xi|^2 <= 1): two parabolic arms
  lambda = -nu|xi|^2/2 + nu (a + i b)^2 -+ i M, b in (-inf, 0] resp. [0, inf),
  bridged by a half circle of radius M around c0 = -nu|xi|^2/2 + nu a^2.  The
  half circle carries the pole contribution (R1), the arms the decaying
  remainder (R2).

* high frequency (nu |xi|^2 >= 1): a single parabola
  lambda = -nu|xi|^2 + nu (theta a + i b)^2, b in R, with theta in {1, 1/2}
  chosen so the line mu = theta a + i b stays away from the pole of the
  integrand at mu = mu_pole (mu_pole = |xi| for the no-slip kernel).  Here R2
  is the parabola integral and R1 is the residue when the parabola encloses
  the pole.

Everything is parameterized so that the magnitude of exp(lambda t - mu s) is
bounded along the contour (steepest-descent arms), which keeps the quadrature
well conditioned even for large s^2/(4 nu t).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.integrate import quad_vec

from .errors import PoleOnContour

__all__ = [
    "Segment",
    "Contour",
    "build_contour_lowfreq",
    "build_contour_highfreq",
    "lowfreq_params",
    "highfreq_params",
    "lowfreq_nodes",
    "highfreq_nodes",
    "BETA_MAX",
]

# Arms are truncated where exp(-nu b^2 t) = exp(-beta^2) drops below ~1e-16.
BETA_MAX = 6.1

# Keep the parabola vertex strictly right of the branch cut even when the
# saddle parameter a vanishes (s = 0 puts the paper-exact contour on the cut;
# any vertex offset gives the same integral by Cauchy's theorem).
VERTEX_FLOOR_FRACTION = 0.05


@dataclass(frozen=True)
class Segment:
    """One smooth piece of a contour: lambda = gamma(p), p in [p0, p1]."""

    name: str
    p0: float
    p1: float
    gamma: Callable[[np.ndarray], np.ndarray]
    dgamma: Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Contour:
    """An upward-oriented contour made of smooth segments.

    ``encloses_pole_at`` records which integrand pole (if any) lies to the
    right of the contour (between it and the Bromwich line), in which case the
    inverse Laplace transform is the contour integral plus that residue;
    ``arc_index`` marks the segment that carries the pole contribution for the
    low-frequency split (None for the high-frequency parabola).
    """

    segments: tuple[Segment, ...]
    encloses_pole_at: complex | None
    regime: str
    params: dict = field(compare=False)
    arc_index: int | None = None

    def integrate(self, f: Callable[[np.ndarray], np.ndarray],
                  epsabs: float = 1e-13, epsrel: float = 1e-11,
                  segment_indices=None):
        """(1/2 pi i) * integral of f(lambda) over (selected) segments.

        Uses adaptive Gauss-Kronrod panels (scipy ``quad_vec``); ``f`` must be
        vectorized over a 1-D array of lambda values and may return extra
        leading axes (e.g. a stack of integrands).
        """
        if segment_indices is None:
            segment_indices = range(len(self.segments))
        total = None
        for k in segment_indices:
            seg = self.segments[k]

            def g(p, seg=seg):
                pa = np.atleast_1d(p)
                val = f(seg.gamma(pa)) * seg.dgamma(pa)
                return val[..., 0] if np.ndim(p) == 0 else val

            part, _ = quad_vec(g, seg.p0, seg.p1, epsabs=epsabs, epsrel=epsrel)
            total = part if total is None else total + part
        return total / (2.0j * np.pi)

    def endpoints(self):
        first = self.segments[0]
        last = self.segments[-1]
        return (complex(first.gamma(np.array([first.p0]))[0]),
                complex(last.gamma(np.array([last.p1]))[0]))


@lru_cache(maxsize=32)
def _leggauss(n: int):
    return np.polynomial.legendre.leggauss(n)


def _gl(p0: float, p1: float, n: int):
    """Gauss-Legendre nodes/weights on [p0, p1]."""
    x, w = _leggauss(n)
    mid, half = 0.5 * (p0 + p1), 0.5 * (p1 - p0)
    return mid + half * x, half * w


# ---------------------------------------------------------------------------
# low frequency


def lowfreq_params(t: float, nu: float, xi_norm: float, s,
                   enclose: list[tuple[complex, float]] | None = None) -> dict:
    """Geometry of the low-frequency contour; vectorized over s = y + z.

    ``enclose`` lists (pole, margin) pairs that the half circle must keep at
    distance >= margin inside it (used for the moving pole of general boundary
    operators).  The radius M grows with |c0| so that exp(lambda t - mu s)
    stays bounded on the half circle; a fixed multiple of max(nu a^2, ...) as
    the radius would overflow exp(M t) for large a.
    """
    s = np.asarray(s, dtype=float)
    a = s / (2.0 * nu * t)
    c_arm = -0.5 * nu * xi_norm**2
    c0 = c_arm + nu * a**2
    M = 1.25 * np.abs(c0) + max(nu * xi_norm**2, 0.5 / t)
    if enclose:
        for pole, margin in enclose:
            M = np.maximum(M, np.abs(pole - c0) + margin)
    # the pole at lambda = 0 must stay inside the half circle
    if np.any(np.abs(c0) >= M):
        raise PoleOnContour("half-circle radius does not enclose lambda = 0")
    b_max = BETA_MAX / np.sqrt(nu * t)
    return {"t": t, "nu": nu, "xi_norm": xi_norm, "s": s, "a": a,
            "c_arm": c_arm, "c0": c0, "M": M, "b_max": b_max}


def lowfreq_nodes(params: dict, n_arm: int = 256, n_arc: int = 128):
    """Quadrature nodes (lambda, weight) for the low-frequency contour.

    Returns ``(lam_arc, w_arc, lam_arms, w_arms)``; weights already include
    the map derivative, orientation and the 1/(2 pi i) prefactor, so e.g.
    R1 = sum(w_arc * f(lam_arc)).  All arrays broadcast as s_shape x nodes.
    """
    nu, t = params["nu"], params["t"]
    a = np.asarray(params["a"])[..., None]
    c0 = np.asarray(params["c0"])[..., None]
    M = np.asarray(params["M"])[..., None]
    c_arm = params["c_arm"]

    theta, w_th = _gl(-0.5 * np.pi, 0.5 * np.pi, n_arc)
    lam_arc = c0 + M * np.exp(1j * theta)
    w_arc = w_th * (1j * M * np.exp(1j * theta)) / (2.0j * np.pi)

    beta, w_b = _gl(0.0, BETA_MAX, n_arm)
    scale = 1.0 / np.sqrt(nu * t)
    b = beta * scale
    wplus = a + 1j * b  # upper arm, b in [0, b_max]
    wminus = a - 1j * b  # lower arm traversed toward b = 0
    lam_plus = c_arm + nu * wplus**2 + 1j * M
    lam_minus = c_arm + nu * wminus**2 - 1j * M
    w_plus = w_b * scale * (2j * nu * wplus) / (2.0j * np.pi)
    w_minus = w_b * scale * (2j * nu * wminus) / (2.0j * np.pi)
    lam_arms = np.concatenate([lam_minus, lam_plus], axis=-1)
    w_arms = np.concatenate([w_minus, w_plus], axis=-1)
    return lam_arc, w_arc, lam_arms, w_arms


def build_contour_lowfreq(t: float, nu: float, xi_norm: float, s: float,
                          M: float | None = None, b_max: float | None = None,
                          enclose=None) -> Contour:
    """Low-frequency contour as an explicit Contour object (scalar s).

    ``M``/``b_max`` override the defaults (used by the contour-independence
    checks: any admissible radius gives the same integral).
    """
    params = lowfreq_params(t, nu, xi_norm, float(s), enclose=enclose)
    a = float(params["a"])
    c0 = float(params["c0"])
    c_arm = params["c_arm"]
    if M is not None:
        if abs(c0) >= M:
            raise PoleOnContour("override radius M does not enclose lambda = 0")
        params = dict(params, M=M)
    M = float(params["M"])
    if b_max is not None:
        params = dict(params, b_max=float(b_max))
    b_max = float(params["b_max"])

    arm_minus = Segment(
        "arm_minus", -b_max, 0.0,
        lambda b: c_arm + nu * (a + 1j * b) ** 2 - 1j * M,
        lambda b: 2j * nu * (a + 1j * b) * np.ones_like(b),
    )
    arc = Segment(
        "arc", -0.5 * np.pi, 0.5 * np.pi,
        lambda th: c0 + M * np.exp(1j * th),
        lambda th: 1j * M * np.exp(1j * th),
    )
    arm_plus = Segment(
        "arm_plus", 0.0, b_max,
        lambda b: c_arm + nu * (a + 1j * b) ** 2 + 1j * M,
        lambda b: 2j * nu * (a + 1j * b) * np.ones_like(b),
    )
    return Contour(segments=(arm_minus, arc, arm_plus), encloses_pole_at=0.0 + 0.0j,
                   regime="lowfreq", params=params, arc_index=1)


# ---------------------------------------------------------------------------
# high frequency


def highfreq_params(t: float, nu: float, xi_norm: float, s,
                    pole_mu: float | None = None) -> dict:
    """Geometry of the high-frequency parabola; vectorized over s = y + z.

    ``pole_mu`` is the location (in the mu variable) of the integrand pole the
    parabola must avoid; mu = |xi| (i.e. lambda = 0) for the no-slip kernel.
    theta = 1/2 is selected when the saddle parameter a sits in the danger
    band [pole_mu/2, 3 pole_mu/2].
    """
    if pole_mu is None:
        pole_mu = xi_norm
    s = np.asarray(s, dtype=float)
    a = s / (2.0 * nu * t)
    if pole_mu > 0.0:
        ratio = a / pole_mu
        theta = np.where((ratio >= 0.5) & (ratio <= 1.5), 0.5, 1.0)
    else:
        theta = np.ones_like(a)
    floor = VERTEX_FLOOR_FRACTION * xi_norm
    # keep the floored vertex away from the pole as well as off the cut
    if pole_mu > 0.0 and abs(floor - pole_mu) < 0.5 * pole_mu:
        floor = 0.25 * pole_mu
    a_eff = np.maximum(theta * a, floor)
    # The Bromwich line sweeps across the pole mu = pole_mu exactly when the
    # vertical mu-line Re mu = a_eff ends up left of it; only then does the
    # parabola integral miss the pole contribution and a residue must be
    # added (t -> 0 kills the residue at large a, t -> infinity keeps it).
    crosses = a_eff < pole_mu if pole_mu > 0.0 else np.zeros(a.shape, dtype=bool)
    if pole_mu > 0.0 and np.any(np.abs(a_eff - pole_mu) < 1e-9 * max(pole_mu, 1.0)):
        raise PoleOnContour("parabola passes through the integrand pole")
    b_max = BETA_MAX / np.sqrt(nu * t)
    return {"t": t, "nu": nu, "xi_norm": xi_norm, "s": s, "a": a,
            "theta": theta, "a_eff": a_eff, "pole_mu": pole_mu,
            "crosses_pole": crosses, "b_max": b_max}


def highfreq_nodes(params: dict, n_arm: int = 256):
    """Quadrature nodes (lambda, weight) for the high-frequency parabola.

    Returns ``(lam, w)`` with broadcast shape s_shape x (2 n_arm); weights
    include orientation and 1/(2 pi i).  On this contour the principal root
    satisfies mu = a_eff + i b exactly.
    """
    nu, t, xi_norm = params["nu"], params["t"], params["xi_norm"]
    a_eff = np.asarray(params["a_eff"])[..., None]
    beta, w_b = _gl(0.0, BETA_MAX, n_arm)
    scale = 1.0 / np.sqrt(nu * t)
    b = beta * scale
    mu_up = a_eff + 1j * b
    mu_dn = a_eff - 1j * b  # lower half traversed toward b = 0
    lam_up = -nu * xi_norm**2 + nu * mu_up**2
    lam_dn = -nu * xi_norm**2 + nu * mu_dn**2
    w_up = w_b * scale * (2j * nu * mu_up) / (2.0j * np.pi)
    w_dn = w_b * scale * (2j * nu * mu_dn) / (2.0j * np.pi)
    lam = np.concatenate([lam_dn, lam_up], axis=-1)
    w = np.concatenate([w_dn, w_up], axis=-1)
    return lam, w


def build_contour_highfreq(t: float, nu: float, xi_norm: float, s: float,
                           pole_mu: float | None = None,
                           b_max: float | None = None) -> Contour:
    """High-frequency parabola as an explicit Contour object (scalar s)."""
    params = highfreq_params(t, nu, xi_norm, float(s), pole_mu=pole_mu)
    a_eff = float(params["a_eff"])
    if b_max is not None:
        params = dict(params, b_max=float(b_max))
    b_max = float(params["b_max"])
    vertex = -nu * xi_norm**2

    parabola = Segment(
        "parabola", -b_max, b_max,
        lambda b: vertex + nu * (a_eff + 1j * b) ** 2,
        lambda b: 2j * nu * (a_eff + 1j * b),
    )
    if bool(params["crosses_pole"]):
        pole_lam = vertex + nu * params["pole_mu"] ** 2
        encl = complex(pole_lam)
    else:
        encl = None
    return Contour(segments=(parabola,), encloses_pole_at=encl,
                   regime="highfreq", params=params, arc_index=None)
