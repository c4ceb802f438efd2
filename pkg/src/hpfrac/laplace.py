"""Numerical Laplace transform layer.

Forward transform by exact integration of the piecewise-linear interpolant,
inverse transform by fixed-Talbot contour quadrature, and the Bromwich
abscissa / constraint-region maps used to justify term-by-term inversion.

The Talbot contour necessarily visits the left half-plane, so transform
callables passed to :func:`invert_lt` must be the analytic continuations of
their defining series (principal branches); a callable may raise
:class:`BranchError` at a node, which is reported as :class:`ContourError`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, NamedTuple

import numpy as np

from .errors import BranchError, ContourError, DomainError, TailError
from .operators import SampledSignal

__all__ = [
    "ContourConfig",
    "ConstraintMap",
    "forward_lt",
    "invert_lt",
    "constraint_map",
]


@dataclass(frozen=True)
class ContourConfig:
    """Talbot contour parameters.

    ``abscissa_c`` shifts the whole contour to the right (useful when a
    singularity sits close to the origin); ``talbot_shape`` scales the
    contour radius r = shape * node_count / (5 t).
    """

    node_count: int = 32
    abscissa_c: float = 1e-9
    talbot_shape: float = 1.0

    def __post_init__(self):
        if self.node_count < 8:
            raise DomainError("node_count must be at least 8")
        if self.abscissa_c <= 0:
            raise DomainError("abscissa_c must be positive")
        if self.talbot_shape <= 0:
            raise DomainError("talbot_shape must be positive")


class ForwardResult(NamedTuple):
    value: complex
    tail_estimate: float


def forward_lt(f: SampledSignal, s: complex, tail_tol: float = 1e-3,
               return_tail: bool = False):
    """Finite Laplace transform int_0^T exp(-s t) f(t) dt of the samples.

    The piecewise-linear interpolant of f is integrated exactly against
    exp(-s t).  The neglected tail beyond T is estimated by fitting an
    exponential decay rate to the last decade of samples; a tail estimate
    above ``tail_tol`` raises :class:`TailError`.
    """
    s = complex(s)
    if s == 0:
        raise DomainError("forward_lt needs s != 0")
    h = f.step
    v = f.values
    t = f.times
    # int_0^h exp(-s(tj+u)) (fj + d u/h) du, exact per segment
    e = np.exp(-s * t[:-1])
    emh = np.exp(-s * h)
    d = v[1:] - v[:-1]
    seg = e * (v[:-1] * (1.0 - emh) / s + d * (1.0 - emh * (1.0 + s * h)) / (s * s * h))
    value = complex(np.sum(seg))

    # Tail: fit |f| ~ A exp(-b t) over the last decade of the grid.
    T = t[-1]
    n_dec = max(4, v.size // 10)
    mags = np.abs(v[-n_dec:])
    fT = mags[-1]
    if np.all(mags > 0):
        slope = np.polyfit(t[-n_dec:], np.log(mags), 1)[0]
        b = max(0.0, -slope)
    else:
        b = 0.0
    denom = np.real(s) + b
    tail = float(fT * abs(np.exp(-s * T)) / denom) if denom > 0 else float("inf")
    if tail > tail_tol:
        raise TailError(
            f"tail estimate {tail:.3e} beyond T={T} exceeds tolerance {tail_tol}")
    if return_tail:
        return ForwardResult(value, tail)
    return value


def invert_lt(F: Callable[[complex], complex], t: float,
              cfg: ContourConfig = ContourConfig()) -> complex:
    """Inverse Laplace transform at time t by fixed-Talbot quadrature.

    Midpoint rule over the full contour theta in (-pi, pi), so transforms
    without conjugate symmetry (complex-valued originals) are handled.
    """
    if t <= 0:
        raise DomainError(f"invert_lt needs t > 0, got {t}")
    m = cfg.node_count
    r = cfg.talbot_shape * m / (5.0 * t)
    theta = -np.pi + (np.arange(m) + 0.5) * (2.0 * np.pi / m)
    cot = 1.0 / np.tan(theta)
    s_nodes = cfg.abscissa_c + r * theta * (cot + 1j)
    sigma = theta + (theta * cot - 1.0) * cot
    total = 0.0 + 0.0j
    for sk, sig in zip(s_nodes, sigma):
        try:
            fv = F(complex(sk))
        except BranchError as exc:
            raise ContourError(
                f"transform not evaluable at contour node s={sk}: {exc}") from exc
        total += np.exp(sk * t) * fv * (1.0 + 1j * sig)
    return complex(r / m * total)


@dataclass(frozen=True)
class ConstraintMap:
    """Indicator of |A / (s^mu (1 - omega s^-rho)^gamma)| < 1 on a grid.

    ``modulus`` stores the left-hand side per cell; ``min_abscissa`` is the
    smallest grid x > 0 whose whole vertical line (within the window) also
    satisfies Re(s) > 0 and |omega s^-rho| < 1, or None.
    """

    xs: np.ndarray
    ys: np.ndarray
    indicator: np.ndarray
    modulus: np.ndarray
    min_abscissa: Optional[float]


def constraint_map(A: float, mu: float, omega: complex, rho: float,
                   gamma: float, window: tuple, resolution: int = 64) -> ConstraintMap:
    """Evaluate the series-convergence constraint over a rectangular window.

    ``window`` is (x_min, x_max, y_min, y_max) for s = x + i y.
    """
    if resolution < 16:
        raise DomainError("resolution must be at least 16")
    x0, x1, y0, y1 = window
    xs = np.linspace(x0, x1, resolution)
    ys = np.linspace(y0, y1, resolution)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    S = X + 1j * Y
    with np.errstate(divide="ignore", invalid="ignore"):
        w = omega * S ** (-rho)
        denom = np.abs(S ** mu * (1.0 - w) ** gamma)
        modulus = np.where(denom > 0, abs(A) / denom, np.inf)
    indicator = modulus < 1.0
    ok_branch = (np.abs(w) < 1.0) & (X > 0)
    column_ok = np.all(indicator & ok_branch, axis=1)
    hits = np.nonzero(column_ok)[0]
    min_abscissa = float(xs[hits[0]]) if hits.size else None
    return ConstraintMap(xs=xs, ys=ys, indicator=indicator,
                         modulus=modulus, min_abscissa=min_abscissa)
