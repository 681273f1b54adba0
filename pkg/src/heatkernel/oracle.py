"""Independent numerical ground truth for the closed-form kernels.

Two unrelated routes are provided:

  * truncated-lattice evolution: restrict the band operator to a finite
    window [-W, W] (rows at the boundary simply drop out-of-window
    couplings) and apply the matrix exponential;

  * contour quadrature on a circle around the origin for the spectral
    representation of the kernel and the wave-function orthogonality
    relation.

The quadrature contour must avoid x = +/-1, where the wave-function
products genuinely blow up; a circle of radius 1/2 is used (any radius
other than 0 and 1 gives the same integral because the residues at +/-1
vanish), on which the trapezoid rule converges geometrically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from .bessel import bessel_row
from .kernel import kernel_eval
from .taudarboux import (
    BandOperator,
    ParamVector,
    ensure_regular,
    wave_p,
    wave_p_star_via_adjoint,
)


class WindowTooSmall(ValueError):
    """Boundary influence estimate exceeds the certification threshold."""


class NoConvergence(ArithmeticError):
    """Quadrature failed to settle below tolerance at the node limit."""


class GridMismatch(ValueError):
    """Closed-form and oracle value lists disagree in shape."""


@dataclass(frozen=True)
class LatticeWindow:
    """Dense restriction of a band operator to the sites [-W, W]."""

    W: int
    matrix: np.ndarray = field(repr=False)

    def index(self, n: int) -> int:
        if abs(n) > self.W:
            raise IndexError(f"site {n} outside window [-{self.W}, {self.W}]")
        return n + self.W


def lattice_window(L: BandOperator, W: int) -> LatticeWindow:
    """Evaluate the operator coefficients on the window (exactly, then float)."""
    size = 2 * W + 1
    M = np.zeros((size, size))
    for n in range(-W, W + 1):
        for j in L.coeffs:
            col = n + j
            if -W <= col <= W:
                M[n + W, col + W] = float(L.coeff_at(j, n))
    return LatticeWindow(W=W, matrix=M)


def boundary_influence(W: int, m: int, t: float) -> float:
    """Free-kernel proxy for the mass that can reach the window boundary:
    e^{-2t} I_{W-|m|}(2t) scaled back by e^{2t}."""
    k = W - abs(m)
    row = bessel_row(2.0 * t, k)
    return row.scaled(k) * math.exp(2.0 * t)


_PROPAGATORS: dict = {}


def _propagator(L: BandOperator, W: int, t: float) -> np.ndarray:
    key = (repr(sorted(L.to_json()["coeffs"], key=str)), W, float(t))
    if key not in _PROPAGATORS:
        _PROPAGATORS[key] = expm(t * lattice_window(L, W).matrix)
    return _PROPAGATORS[key]


def lattice_evolve(L: BandOperator, W: int, m: int, t: float,
                   tail_tol: float = 1e-11) -> dict:
    """exp(t L_W) delta_m on the window, with the boundary-influence bound.

    Returns {"sites": [-W..W], "values": array, "tail_bound": float}.
    Raises WindowTooSmall when the free-kernel tail bound exceeds tail_tol.
    """
    if abs(m) > W // 2:
        raise ValueError(f"source site {m} too close to the boundary (W={W})")
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t == 0:
        values = np.zeros(2 * W + 1)
        values[m + W] = 1.0
        return {"sites": list(range(-W, W + 1)), "values": values, "tail_bound": 0.0}
    bound = boundary_influence(W, m, t)
    if bound > tail_tol:
        raise WindowTooSmall(f"tail bound {bound:.3e} exceeds {tail_tol:.1e}")
    P = _propagator(L, W, t)
    return {
        "sites": list(range(-W, W + 1)),
        "values": P[:, m + W].copy(),
        "tail_bound": bound,
    }


def lattice_value(L: BandOperator, W: int, n: int, m: int, t: float) -> float:
    return float(lattice_evolve(L, W, m, t)["values"][n + W])


@dataclass(frozen=True)
class QuadratureSpec:
    """Unit-circle-family contour rule for the spectral integrands.

    radius must avoid 0 and 1; midpoint angles additionally keep the nodes
    off the real axis crossings at theta = 0, pi.
    """

    integrand: str                 # 'orthogonality' | 'kernel' | 'kernel_adjoint'
    radius: float = 0.5
    n_start: int = 64
    n_max: int = 2 ** 16
    tol: float = 1e-12

    def __post_init__(self):
        if self.integrand not in ("orthogonality", "kernel", "kernel_adjoint"):
            raise ValueError(f"unknown integrand {self.integrand!r}")
        if self.radius in (0.0, 1.0):
            raise ValueError("radius must avoid 0 and 1")


def _laurent_np(lp) -> callable:
    pairs = [(e, float(c)) for e, c in lp.terms.items()]

    def ev(z):
        out = np.zeros_like(z)
        for e, c in pairs:
            out = out + c * z ** e
        return out

    return ev


def _ratfunc_np(rf) -> callable:
    num, den = _laurent_np(rf.num), _laurent_np(rf.den)
    return lambda z: num(z) / den(z)


def circle_quadrature(spec: QuadratureSpec, params: ParamVector,
                      n: int, m: int, t: float | None = None) -> float:
    """Midpoint trapezoid value of the requested contour integral.

    Doubles the node count until two successive values differ by less than
    spec.tol; the imaginary part must sit below 1e-12 and is discarded.
    """
    tau = ensure_regular(params)
    pn = _ratfunc_np(wave_p(params, n).value)
    if spec.integrand == "kernel_adjoint":
        ps = _ratfunc_np(wave_p_star_via_adjoint(params, m + 1).value)
    else:
        pm_inv = _ratfunc_np(wave_p(params, m).value.inverse_var())

    if spec.integrand in ("kernel", "kernel_adjoint") and t is None:
        raise ValueError("kernel integrands need a time value")

    def value(N: int) -> complex:
        theta = 2.0 * np.pi * (np.arange(N) + 0.5) / N
        z = spec.radius * np.exp(1j * theta)
        if spec.integrand == "orthogonality":
            h = pn(z) * pm_inv(z)
        elif spec.integrand == "kernel":
            weight = np.exp(t * (z + 1.0 / z) - 2.0 * t)
            h = float(tau.ratio(m, m + 1)) * weight * pn(z) * pm_inv(z)
        else:
            weight = np.exp(t * (z + 1.0 / z) - 2.0 * t)
            h = weight * pn(z) * ps(z) * z
        return complex(np.mean(h))

    N = spec.n_start
    prev = value(N)
    while N <= spec.n_max // 2:
        N *= 2
        cur = value(N)
        if abs(cur - prev) < spec.tol:
            if abs(cur.imag) > 1e-12:
                raise NoConvergence(f"imaginary part {cur.imag:.3e} did not cancel")
            return cur.real
        prev = cur
    raise NoConvergence(f"no convergence up to N = {spec.n_max}")


def orthogonality_gram(params: ParamVector, size: int) -> np.ndarray:
    """Gram matrix of the wave functions over n, m in [0, size-1]."""
    spec = QuadratureSpec(integrand="orthogonality")
    G = np.zeros((size, size))
    for i in range(size):
        for j in range(size):
            G[i, j] = circle_quadrature(spec, params, i, j)
    return G


@dataclass(frozen=True)
class ComparisonReport:
    """Machine-readable closed-form vs oracle deviation summary."""

    grid: tuple
    closed: tuple
    oracle: tuple
    tolerance: float
    max_abs: float
    max_rel: float
    passed: bool

    def to_json(self) -> dict:
        return {
            "grid": [list(g) for g in self.grid],
            "max_abs": self.max_abs,
            "max_rel": self.max_rel,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }

    def to_csv(self) -> str:
        lines = ["n,m,t,closed,oracle,diff"]
        for (n, m, t), c, o in zip(self.grid, self.closed, self.oracle):
            lines.append(f"{n},{m},{t!r},{c!r},{o!r},{c - o!r}")
        return "\n".join(lines) + "\n"


def compare_report(grid, closed_values, oracle_values, tolerance: float) -> ComparisonReport:
    """Max absolute/relative deviation over a shared evaluation grid."""
    grid = tuple(tuple(g) for g in grid)
    closed = tuple(float(v) for v in closed_values)
    oracle = tuple(float(v) for v in oracle_values)
    if not (len(grid) == len(closed) == len(oracle)):
        raise GridMismatch(
            f"lengths differ: grid {len(grid)}, closed {len(closed)}, oracle {len(oracle)}")
    max_abs = 0.0
    max_rel = 0.0
    for c, o in zip(closed, oracle):
        d = abs(c - o)
        max_abs = max(max_abs, d)
        max_rel = max(max_rel, d / max(abs(o), 1e-300))
    return ComparisonReport(
        grid=grid, closed=closed, oracle=oracle, tolerance=tolerance,
        max_abs=max_abs, max_rel=max_rel, passed=max_abs <= tolerance,
    )


def compare_kernel_to_lattice(params: ParamVector, operator: BandOperator,
                              pairs, ts, W: int = 200,
                              tolerance: float = 1e-10) -> ComparisonReport:
    """Closed-form kernels against the windowed matrix exponential.

    `pairs` is an iterable of (n, m); the propagator for each t is computed
    once and shared by every pair.
    """
    from .kernel import assemble_kernel

    grid = []
    closed = []
    oracle = []
    pairs = list(pairs)
    formulas = {}
    for (n, m) in pairs:
        formulas[(n, m)] = assemble_kernel(params, n, m)
    for t in ts:
        P = _propagator(operator, W, float(t))
        for (n, m) in pairs:
            grid.append((n, m, float(t)))
            closed.append(kernel_eval(formulas[(n, m)], float(t)))
            oracle.append(float(P[n + W, m + W]))
    return compare_report(grid, closed, oracle, tolerance)
