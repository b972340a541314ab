"""The positive linear operators and the function inputs they act on.

Polynomial-valued operators (Bernstein, Stancu, Kantorovich and the two
Schurer variants) return a :class:`~hus_lab.polyalg.BernsteinPoly` whose
coefficients are exact whenever the input data are exact. Szasz-Mirakjan and
Beta are evaluated pointwise; Lorentz acts on Taylor data.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import numpy as np
from scipy import integrate, special

from .exactmath import binom
from .polyalg import BernsteinPoly, DomainError, MonomialPoly, evaluate, is_exact

__all__ = [
    "KINDS",
    "OperatorSpec",
    "MissingSampleError",
    "Grid",
    "Step",
    "Taylor",
    "FunctionInput",
    "sample",
    "integral",
    "max_abs",
    "apply_bernstein",
    "apply_stancu",
    "apply_kantorovich",
    "apply_bernstein_schurer",
    "apply_kantorovich_schurer",
    "SzaszValue",
    "szasz_truncation",
    "apply_szasz",
    "apply_beta",
    "apply_lorentz",
    "lorentz_eigenvalue",
    "apply",
]

KINDS = (
    "bernstein",
    "stancu",
    "kantorovich",
    "szasz_mirakjan",
    "beta",
    "bernstein_schurer",
    "kantorovich_schurer",
    "lorentz",
)

NODE_TOL = 1e-12


class MissingSampleError(DomainError):
    """The function input has no value at a node the operator needs."""


@dataclass(frozen=True)
class OperatorSpec:
    """One operator instance: its kind plus the parameters that kind uses."""

    kind: str
    n: int
    p: int = 0
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    truncation: int | None = None

    def __post_init__(self):
        kind = self.kind.replace("-", "_")
        if kind == "szasz":
            kind = "szasz_mirakjan"
        object.__setattr__(self, "kind", kind)
        if kind not in KINDS:
            raise DomainError(f"unknown operator kind {self.kind!r}")
        if not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n}")
        if self.p < 0:
            raise DomainError(f"p must be >= 0, got {self.p}")
        if self.p and kind not in ("bernstein_schurer", "kantorovich_schurer"):
            raise DomainError(f"p is only meaningful for Schurer operators, not {kind}")
        a, b = Fraction(self.a), Fraction(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if (a or b) and kind != "stancu":
            raise DomainError(f"a, b are only meaningful for the Stancu operator, not {kind}")
        if not 0 <= a <= b:
            raise DomainError(f"Stancu parameters need 0 <= a <= b, got a={a}, b={b}")
        if self.truncation is not None:
            if kind != "szasz_mirakjan":
                raise DomainError("truncation applies to the Szasz-Mirakjan operator only")
            if self.truncation < 1:
                raise DomainError("truncation must be positive")

    @property
    def image_degree(self) -> int | None:
        if kind_is_polynomial(self.kind):
            return self.n + self.p
        if self.kind == "lorentz":
            return self.n
        return None

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "n": self.n}
        if self.kind in ("bernstein_schurer", "kantorovich_schurer"):
            out["p"] = self.p
        if self.kind == "stancu":
            out["a"] = _rat(self.a)
            out["b"] = _rat(self.b)
        if self.kind == "szasz_mirakjan" and self.truncation is not None:
            out["truncation"] = self.truncation
        return out


def _rat(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def kind_is_polynomial(kind: str) -> bool:
    return kind in ("bernstein", "stancu", "kantorovich", "bernstein_schurer", "kantorovich_schurer")


# --- function inputs -------------------------------------------------------


@dataclass(frozen=True)
class Grid:
    """Point samples v_i = f(x_i) on strictly increasing nodes."""

    nodes: tuple
    values: tuple
    _lookup: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        nodes = tuple(Fraction(x) if isinstance(x, int) else x for x in self.nodes)
        values = tuple(Fraction(v) if isinstance(v, int) else v for v in self.values)
        if len(nodes) != len(values) or not nodes:
            raise ValueError("grid needs matching, non-empty nodes and values")
        if any(b <= a for a, b in zip(nodes, nodes[1:])):
            raise ValueError("grid nodes must be strictly increasing")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "_lookup", {x: v for x, v in zip(nodes, values) if is_exact(x)})

    def at(self, x):
        if x in self._lookup:
            return self._lookup[x]
        xf = float(x)
        i = bisect.bisect_left([float(t) for t in self.nodes], xf - NODE_TOL)
        if i < len(self.nodes) and abs(float(self.nodes[i]) - xf) <= NODE_TOL * max(1.0, abs(xf)):
            return self.values[i]
        raise MissingSampleError(f"no sample at x = {x}")


@dataclass(frozen=True)
class Step:
    """Piecewise constant: values[i] on [breakpoints[i], breakpoints[i+1])."""

    breakpoints: tuple
    values: tuple

    def __post_init__(self):
        bps = tuple(Fraction(x) if isinstance(x, int) else x for x in self.breakpoints)
        values = tuple(Fraction(v) if isinstance(v, int) else v for v in self.values)
        if len(values) != len(bps) - 1 or not values:
            raise ValueError("step function needs len(values) == len(breakpoints) - 1 >= 1")
        if any(b <= a for a, b in zip(bps, bps[1:])):
            raise ValueError("step breakpoints must be strictly increasing")
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "values", values)

    def at(self, x):
        bps = self.breakpoints
        if x < bps[0] or x > bps[-1]:
            raise MissingSampleError(f"x = {x} outside step support [{bps[0]}, {bps[-1]}]")
        i = min(bisect.bisect_right(bps, x) - 1, len(self.values) - 1)
        return self.values[i]


@dataclass(frozen=True)
class Taylor:
    """Taylor coefficients at the origin: f(z) = sum_k coeffs[k] z^k."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", MonomialPoly(tuple(self.coeffs)).coeffs)

    def as_poly(self) -> MonomialPoly:
        return MonomialPoly(self.coeffs)


FunctionInput = Union[Grid, Step, Taylor, MonomialPoly]


def sample(f: FunctionInput, x):
    """Value of ``f`` at ``x``; polynomial inputs are evaluated exactly."""
    if isinstance(f, Taylor):
        f = f.as_poly()
    if isinstance(f, MonomialPoly):
        return evaluate(f, x)
    if isinstance(f, (Grid, Step)):
        return f.at(x)
    raise TypeError(f"unsupported function input {type(f).__name__}")


def _antiderivative(p: MonomialPoly) -> MonomialPoly:
    return MonomialPoly((0,) + tuple(c / (j + 1) for j, c in enumerate(p.coeffs)))


def integral(f: FunctionInput, lo, hi):
    """Integral of ``f`` over [lo, hi].

    Exact for polynomial and step inputs; grids are integrated as their
    piecewise linear interpolant (composite trapezoid), exact for exact data.
    """
    if isinstance(f, Taylor):
        f = f.as_poly()
    if isinstance(f, MonomialPoly):
        big = _antiderivative(f)
        return evaluate(big, hi) - evaluate(big, lo)
    if isinstance(f, Step):
        bps = f.breakpoints
        if lo < bps[0] or hi > bps[-1]:
            raise DomainError(f"step function does not cover [{lo}, {hi}]")
        total = Fraction(0)
        for left, right, v in zip(bps, bps[1:], f.values):
            a, b = max(left, lo), min(right, hi)
            if b > a:
                total = total + v * (b - a)
        return total
    if isinstance(f, Grid):
        xs, vs = f.nodes, f.values
        if lo < xs[0] or hi > xs[-1]:
            raise DomainError(f"grid does not cover [{lo}, {hi}]")
        total = Fraction(0)
        for (x0, v0), (x1, v1) in zip(zip(xs, vs), zip(xs[1:], vs[1:])):
            a, b = max(x0, lo), min(x1, hi)
            if b <= a:
                continue
            slope = (v1 - v0) / (x1 - x0)
            fa = v0 + slope * (a - x0)
            fb = v0 + slope * (b - x0)
            total = total + (fa + fb) * (b - a) / 2
        return total
    raise DomainError(f"cannot integrate input of type {type(f).__name__}")


def max_abs(f: Grid | Step) -> float:
    """Sup of |f| for sampled or piecewise-constant data."""
    return max(abs(v) for v in f.values)


# --- polynomial-valued operators -------------------------------------------


def _weighted(m: int, values, weight=1) -> BernsteinPoly:
    return BernsteinPoly(tuple(weight * binom(m, k) * v for k, v in enumerate(values)))


def apply_bernstein(n: int, f: FunctionInput) -> BernsteinPoly:
    """B_n f: coefficients C(n, k) f(k/n)."""
    return _weighted(n, [sample(f, Fraction(k, n)) for k in range(n + 1)])


def apply_stancu(n: int, a, b, f: FunctionInput) -> BernsteinPoly:
    """Stancu operator sampling f at (k + a) / (n + b)."""
    OperatorSpec("stancu", n, a=a, b=b)
    a, b = Fraction(a), Fraction(b)
    return _weighted(n, [sample(f, (k + a) / (n + b)) for k in range(n + 1)])


def apply_kantorovich(n: int, f: FunctionInput) -> BernsteinPoly:
    """K_n f: coefficients (n + 1) C(n, k) int_{k/(n+1)}^{(k+1)/(n+1)} f."""
    cells = [integral(f, Fraction(k, n + 1), Fraction(k + 1, n + 1)) for k in range(n + 1)]
    return _weighted(n, cells, n + 1)


def apply_bernstein_schurer(n: int, p: int, f: FunctionInput) -> BernsteinPoly:
    """S_{n,p} f: degree n + p, sampling f at k/n for k = 0..n+p.

    The nodes run past 1 up to (n + p)/n, so the input must cover them.
    """
    m = n + p
    return _weighted(m, [sample(f, Fraction(k, n)) for k in range(m + 1)])


def ks_cells(n: int, p: int, denominator: str = "printed") -> tuple[Fraction, int]:
    """(cell width, leading weight) of the Kantorovich-Schurer operator.

    ``printed`` integrates over cells of width 1/(n+1) with weight n+p+1;
    ``classical`` uses 1/(n+p+1) for both.
    """
    if denominator in ("printed", "n+1"):
        return Fraction(1, n + 1), n + p + 1
    if denominator in ("classical", "n+p+1"):
        return Fraction(1, n + p + 1), n + p + 1
    raise DomainError(f"unknown Kantorovich-Schurer denominator {denominator!r}")


def apply_kantorovich_schurer(
    n: int, p: int, f: FunctionInput, denominator: str = "printed"
) -> BernsteinPoly:
    """L_{n,p} f: (n+p+1) sum_k C(n+p, k) x^k (1-x)^(n+p-k) int_{cell k} f."""
    m = n + p
    width, weight = ks_cells(n, p, denominator)
    cells = [integral(f, k * width, (k + 1) * width) for k in range(m + 1)]
    return _weighted(m, cells, weight)


# --- Szasz-Mirakjan --------------------------------------------------------


@dataclass(frozen=True)
class SzaszValue:
    value: float
    tail_bound: float
    truncation: int


def szasz_truncation(n: int, x: float) -> int:
    """Default number of retained series terms, max(64, ceil(8 n x))."""
    return max(64, math.ceil(8 * n * float(x)))


def _growth(f: FunctionInput) -> tuple[float, int]:
    """(A, d) with |f(t)| <= A (1 + t)^d for t >= 0."""
    if isinstance(f, Taylor):
        f = f.as_poly()
    if isinstance(f, MonomialPoly):
        return float(sum(abs(c) for c in f.coeffs)), f.degree
    return float(max_abs(f)), 0


def apply_szasz(
    n: int, f: FunctionInput, x, truncation: int | None = None, tol: float = 1e-12
) -> SzaszValue:
    """Truncated Szasz-Mirakjan value e^{-nx} sum_{j<=J} f(j/n) (nx)^j / j!.

    The reported ``tail_bound`` is a rigorous bound on the discarded terms,
    using |f(t)| <= A (1 + t)^d and the geometric decay of the Poisson weights
    once j exceeds nx + d.
    """
    x = float(x)
    if x < 0:
        raise DomainError(f"Szasz-Mirakjan needs x >= 0, got {x}")
    if x == 0:
        return SzaszValue(float(sample(f, Fraction(0))), 0.0, 0)
    J = szasz_truncation(n, x) if truncation is None else truncation
    lam = n * x
    log_lam = math.log(lam)
    terms = []
    for j in range(J + 1):
        w = math.exp(-lam + j * log_lam - math.lgamma(j + 1))
        terms.append(float(sample(f, Fraction(j, n))) * w)
    value = math.fsum(terms)

    amp, d = _growth(f)
    rho = lam / (J + 2) * (1 + 1 / (n + J + 1)) ** d
    if rho >= 1:
        tail = math.inf
    else:
        first = amp * (1 + (J + 1) / n) ** d * math.exp(-lam + (J + 1) * log_lam - math.lgamma(J + 2))
        tail = first / (1 - rho)
    if tail > tol:
        raise DomainError(
            f"truncation J={J} leaves a tail bound of {tail:.3g} > {tol:.0e}; raise the truncation"
        )
    return SzaszValue(value, tail, J)


# --- Beta ------------------------------------------------------------------


def apply_beta(n: int, f: FunctionInput, x):
    """Beta operator at x in [0, 1].

    For polynomial f the Beta-function ratios telescope:
    L_n(e_j)(x) = prod_{i<j} (nx + 1 + i) / (n + 2 + i), exact for rational x.
    Grid and step inputs fall back to adaptive quadrature (tolerance 1e-9).
    """
    if isinstance(x, int):
        x = Fraction(x)
    if not 0 <= x <= 1:
        raise DomainError(f"Beta operator needs x in [0, 1], got {x}")
    if isinstance(f, Taylor):
        f = f.as_poly()
    if isinstance(f, MonomialPoly):
        nx = n * x
        total = Fraction(0) if is_exact(x) and f.exact else 0.0
        moment = Fraction(1) if is_exact(x) else 1.0
        for j, c in enumerate(f.coeffs):
            if j:
                moment = moment * (nx + j) / (n + 1 + j)
            total = total + c * moment
        return total
    if isinstance(f, (Grid, Step)):
        return _beta_quadrature(n, f, float(x))
    raise DomainError(f"Beta operator cannot act on {type(f).__name__}")


def _beta_quadrature(n: int, f: Grid | Step, x: float) -> float:
    alpha, beta = n * x + 1, n * (1 - x) + 1
    if isinstance(f, Grid):
        xs = [float(t) for t in f.nodes]
        vs = [float(v) for v in f.values]
        if xs[0] > 0 or xs[-1] < 1:
            raise DomainError("grid must cover [0, 1] for the Beta operator")
        func = lambda t: float(np.interp(t, xs, vs))
        breaks = [t for t in xs if 0 < t < 1]
    else:
        bps = f.breakpoints
        if bps[0] > 0 or bps[-1] < 1:
            raise DomainError("step function must cover [0, 1] for the Beta operator")
        func = lambda t: float(f.at(t))
        breaks = [float(t) for t in bps if 0 < t < 1]
    weight = lambda t: t ** (alpha - 1) * (1 - t) ** (beta - 1)
    num, _ = integrate.quad(
        lambda t: weight(t) * func(t), 0.0, 1.0, points=breaks or None, limit=max(200, 2 * len(breaks) + 50),
        epsabs=1e-12, epsrel=1e-11,
    )
    return num / special.beta(alpha, beta)


# --- Lorentz ---------------------------------------------------------------


def lorentz_eigenvalue(n: int, j: int) -> Fraction:
    """lambda_j = prod_{i=1}^{j-1} (1 - i/n); zero once j exceeds n."""
    if n < 1 or j < 0:
        raise DomainError(f"need n >= 1 and j >= 0, got n={n}, j={j}")
    out = Fraction(1)
    for i in range(1, j):
        out *= Fraction(n - i, n)
    return out


def apply_lorentz(n: int, f: Taylor | MonomialPoly) -> MonomialPoly:
    """L_n f(z) = sum_k C(n, k) (z/n)^k f^(k)(0).

    With f^(k)(0) = k! c_k this scales each Taylor coefficient by lambda_k and
    drops everything past degree n.
    """
    if isinstance(f, Taylor):
        f = f.as_poly()
    if not isinstance(f, MonomialPoly):
        raise DomainError("the Lorentz operator needs Taylor coefficients")
    coeffs = [0] * (n + 1)
    for j, c in enumerate(f.coeffs[: n + 1]):
        coeffs[j] = c * lorentz_eigenvalue(n, j)
    return MonomialPoly(tuple(coeffs))


# --- dispatch ---------------------------------------------------------------


def apply(spec: OperatorSpec, f: FunctionInput, x=None, *, ks_denominator: str = "printed"):
    """Apply the operator described by ``spec``.

    Polynomial-valued kinds return a polynomial; ``szasz_mirakjan`` and
    ``beta`` need the evaluation point ``x``.
    """
    kind, n = spec.kind, spec.n
    if kind == "bernstein":
        return apply_bernstein(n, f)
    if kind == "stancu":
        return apply_stancu(n, spec.a, spec.b, f)
    if kind == "kantorovich":
        return apply_kantorovich(n, f)
    if kind == "bernstein_schurer":
        return apply_bernstein_schurer(n, spec.p, f)
    if kind == "kantorovich_schurer":
        return apply_kantorovich_schurer(n, spec.p, f, ks_denominator)
    if kind == "lorentz":
        return apply_lorentz(n, f)
    if x is None:
        raise DomainError(f"{kind} is evaluated pointwise; supply x")
    if kind == "szasz_mirakjan":
        return apply_szasz(n, f, x, spec.truncation)
    return apply_beta(n, f, x)
