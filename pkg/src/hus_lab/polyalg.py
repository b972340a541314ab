"""Polynomials in the monomial and Lorentz (plain Bernstein) bases.

A Lorentz representation of degree m writes a polynomial as

    p(x) = sum_k c_k x^k (1 - x)^(m - k)

with no binomial weight folded into the basis, so c_k = C(m, k) b_k where b_k
are the usual Bezier control values.

Coefficients are either exact (``int``, :class:`~fractions.Fraction` or
:class:`ExactComplex`) or inexact (``float``/``complex``). Conversions keep
exact inputs exact; norms always return floats.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

import numpy as np

from .exactmath import binom, d_coeff_closed

__all__ = [
    "DomainError",
    "ExactComplex",
    "MonomialPoly",
    "BernsteinPoly",
    "DiskDomain",
    "is_exact",
    "to_bernstein",
    "from_bernstein",
    "chebyshev_bernstein",
    "evaluate",
    "sup_norm_interval",
    "sup_norm_interval_batch",
    "sup_norm_disk",
    "sup_norm_disk_batch",
    "monomial_to_bernstein_matrix",
    "random_unit_polys",
    "bernstein_matrix",
    "BoundCheck",
    "coefficient_bound_check",
]

INTERVAL_GRID = 4097
DISK_GRID = 8192
REFINE_TOL = 1e-12
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class DomainError(ValueError):
    """A parameter lies outside the domain an operation is defined on."""


class ExactComplex:
    """Complex number with rational real and imaginary parts.

    Arithmetic with ints and Fractions stays exact; mixing with floats or
    complex numbers degrades to a Python ``complex``.
    """

    __slots__ = ("real", "imag")

    def __init__(self, real, imag=0):
        self.real = Fraction(real)
        self.imag = Fraction(imag)

    @staticmethod
    def make(real, imag):
        """Build an exact scalar, collapsing to a Fraction when imag == 0."""
        imag = Fraction(imag)
        if imag == 0:
            return Fraction(real)
        return ExactComplex(real, imag)

    def __repr__(self):
        return f"ExactComplex({self.real}, {self.imag})"

    def __complex__(self):
        return complex(float(self.real), float(self.imag))

    def __eq__(self, other):
        if isinstance(other, ExactComplex):
            return self.real == other.real and self.imag == other.imag
        if isinstance(other, Rational):
            return self.imag == 0 and self.real == other
        if isinstance(other, (float, complex)):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        return hash((self.real, self.imag))

    def __neg__(self):
        return ExactComplex(-self.real, -self.imag)

    def __abs__(self):
        return abs(complex(self))

    def _parts(self, other):
        if isinstance(other, ExactComplex):
            return other.real, other.imag
        if isinstance(other, Rational):
            return Fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        parts = self._parts(other)
        if parts is None:
            return complex(self) + other
        return ExactComplex.make(self.real + parts[0], self.imag + parts[1])

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        parts = self._parts(other)
        if parts is None:
            return complex(self) * other
        a, b = self.real, self.imag
        c, d = parts
        return ExactComplex.make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        parts = self._parts(other)
        if parts is None:
            return complex(self) / other
        c, d = parts
        den = c * c + d * d
        a, b = self.real, self.imag
        return ExactComplex.make((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        parts = self._parts(other)
        if parts is None:
            return other / complex(self)
        return ExactComplex.make(*parts) / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return complex(self) ** k
        out = Fraction(1)
        base = self
        while k:
            if k & 1:
                out = base * out
            base = base * base
            k >>= 1
        return out


Scalar = Union[int, Fraction, ExactComplex, float, complex]


def is_exact(x) -> bool:
    return isinstance(x, (Rational, ExactComplex)) and not isinstance(x, bool)


def _normalize(c):
    if isinstance(c, bool):
        raise TypeError("boolean coefficient")
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, (Fraction, ExactComplex, float)):
        return c
    if isinstance(c, complex):
        return c.real if c.imag == 0 else c
    if isinstance(c, np.floating):
        return float(c)
    if isinstance(c, np.complexfloating):
        return complex(c)
    if isinstance(c, np.integer):
        return Fraction(int(c))
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


class _Poly:
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(_normalize(c) for c in self.coeffs)
        if not coeffs:
            raise ValueError("polynomial needs at least one coefficient")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        """Nominal degree; trailing zero coefficients are kept."""
        return len(self.coeffs) - 1

    @property
    def exact(self) -> bool:
        return all(is_exact(c) for c in self.coeffs)

    @property
    def scalar_format(self) -> str:
        return "rational" if self.exact else "float"

    @property
    def is_real(self) -> bool:
        return all(_imag(c) == 0 for c in self.coeffs)

    def as_float(self) -> np.ndarray:
        """Coefficients as a numpy array (float64, or complex128 if needed)."""
        if self.is_real:
            return np.array([float(_real(c)) for c in self.coeffs], dtype=float)
        return np.array([complex(c) for c in self.coeffs], dtype=complex)


def _real(c):
    return c.real if isinstance(c, (ExactComplex, complex)) else c


def _imag(c):
    return c.imag if isinstance(c, (ExactComplex, complex)) else 0


@dataclass(frozen=True)
class MonomialPoly(_Poly):
    """p(x) = sum_j coeffs[j] x^j."""

    coeffs: tuple

    @classmethod
    def monomial(cls, j: int) -> "MonomialPoly":
        """The test function e_j(x) = x^j."""
        return cls((0,) * j + (1,))

    def __call__(self, z):
        return evaluate(self, z)


@dataclass(frozen=True)
class BernsteinPoly(_Poly):
    """p(x) = sum_k coeffs[k] x^k (1 - x)^(m - k), m = degree."""

    coeffs: tuple

    def __call__(self, z):
        return evaluate(self, z)


@dataclass(frozen=True)
class DiskDomain:
    """Closed disk |z| <= radius."""

    radius: float = 1.0

    def __post_init__(self):
        if not self.radius > 0:
            raise DomainError(f"disk radius must be positive, got {self.radius}")


def to_bernstein(p: MonomialPoly, m: int | None = None) -> BernsteinPoly:
    """Lorentz representation of ``p`` at nominal degree ``m``.

    Uses x^j = x^j (x + (1 - x))^(m - j), so a_j contributes a_j C(m - j, i)
    to c_{j + i}.
    """
    if m is None:
        m = p.degree
    if m < p.degree:
        raise DomainError(f"target degree {m} is below polynomial degree {p.degree}")
    out = [Fraction(0)] * (m + 1)
    for j, a in enumerate(p.coeffs):
        if a == 0:
            continue
        for i in range(m - j + 1):
            out[j + i] = out[j + i] + a * binom(m - j, i)
    return BernsteinPoly(tuple(out))


def from_bernstein(b: BernsteinPoly) -> MonomialPoly:
    """Expand a Lorentz representation back into monomial coefficients."""
    m = b.degree
    out = [Fraction(0)] * (m + 1)
    for k, c in enumerate(b.coeffs):
        if c == 0:
            continue
        # x^k (1 - x)^(m-k) = sum_i C(m-k, i) (-1)^i x^(k+i)
        for i in range(m - k + 1):
            term = binom(m - k, i)
            out[k + i] = out[k + i] + (c * term if i % 2 == 0 else -(c * term))
    return MonomialPoly(tuple(out))


def chebyshev_bernstein(m: int) -> BernsteinPoly:
    """T_m(2x - 1) in the Lorentz basis: c_k = (-1)^(m-k) C(2m, 2k)."""
    if m < 1:
        raise DomainError(f"Chebyshev degree must be >= 1, got {m}")
    return BernsteinPoly(
        tuple((-1) ** (m - k) * d_coeff_closed(m, k) for k in range(m + 1))
    )


def evaluate(poly: MonomialPoly | BernsteinPoly, z):
    """Value of ``poly`` at ``z``.

    Exact coefficients and an exact point give an exact result. Otherwise the
    monomial form uses Horner and the Lorentz form uses de Casteljau on the
    scaled control values c_k / C(m, k).
    """
    if isinstance(z, bool):
        raise TypeError("boolean evaluation point")
    if isinstance(z, int):
        z = Fraction(z)
    exact = poly.exact and is_exact(z)
    if isinstance(poly, MonomialPoly):
        acc = Fraction(0) if exact else 0.0
        for a in reversed(poly.coeffs):
            acc = acc * z + a
        return acc if exact else _inexact(acc)
    m = poly.degree
    if exact:
        w = 1 - z
        return sum(
            (c * z**k * w ** (m - k) for k, c in enumerate(poly.coeffs) if c != 0),
            Fraction(0),
        )
    zf = complex(z)
    if zf.imag == 0:
        zf = zf.real
    ctrl = [complex(c) if _imag(c) != 0 else float(_real(c)) for c in poly.coeffs]
    ctrl = [c / math.comb(m, k) for k, c in enumerate(ctrl)]
    for r in range(m):
        ctrl = [(1 - zf) * ctrl[i] + zf * ctrl[i + 1] for i in range(m - r)]
    return _inexact(ctrl[0])


def _inexact(v):
    v = complex(v)
    return v.real if v.imag == 0 else v


# --- sup norms ---------------------------------------------------------------


def bernstein_matrix(x: np.ndarray, m: int) -> np.ndarray:
    """Rows x_i -> [x_i^k (1 - x_i)^(m-k)]_k, shape (len(x), m + 1)."""
    x = np.asarray(x, dtype=float)[..., None]
    k = np.arange(m + 1)
    return x**k * (1.0 - x) ** (m - k)


def _chebyshev_grid(npts: int) -> np.ndarray:
    return 0.5 * (1.0 - np.cos(np.pi * np.arange(npts) / (npts - 1)))


def _local_max_candidates(vals: np.ndarray, periodic: bool):
    """(row, index) of every grid local maximum plus each row's argmax."""
    left = np.roll(vals, 1, axis=1)
    right = np.roll(vals, -1, axis=1)
    if not periodic:
        left[:, 0] = -np.inf
        right[:, -1] = -np.inf
    mask = (vals >= left) & (vals > right)
    mask[np.arange(vals.shape[0]), np.argmax(vals, axis=1)] = True
    return np.nonzero(mask)


def _golden_max(f, lo: np.ndarray, hi: np.ndarray, tol: float):
    """Vectorized golden-section maximization of f over brackets [lo, hi]."""
    a, b = lo.copy(), hi.copy()
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    width = float(np.max(b - a)) if a.size else 0.0
    iters = 0 if width <= tol else int(math.ceil(math.log(tol / width) / math.log(_INV_PHI)))
    for _ in range(iters):
        go_left = fc >= fd
        b = np.where(go_left, d, b)
        a = np.where(go_left, a, c)
        new_c = b - _INV_PHI * (b - a)
        new_d = a + _INV_PHI * (b - a)
        # reuse the surviving interior point
        c_next = np.where(go_left, new_c, d)
        d_next = np.where(go_left, c, new_d)
        fc_next = np.where(go_left, np.nan, fd)
        fd_next = np.where(go_left, fc, np.nan)
        c, d = c_next, d_next
        need_c = np.isnan(fc_next)
        need_d = np.isnan(fd_next)
        if need_c.any():
            fc_next[need_c] = f(c, need_c)
        if need_d.any():
            fd_next[need_d] = f(d, need_d)
        fc, fd = fc_next, fd_next
    x = np.where(fc >= fd, c, d)
    return x, np.maximum(fc, fd)


def sup_norm_interval_batch(coeffs: np.ndarray, npts: int = INTERVAL_GRID):
    """Sup norms over [0, 1] of many real Lorentz-basis polynomials at once.

    ``coeffs`` has shape (rows, m + 1). Returns (norms, argmax abscissae).
    Every grid local maximum is refined by golden-section search to an
    abscissa tolerance of 1e-12, so equioscillating extremals are resolved.
    """
    coeffs = np.atleast_2d(np.asarray(coeffs, dtype=float))
    rows, width = coeffs.shape
    m = width - 1
    grid = _chebyshev_grid(npts)
    vals = np.abs(coeffs @ bernstein_matrix(grid, m).T)
    best = vals.max(axis=1)
    best_x = grid[np.argmax(vals, axis=1)]
    if m == 0:
        return best, best_x
    r_idx, g_idx = _local_max_candidates(vals, periodic=False)
    lo = grid[np.maximum(g_idx - 1, 0)]
    hi = grid[np.minimum(g_idx + 1, npts - 1)]
    cand = coeffs[r_idx]

    def f(x, sel=None):
        c = cand if sel is None else cand[sel]
        return np.abs(np.einsum("ij,ij->i", c, bernstein_matrix(x if sel is None else x[sel], m)))

    x, v = _golden_max(f, lo, hi, REFINE_TOL)
    refined = np.full(rows, -np.inf)
    np.maximum.at(refined, r_idx, v)
    hit = v == refined[r_idx]
    refined_x = np.zeros(rows)
    refined_x[r_idx[hit]] = x[hit]
    # grid nodes (including both endpoints) stay valid when refinement loses
    upd = refined > best
    return np.where(upd, refined, best), np.where(upd, refined_x, best_x)


def _require_real(poly) -> None:
    for c in poly.coeffs:
        im = _imag(c)
        if abs(float(im)) > 1e-14:
            raise DomainError("interval sup norm needs real coefficients")


def sup_norm_interval(poly: MonomialPoly | BernsteinPoly) -> tuple[float, float]:
    """(max over [0, 1] of |p(x)|, abscissa where it is attained)."""
    _require_real(poly)
    if isinstance(poly, MonomialPoly):
        poly = to_bernstein(poly)
    row = np.array([float(_real(c)) for c in poly.coeffs])
    norms, xs = sup_norm_interval_batch(row[None, :])
    return float(norms[0]), float(xs[0])


def monomial_to_bernstein_matrix(m: int) -> np.ndarray:
    """Float matrix M with c = M a for monomial coefficients a at degree m."""
    mat = np.zeros((m + 1, m + 1))
    for j in range(m + 1):
        for i in range(m - j + 1):
            mat[j + i, j] = math.comb(m - j, i)
    return mat


def sup_norm_disk_batch(monomial_coeffs: np.ndarray, radius: float = 1.0) -> np.ndarray:
    """Sup norms over |z| <= radius for rows of monomial coefficients.

    By the maximum-modulus principle only the circle |z| = radius is searched:
    8192 equally spaced angles, then golden-section refinement of every local
    maximum of |p(R e^{i t})|.
    """
    a = np.atleast_2d(np.asarray(monomial_coeffs)).astype(complex)
    rows, width = a.shape
    R = float(DiskDomain(radius).radius)
    powers = np.arange(width)
    theta = 2.0 * np.pi * np.arange(DISK_GRID) / DISK_GRID

    def circle(t):
        return (R * np.exp(1j * np.asarray(t)))[..., None] ** powers

    vals = np.abs(a @ circle(theta).T)
    best = vals.max(axis=1)
    if width == 1:
        return best
    r_idx, g_idx = _local_max_candidates(vals, periodic=True)
    step = 2.0 * np.pi / DISK_GRID
    cand = a[r_idx]

    def f(t, sel=None):
        c = cand if sel is None else cand[sel]
        return np.abs(np.einsum("ij,ij->i", c, circle(t if sel is None else t[sel])))

    _, v = _golden_max(f, theta[g_idx] - step, theta[g_idx] + step, REFINE_TOL)
    refined = np.full(rows, -np.inf)
    np.maximum.at(refined, r_idx, v)
    return np.maximum(best, refined)


def sup_norm_disk(poly: MonomialPoly | BernsteinPoly, disk: DiskDomain | float = 1.0) -> float:
    """max over |z| <= R of |p(z)|."""
    if not isinstance(disk, DiskDomain):
        disk = DiskDomain(float(disk))
    if isinstance(poly, BernsteinPoly):
        poly = from_bernstein(poly)
    return float(sup_norm_disk_batch(poly.as_float()[None, :], disk.radius)[0])


# --- random polynomials and the coefficient bound --------------------------


def random_unit_polys(m: int, count: int, rng: np.random.Generator):
    """``count`` random real degree-m polynomials with unit sup norm on [0, 1].

    Monomial coefficients are drawn uniformly from [-1, 1] and the result is
    returned in the Lorentz basis as a (count, m + 1) float array, along with
    the pre-scaling norms.
    """
    a = rng.uniform(-1.0, 1.0, size=(count, m + 1))
    c = a @ monomial_to_bernstein_matrix(m).T
    norms, _ = sup_norm_interval_batch(c)
    return c / norms[:, None], norms


@dataclass(frozen=True)
class BoundCheck:
    degree: int
    trials: int
    seed: int
    max_ratio: float
    chebyshev_ratio: float
    chebyshev_exact: bool
    chebyshev_norm: float

    @property
    def bound_holds(self) -> bool:
        return self.max_ratio <= 1.0 + 1e-9

    @property
    def chebyshev_equality(self) -> bool:
        return self.chebyshev_exact and abs(self.chebyshev_norm - 1.0) <= 1e-10

    @property
    def passed(self) -> bool:
        return self.bound_holds and self.chebyshev_equality


def coefficient_bound_check(
    degree: int, trials: int, seed: int = 0, chunk: int = 2000
) -> BoundCheck:
    """Test |c_k| <= C(2m, 2k) ||p|| on random polynomials plus the extremal case.

    ``max_ratio`` is the largest |c_k| / (d_{m,k} ||p||) seen over all random
    trials; ``chebyshev_ratio`` is the same quantity for T_m(2x - 1), which
    must be 1.
    """
    if degree < 1 or trials < 0:
        raise DomainError("need degree >= 1 and trials >= 0")
    d = np.array([float(d_coeff_closed(degree, k)) for k in range(degree + 1)])
    rng = np.random.default_rng(seed)
    worst = 0.0
    done = 0
    while done < trials:
        size = min(chunk, trials - done)
        c, _ = random_unit_polys(degree, size, rng)
        worst = max(worst, float(np.max(np.abs(c) / d)))
        done += size

    cheb = chebyshev_bernstein(degree)
    cheb_exact = all(abs(c) == d_coeff_closed(degree, k) for k, c in enumerate(cheb.coeffs))
    cheb_norm, _ = sup_norm_interval(cheb)
    cheb_ratio = float(np.max(np.abs(cheb.as_float()) / (d * cheb_norm)))
    return BoundCheck(
        degree=degree,
        trials=trials,
        seed=seed,
        max_ratio=worst,
        chebyshev_ratio=cheb_ratio,
        chebyshev_exact=cheb_exact,
        chebyshev_norm=cheb_norm,
    )
