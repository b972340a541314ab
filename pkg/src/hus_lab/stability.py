"""Hyers-Ulam stability constants, preimages and instability evidence.

For the polynomial-valued operators the best constant is the norm of the
inverse of the induced quotient operator. Every such operator here reads its
input through finitely many scalars (samples or cell integrals), so that
inverse norm reduces to

    sup_{||q|| <= 1} weight * max_k |c_k(q)| / C(m, k)

over Lorentz coefficients c_k(q). The coefficient bound |c_k| <= C(2m, 2k)
||q|| on [0, 1] caps it and T_m(2x - 1) attains the cap.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from .exactmath import binom, peak_indices, ratio_sequence
from .operators import (
    Grid,
    OperatorSpec,
    Step,
    ks_cells,
    lorentz_eigenvalue,
)
from .polyalg import (
    BernsteinPoly,
    DomainError,
    chebyshev_bernstein,
    monomial_to_bernstein_matrix,
    sup_norm_disk,
    sup_norm_disk_batch,
    sup_norm_interval,
    sup_norm_interval_batch,
)

__all__ = [
    "STABLE",
    "UNSTABLE",
    "UNSTABLE_CITED",
    "Certificate",
    "StabilityReport",
    "preimage_weight",
    "closed_K",
    "preimage_bs",
    "preimage_ks",
    "preimage_value",
    "EmpiricalResult",
    "empirical_inverse_norm",
    "LorentzReport",
    "lorentz_instability_report",
]

STABLE = "stable"
UNSTABLE = "unstable"
UNSTABLE_CITED = "unstable_cited"

SHARD_SIZE = 1000
COEFF_SCALE = 10**6

BERNSTEIN_NOTE = (
    "bernstein: the tabulated best constant C(2n, 2[n/2]) differs from the "
    "Stancu a=b=0 / Schurer p=0 value C(2n, 2[n/2]) / C(n, [n/2]) = {alt} for "
    "the same operator; both are reported, K_exact carries the tabulated value"
)
DISK_NOTE = (
    "exploratory: norm=disk(R={R}); the closed-form constants are derived for "
    "the sup norm on [0, 1]. The extremal T_m(2z-1) has disk norm {dn:.17g}, not 1"
)
LORENTZ_KERNEL_NOTE = (
    "L_n(e_j) = 0 for every j > n, so L_n is not injective on analytic "
    "functions; kernel witness e_{w}"
)


@dataclass(frozen=True)
class Certificate:
    """The Chebyshev witness and the exact value its preimage attains."""

    extremal: BernsteinPoly
    attained: Fraction
    norm_check: float


@dataclass
class StabilityReport:
    operator: OperatorSpec
    status: str
    K_exact: Fraction | None = None
    K_float: float | None = None
    empirical_lower_bound: float | None = None
    certificate: Certificate | None = None
    notes: list[str] = field(default_factory=list)
    config: dict = field(default_factory=dict)


def preimage_weight(spec: OperatorSpec, ks_denominator: str = "printed") -> Fraction:
    """Scale factor between max_k |c_k| / C(m, k) and the preimage sup norm."""
    if spec.kind == "kantorovich_schurer":
        width, weight = ks_cells(spec.n, spec.p, ks_denominator)
        return 1 / (width * weight)
    return Fraction(1)


def _degree(spec: OperatorSpec) -> int:
    return spec.n + spec.p


def _schurer_constant(m: int) -> Fraction:
    seq = ratio_sequence(m)
    return seq[min(peak_indices(m))]


def _certificate(spec: OperatorSpec, weight: Fraction) -> Certificate:
    m = _degree(spec)
    cheb = chebyshev_bernstein(m)
    attained = weight * max(Fraction(abs(c)) / binom(m, k) for k, c in enumerate(cheb.coeffs))
    norm, _ = sup_norm_interval(cheb)
    return Certificate(cheb, attained, norm)


def closed_K(
    spec: OperatorSpec,
    *,
    ks_denominator: str = "printed",
    norm: str = "interval",
    radius: float = 1.0,
) -> StabilityReport:
    """Closed-form stability status and best constant for one operator."""
    kind = spec.kind
    config = {"norm": norm, "ks_denominator": ks_denominator}
    if norm == "disk":
        config["radius"] = radius
    elif norm != "interval":
        raise DomainError(f"unknown norm {norm!r}")

    if kind in ("szasz_mirakjan", "beta"):
        return StabilityReport(
            spec,
            UNSTABLE_CITED,
            notes=[f"{kind}: instability is taken from the literature; no numeric evidence is generated"],
            config=config,
        )
    if kind == "lorentz":
        notes = [
            "eigenvalues prod_{i<j}(1 - i/n) on e_j have unbounded reciprocals; "
            "see the instability report",
            LORENTZ_KERNEL_NOTE.format(w=spec.n + 1),
        ]
        return StabilityReport(spec, UNSTABLE, notes=notes, config=config)

    m = _degree(spec)
    weight = preimage_weight(spec, ks_denominator)
    sharp = weight * _schurer_constant(m)
    notes: list[str] = []
    if kind == "bernstein":
        K = Fraction(binom(2 * m, 2 * (m // 2)))
        notes.append(BERNSTEIN_NOTE.format(alt=f"{sharp.numerator}/{sharp.denominator}"))
    else:
        K = sharp
    cert = _certificate(spec, weight)
    lower = float(cert.attained)
    if norm == "disk":
        dn = sup_norm_disk(cert.extremal, radius)
        notes.append(DISK_NOTE.format(R=radius, dn=dn))
        lower = float(cert.attained) / dn
    return StabilityReport(
        spec,
        STABLE,
        K_exact=K,
        K_float=float(K),
        empirical_lower_bound=lower,
        certificate=cert,
        notes=notes,
        config=config,
    )


# --- preimages ---------------------------------------------------------------


def _check_degree(n: int, p: int, q: BernsteinPoly) -> int:
    m = n + p
    if q.degree != m:
        raise DomainError(f"q has degree {q.degree}, expected n + p = {m}")
    return m


def preimage_bs(n: int, p: int, q: BernsteinPoly) -> Grid:
    """Minimal-norm preimage of q under S_{n,p}: f(k/n) = c_k / C(n+p, k)."""
    m = _check_degree(n, p, q)
    return Grid(
        tuple(Fraction(k, n) for k in range(m + 1)),
        tuple(c / binom(m, k) for k, c in enumerate(q.coeffs)),
    )


def preimage_ks(n: int, p: int, q: BernsteinPoly, denominator: str = "printed") -> Step:
    """Minimal-norm step preimage of q under L_{n,p}.

    On the k-th cell the value is c_k / (weight * width * C(n+p, k)), which
    for the printed operator is (n+1) c_k / ((n+p+1) C(n+p, k)).
    """
    m = _check_degree(n, p, q)
    width, weight = ks_cells(n, p, denominator)
    scale = 1 / (weight * width)
    return Step(
        tuple(k * width for k in range(m + 2)),
        tuple(scale * c / binom(m, k) for k, c in enumerate(q.coeffs)),
    )


def preimage_value(spec: OperatorSpec, q: BernsteinPoly, ks_denominator: str = "printed"):
    """Quotient norm of the preimage of q, i.e. weight * max_k |c_k| / C(m, k)."""
    m = _degree(spec)
    weight = preimage_weight(spec, ks_denominator)
    return weight * max(abs(c) / binom(m, k) for k, c in enumerate(q.coeffs))


# --- empirical inverse norm ------------------------------------------------------


@dataclass(frozen=True)
class EmpiricalResult:
    """Lower bound on the inverse norm found by sampling unit-norm q."""

    value: float
    witness: BernsteinPoly
    trials: int
    seed: int
    shards: int
    certificate_included: bool
    norm: str
    max_sampled: float


def _shard_rng(seed: int, shard: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(shard,)))


def _sample_shard(m: int, count: int, rng, norm: str, radius: float):
    """(ratio-ready Lorentz coefficients, norms) for ``count`` random q."""
    numer = rng.integers(-COEFF_SCALE, COEFF_SCALE, size=(count, m + 1), endpoint=True)
    mono = numer.astype(float) / COEFF_SCALE
    bern = numer.astype(float) @ monomial_to_bernstein_matrix(m).T / COEFF_SCALE
    if norm == "interval":
        norms, _ = sup_norm_interval_batch(bern)
    else:
        norms = sup_norm_disk_batch(mono, radius)
    return bern, norms


def empirical_inverse_norm(
    spec: OperatorSpec,
    trials: int,
    seed: int = 0,
    include_certificate: bool = True,
    *,
    candidates: Iterable[BernsteinPoly] = (),
    norm: str = "interval",
    radius: float = 1.0,
    ks_denominator: str = "printed",
    shard_size: int = SHARD_SIZE,
) -> EmpiricalResult:
    """Sample sup over ||q|| <= 1 of the preimage quotient norm.

    Random q have monomial coefficients k / 10^6 with k uniform in
    [-10^6, 10^6], converted to degree n + p and normalized by their sup
    norm. Trials are split into fixed-size shards, shard i seeded from
    (seed, i), and merged by maximum; a longer run therefore sees every q of a
    shorter one. With ``include_certificate`` the Chebyshev witness is always
    one of the candidates.
    """
    if spec.kind not in ("bernstein_schurer", "kantorovich_schurer"):
        raise DomainError(f"empirical inverse norm is defined for the Schurer operators, not {spec.kind}")
    if trials < 0:
        raise DomainError("trials must be >= 0")
    if norm not in ("interval", "disk"):
        raise DomainError(f"unknown norm {norm!r}")
    m = _degree(spec)
    scaled = np.array([1.0 / binom(m, k) for k in range(m + 1)]) * float(
        preimage_weight(spec, ks_denominator)
    )

    best, witness = -np.inf, None
    shards = 0
    done = 0
    while done < trials:
        size = min(shard_size, trials - done)
        bern, norms = _sample_shard(m, size, _shard_rng(seed, shards), norm, radius)
        ratios = np.max(np.abs(bern) * scaled, axis=1) / norms
        i = int(np.argmax(ratios))
        if ratios[i] > best:
            best, witness = float(ratios[i]), BernsteinPoly(tuple(bern[i] / norms[i]))
        done += size
        shards += 1
    max_sampled = best

    extra = list(candidates)
    if include_certificate:
        extra.append(chebyshev_bernstein(m))
    for q in extra:
        if q.degree != m:
            raise DomainError(f"candidate has degree {q.degree}, expected {m}")
        qn = sup_norm_interval(q)[0] if norm == "interval" else sup_norm_disk(q, radius)
        value = float(preimage_value(spec, q, ks_denominator)) / qn
        if value > best:
            best, witness = value, q
    if witness is None:
        raise DomainError("no trials and no candidates to evaluate")
    return EmpiricalResult(
        value=best,
        witness=witness,
        trials=trials,
        seed=seed,
        shards=shards,
        certificate_included=include_certificate,
        norm=norm,
        max_sampled=max_sampled,
    )


# --- Lorentz instability ---------------------------------------------------------


@dataclass(frozen=True)
class LorentzReport:
    n: int
    rows: tuple  # (j, eigenvalue, reciprocal or None when the eigenvalue is 0)
    max_finite_reciprocal: Fraction
    argmax_j: int
    kernel_witness: int
    notes: tuple


def lorentz_instability_report(n: int) -> LorentzReport:
    """Spectrum of L_n on the monomials e_0..e_{n+1} and its reciprocals."""
    if n < 2:
        raise DomainError("the Lorentz instability report needs n >= 2")
    rows = []
    for j in range(n + 2):
        lam = lorentz_eigenvalue(n, j)
        rows.append((j, lam, 1 / lam if lam else None))
    finite = [(r, j) for j, _, r in rows if r is not None]
    top, argmax = max(finite)
    notes = (
        f"max finite reciprocal n^(n-1)/(n-1)! = {top} at j = {argmax}; it grows "
        "without bound as n increases, so no single constant bounds the inverse "
        "across the family",
        LORENTZ_KERNEL_NOTE.format(w=n + 1),
    )
    return LorentzReport(n, tuple(rows), top, argmax, n + 1, notes)
