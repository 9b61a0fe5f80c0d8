"""Numerical pole analysis of exactly computed zeta functions.

Roots are located by Aberth-Ehrlich simultaneous iteration in double
precision, started from a circle at the Cauchy root bound; exact rational
coefficients are converted to floats once.  The polynomial is first split
into square-free parts with the exact gcd, so the iteration only ever sees
simple roots (a multiple root would cap double precision at eps**(1/m)
accuracy, which no clustering radius can separate from the deliberately
tiny root gaps of the loop family); multiplicities then come from the
exact splitting, and clustering remains as the final grouping step.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from cuspzeta.exact import Poly, RatFunc, poly_gcd
from cuspzeta.graphs import CuspidalGraph
from cuspzeta.zeta import bass_ihara_zeta, counting_series

__all__ = [
    "PoleReport",
    "RamanujanVerdict",
    "GrowthEstimate",
    "SweepRow",
    "RootFindingError",
    "complex_roots",
    "square_free_parts",
    "pole_report",
    "ramanujan_check",
    "pole_gap_sweep",
    "growth_rate",
]

MAX_ITERATIONS = 400
CLUSTER_RADIUS = 1e-6
RESIDUAL_BOUND = 1e-8


class RootFindingError(RuntimeError):
    """Raised when the simultaneous iteration fails to converge or verify."""


def _horner(coeffs: Sequence[float], z: complex) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def square_free_parts(p: Poly) -> list[tuple[Poly, int]]:
    """Yun decomposition p = const * prod part_m**m with pairwise coprime,
    square-free parts; only parts of positive degree are returned."""
    if p.is_zero():
        raise ValueError("the zero polynomial has no square-free decomposition")
    if p.degree < 1:
        return []
    g = poly_gcd(p, p.derivative())
    if g.degree == 0:
        return [(p.monic(), 1)]
    w = p / g
    z = p.derivative() / g - w.derivative()
    parts = []
    m = 1
    while w.degree > 0:
        f = poly_gcd(w, z)
        if f.degree > 0:
            parts.append((f, m))
            w = w / f
            z = z / f
        z = z - w.derivative()
        m += 1
    return parts


def complex_roots(p: Poly, tol: float = 1e-12) -> list[tuple[complex, int]]:
    """All complex roots of p with multiplicities, as (value, multiplicity).

    The exact square-free splitting supplies the multiplicities, so the
    simultaneous iteration always runs on simple roots.  Raises
    :class:`RootFindingError` if the iteration cap is reached before
    convergence or an approximation fails the scaled residual check.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has no well-defined roots")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    result: list[tuple[complex, int]] = []
    for part, mult in square_free_parts(p):
        coeffs = [float(c) for c in part.coeffs]
        zeros_at_origin = 0
        while coeffs and coeffs[0] == 0.0:
            coeffs.pop(0)
            zeros_at_origin += 1
        if zeros_at_origin:
            result.append((0j, zeros_at_origin * mult))
        degree = len(coeffs) - 1
        if degree < 1:
            continue
        for value, count in _cluster_points(_aberth(coeffs, tol), CLUSTER_RADIUS):
            result.append((value, count * mult))
    result.sort(key=lambda pair: (abs(pair[0]), pair[0].real, pair[0].imag))
    return result


def _aberth(coeffs: Sequence[float], tol: float) -> list[complex]:
    """Simultaneous iteration on a square-free float polynomial.

    A root stops moving once its residual reaches the evaluation noise
    floor; requiring further shrinking steps there would spin forever.
    """
    lead = coeffs[-1]
    monic = [c / lead for c in coeffs]
    deriv = [i * c for i, c in enumerate(monic)][1:]
    degree = len(monic) - 1
    bound = 1.0 + max(abs(c) for c in monic[:-1])
    z = [bound * cmath.exp(2j * math.pi * (k / degree) + 0.4j) for k in range(degree)]
    noise = 8.0 * degree * 2.3e-16
    converged = False
    for _ in range(MAX_ITERATIONS):
        shift = 0.0
        for i in range(degree):
            pv = _horner(monic, z[i])
            scale = sum(abs(c) * max(1.0, abs(z[i])) ** k for k, c in enumerate(monic))
            if abs(pv) <= noise * scale:
                continue
            dv = _horner(deriv, z[i])
            ratio = pv / dv if dv != 0 else pv
            rep = sum(1.0 / (z[i] - z[j]) for j in range(degree) if j != i)
            denom = 1.0 - ratio * rep
            delta = ratio / denom if denom != 0 else ratio
            z[i] -= delta
            shift = max(shift, abs(delta) / max(1.0, abs(z[i])))
        if shift <= tol:
            converged = True
            break
    if not converged:
        raise RootFindingError(
            f"Aberth iteration did not converge within {MAX_ITERATIONS} steps"
        )
    for i in range(degree):
        z[i] = _polish(monic, deriv, z[i])
        scale = sum(abs(c) * max(1.0, abs(z[i])) ** k for k, c in enumerate(monic))
        if abs(_horner(monic, z[i])) > RESIDUAL_BOUND * scale:
            raise RootFindingError(f"root candidate {z[i]} failed the residual check")
    return z


def _polish(monic: Sequence[float], deriv: Sequence[float], z: complex) -> complex:
    for _ in range(3):
        dv = _horner(deriv, z)
        if dv == 0:
            break
        step = _horner(monic, z) / dv
        z = z - step
        if abs(step) <= 1e-17 * max(1.0, abs(z)):
            break
    return z


def _cluster_points(points: Sequence[complex], radius: float) -> list[tuple[complex, int]]:
    """Group points whose transitive-closure distance stays within radius."""
    remaining = list(points)
    clusters: list[list[complex]] = []
    for pt in remaining:
        hit = None
        for cluster in clusters:
            if any(abs(pt - other) <= radius * max(1.0, abs(pt)) for other in cluster):
                hit = cluster
                break
        if hit is None:
            clusters.append([pt])
        else:
            hit.append(pt)
    merged = True
    while merged:
        merged = False
        for i in range(len(clusters)):
            for j in range(i + 1, len(clusters)):
                if any(
                    abs(a - b) <= radius * max(1.0, abs(a))
                    for a in clusters[i]
                    for b in clusters[j]
                ):
                    clusters[i].extend(clusters[j])
                    del clusters[j]
                    merged = True
                    break
            if merged:
                break
    out = []
    for cluster in clusters:
        mean = sum(cluster) / len(cluster)
        out.append((mean, len(cluster)))
    return out


@dataclass(frozen=True)
class PoleReport:
    """Poles of a zeta function with clustered moduli and the spectral gap."""

    poles: tuple[tuple[complex, int], ...]
    moduli_clusters: tuple[float, ...]
    radius: float
    gap: float | None

    def to_json(self) -> dict:
        return {
            "poles": [
                {"value": [z.real, z.imag], "multiplicity": m} for z, m in self.poles
            ],
            "moduli": list(self.moduli_clusters),
            "R": self.radius if math.isfinite(self.radius) else None,
            "gap": self.gap,
        }


def pole_report(z: RatFunc, tol: float = 1e-9) -> PoleReport:
    """Locate the poles (denominator roots) and cluster their moduli.

    ``tol`` is the relative tolerance for merging moduli into one cluster;
    a zeta function without poles reports an infinite radius of convergence.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if z.den.degree < 1:
        return PoleReport((), (), math.inf, None)
    poles = tuple(complex_roots(z.den))
    moduli = _cluster_moduli([abs(value) for value, _ in poles], tol)
    radius = moduli[0]
    gap = moduli[1] - moduli[0] if len(moduli) > 1 else None
    return PoleReport(poles, tuple(moduli), radius, gap)


def _cluster_moduli(values: Iterable[float], tol: float) -> list[float]:
    ordered = sorted(values)
    clusters: list[list[float]] = []
    for v in ordered:
        if clusters and v - clusters[-1][-1] <= tol * max(v, clusters[-1][-1]):
            clusters[-1].append(v)
        else:
            clusters.append([v])
    return [sum(c) / len(c) for c in clusters]


@dataclass(frozen=True)
class RamanujanVerdict:
    """Pole classification against the critical circle |u| = 1/sqrt(q)."""

    is_ramanujan: bool
    trivial: tuple[complex, ...]
    critical: tuple[complex, ...]
    offending: tuple[complex, ...]


def ramanujan_check(z: RatFunc, q: int, tol: float = 1e-9) -> RamanujanVerdict:
    """Flag the graph Ramanujan iff every nontrivial pole has |u| = 1/sqrt(q).

    Poles with |u| = 1 or |u| = 1/q (within tol) are the trivial ones; this
    matches the factor structure (1 - u), (1 + u), (1 - qu) of the regular
    families and is a convention of this package.
    """
    if q < 2:
        raise ValueError("ramanujan check requires q >= 2")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    report = pole_report(z, tol)
    trivial, critical, offending = [], [], []
    for value, _mult in report.poles:
        m = abs(value)
        if abs(m - 1.0) <= tol or abs(m - 1.0 / q) <= tol:
            trivial.append(value)
        elif abs(m - 1.0 / math.sqrt(q)) < tol:
            critical.append(value)
        else:
            offending.append(value)
    return RamanujanVerdict(not offending, tuple(trivial), tuple(critical), tuple(offending))


@dataclass(frozen=True)
class SweepRow:
    n: int
    radius: float
    second_modulus: float | None
    is_ramanujan: bool


def pole_gap_sweep(q: int, n_values: Sequence[int]) -> list[SweepRow]:
    """Radius and second pole modulus of the loop family across N.

    The radius stays pinned at 1/q while the second modulus decreases
    towards it, shrinking the pole-free annulus.
    """
    from cuspzeta.families import loop_family

    if not n_values:
        raise ValueError("sweep needs a nonempty range of N values")
    rows = []
    for n in n_values:
        z = bass_ihara_zeta(loop_family(q, n)).bass_ihara
        report = pole_report(z)
        second = report.moduli_clusters[1] if len(report.moduli_clusters) > 1 else None
        verdict = ramanujan_check(z, q)
        rows.append(SweepRow(n, report.radius, second, verdict.is_ramanujan))
    return rows


@dataclass(frozen=True)
class GrowthEstimate:
    """Per-m growth rates of |N_m - q^m| with an extrapolated limit."""

    m_values: tuple[int, ...]
    r_values: tuple[float, ...]
    limit: float


def growth_rate(
    c: CuspidalGraph, q: int, m_range: Sequence[int]
) -> GrowthEstimate:
    """Estimate lim |N_m - q^m|**(1/m) from exact counting data.

    The error term decays like rho**m for rho the reciprocal of the second
    pole modulus, so log r_m is affine in 1/m; a least-squares fit in 1/m
    extrapolates the limit (Richardson-style).
    """
    ms = sorted(set(int(m) for m in m_range))
    if not ms or ms[0] < 1:
        raise ValueError("m range must contain positive integers")
    if ms[-1] > 200:
        raise ValueError("m range exceeds the series budget of 200")
    series = counting_series(c, ms[-1])
    r_values = []
    fit_points = []
    for m in ms:
        diff = series.n_values[m - 1] - Fraction(q) ** m
        if diff == 0:
            r_values.append(0.0)
            continue
        r = float(abs(diff)) ** (1.0 / m)
        r_values.append(r)
        fit_points.append((1.0 / m, math.log(r)))
    if not fit_points:
        return GrowthEstimate(tuple(ms), tuple(r_values), 0.0)
    if len(fit_points) == 1:
        return GrowthEstimate(tuple(ms), tuple(r_values), math.exp(fit_points[0][1]))
    mean_x = sum(x for x, _ in fit_points) / len(fit_points)
    mean_y = sum(y for _, y in fit_points) / len(fit_points)
    var = sum((x - mean_x) ** 2 for x, _ in fit_points)
    slope = sum((x - mean_x) * (y - mean_y) for x, y in fit_points) / var
    intercept = mean_y - slope * mean_x
    return GrowthEstimate(tuple(ms), tuple(r_values), math.exp(intercept))
