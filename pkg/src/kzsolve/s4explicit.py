"""Closed-form rational solutions of the n = 4 system at coupling -1.

Four explicit solutions are built from the pole configuration alone. Their
coefficient algebra lives in :class:`S4Coefficients`; note that the third
and fourth solutions each use a private (a, b, c) family computed from
different data, so the two sets are stored separately and must never be
conflated. The four columns span the full solution space for generic pole
configurations, but degenerate on the locus 2*z2 = z1 + z3 (there the
fourth column is a multiple of the third), so independence is certified
per configuration by an exact determinant probe instead of being assumed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ansatz import RationalVectorFunction
from .exactalg import GaussianRational, Matrix, ScalarLike, Vector, determinant


def _three_points(points) -> tuple[GaussianRational, ...]:
    pts = tuple(GaussianRational.coerce(p) for p in points)
    if len(pts) != 3:
        raise ValueError("expected exactly three pole locations")
    for a in range(3):
        for b in range(a + 1, 3):
            if pts[a] == pts[b]:
                raise ValueError("pole locations must be distinct")
    return pts


def _nonzero(x: GaussianRational, what: str) -> GaussianRational:
    if x.is_zero():
        raise ValueError(f"degenerate configuration: {what} vanishes")
    return x


@dataclass(frozen=True)
class S4Coefficients:
    """All scalar coefficients entering the four explicit solutions."""

    alpha: GaussianRational
    beta: GaussianRational
    betas: tuple[GaussianRational, GaussianRational, GaussianRational]
    alphas: tuple[GaussianRational, GaussianRational, GaussianRational]
    y3_abc: tuple[GaussianRational, GaussianRational, GaussianRational]
    y4_abcde: tuple[GaussianRational, ...]

    @classmethod
    def from_points(cls, points) -> "S4Coefficients":
        z1, z2, z3 = _three_points(points)
        alpha = -(z3 - z2) / _nonzero(z3 - z1, "z3 - z1")
        beta = (z3 - z2) / _nonzero(z2 - z1, "z2 - z1")
        b1 = _nonzero(z2 - z3, "beta_1")
        b2 = _nonzero(z3 - z1, "beta_2")
        b3 = _nonzero(z1 - z2, "beta_3")
        y3 = (-b1 / b3, -b3 / b2, b1 * b1 / (b2 * b3))
        a1 = GaussianRational(1) / (z3 - z2)
        a2 = GaussianRational(1) / (z1 - z3)
        a3 = GaussianRational(1) / (z2 - z1)
        _nonzero(a1 * a2 * a3, "alpha_1 alpha_2 alpha_3")
        d = -(a1 * a1 / (a2 * a3 ** 3)) * (a1 * a2 + a3 * a3)
        y4 = (
            -a1 / a3,
            -(a3 / a2) * d,
            a1 * a1 / (a2 * a3),
            d,
            GaussianRational(1) + a1 / a2,
        )
        return cls(
            alpha=alpha,
            beta=beta,
            betas=(b1, b2, b3),
            alphas=(a1, a2, a3),
            y3_abc=y3,
            y4_abcde=y4,
        )


def y1(points) -> RationalVectorFunction:
    """Solution with sign-pattern residues and an affine polynomial part."""
    z1, z2, z3 = _three_points(points)
    co = S4Coefficients.from_points(points)
    res = (
        Vector([1, 1, -1, -1]),
        Vector([1, -1, 1, -1]).scale(co.alpha),
        Vector([1, -1, -1, 1]).scale(co.beta),
    )
    denom = _nonzero((z2 - z1) * (z3 - z1), "(z2 - z1)(z3 - z1)")
    q_linear = Vector([3, -1, -1, -1]).scale(GaussianRational(-1) / denom)
    combo = (
        Vector([1, 1, -1, -1]).scale(z1)
        + Vector([1, -1, 1, -1]).scale(z2)
        + Vector([1, -1, -1, 1]).scale(z3)
    )
    q_const = combo.scale(GaussianRational(1) / denom)
    return RationalVectorFunction.simple((z1, z2, z3), res, q_const, q_linear)


def y2(points) -> RationalVectorFunction:
    """All-ones residues weighted by the cyclic pole differences."""
    pts = _three_points(points)
    co = S4Coefficients.from_points(points)
    ones = Vector([1, 1, 1, 1])
    res = tuple(ones.scale(b) for b in co.betas)
    return RationalVectorFunction.simple(pts, res)


def y3(points) -> RationalVectorFunction:
    """First of the two solutions supported away from coordinate one."""
    pts = _three_points(points)
    co = S4Coefficients.from_points(points)
    a, b, c = co.y3_abc
    b1, b2, b3 = co.betas
    res = (
        Vector([0, 0, 1, a]).scale(b1),
        Vector([0, b, 0, c]).scale(b2),
        Vector([0, 1, a, 0]).scale(b3),
    )
    return RationalVectorFunction.simple(pts, res)


def y4(points) -> RationalVectorFunction:
    """Second coordinate-one-free solution, built from reciprocal differences."""
    pts = _three_points(points)
    co = S4Coefficients.from_points(points)
    a, b, c, d, e = co.y4_abcde
    a1, a2, a3 = co.alphas
    res = (
        Vector([0, 0, 1, a]).scale(a1),
        Vector([0, b, 0, c]).scale(a2),
        Vector([0, d, e, 0]).scale(a3),
    )
    return RationalVectorFunction.simple(pts, res)


@dataclass(frozen=True)
class IndependenceCertificate:
    """Outcome of the exact determinant probe for column independence."""

    ok: bool
    probe: GaussianRational | None
    det: GaussianRational | None
    probes_tried: int


def independence_certificate(
    points,
    columns: tuple[RationalVectorFunction, ...] | None = None,
    max_probes: int = 24,
) -> IndependenceCertificate:
    """Certify functional independence by probing the column determinant.

    Probes walk a fixed deterministic sequence starting just beyond the
    largest pole magnitude; any probe with nonzero exact determinant
    certifies independence. Exhausting the probes is reported as a
    failure, never silently ignored: the explicit columns do degenerate
    on special configurations.
    """
    pts = _three_points(points)
    if columns is None:
        columns = (y1(pts), y2(pts), y3(pts), y4(pts))
    start = 1 + max(int(p.abs_bound()) + 1 for p in pts)
    tried = 0
    last_det = None
    probe_val = None
    c = start
    while tried < max_probes:
        z = GaussianRational(c)
        c += 1
        if any((z - p).is_zero() for p in pts):
            continue
        tried += 1
        m = Matrix.from_columns([col.eval(z) for col in columns])
        det = determinant(m)
        last_det = det
        probe_val = z
        if not det.is_zero():
            return IndependenceCertificate(
                ok=True, probe=z, det=det, probes_tried=tried
            )
    return IndependenceCertificate(
        ok=False, probe=probe_val, det=last_det, probes_tried=tried
    )


@dataclass(frozen=True)
class FundamentalSolution:
    """The four explicit columns, optional mixing constants, certificate."""

    columns: tuple[RationalVectorFunction, ...]
    constants: tuple[GaussianRational, ...] | None
    combined: RationalVectorFunction | None
    certificate: IndependenceCertificate

    def eval_matrix(self, z: ScalarLike) -> Matrix:
        return Matrix.from_columns([col.eval(z) for col in self.columns])


def fundamental_matrix(points, constants=None) -> FundamentalSolution:
    """Bundle the four explicit solutions into a candidate fundamental matrix.

    When mixing constants are supplied the corresponding combination is
    exposed as well. The attached certificate records whether the columns
    are actually independent at this configuration.
    """
    pts = _three_points(points)
    cols = (y1(pts), y2(pts), y3(pts), y4(pts))
    cert = independence_certificate(pts, cols)
    combined = None
    consts = None
    if constants is not None:
        consts = tuple(GaussianRational.coerce(c) for c in constants)
        if len(consts) != 4:
            raise ValueError("need exactly four mixing constants")
        combined = RationalVectorFunction.zero(pts, 4)
        for c, col in zip(consts, cols):
            combined = combined + col.scale(c)
    return FundamentalSolution(
        columns=cols, constants=consts, combined=combined, certificate=cert
    )
