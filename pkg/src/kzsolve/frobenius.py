"""Local Laurent-series analysis of the KZ system at its poles.

A solution that is meromorphic at a pole z_k has an expansion
W = sum_{q >= m} b_q (z - z_k)^q with b_m != 0, and substituting it into
W' = rho*A*W yields the order-by-order recursion

    [(q+1)I - a(-1)] b_{q+1} = sum_{j >= 0} a(j) b_{q-j}

with the rho-folded local coefficients a(j) of :mod:`kzsolve.kzcore`. The
lowest order m must be an integer eigenvalue of a(-1); at any later order
that is again an eigenvalue the solve may fail (branch dies) or pick up
kernel freedom (new parameters). This module runs that recursion carrying
the parameters symbolically and returns the full solution families.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .ansatz import RationalVectorFunction
from .exactalg import (
    GaussianRational,
    Matrix,
    Vector,
    integer_eigenvalues,
    nullspace,
    solve_affine,
)
from .kzcore import KZSystem, local_coefficients


@dataclass(frozen=True)
class LocalSeries:
    """Concrete truncated Laurent expansion of one solution at one pole."""

    pole_index: int
    start: int
    coeffs: tuple[Vector, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("series needs at least one coefficient")
        if self.coeffs[0].is_zero():
            raise ValueError("leading series coefficient must be nonzero")

    @property
    def order(self) -> int:
        return self.start + len(self.coeffs) - 1

    def coeff(self, q: int) -> Vector:
        """Coefficient of (z - z_k)^q; zero below the leading order."""
        if q < self.start:
            return Vector.zero(self.coeffs[0].dim)
        if q > self.order:
            raise ValueError(f"coefficient {q} beyond truncation order {self.order}")
        return self.coeffs[q - self.start]


def _trimmed_series(pole_index: int, start: int, coeffs: list[Vector]) -> LocalSeries:
    while coeffs and coeffs[0].is_zero():
        coeffs = coeffs[1:]
        start += 1
    if not coeffs:
        raise ValueError("series is identically zero through the truncation order")
    return LocalSeries(pole_index=pole_index, start=start, coeffs=tuple(coeffs))


def _combine(columns: list[Vector], weights, n: int) -> Vector:
    acc = Vector.zero(n)
    for w, col in zip(weights, columns):
        w = GaussianRational.coerce(w)
        if not w.is_zero():
            acc = acc + col.scale(w)
    return acc


@dataclass(frozen=True)
class SeriesFamily:
    """Linear family of local series sharing one starting order.

    ``basis[q]`` holds one column per free parameter; a member of the
    family has b_q = sum_i t_i * basis[q][i]. Families whose leading
    coefficient vanishes identically are never emitted.
    """

    pole_index: int
    start: int
    order: int
    basis: dict[int, list[Vector]]

    @property
    def dimension(self) -> int:
        return len(self.basis[self.start])

    def instantiate(self, params) -> LocalSeries:
        params = list(params)
        if len(params) != self.dimension:
            raise ValueError(f"expected {self.dimension} parameters")
        n = self.basis[self.start][0].dim
        coeffs = [
            _combine(self.basis[q], params, n)
            for q in range(self.start, self.order + 1)
        ]
        return _trimmed_series(self.pole_index, self.start, coeffs)

    def match_leading(self, target: Vector):
        """Parameters whose member has leading coefficient ``target``.

        Returns None when the target is outside the span of attainable
        leading coefficients.
        """
        lead = Matrix.from_columns(self.basis[self.start])
        sol = solve_affine(lead, target)
        if not sol.consistent:
            return None
        return sol.particular


def exponent_window(sys: KZSystem, k: int) -> tuple[int, int]:
    """Least and greatest integer eigenvalue of the folded residue rho*P_k."""
    loc = local_coefficients(sys, k, -1)
    eig = integer_eigenvalues(loc.minus_one)
    if not eig:
        raise ArithmeticError("residue matrix has no integer eigenvalues")
    return min(eig), max(eig)


def frobenius_solve(sys: KZSystem, k: int, order: int) -> list[SeriesFamily]:
    """All truncated series solution families at pole k, through ``order``.

    Runs the recursion upward from the least admissible exponent with the
    seed freedoms carried as parameters. At each resonant order the
    right-hand side is first projected against the left kernel (pruning
    parameter combinations that cannot continue) and the right kernel then
    contributes fresh parameters. One family is returned per admissible
    starting exponent whose leading coefficient is not identically zero.
    """
    m_min, m_max = exponent_window(sys, k)
    if order < m_max:
        raise ValueError(f"truncation order must reach the window end {m_max}")
    n = sys.n
    loc = local_coefficients(sys, k, max(order - 1 - m_min, -1))
    a_m1 = loc.minus_one
    eigs = sorted(integer_eigenvalues(a_m1))
    ident = Matrix.identity(n)

    basis: dict[int, list[Vector]] = {}
    nparams = 0
    for t in range(m_min, order + 1):
        L = ident.scale(t) - a_m1
        rhs = [Vector.zero(n) for _ in range(nparams)]
        for j in range(t - m_min):
            Aj = loc.coeff(j)
            src = basis[t - 1 - j]
            for p in range(nparams):
                if not src[p].is_zero():
                    rhs[p] = rhs[p] + Aj * src[p]
        resonant = t in eigs
        if resonant and nparams:
            left = nullspace(L.transpose())
            if left:
                C = Matrix([[y.dot(col) for col in rhs] for y in left])
                K = nullspace(C)
                if len(K) < nparams:
                    for q in basis:
                        basis[q] = [_combine(basis[q], kv, n) for kv in K]
                    rhs = [_combine(rhs, kv, n) for kv in K]
                    nparams = len(K)
        new_cols = []
        for col in rhs:
            sol = solve_affine(L, col)
            if not sol.consistent:
                raise ArithmeticError("recursion solve inconsistent after projection")
            new_cols.append(sol.particular)
        if resonant:
            ker = nullspace(L)
            if ker:
                for q in basis:
                    basis[q] = basis[q] + [Vector.zero(n)] * len(ker)
                new_cols = new_cols + ker
                nparams += len(ker)
        basis[t] = new_cols

    families = []
    for start in eigs:
        if nparams == 0:
            break
        if start == m_min:
            K = [Vector.unit(nparams, i) for i in range(nparams)]
        else:
            stacked = []
            for q in range(m_min, start):
                for i in range(n):
                    stacked.append([basis[q][p][i] for p in range(nparams)])
            K = nullspace(Matrix(stacked))
        if not K:
            continue
        fam = {
            q: [_combine(basis[q], kv, n) for kv in K]
            for q in range(start, order + 1)
        }
        if all(col.is_zero() for col in fam[start]):
            continue
        families.append(
            SeriesFamily(pole_index=k, start=start, order=order, basis=fam)
        )
    return families


def recursion_defect(sys: KZSystem, series: LocalSeries, t: int) -> Vector:
    """Exact defect of the order-t recursion relation for a concrete series.

    Zero for every t up to the truncation order iff the series satisfies
    the local equation term by term.
    """
    k = series.pole_index
    loc = local_coefficients(sys, k, max(t - 1 - series.start, -1))
    n = sys.n
    lhs = (Matrix.identity(n).scale(t) - loc.minus_one) * series.coeff(t)
    rhs = Vector.zero(n)
    for j in range(t - series.start):
        rhs = rhs + loc.coeff(j) * series.coeff(t - 1 - j)
    return lhs - rhs


def laurent_of_rational(fn: RationalVectorFunction, k: int, order: int) -> LocalSeries:
    """Exact Laurent expansion of a partial-fraction function about pole k.

    The function may have at most a simple pole at z_k itself; foreign
    poles of any order and the polynomial part are expanded geometrically.
    """
    if not (1 <= k <= len(fn.points)):
        raise ValueError(f"pole index {k} out of range")
    ki = k - 1
    own = fn.pole_coeffs[ki]
    if any(not c.is_zero() for c in own[1:]):
        raise ValueError("function has a pole of order > 1 at the expansion point")
    n = fn.dim
    zk = fn.points[ki]
    coeffs = [own[0] if own else Vector.zero(n)]
    for j in range(order + 1):
        acc = Vector.zero(n)
        for li, zl in enumerate(fn.points):
            if li == ki:
                continue
            d = zk - zl
            for r, vec in enumerate(fn.pole_coeffs[li], start=1):
                if vec.is_zero():
                    continue
                w = GaussianRational((-1) ** j * comb(r + j - 1, j)) / d ** (r + j)
                acc = acc + vec.scale(w)
        for deg, qvec in enumerate(fn.poly_coeffs):
            if deg >= j and not qvec.is_zero():
                acc = acc + qvec.scale(GaussianRational(comb(deg, j)) * zk ** (deg - j))
        coeffs.append(acc)
    return _trimmed_series(k, -1, coeffs)
