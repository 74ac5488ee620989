"""Root-lattice layer of the monster Lie algebra.

The algebra is graded by the rank-two Lorentzian lattice with pairing
<(m,n),(m',n')> = -(mn' + nm'); its simple roots are (1,-1) once and (1,n)
with multiplicity c(n) for n >= 1, where c are the normalized modular
invariant coefficients.  This module exposes the pairing, the simple-root
bookkeeping (including single-entry probes into the multiplicity-expanded
generalized Cartan matrix, whose blocks are far too large to materialize),
root multiplicities, and the generalized Witt formula giving the graded
dimensions of a free Lie algebra — together with an independent product
oracle so the Witt route never has to be trusted on its own.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .modular import normalized_j
from .recursion import mobius
from .series import BiSeries, Coeff, UniSeries

__all__ = [
    "LatticeVector",
    "gram",
    "SimpleRootList",
    "simple_roots",
    "expanded_root",
    "gram_entry",
    "build_matrix",
    "CartanReport",
    "cartan_conditions",
    "root_multiplicity",
    "GradedDims",
    "witt_dims",
    "witt_dims_from_char",
    "dimension_product",
    "ProductReport",
    "denominator_sides",
    "denominator_identity_report",
]


@dataclass(frozen=True)
class LatticeVector:
    m: int
    n: int


def gram(a: LatticeVector, b: LatticeVector) -> int:
    """Lorentzian pairing -(m n' + n m')."""
    return -(a.m * b.n + a.n * b.m)


@dataclass(frozen=True)
class SimpleRootList:
    """Simple roots with multiplicities, in canonical order."""

    entries: tuple[tuple[LatticeVector, int], ...]

    def total_count(self) -> int:
        return sum(mult for _, mult in self.entries)


def simple_roots(nmax: int, c: UniSeries) -> SimpleRootList:
    """The roots (1,-1) x 1 and (1,n) x c(n) for 1 <= n <= nmax.

    There is no root at (1,0): the constant coefficient vanishes by
    normalization.
    """
    if nmax < -1:
        raise ValueError("nmax must be >= -1")
    entries: list[tuple[LatticeVector, int]] = [(LatticeVector(1, -1), 1)]
    for n in range(1, nmax + 1):
        entries.append((LatticeVector(1, n), int(c.coeff(n))))
    return SimpleRootList(tuple(entries))


def expanded_root(index: int, c: UniSeries) -> LatticeVector:
    """The index-th root (0-based) of the multiplicity-expanded list.

    Index 0 is (1,-1); indices 1..c(1) are copies of (1,1); the next c(2)
    are copies of (1,2); and so on.  Only the coefficients up to the level
    actually reached are consulted, so probing the far interior of the
    expanded matrix stays cheap.
    """
    if index < 0:
        raise ValueError("root index must be >= 0")
    if index == 0:
        return LatticeVector(1, -1)
    remaining = index - 1
    n = 1
    while True:
        if n > c.hi:
            raise ValueError(
                f"coefficient source only known to order {c.hi}; "
                f"root index {index} lies beyond it"
            )
        mult = int(c.coeff(n))
        if remaining < mult:
            return LatticeVector(1, n)
        remaining -= mult
        n += 1


def gram_entry(i: int, j: int, c: UniSeries) -> int:
    """Single entry of the expanded Gram matrix, without building it."""
    return gram(expanded_root(i, c), expanded_root(j, c))


def build_matrix(count: int, c: UniSeries | None = None) -> list[list[int]]:
    """Block-value truncation of the simple-root Gram matrix.

    The full matrix has one row per individual simple root and is constant
    on blocks, because two roots at the same level pair the same way with
    everything.  Row i here stands for the whole block at level n_i (-1,
    then 1, 2, ...), so entry (i, j) is the value filling block (i, j) of
    the expanded matrix; ``gram_entry`` probes the expanded matrix itself.
    ``c`` supplies multiplicities and is consulted only to insist that each
    displayed level actually occurs.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    levels = [-1] + list(range(1, count))
    if c is None:
        c = normalized_j(max(levels[-1], 1))
    for n in levels:
        if root_multiplicity(1, n, c) == 0:
            raise ValueError(f"level {n} has no simple roots")
    reps = [LatticeVector(1, n) for n in levels]
    return [[gram(a, b) for b in reps] for a in reps]


@dataclass(frozen=True)
class CartanReport:
    """Outcome of the generalized-Cartan-matrix conditions.

    The three checks: the matrix is symmetric; off-diagonal entries are
    nonpositive; and every row with positive diagonal a_ii has
    2 a_ij / a_ii integral for all j.
    """

    symmetric: bool
    off_diagonal_nonpositive: bool
    ratios_integral: bool
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.symmetric and self.off_diagonal_nonpositive and self.ratios_integral


def cartan_conditions(matrix: list[list[Coeff]]) -> CartanReport:
    size = len(matrix)
    if any(len(row) != size for row in matrix):
        raise ValueError("matrix must be square")
    violations: list[str] = []
    symmetric = True
    nonpositive = True
    integral = True
    for i in range(size):
        for j in range(size):
            if matrix[i][j] != matrix[j][i]:
                symmetric = False
                violations.append(f"asymmetry at ({i},{j})")
            if i != j and matrix[i][j] > 0:
                nonpositive = False
                violations.append(f"positive off-diagonal at ({i},{j})")
        if matrix[i][i] > 0:
            for j in range(size):
                ratio = Fraction(2 * matrix[i][j], matrix[i][i])
                if ratio.denominator != 1:
                    integral = False
                    violations.append(f"non-integral ratio at ({i},{j})")
    return CartanReport(symmetric, nonpositive, integral, tuple(violations[:20]))


def root_multiplicity(m: int, n: int, c: UniSeries) -> int:
    """dim of the (m,n) graded piece: c(mn), except 2 at the origin."""
    if (m, n) == (0, 0):
        return 2
    level = m * n
    if level > c.hi:
        raise ValueError(
            f"coefficient source only known to order {c.hi}, need {level}"
        )
    return int(c.coeff(level))


# ---------------------------------------------------------------------------
# generalized Witt formula


@dataclass(frozen=True)
class GradedDims:
    """Integer dimensions on the grid [1..mmax] x [1..nmax]."""

    dims: dict[tuple[int, int], int]
    mmax: int
    nmax: int

    def dim(self, m: int, n: int) -> int:
        if not (1 <= m <= self.mmax and 1 <= n <= self.nmax):
            raise ValueError(f"({m},{n}) outside the computed grid")
        return self.dims.get((m, n), 0)


def witt_dims_from_char(u: BiSeries) -> GradedDims:
    """Graded dimensions of the free Lie algebra on a bigraded space.

    ``u`` is the generating character sum dim U_{(m,n)} p^m q^n with support
    in m,n >= 1.  The dimensions come from Mobius inversion of the
    denominator product:  sum dims = -sum_{k>=1} (mu(k)/k) log(1 - u(p^k,q^k)).
    """
    if u._pslo < 1 or u._qslo < 1:
        raise ValueError("character must be supported on m, n >= 1")
    mmax, nmax = u.pmax, u.qmax
    total = BiSeries.zero(mmax, 0, nmax)
    for k in range(1, min(mmax, nmax) + 1):
        mu = mobius(k)
        if mu == 0:
            continue
        scaled = u.substitute_power(k).truncated(pmax=mmax, qmax=nmax)
        total = total + scaled.log1m() * Fraction(-mu, k)
    dims: dict[tuple[int, int], int] = {}
    for (m, n), value in total.items():
        if not isinstance(value, int):
            raise RuntimeError(
                f"generalized Witt formula produced non-integer {value} at ({m},{n})"
            )
        if m < 1 or n < 1:
            raise RuntimeError(
                f"generalized Witt formula leaked weight onto the axis at ({m},{n})"
            )
        dims[(m, n)] = value
    return GradedDims(dims, mmax, nmax)


def witt_dims(mmax: int, nmax: int, c: UniSeries) -> GradedDims:
    """Free-Lie-algebra dimensions for generators of dim c(m+n-1) at (m,n)."""
    if mmax < 1 or nmax < 1:
        raise ValueError("window bounds must be >= 1")
    need = mmax + nmax - 1
    if c.hi < need:
        raise ValueError(f"coefficient source only known to order {c.hi}, need {need}")
    u = BiSeries(
        {
            (m, n): c.coeff(m + n - 1)
            for m in range(1, mmax + 1)
            for n in range(1, nmax + 1)
        },
        mmax,
        0,
        nmax,
    )
    return witt_dims_from_char(u)


# ---------------------------------------------------------------------------
# denominator identity


@dataclass(frozen=True)
class ProductReport:
    """Coefficient-wise comparison of the two sides of the product formula."""

    pmax: int
    qmin: int
    qmax: int
    mismatches: tuple[tuple[int, int, Coeff, Coeff], ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def denominator_sides(pmax: int, qmax: int) -> tuple[BiSeries, BiSeries]:
    """Both sides of  p(J(p) - J(q)) = (1 - pq^-1) prod (1-p^i q^j)^c(ij)
    on the window [0..pmax] x [-pmax..qmax].

    The product over i,j >= 1 is taken through its logarithm: factors with
    i > pmax or j > qmax + 1 cannot touch the window, so the finite log sum
    is exact there.  The extra q-row (qmax + 1) is carried because the
    1 - pq^-1 prefactor pulls one row back down.
    """
    if pmax < 1 or qmax < 1:
        raise ValueError("window bounds must be >= 1")
    order = max(pmax * (qmax + 1), qmax, pmax - 1)
    c = normalized_j(order)
    qmin = -pmax

    cells: dict[tuple[int, int], Coeff] = {}
    for n in range(-1, pmax):  # p J(p) = sum c(n) p^{n+1}
        value = int(c.coeff(n))
        if value:
            cells[(n + 1, 0)] = cells.get((n + 1, 0), 0) + value
    for n in range(-1, qmax + 1):  # -p J(q)
        value = int(c.coeff(n))
        if value:
            cells[(1, n)] = cells.get((1, n), 0) - value
    lhs = BiSeries(cells, pmax, qmin, qmax)

    log_cells: dict[tuple[int, int], Coeff] = {}
    for i in range(1, pmax + 1):
        for j in range(1, qmax + 2):
            mult = int(c.coeff(i * j))
            if mult == 0:
                continue
            for t in range(1, min(pmax // i, (qmax + 1) // j) + 1):
                key = (i * t, j * t)
                log_cells[key] = log_cells.get(key, 0) - Fraction(mult, t)
    expanded = BiSeries(log_cells, pmax, 0, qmax + 1).exp()
    prefactor = BiSeries({(0, 0): 1, (1, -1): -1}, pmax, qmin, qmax + 1)
    rhs = prefactor * expanded
    return lhs, rhs


def denominator_identity_report(pmax: int, qmax: int) -> ProductReport:
    """Compare the two sides coefficient-by-coefficient; exact throughout."""
    lhs, rhs = denominator_sides(pmax, qmax)
    return ProductReport(pmax, -pmax, qmax, tuple(lhs.mismatches(rhs)))


def dimension_product(dims: GradedDims) -> BiSeries:
    """prod (1 - p^m q^n)^{d_mn}, expanded factor by factor.

    Each factor is a finite binomial sum, so this route is independent of
    logs and Mobius inversion; for a correct dimension table it must return
    exactly 1 - (character of the generators).
    """
    pmax, qmax = dims.mmax, dims.nmax
    out = BiSeries.one(pmax, 0, qmax)
    for (m, n), d in sorted(dims.dims.items()):
        if d == 0:
            continue
        if d < 0:
            raise ValueError(f"negative dimension {d} at ({m},{n})")
        factor = BiSeries(
            {
                (m * t, n * t): (-1) ** t * math.comb(d, t)
                for t in range(0, min(pmax // m, qmax // n) + 1)
            },
            pmax,
            0,
            qmax,
        )
        out = out * factor
    return out
