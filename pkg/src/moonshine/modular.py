"""Exact q-expansions of the classical modular objects.

This module supplies every coefficient source used elsewhere: the Euler
product (via the pentagonal-number theorem), Dedekind eta powers with their
fractional exponent offsets tracked in units of 1/24, the Eisenstein series
E4 and E6 by divisor sums, the discriminant form, and the modular invariant
j.  The invariant is computed along two independent routes and compared on
every call, so a bug in either route surfaces as a hard failure rather than
a wrong answer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .series import Coeff, UniSeries

__all__ = [
    "euler_product",
    "dedekind_eta_power",
    "eisenstein",
    "delta",
    "j_series",
    "normalized_j",
    "EtaMonomial",
    "EtaRecipe",
    "expand_recipe",
]


def euler_product(order: int) -> UniSeries:
    """prod_{n>=1} (1 - q^n) truncated at q^order.

    Expanded by the pentagonal-number theorem:
    sum_{k in Z} (-1)^k q^{k(3k-1)/2}.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    data: dict[int, Coeff] = {}
    k = 0
    while True:
        exps = [k * (3 * k - 1) // 2, k * (3 * k + 1) // 2]
        if min(exps) > order:
            break
        for e in exps if k else exps[:1]:
            if e <= order:
                data[e] = data.get(e, 0) + (-1) ** k
        k += 1
    return UniSeries(data, 0, order)


def dedekind_eta_power(
    scale: int, exponent: int, order: int
) -> tuple[UniSeries, Fraction]:
    """(q^{scale/24} prod (1 - q^{scale n}))^exponent, split into parts.

    Returns the expansion of prod (1 - q^{scale n})^exponent exactly through
    q^order, together with the leading-exponent offset scale*exponent/24.
    The offset stays fractional here; recipes resolve it once the sum over
    their monomials makes it integral.
    """
    if scale < 1:
        raise ValueError("eta scale must be a positive integer")
    if order < 0:
        raise ValueError("order must be >= 0")
    offset = Fraction(scale * exponent, 24)
    if exponent == 0:
        return UniSeries.one(order), offset
    base = euler_product(order // scale + 1).substitute_power(scale)
    base = base.restrict(hi=order)
    power = base ** abs(exponent)
    if exponent < 0:
        power = power.inverse(order)
    return power, offset


def eisenstein(weight: int, order: int) -> UniSeries:
    """E4 = 1 + 240 sum sigma_3(n) q^n or E6 = 1 - 504 sum sigma_5(n) q^n."""
    if weight == 4:
        scale, power = 240, 3
    elif weight == 6:
        scale, power = -504, 5
    else:
        raise ValueError(f"eisenstein weight must be 4 or 6, got {weight}")
    if order < 0:
        raise ValueError("order must be >= 0")
    sigma = [0] * (order + 1)
    for d in range(1, order + 1):
        dp = d**power
        for n in range(d, order + 1, d):
            sigma[n] += dp
    data: dict[int, Coeff] = {0: 1}
    for n in range(1, order + 1):
        data[n] = scale * sigma[n]
    return UniSeries(data, 0, order)


def delta(order: int) -> UniSeries:
    """The discriminant form q prod (1 - q^n)^24, truncated at q^order."""
    if order < 1:
        raise ValueError("order must be >= 1")
    body, _ = dedekind_eta_power(1, 24, order - 1)
    return body.shift(1)


def j_series(order: int) -> UniSeries:
    """The modular invariant q^-1 + 744 + 196884 q + ...

    Computed as E4^3 / delta and, independently, as E6^2 / delta + 1728;
    the two expansions must agree coefficient-for-coefficient and must be
    integral, otherwise the computation itself is broken and we refuse to
    return anything.
    """
    if order < -1:
        raise ValueError("order must be >= -1")
    work = max(order, 0)
    dinv = delta(work + 2).inverse(work)
    route_a = eisenstein(4, work + 1) ** 3 * dinv
    route_b = eisenstein(6, work + 1) ** 2 * dinv + 1728
    bad = route_a.mismatches(route_b)
    if bad:
        raise RuntimeError(
            f"internal cross-check failed: the two j routes disagree at {bad[:3]}"
        )
    if not route_a.is_integral():
        raise RuntimeError("internal cross-check failed: j expansion not integral")
    return route_a.restrict(hi=order)


def normalized_j(order: int) -> UniSeries:
    """j - 744: leading coefficient 1 at q^-1 and constant term exactly 0."""
    return j_series(order) - 744


# ---------------------------------------------------------------------------
# eta-quotient recipes


@dataclass(frozen=True)
class EtaMonomial:
    """A rational multiple of a product of scaled eta powers.

    ``factors`` maps each scale k to the exponent of eta(k*tau); the term
    contributes an overall exponent offset of sum(k * e_k) / 24, which must
    come out integral for the series to live in integer powers of q.
    """

    coeff: Coeff = 1
    factors: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_factors(
        cls,
        coeff: Coeff,
        factors: Mapping[int, int] | Iterable[tuple[int, int]],
    ) -> "EtaMonomial":
        items = factors.items() if isinstance(factors, Mapping) else factors
        merged: dict[int, int] = {}
        for scale, exponent in items:
            if scale < 1:
                raise ValueError("eta scale must be a positive integer")
            merged[scale] = merged.get(scale, 0) + exponent
        clean = tuple(sorted((k, e) for k, e in merged.items() if e != 0))
        return cls(coeff, clean)

    def offset(self) -> Fraction:
        return Fraction(sum(k * e for k, e in self.factors), 24)


@dataclass(frozen=True)
class EtaRecipe:
    """A formal sum of eta monomials defining a Hauptmodul candidate.

    With ``normalize`` set, the constant term of the expansion is subtracted
    so that the candidate matches the convention that the q^0 coefficient
    vanishes.
    """

    monomials: tuple[EtaMonomial, ...]
    normalize: bool = True


def expand_recipe(recipe: EtaRecipe, order: int) -> UniSeries:
    """Exact q-expansion of a recipe through q^order."""
    if order < 0:
        raise ValueError("order must be >= 0")
    total: UniSeries | None = None
    for mono in recipe.monomials:
        off = mono.offset()
        if off.denominator != 1:
            raise ValueError(
                f"fractional leading exponent {off}: eta monomial scales and "
                "exponents must combine to a multiple of 24"
            )
        shift = int(off)
        body = UniSeries.one(order - shift)
        for scale, exponent in mono.factors:
            part, _ = dedekind_eta_power(scale, exponent, order - shift)
            body = body * part
        term = (body * mono.coeff).shift(shift)
        total = term if total is None else total + term
    if total is None:
        total = UniSeries.zero(0, order)
    if recipe.normalize:
        total = total - total.coeff(0)
    return total
