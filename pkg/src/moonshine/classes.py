"""Conjugacy-class tables and trace-level series.

A class table lists conjugacy classes with their element orders, the power
maps g -> g^k between them, optional seed coefficients, and optional
eta-quotient recipes.  From a table we build coefficient families c_g(n)
(the q-expansions of the per-class trace series), the two-variable trace
series of the graded algebra and of its generating space, Adams operations
at the trace level, and the per-class Euler-Poincare identity check.

Everything fails loudly: a missing coefficient raises an exception listing
exactly which (class, index) slots are absent, because silently zero-filling
would fabricate identity violations (or worse, mask them).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable

from .modular import EtaMonomial, EtaRecipe, expand_recipe, normalized_j
from .series import BiSeries, Coeff, UniSeries

__all__ = [
    "MissingCoefficients",
    "ClassTable",
    "parse_table_text",
    "serialize_table",
    "CoefficientFamily",
    "load_family",
    "algebra_series",
    "generator_series",
    "adams_trace",
    "adams_log_series",
    "generator_log_series",
    "EPReport",
    "euler_poincare_report",
    "lambda_wedge_t",
]


class MissingCoefficients(Exception):
    """Raised when an operation needs coefficients the family lacks."""

    def __init__(self, indices: Iterable[tuple[str, int]]):
        self.indices = sorted(set(indices), key=lambda t: (t[1], t[0]))
        listed = ", ".join(f"{g}({n})" for g, n in self.indices[:12])
        more = "" if len(self.indices) <= 12 else f", ... ({len(self.indices)} total)"
        super().__init__(f"unknown coefficients: {listed}{more}")


@dataclass
class ClassTable:
    """Conjugacy classes, element orders, power maps, seeds, recipes."""

    names: tuple[str, ...]
    orders: dict[str, int]
    power: dict[tuple[str, int], str]
    seeds: dict[tuple[str, int], int]
    recipes: dict[str, EtaRecipe]
    identity: str

    def order_of(self, name: str) -> int:
        try:
            return self.orders[name]
        except KeyError:
            raise ValueError(f"unknown class {name!r}") from None

    def power_of(self, name: str, k: int) -> str:
        """The class of g^k.

        An explicit ``power`` declaration wins; otherwise the exponent is
        reduced modulo the element order (0 mapping to the identity).  The
        precedence lets a table assert a map the order would contradict —
        such tables load, and ``consistency_warnings`` flags them, so the
        derivation commands can demonstrate the damage instead of refusing
        the file outright.
        """
        if k < 1:
            raise ValueError("power exponent must be >= 1")
        if (name, k) in self.power:
            return self.power[(name, k)]
        if name not in self.orders:
            raise ValueError(f"unknown class {name!r}")
        r = k % self.order_of(name)
        if r == 0:
            return self.identity
        if r == 1:
            return name
        try:
            return self.power[(name, r)]
        except KeyError:
            raise ValueError(
                f"table not closed under power map: {name}^{r} is not declared"
            ) from None

    def validate(self) -> None:
        """Structural checks; raises ValueError on the first violation."""
        if not self.names:
            raise ValueError("table declares no classes")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate class declaration")
        for name in self.names:
            if self.order_of(name) < 1:
                raise ValueError(f"class {name} has nonpositive order")
        if self.identity not in self.names:
            raise ValueError(f"identity class {self.identity!r} is not declared")
        if self.order_of(self.identity) != 1:
            raise ValueError("identity class must have order 1")
        for (name, k), target in self.power.items():
            if name not in self.orders or target not in self.orders:
                raise ValueError(f"power map {name}^{k} -> {target} references undeclared class")
            if k < 1:
                raise ValueError(f"power map exponent {k} must be >= 1")
        for name in self.names:
            for r in range(2, self.order_of(name)):
                self.power_of(name, r)
        for (name, n) in self.seeds:
            if name not in self.orders:
                raise ValueError(f"seed for undeclared class {name!r}")
            if n < 1:
                raise ValueError(f"seed index {n} must be >= 1 (lower slots are fixed)")
        for name, recipe in self.recipes.items():
            if name not in self.orders:
                raise ValueError(f"recipe for undeclared class {name!r}")
            for mono in recipe.monomials:
                if mono.offset().denominator != 1:
                    raise ValueError(
                        f"fractional leading exponent {mono.offset()} in recipe for {name}"
                    )

    def consistency_warnings(self) -> list[str]:
        """Soft power-map diagnostics (order and composition laws).

        Violations here mean the table data is wrong but still loadable;
        the derivation commands surface them as mismatches instead.
        """
        warnings: list[str] = []
        for name in self.names:
            o = self.order_of(name)
            for k in range(2, o + 1):
                target = self.power_of(name, k)
                expected = o // gcd(k, o)
                if self.order_of(target) != expected:
                    warnings.append(
                        f"order({name}^{k}) = {self.order_of(target)}, expected {expected}"
                    )
            for k in range(2, o + 1):
                for l in range(2, o + 1):
                    via = self.power_of(self.power_of(name, k), l)
                    direct = self.power_of(name, k * l)
                    if via != direct:
                        warnings.append(
                            f"({name}^{k})^{l} = {via} but {name}^{k*l} = {direct}"
                        )
        return warnings


# ---------------------------------------------------------------------------
# table file grammar


def parse_table_text(text: str) -> ClassTable:
    """Parse the line-oriented table format.

    Directives: ``class NAME order N``, ``identity NAME``,
    ``power NAME K NAME``, ``seed NAME N VALUE``, and
    ``eta NAME COEFF K1:E1 [K2:E2 ...]`` (one monomial per line; a class's
    recipe is the sum of its eta lines, normalized).  ``#`` starts a comment.
    """
    names: list[str] = []
    orders: dict[str, int] = {}
    power: dict[tuple[str, int], str] = {}
    seeds: dict[tuple[str, int], int] = {}
    monomials: dict[str, list[EtaMonomial]] = {}
    identity: str | None = None

    def fail(lineno: int, message: str) -> None:
        raise ValueError(f"table line {lineno}: {message}")

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        directive = tokens[0]
        try:
            if directive == "class":
                if len(tokens) != 4 or tokens[2] != "order":
                    fail(lineno, "expected: class NAME order N")
                name = tokens[1]
                if name in orders:
                    fail(lineno, f"class {name} declared twice")
                names.append(name)
                orders[name] = int(tokens[3])
            elif directive == "identity":
                if len(tokens) != 2:
                    fail(lineno, "expected: identity NAME")
                if identity is not None:
                    fail(lineno, "identity declared twice")
                identity = tokens[1]
            elif directive == "power":
                if len(tokens) != 4:
                    fail(lineno, "expected: power NAME K NAME")
                key = (tokens[1], int(tokens[2]))
                if key in power:
                    fail(lineno, f"power map {key[0]}^{key[1]} declared twice")
                power[key] = tokens[3]
            elif directive == "seed":
                if len(tokens) != 4:
                    fail(lineno, "expected: seed NAME N VALUE")
                key = (tokens[1], int(tokens[2]))
                if key in seeds:
                    fail(lineno, f"seed {key[0]}({key[1]}) declared twice")
                seeds[key] = int(tokens[3])
            elif directive == "eta":
                if len(tokens) < 3:
                    fail(lineno, "expected: eta NAME COEFF K:E [K:E ...]")
                coeff = Fraction(tokens[2])
                factors = []
                for piece in tokens[3:]:
                    scale_text, _, exp_text = piece.partition(":")
                    if not exp_text:
                        fail(lineno, f"bad eta factor {piece!r}, expected K:E")
                    factors.append((int(scale_text), int(exp_text)))
                mono = EtaMonomial.from_factors(coeff, factors)
                if mono.offset().denominator != 1:
                    fail(
                        lineno,
                        f"fractional leading exponent {mono.offset()}: "
                        "scales times exponents must sum to a multiple of 24",
                    )
                monomials.setdefault(tokens[1], []).append(mono)
            else:
                fail(lineno, f"unknown directive {directive!r}")
        except ValueError as err:
            if str(err).startswith("table line"):
                raise
            fail(lineno, f"bad value ({err})")
    if identity is None:
        raise ValueError("table declares no identity class")
    table = ClassTable(
        names=tuple(names),
        orders=orders,
        power=power,
        seeds=seeds,
        recipes={g: EtaRecipe(tuple(m)) for g, m in monomials.items()},
        identity=identity,
    )
    table.validate()
    return table


def serialize_table(table: ClassTable) -> str:
    """Deterministic text form; parse(serialize(t)) == t."""
    index = {name: i for i, name in enumerate(table.names)}
    lines = [f"class {name} order {table.orders[name]}" for name in table.names]
    lines.append(f"identity {table.identity}")
    for (name, k), target in sorted(table.power.items(), key=lambda kv: (index[kv[0][0]], kv[0][1])):
        lines.append(f"power {name} {k} {target}")
    for (name, n), value in sorted(table.seeds.items(), key=lambda kv: (index[kv[0][0]], kv[0][1])):
        lines.append(f"seed {name} {n} {value}")
    for name in table.names:
        recipe = table.recipes.get(name)
        if recipe is None:
            continue
        for mono in recipe.monomials:
            factors = " ".join(f"{k}:{e}" for k, e in mono.factors)
            lines.append(f"eta {name} {mono.coeff} {factors}".rstrip())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# coefficient families


@dataclass
class CoefficientFamily:
    """Known trace coefficients c_g(n) per class.

    Slots -1 and 0 are always present (1 and 0 by normalization); other
    slots are known only where a recipe or seed supplied them.
    """

    table: ClassTable
    values: dict[str, dict[int, int]]
    order: int

    def known(self, name: str, n: int) -> bool:
        return n in self.values[name] or n < -1

    def value(self, name: str, n: int) -> int:
        if name not in self.values:
            raise ValueError(f"unknown class {name!r}")
        if n < -1:
            return 0
        try:
            return self.values[name][n]
        except KeyError:
            raise MissingCoefficients([(name, n)]) from None

    def series(self, name: str, hi: int) -> UniSeries:
        vals = self.values[name]
        missing = [(name, n) for n in range(1, hi + 1) if n not in vals]
        if missing:
            raise MissingCoefficients(missing)
        return UniSeries(
            {n: v for n, v in vals.items() if -1 <= n <= hi}, -1, hi
        )


def load_family(table: ClassTable, order: int) -> CoefficientFamily:
    """Expand recipes (the identity class always expands to J), merge seeds.

    Every expansion is shape-checked: leading coefficient 1 at q^-1,
    constant term 0, all coefficients integral.  A seed that contradicts an
    expansion is an input error, not a mismatch to report later.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    values: dict[str, dict[int, int]] = {}
    for name in table.names:
        vals: dict[int, int] = {-1: 1, 0: 0}
        expansion: UniSeries | None = None
        if name == table.identity:
            expansion = normalized_j(order)
        elif name in table.recipes:
            expansion = expand_recipe(table.recipes[name], order)
            if expansion.support_lo != -1 or expansion.coeff(-1) != 1:
                raise ValueError(
                    f"recipe for {name} is not Hauptmodul-shaped: expected "
                    f"leading coefficient 1 at q^-1, got {expansion.coeff(-1)} "
                    f"at q^{expansion.support_lo}"
                )
            if expansion.coeff(0) != 0:
                raise ValueError(
                    f"recipe for {name} has nonzero constant term {expansion.coeff(0)}"
                )
            if not expansion.is_integral():
                raise ValueError(f"recipe for {name} has non-integer coefficients")
        if expansion is not None:
            for n in range(1, order + 1):
                vals[n] = int(expansion.coeff(n))
        values[name] = vals
    for (name, n), seed in table.seeds.items():
        current = values[name].get(n)
        if current is not None and current != seed:
            raise ValueError(
                f"seed {name}({n}) = {seed} conflicts with expansion value {current}"
            )
        values[name][n] = seed
    return CoefficientFamily(table, values, order)


# ---------------------------------------------------------------------------
# trace series


def algebra_series(
    family: CoefficientFamily, name: str, imax: int, jmax: int
) -> BiSeries:
    """sum_{m,n >= 1} c_g(m n) p^m q^n: the graded trace of the algebra."""
    if imax < 1 or jmax < 1:
        raise ValueError("window bounds must be >= 1")
    vals = family.values[name]
    missing = sorted(
        {
            (name, m * n)
            for m in range(1, imax + 1)
            for n in range(1, jmax + 1)
            if m * n not in vals
        }
    )
    if missing:
        raise MissingCoefficients(missing)
    return BiSeries(
        {
            (m, n): vals[m * n]
            for m in range(1, imax + 1)
            for n in range(1, jmax + 1)
        },
        imax,
        0,
        jmax,
    )


def generator_series(
    family: CoefficientFamily, name: str, imax: int, jmax: int
) -> BiSeries:
    """sum_{m,n >= 1} c_g(m + n - 1) p^m q^n: the trace on the generators."""
    if imax < 1 or jmax < 1:
        raise ValueError("window bounds must be >= 1")
    vals = family.values[name]
    missing = sorted(
        {(name, d) for d in range(1, imax + jmax) if d not in vals}
    )
    if missing:
        raise MissingCoefficients(missing)
    return BiSeries(
        {
            (m, n): vals[m + n - 1]
            for m in range(1, imax + 1)
            for n in range(1, jmax + 1)
        },
        imax,
        0,
        jmax,
    )


SeriesBuilder = Callable[[CoefficientFamily, str, int, int], BiSeries]


def adams_trace(
    family: CoefficientFamily,
    name: str,
    k: int,
    builder: SeriesBuilder,
    imax: int,
    jmax: int,
) -> BiSeries:
    """Trace of g on the k-th Adams operation of a built series.

    At trace level the Adams operation swaps in the g^k coefficient column
    and substitutes p -> p^k, q -> q^k.  Window floors widen on the way:
    exponents that are not multiples of k are provably zero.
    """
    if k < 1:
        raise ValueError("Adams index must be >= 1")
    if imax // k < 1 or jmax // k < 1:
        return BiSeries.zero(imax, 0, jmax)
    powered = family.table.power_of(name, k)
    inner = builder(family, powered, imax // k, jmax // k)
    return inner.substitute_power(k).truncated(pmax=imax, qmax=jmax)


def adams_log_series(
    family: CoefficientFamily, name: str, imax: int, jmax: int
) -> BiSeries:
    """sum_{k>=1} (1/k) * Adams_k of the algebra trace series.

    Terms with k > min(imax, jmax) have no support inside the window, so
    the infinite sum is exactly the displayed finite one.
    """
    total = BiSeries.zero(imax, 0, jmax)
    for k in range(1, min(imax, jmax) + 1):
        term = adams_trace(family, name, k, algebra_series, imax, jmax)
        total = total + term * Fraction(1, k)
    return total


def generator_log_series(
    family: CoefficientFamily, name: str, imax: int, jmax: int
) -> BiSeries:
    """sum_{k>=1} (1/k) * (generator trace series)^k = -log(1 - U)."""
    u = generator_series(family, name, imax, jmax)
    return -u.log1m()


@dataclass(frozen=True)
class EPReport:
    """Result of the per-class Euler-Poincare identity comparison."""

    name: str
    imax: int
    jmax: int
    mismatches: tuple[tuple[int, int, Coeff, Coeff], ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def euler_poincare_report(
    family: CoefficientFamily, name: str, imax: int, jmax: int
) -> EPReport:
    """Compare the two sides of the Euler-Poincare identity on a window."""
    lhs = adams_log_series(family, name, imax, jmax)
    rhs = generator_log_series(family, name, imax, jmax)
    return EPReport(name, imax, jmax, tuple(lhs.mismatches(rhs)))


# ---------------------------------------------------------------------------
# exterior powers from Adams data


def lambda_wedge_t(adams: Callable[[int], BiSeries], tmax: int) -> list[BiSeries]:
    """Exterior-power traces from Adams traces.

    ``adams(d)`` must return the trace on the d-th Adams operation of the
    underlying space; the exterior powers come out of the Newton-style
    recurrence  n * wedge_n = sum_{d=1..n} (-1)^{d+1} adams(d) * wedge_{n-d},
    i.e. the t-expansion of exp(-sum_d adams(d) (-t)^d / d).
    """
    if tmax < 0:
        raise ValueError("tmax must be >= 0")
    if tmax == 0:
        first = adams(1)
        return [BiSeries.one(first.pmax, first.qmin, first.qmax)]
    traces = [adams(d) for d in range(1, tmax + 1)]
    if any(i + j < 1 for t in traces for (i, j), _ in t.items()):
        raise ValueError(
            "wedge expansion needs a strictly positive lowest total degree"
        )
    pmax = min(t.pmax for t in traces)
    qmax = min(t.qmax for t in traces)
    qmin = min(min(t.qmin for t in traces), 0)
    traces = [t.truncated(pmax=pmax, qmax=qmax) for t in traces]
    wedges = [BiSeries.one(pmax, qmin, qmax)]
    for n in range(1, tmax + 1):
        acc = BiSeries.zero(pmax, qmin, qmax)
        for d in range(1, n + 1):
            sign = 1 if d % 2 == 1 else -1
            acc = acc + traces[d - 1] * wedges[n - d] * sign
        wedges.append(acc * Fraction(1, n))
    return wedges
