"""Exact truncated Laurent series in one and two formal variables.

Every series stores rational coefficients (plain ``int`` whenever the value
is integral, ``fractions.Fraction`` otherwise) together with an explicit
exponent window recording what is actually known:

* exponents below the window are guaranteed zero (a support bound),
* exponents inside the window are stored sparsely,
* exponents above the window are untracked, and asking for them raises.

Arithmetic propagates windows so that every reported coefficient is exact.
A truncated product, for instance, can only be trusted up to
``min(a.hi + b.lo, b.hi + a.lo)``; the implementation sharpens that bound
using the lowest exponent that actually occurs in each factor.  Nothing is
ever padded with fabricated zeros, which is what makes the identity checks
built on top of this module trustworthy.

All series are immutable by convention: operations return fresh objects.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

Coeff = int | Fraction

__all__ = ["Coeff", "UniSeries", "BiSeries"]


def _norm(value: Coeff) -> Coeff:
    """Validate an exact coefficient, collapsing integral fractions to int."""
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else value
    raise TypeError(
        f"exact coefficient required (int or Fraction), got {type(value).__name__}"
    )


def _div(x: Coeff, y: Coeff) -> Coeff:
    return _norm(Fraction(x) / Fraction(y))


def _dict_mul(da: dict[int, Coeff], db: dict[int, Coeff], hi: int) -> dict[int, Coeff]:
    out: dict[int, Coeff] = {}
    for e1, v1 in da.items():
        for e2, v2 in db.items():
            e = e1 + e2
            if e > hi:
                continue
            out[e] = out.get(e, 0) + v1 * v2
    return {e: v for e, v in out.items() if v != 0}


class UniSeries:
    """A univariate Laurent series known exactly on the window ``[lo, hi]``.

    ``lo`` is a proven support bound (all lower coefficients are zero) and
    ``hi`` is the truncation order (higher coefficients are untracked).
    """

    __slots__ = ("lo", "hi", "_c")

    def __init__(
        self,
        coeffs: Mapping[int, Coeff] | Iterable[tuple[int, Coeff]] = (),
        lo: int = 0,
        hi: int = 0,
    ):
        if lo > hi:
            raise ValueError(f"empty window [{lo}, {hi}]")
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        data: dict[int, Coeff] = {}
        for exponent, value in items:
            value = _norm(value)
            if value == 0:
                continue
            if not lo <= exponent <= hi:
                raise ValueError(f"exponent {exponent} outside window [{lo}, {hi}]")
            data[int(exponent)] = value
        self.lo = lo
        self.hi = hi
        self._c = data

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, lo: int = 0, hi: int = 0) -> "UniSeries":
        return cls((), lo, hi)

    @classmethod
    def one(cls, hi: int) -> "UniSeries":
        return cls({0: 1}, 0, hi)

    @classmethod
    def monomial(cls, value: Coeff, exponent: int, hi: int | None = None) -> "UniSeries":
        return cls({exponent: value}, exponent, exponent if hi is None else hi)

    # ------------------------------------------------------------------
    # inspection

    def coeff(self, exponent: int) -> Coeff:
        if exponent > self.hi:
            raise ValueError(
                f"coefficient at q^{exponent} is beyond the window [{self.lo}, {self.hi}]"
            )
        return self._c.get(exponent, 0)

    def items(self) -> list[tuple[int, Coeff]]:
        return sorted(self._c.items())

    @property
    def support_lo(self) -> int:
        """Lowest exponent carrying a nonzero coefficient (``hi + 1`` if none)."""
        return min(self._c) if self._c else self.hi + 1

    def is_zero(self) -> bool:
        return not self._c

    def is_integral(self) -> bool:
        return all(isinstance(v, int) for v in self._c.values())

    def mismatches(self, other: "UniSeries") -> list[tuple[int, Coeff, Coeff]]:
        """Exponents where the two series provably disagree.

        The comparable region is every exponent up to ``min(hi, other.hi)``:
        below each window floor the coefficients are known to vanish.
        """
        hi = min(self.hi, other.hi)
        exps = {e for e in self._c if e <= hi} | {e for e in other._c if e <= hi}
        out = []
        for e in sorted(exps):
            va = self._c.get(e, 0)
            vb = other._c.get(e, 0)
            if va != vb:
                out.append((e, va, vb))
        return out

    def __eq__(self, other: object):
        if not isinstance(other, UniSeries):
            return NotImplemented
        return not self.mismatches(other)

    __hash__ = None  # mutable-looking value type; never used as a key

    def __repr__(self) -> str:
        terms = self.items()
        if not terms:
            body = "0"
        else:
            shown = [f"{v}*q^{e}" for e, v in terms[:8]]
            body = " + ".join(shown) + (" + ..." if len(terms) > 8 else "")
        return f"UniSeries[{self.lo}..{self.hi}]({body})"

    # ------------------------------------------------------------------
    # ring operations

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._add_scalar(other)
        if not isinstance(other, UniSeries):
            return NotImplemented
        if max(self.lo, other.lo) > min(self.hi, other.hi):
            raise ValueError(
                "incompatible windows: "
                f"[{self.lo}, {self.hi}] and [{other.lo}, {other.hi}] do not overlap"
            )
        lo = min(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        data = {e: v for e, v in self._c.items() if e <= hi}
        for e, v in other._c.items():
            if e <= hi:
                data[e] = data.get(e, 0) + v
        return UniSeries(data, lo, hi)

    __radd__ = __add__

    def _add_scalar(self, value: Coeff) -> "UniSeries":
        value = _norm(value)
        if value == 0:
            return self
        if self.hi < 0:
            raise ValueError(
                f"incompatible windows: constant term lies above the window [{self.lo}, {self.hi}]"
            )
        data = dict(self._c)
        data[0] = data.get(0, 0) + value
        return UniSeries(data, min(self.lo, 0), self.hi)

    def __neg__(self) -> "UniSeries":
        return UniSeries({e: -v for e, v in self._c.items()}, self.lo, self.hi)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._add_scalar(-other)
        if not isinstance(other, UniSeries):
            return NotImplemented
        return self.__add__(-other)

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return (-self)._add_scalar(other)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _norm(other)
            if other == 0:
                return UniSeries((), self.lo, self.hi)
            return UniSeries(
                {e: v * other for e, v in self._c.items()}, self.lo, self.hi
            )
        if not isinstance(other, UniSeries):
            return NotImplemented
        lo = self.lo + other.lo
        hi = min(self.hi + other.support_lo, other.hi + self.support_lo)
        data: dict[int, Coeff] = {}
        b_slo = other.support_lo
        for e1, v1 in self._c.items():
            if e1 + b_slo > hi:
                continue
            for e2, v2 in other._c.items():
                e = e1 + e2
                if e > hi:
                    continue
                data[e] = data.get(e, 0) + v1 * v2
        return UniSeries(data, lo, hi)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniSeries":
        if not isinstance(n, int) or n < 0:
            raise ValueError("series power must be a nonnegative integer")
        result = UniSeries.one(self.hi)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # ------------------------------------------------------------------
    # functional operations

    def inverse(self, order: int) -> "UniSeries":
        """Multiplicative inverse by long division, exact up to ``q^order``.

        The leading (lowest nonzero) coefficient must be nonzero; the result
        window starts at the negated leading exponent and is clipped to what
        the input window can support.
        """
        e0 = self.support_lo
        if not self._c:
            raise ValueError("non-invertible series: zero leading coefficient")
        hi = min(order, self.hi - 2 * e0)
        lo = -e0
        if hi < lo:
            raise ValueError(
                f"empty window [{lo}, {hi}] for inverse to order {order}"
            )
        depth = hi + e0  # degree of the unit-part inverse
        a = [self._c.get(e0 + t, 0) for t in range(depth + 1)]
        b: list[Coeff] = [_div(1, a[0])]
        for d in range(1, depth + 1):
            s: Coeff = 0
            for t in range(1, d + 1):
                if a[t]:
                    s += a[t] * b[d - t]
            b.append(_div(-s, a[0]) if s else 0)
        return UniSeries({lo + d: b[d] for d in range(depth + 1)}, lo, hi)

    def log1m(self, order: int | None = None) -> "UniSeries":
        """log(1 - self) = -sum_k self^k / k.

        Requires a strictly positive lowest exponent, so the sum terminates
        on the window.
        """
        hi = self.hi if order is None else min(order, self.hi)
        slo = self.support_lo
        if self._c and slo <= 0:
            raise ValueError(
                "log of non-unit: series has a nonzero coefficient at exponent <= 0"
            )
        lo = min(slo, hi)
        if lo > hi:
            raise ValueError(f"empty window [{lo}, {hi}] for log")
        acc: dict[int, Coeff] = {}
        power = {e: v for e, v in self._c.items() if e <= hi}
        k = 1
        while power and k * slo <= hi:
            for e, v in power.items():
                acc[e] = acc.get(e, 0) + v * Fraction(-1, k)
            k += 1
            if k * slo > hi:
                break
            power = _dict_mul(power, self._c, hi)
        return UniSeries(acc, lo, hi)

    def exp(self, order: int | None = None) -> "UniSeries":
        """exp(self) = sum_k self^k / k!, for series with positive lowest exponent."""
        hi = self.hi if order is None else min(order, self.hi)
        slo = self.support_lo
        if self._c and slo <= 0:
            raise ValueError(
                "exp of non-unit: series has a nonzero coefficient at exponent <= 0"
            )
        if hi < 0:
            raise ValueError(f"empty window [0, {hi}] for exp")
        acc: dict[int, Coeff] = {0: 1}
        power = {e: v for e, v in self._c.items() if e <= hi}
        k = 1
        fact = 1
        while power and k * slo <= hi:
            for e, v in power.items():
                acc[e] = acc.get(e, 0) + v * Fraction(1, fact)
            k += 1
            fact *= k
            if k * slo > hi:
                break
            power = _dict_mul(power, self._c, hi)
        return UniSeries(acc, 0, hi)

    def substitute_power(self, k: int) -> "UniSeries":
        """Replace q by q^k.

        Exponents strictly between multiples of k are known to vanish, so the
        window widens to ``k*hi + k - 1``.
        """
        if not isinstance(k, int) or k < 1:
            raise ValueError("substitution power must be a positive integer")
        return UniSeries(
            {e * k: v for e, v in self._c.items()},
            self.lo * k,
            self.hi * k + k - 1,
        )

    def shift(self, d: int) -> "UniSeries":
        """Multiply by q^d."""
        return UniSeries({e + d: v for e, v in self._c.items()}, self.lo + d, self.hi + d)

    def restrict(self, lo: int | None = None, hi: int | None = None) -> "UniSeries":
        """Clip to a smaller window (never extends past tracked terms)."""
        new_lo = self.lo if lo is None else lo
        new_hi = self.hi if hi is None else hi
        if new_hi > self.hi:
            raise ValueError("cannot extend a window upward; recompute instead")
        if new_lo > self.lo and any(e < new_lo and v for e, v in self._c.items()):
            raise ValueError("cannot raise window floor past nonzero terms")
        data = {e: v for e, v in self._c.items() if new_lo <= e <= new_hi}
        return UniSeries(data, new_lo, new_hi)


def _bidict_mul(
    da: dict[tuple[int, int], Coeff],
    db: dict[tuple[int, int], Coeff],
    pmax: int,
    qmax: int,
) -> dict[tuple[int, int], Coeff]:
    out: dict[tuple[int, int], Coeff] = {}
    for (i1, j1), v1 in da.items():
        for (i2, j2), v2 in db.items():
            i = i1 + i2
            if i > pmax:
                continue
            j = j1 + j2
            if j > qmax:
                continue
            key = (i, j)
            out[key] = out.get(key, 0) + v1 * v2
    return {k: v for k, v in out.items() if v != 0}


class BiSeries:
    """A series in two variables p, q on the window ``[0..pmax] x [qmin..qmax]``.

    p exponents are always nonnegative; q exponents may go negative down to
    ``qmin`` (needed for the single q^-1 factor in the two-variable product
    identity).  As in :class:`UniSeries`, window floors are support bounds
    and window ceilings are truncation orders.
    """

    __slots__ = ("pmax", "qmin", "qmax", "_c")

    def __init__(
        self,
        coeffs: Mapping[tuple[int, int], Coeff] | Iterable[tuple[tuple[int, int], Coeff]] = (),
        pmax: int = 0,
        qmin: int = 0,
        qmax: int = 0,
    ):
        if pmax < 0:
            raise ValueError("pmax must be >= 0")
        if qmin > qmax:
            raise ValueError(f"empty q window [{qmin}, {qmax}]")
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        data: dict[tuple[int, int], Coeff] = {}
        for (i, j), value in items:
            value = _norm(value)
            if value == 0:
                continue
            if i < 0:
                raise ValueError("p exponents must be >= 0")
            if i > pmax or not qmin <= j <= qmax:
                raise ValueError(
                    f"exponent pair ({i}, {j}) outside window "
                    f"[0..{pmax}] x [{qmin}..{qmax}]"
                )
            data[(int(i), int(j))] = value
        self.pmax = pmax
        self.qmin = qmin
        self.qmax = qmax
        self._c = data

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, pmax: int, qmin: int, qmax: int) -> "BiSeries":
        return cls((), pmax, qmin, qmax)

    @classmethod
    def one(cls, pmax: int, qmin: int, qmax: int) -> "BiSeries":
        return cls({(0, 0): 1}, pmax, qmin, qmax)

    @classmethod
    def monomial(
        cls,
        value: Coeff,
        i: int,
        j: int,
        pmax: int | None = None,
        qmin: int | None = None,
        qmax: int | None = None,
    ) -> "BiSeries":
        return cls(
            {(i, j): value},
            i if pmax is None else pmax,
            j if qmin is None else qmin,
            j if qmax is None else qmax,
        )

    # ------------------------------------------------------------------
    # inspection

    def coeff(self, i: int, j: int) -> Coeff:
        if i > self.pmax or j > self.qmax:
            raise ValueError(
                f"coefficient at p^{i} q^{j} is beyond the window "
                f"[0..{self.pmax}] x [{self.qmin}..{self.qmax}]"
            )
        if i < 0 or j < self.qmin:
            return 0
        return self._c.get((i, j), 0)

    def items(self) -> list[tuple[tuple[int, int], Coeff]]:
        return sorted(self._c.items())

    @property
    def _pslo(self) -> int:
        return min(i for i, _ in self._c) if self._c else self.pmax + 1

    @property
    def _qslo(self) -> int:
        return min(j for _, j in self._c) if self._c else self.qmax + 1

    def is_zero(self) -> bool:
        return not self._c

    def is_integral(self) -> bool:
        return all(isinstance(v, int) for v in self._c.values())

    def mismatches(
        self, other: "BiSeries"
    ) -> list[tuple[int, int, Coeff, Coeff]]:
        pmax = min(self.pmax, other.pmax)
        qmax = min(self.qmax, other.qmax)
        keys = {k for k in self._c if k[0] <= pmax and k[1] <= qmax}
        keys |= {k for k in other._c if k[0] <= pmax and k[1] <= qmax}
        out = []
        for i, j in sorted(keys):
            va = self._c.get((i, j), 0)
            vb = other._c.get((i, j), 0)
            if va != vb:
                out.append((i, j, va, vb))
        return out

    def __eq__(self, other: object):
        if not isinstance(other, BiSeries):
            return NotImplemented
        return not self.mismatches(other)

    __hash__ = None

    def __repr__(self) -> str:
        terms = self.items()
        if not terms:
            body = "0"
        else:
            shown = [f"{v}*p^{i}q^{j}" for (i, j), v in terms[:6]]
            body = " + ".join(shown) + (" + ..." if len(terms) > 6 else "")
        return (
            f"BiSeries[0..{self.pmax}][{self.qmin}..{self.qmax}]({body})"
        )

    # ------------------------------------------------------------------
    # ring operations

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._add_scalar(other)
        if not isinstance(other, BiSeries):
            return NotImplemented
        if max(self.qmin, other.qmin) > min(self.qmax, other.qmax):
            raise ValueError(
                "incompatible windows: q ranges "
                f"[{self.qmin}, {self.qmax}] and [{other.qmin}, {other.qmax}] do not overlap"
            )
        pmax = min(self.pmax, other.pmax)
        qmin = min(self.qmin, other.qmin)
        qmax = min(self.qmax, other.qmax)
        data = {k: v for k, v in self._c.items() if k[0] <= pmax and k[1] <= qmax}
        for k, v in other._c.items():
            if k[0] <= pmax and k[1] <= qmax:
                data[k] = data.get(k, 0) + v
        return BiSeries(data, pmax, qmin, qmax)

    __radd__ = __add__

    def _add_scalar(self, value: Coeff) -> "BiSeries":
        value = _norm(value)
        if value == 0:
            return self
        if self.qmax < 0:
            raise ValueError("incompatible windows: constant term lies above the q window")
        data = dict(self._c)
        data[(0, 0)] = data.get((0, 0), 0) + value
        return BiSeries(data, self.pmax, min(self.qmin, 0), self.qmax)

    def __neg__(self) -> "BiSeries":
        return BiSeries(
            {k: -v for k, v in self._c.items()}, self.pmax, self.qmin, self.qmax
        )

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._add_scalar(-other)
        if not isinstance(other, BiSeries):
            return NotImplemented
        return self.__add__(-other)

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return (-self)._add_scalar(other)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _norm(other)
            if other == 0:
                return BiSeries((), self.pmax, self.qmin, self.qmax)
            return BiSeries(
                {k: v * other for k, v in self._c.items()},
                self.pmax,
                self.qmin,
                self.qmax,
            )
        if not isinstance(other, BiSeries):
            return NotImplemented
        pmax = min(self.pmax + other._pslo, other.pmax + self._pslo)
        qmax = min(self.qmax + other._qslo, other.qmax + self._qslo)
        qmin = self.qmin + other.qmin
        data: dict[tuple[int, int], Coeff] = {}
        for (i1, j1), v1 in self._c.items():
            for (i2, j2), v2 in other._c.items():
                i = i1 + i2
                if i > pmax:
                    continue
                j = j1 + j2
                if j > qmax:
                    continue
                key = (i, j)
                data[key] = data.get(key, 0) + v1 * v2
        return BiSeries(data, pmax, qmin, qmax)

    __rmul__ = __mul__

    # ------------------------------------------------------------------
    # functional operations

    def log1m(self) -> "BiSeries":
        """log(1 - self); every nonzero term must have p exponent >= 1.

        The p constraint makes the sum over powers finite.  When the input
        has terms with negative q exponent, each extra factor can push real
        contributions below the input ceiling, so the certified q ceiling
        drops by ``(kmax - 1) * qslo``; intermediates are still carried up
        to the input ceiling because high intermediate terms can recombine
        downward.
        """
        if self._c and self._pslo < 1:
            raise ValueError("log of non-unit: a term has p exponent 0")
        if not self._c:
            return BiSeries((), self.pmax, self.qmin, self.qmax)
        pslo, qslo = self._pslo, self._qslo
        kmax = self.pmax // pslo
        out_qmax = self.qmax + (kmax - 1) * min(qslo, 0)
        out_qmin = min(qslo, kmax * qslo)
        acc: dict[tuple[int, int], Coeff] = {}
        power = dict(self._c)
        k = 1
        while power and k * pslo <= self.pmax:
            for key, v in power.items():
                if key[1] <= out_qmax:
                    acc[key] = acc.get(key, 0) + v * Fraction(-1, k)
            k += 1
            if k * pslo > self.pmax:
                break
            power = _bidict_mul(power, self._c, self.pmax, self.qmax)
        return BiSeries(acc, self.pmax, out_qmin, out_qmax)

    def exp(self) -> "BiSeries":
        """exp(self); every nonzero term must have p exponent >= 1."""
        if self._c and self._pslo < 1:
            raise ValueError("exp of non-unit: a term has p exponent 0")
        if not self._c:
            return BiSeries({(0, 0): 1}, self.pmax, min(self.qmin, 0), self.qmax)
        pslo, qslo = self._pslo, self._qslo
        kmax = self.pmax // pslo
        out_qmax = self.qmax + (kmax - 1) * min(qslo, 0)
        out_qmin = min(0, kmax * qslo)
        if out_qmax < 0:
            raise ValueError(
                "window too narrow to certify exp: the constant cell falls "
                f"above the attainable q ceiling {out_qmax}"
            )
        acc: dict[tuple[int, int], Coeff] = {(0, 0): 1}
        power = dict(self._c)
        k = 1
        fact = 1
        while power and k * pslo <= self.pmax:
            for key, v in power.items():
                if key[1] <= out_qmax:
                    acc[key] = acc.get(key, 0) + v * Fraction(1, fact)
            k += 1
            fact *= k
            if k * pslo > self.pmax:
                break
            power = _bidict_mul(power, self._c, self.pmax, self.qmax)
        return BiSeries(acc, self.pmax, out_qmin, out_qmax)

    def substitute_power(self, k: int) -> "BiSeries":
        """Replace p, q by p^k, q^k; in-between exponents are known zero."""
        if not isinstance(k, int) or k < 1:
            raise ValueError("substitution power must be a positive integer")
        return BiSeries(
            {(i * k, j * k): v for (i, j), v in self._c.items()},
            self.pmax * k + k - 1,
            self.qmin * k,
            self.qmax * k + k - 1,
        )

    def truncated(
        self,
        pmax: int | None = None,
        qmin: int | None = None,
        qmax: int | None = None,
    ) -> "BiSeries":
        """Clip to a smaller window (never extends past tracked terms)."""
        np_ = self.pmax if pmax is None else pmax
        nqmin = self.qmin if qmin is None else qmin
        nqmax = self.qmax if qmax is None else qmax
        if np_ > self.pmax or nqmax > self.qmax:
            raise ValueError("cannot extend a window upward; recompute instead")
        if nqmin > self.qmin and any(j < nqmin for _, j in self._c):
            raise ValueError("cannot raise q floor past nonzero terms")
        data = {k: v for k, v in self._c.items() if k[0] <= np_ and k[1] <= nqmax}
        return BiSeries(data, np_, nqmin, nqmax)
