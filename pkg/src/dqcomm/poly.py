"""Exact univariate polynomials and rational functions in the error rate p."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"exact coefficient required, got {type(value).__name__}")


class Polynomial:
    """Polynomial with exact rational coefficients, lowest power first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()) -> None:
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, value) -> "Polynomial":
        return cls([value])

    @classmethod
    def p(cls) -> "Polynomial":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, power: int) -> Fraction:
        return self.coeffs[power] if 0 <= power < len(self.coeffs) else Fraction(0)

    def __call__(self, p):
        """Horner evaluation; exact for int/Fraction input, float otherwise."""
        exact = isinstance(p, (int, Fraction))
        acc = Fraction(0) if exact else 0.0
        for c in reversed(self.coeffs):
            acc = acc * p + (c if exact else float(c))
        return acc

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial([other])

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial([1])
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial([other])
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for power, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if power == 0 else ("p" if power == 1 else f"p^{power}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = str(abs(c)) + ("*" + mono if mono else "")
            terms.append(("-" if c < 0 else "+", body))
        first_sign, first = terms[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text

    def truncate(self, order: int) -> "Polynomial":
        """Keep powers ``0..order``."""
        return Polynomial(self.coeffs[: order + 1])

    def to_json(self) -> dict:
        return {"coeffs": [[c.numerator, c.denominator] for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "Polynomial":
        return cls(Fraction(num, den) for num, den in data["coeffs"])


def series_quotient(num: Polynomial, den: Polynomial, order: int) -> Polynomial:
    """Power series of ``num/den`` about p = 0 through ``p**order``."""
    if den.coeff(0) == 0:
        raise ZeroDivisionError("denominator vanishes at p = 0")
    d0 = den.coeff(0)
    out: list[Fraction] = []
    for i in range(order + 1):
        acc = num.coeff(i) - sum(out[j] * den.coeff(i - j) for j in range(i))
        out.append(acc / d0)
    return Polynomial(out)


class RationalFunction:
    """Quotient of two exact polynomials; equality is by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial = Polynomial([1])) -> None:
        if not den.coeffs:
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den

    def __call__(self, p):
        d = self.den(p)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at p={p}")
        return self.num(p) / d

    def series(self, order: int) -> Polynomial:
        return series_quotient(self.num, self.den, order)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None  # type: ignore[assignment]

    def __rsub__(self, other) -> "RationalFunction":
        other = other if isinstance(other, Polynomial) else Polynomial([other])
        return RationalFunction(other * self.den - self.num, self.den)

    def __mul__(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return RationalFunction(self.num * other.num, self.den * other.den)
        return RationalFunction(self.num * other, self.den)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"RationalFunction(({self.num}) / ({self.den}))"

    def to_json(self) -> dict:
        return {"numerator": self.num.to_json(), "denominator": self.den.to_json()}


def from_terms(terms: Sequence[tuple[int, Scalar]]) -> Polynomial:
    """Build from ``(power, coefficient)`` pairs."""
    size = max((pw for pw, _ in terms), default=-1) + 1
    out = [Fraction(0)] * size
    for pw, c in terms:
        out[pw] += _as_fraction(c)
    return Polynomial(out)
