"""Exact arithmetic in cyclotomic fields Q(zeta_N)."""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

Rational = Union[int, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _trim(coeffs: List[Fraction]) -> List[Fraction]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj == 0:
                continue
            out[i + j] += ai * bj
    return _trim(out)


def _poly_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    out = [_ZERO] * max(len(a), len(b))
    for i, ai in enumerate(a):
        out[i] += ai
    for i, bi in enumerate(b):
        out[i] -= bi
    return _trim(out)


def _poly_divmod(a: Sequence[Fraction], b: Sequence[Fraction]) -> Tuple[List[Fraction], List[Fraction]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    _trim(rem)
    quot = [_ZERO] * max(0, len(rem) - len(b) + 1)
    lead = b[-1]
    while len(rem) >= len(b):
        factor = rem[-1] / lead
        shift = len(rem) - len(b)
        quot[shift] = factor
        for i, bi in enumerate(b):
            if bi != 0:
                rem[shift + i] -= factor * bi
        _trim(rem)
    return _trim(quot), rem


def _divisors(n: int) -> List[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


_cyclotomic_cache: dict = {}


def cyclotomic_polynomial(n: int) -> Tuple[Fraction, ...]:
    """Coefficients of Phi_n, little-endian, computed by exact division of x^n - 1."""
    if n < 1:
        raise ValueError(f"level must be positive, got {n}")
    cached = _cyclotomic_cache.get(n)
    if cached is not None:
        return cached
    poly = [_ZERO] * (n + 1)
    poly[0] = Fraction(-1)
    poly[n] = _ONE
    for d in _divisors(n):
        if d == n:
            continue
        quot, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
        if rem:
            raise ArithmeticError(f"Phi_{d} does not divide x^{n}-1")
        poly = quot
    result = tuple(poly)
    _cyclotomic_cache[n] = result
    return result


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


class CycNumber:
    """An element of Q(zeta_N) in the power basis 1, zeta, ..., zeta^(phi(N)-1).

    Coefficients are reduced modulo Phi_N, so representations at a fixed level
    are canonical and equality at a common level is coefficient equality.
    """

    __slots__ = ("level", "coeffs")

    def __init__(self, level: int, coeffs: Tuple[Fraction, ...]):
        self.level = level
        self.coeffs = coeffs

    @staticmethod
    def from_poly(level: int, coeffs: Iterable[Rational]) -> "CycNumber":
        phi = euler_phi(level)
        poly = [Fraction(c) for c in coeffs]
        _trim(poly)
        if len(poly) > phi:
            _, poly = _poly_divmod(poly, list(cyclotomic_polynomial(level)))
        poly = poly + [_ZERO] * (phi - len(poly))
        return CycNumber(level, tuple(poly))

    @staticmethod
    def rational(value: Rational) -> "CycNumber":
        return CycNumber(1, (Fraction(value),))

    @staticmethod
    def zero() -> "CycNumber":
        return _CYC_ZERO

    @staticmethod
    def one() -> "CycNumber":
        return _CYC_ONE

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def as_rational(self) -> Fraction:
        """The value as a Fraction; raises if it is not rational."""
        if any(c != 0 for c in self.coeffs[1:]):
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def lift(self, level: int) -> "CycNumber":
        """Rewrite at a higher level M; requires self.level | M."""
        if level == self.level:
            return self
        if level % self.level != 0:
            raise ValueError(f"cannot lift level {self.level} to {level}")
        step = level // self.level
        poly = [_ZERO] * ((len(self.coeffs) - 1) * step + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            if c != 0:
                poly[i * step] = c
        return CycNumber.from_poly(level, poly)

    def _common(self, other: "CycNumber") -> Tuple["CycNumber", "CycNumber"]:
        if self.level == other.level:
            return self, other
        lvl = math.lcm(self.level, other.level)
        return self.lift(lvl), other.lift(lvl)

    @staticmethod
    def _coerce(value) -> "CycNumber":
        if isinstance(value, CycNumber):
            return value
        if isinstance(value, (int, Fraction)):
            return CycNumber.rational(value)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other) -> "CycNumber":
        other = CycNumber._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        return CycNumber(a.level, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CycNumber":
        return CycNumber(self.level, tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "CycNumber":
        other = CycNumber._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "CycNumber":
        return (-self) + other

    def __mul__(self, other) -> "CycNumber":
        other = CycNumber._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        prod = _poly_mul(list(a.coeffs), list(b.coeffs))
        return CycNumber.from_poly(a.level, prod)

    __rmul__ = __mul__

    def inverse(self) -> "CycNumber":
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_N."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        modulus = list(cyclotomic_polynomial(self.level))
        r0, r1 = modulus, _trim(list(self.coeffs))
        s0: List[Fraction] = []
        s1: List[Fraction] = [_ONE]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        if not r1:
            raise ZeroDivisionError("element is a zero divisor; modulus not coprime")
        scale = r1[0]
        return CycNumber.from_poly(self.level, [c / scale for c in s1])

    def __truediv__(self, other) -> "CycNumber":
        other = CycNumber._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "CycNumber":
        return CycNumber._coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> "CycNumber":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CycNumber.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = CycNumber._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    __hash__ = None  # type: ignore[assignment]

    def to_string(self) -> str:
        """Canonical textual form, e.g. '1/2 + -1*z4^1'."""
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                terms.append(f"{c}*z{self.level}^{i}")
        if not terms:
            return "0"
        return " + ".join(terms)

    def __repr__(self) -> str:
        return f"CycNumber({self.to_string()!r})"


_CYC_ZERO = CycNumber(1, (_ZERO,))
_CYC_ONE = CycNumber(1, (_ONE,))


def root_of_unity(level: int, power: int = 1) -> CycNumber:
    """zeta_N^k at level N."""
    if level < 1:
        raise ValueError(f"level must be positive, got {level}")
    k = power % level
    poly = [_ZERO] * k + [_ONE]
    return CycNumber.from_poly(level, poly)


_TERM_RE = re.compile(
    r"^\s*(?P<coeff>-?\d+(?:/\d+)?)?\s*(?:(?P<star>\*)?\s*z(?P<level>\d+)\^(?P<power>-?\d+))?\s*$"
)


def parse_scalar(text: str) -> CycNumber:
    """Parse the textual scalar form: rationals 'a/b' and root terms 'a/b*zN^k'."""
    if not isinstance(text, str):
        raise ValueError(f"scalar must be a string, got {type(text).__name__}")
    stripped = text.strip()
    if not stripped:
        raise ValueError("empty scalar string")
    total = CycNumber.zero()
    for raw in stripped.split("+"):
        term = raw.strip()
        if not term:
            raise ValueError(f"malformed scalar {text!r}: empty term")
        m = _TERM_RE.match(term)
        if not m or (m.group("coeff") is None and m.group("level") is None):
            raise ValueError(f"malformed scalar term {term!r} in {text!r}")
        coeff = Fraction(m.group("coeff")) if m.group("coeff") is not None else _ONE
        if m.group("level") is None:
            total = total + CycNumber.rational(coeff)
        else:
            level = int(m.group("level"))
            if level < 1:
                raise ValueError(f"bad root level in term {term!r}")
            power = int(m.group("power"))
            total = total + CycNumber.rational(coeff) * root_of_unity(level, power)
    return total
