"""
Fixed-precision p-adic integers.

An element of Z_p is stored as its residue modulo p^K, where K is the
working precision. Every operation is exact modulo p^K; truncation is the
only approximation, so an error bound of the form p^(-m) is tracked exactly
by saying "the first m digits are right".
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import (
    DenominatorDivisibleByP,
    DigitOutOfRange,
    NotPrime,
    PrecisionMismatch,
    PrimeMismatch,
    ZeroAtPrecision,
)

__all__ = [
    "PadicInt",
    "Valuation",
    "arith",
    "canonical_decompose",
    "check_prime",
    "eq_mod",
    "format_digits",
    "from_digits",
    "from_rational",
    "parse_digits",
    "valuation_norm",
]


@lru_cache(maxsize=None)
def check_prime(p: int) -> int:
    from sympy import isprime

    if isinstance(p, bool) or not isinstance(p, int) or not isprime(p):
        raise NotPrime(f"{p!r} is not a prime")
    return p


@dataclass(frozen=True, slots=True)
class PadicInt:
    """A p-adic integer known modulo p^precision.

    Attributes:
        prime: the prime p.
        precision: number of base-p digits K kept.
        value: the residue, an integer in [0, p^K).
    """

    prime: int
    precision: int
    value: int

    def __post_init__(self) -> None:
        check_prime(self.prime)
        if self.precision < 1:
            raise ValueError(f"precision must be >= 1, got {self.precision}")
        if not 0 <= self.value < self.prime**self.precision:
            raise ValueError("value must be a residue in [0, p^K)")

    # construction

    @classmethod
    def from_int(cls, p: int, K: int, n: int) -> "PadicInt":
        return cls(p, K, n % p**K)

    @classmethod
    def zero(cls, p: int, K: int) -> "PadicInt":
        return cls(p, K, 0)

    @classmethod
    def one(cls, p: int, K: int) -> "PadicInt":
        return cls(p, K, 1 % p**K)

    # digit view

    @property
    def modulus(self) -> int:
        return self.prime**self.precision

    @property
    def digits(self) -> tuple[int, ...]:
        """Little-endian base-p digits d_0..d_{K-1}."""
        out = []
        v = self.value
        for _ in range(self.precision):
            v, d = divmod(v, self.prime)
            out.append(d)
        return tuple(out)

    def valuation(self) -> int:
        """Index of the first nonzero digit, or K when zero at precision."""
        v = self.value
        if v == 0:
            return self.precision
        k = 0
        while v % self.prime == 0:
            v //= self.prime
            k += 1
        return k

    def is_zero(self) -> bool:
        return self.value == 0

    def residue(self, k: int) -> int:
        """The value reduced modulo p^k."""
        return self.value % self.prime**k

    def truncate(self, k: int) -> "PadicInt":
        """Same precision, digits from position k on set to zero."""
        return PadicInt(self.prime, self.precision, self.residue(k))

    # arithmetic

    def _coerce(self, other) -> "PadicInt":
        if isinstance(other, PadicInt):
            if other.prime != self.prime:
                raise PrimeMismatch(f"p={self.prime} vs p={other.prime}")
            if other.precision != self.precision:
                raise PrecisionMismatch(f"K={self.precision} vs K={other.precision}")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return PadicInt.from_int(self.prime, self.precision, other)
        if isinstance(other, Fraction):
            return from_rational(self.prime, self.precision, other.numerator, other.denominator)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PadicInt(self.prime, self.precision, (self.value + o.value) % self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PadicInt(self.prime, self.precision, (self.value - o.value) % self.modulus)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PadicInt(self.prime, self.precision, (self.value * o.value) % self.modulus)

    __rmul__ = __mul__

    def __neg__(self) -> "PadicInt":
        return PadicInt(self.prime, self.precision, (-self.value) % self.modulus)

    def __pow__(self, e: int) -> "PadicInt":
        if e < 0:
            return self.inverse() ** (-e)
        return PadicInt(self.prime, self.precision, pow(self.value, e, self.modulus))

    def inverse(self) -> "PadicInt":
        if self.value % self.prime == 0:
            raise ZeroDivisionError("only units of Z_p are invertible")
        return PadicInt(self.prime, self.precision, pow(self.value, -1, self.modulus))

    def eq_mod(self, other: "PadicInt", k: int) -> bool:
        return eq_mod(self, other, k)

    def __str__(self) -> str:
        return ",".join(map(str, self.digits))


@dataclass(frozen=True, slots=True)
class Valuation:
    """Symbolic p-adic size: the norm is p^(-exponent).

    ``exponent == precision`` means "zero at this precision", i.e. the true
    valuation is at least K.
    """

    prime: int
    precision: int
    exponent: int

    @property
    def at_precision(self) -> bool:
        return self.exponent >= self.precision

    @property
    def norm(self) -> tuple[int, int]:
        """The norm as the pair (p, -exponent)."""
        return (self.prime, -self.exponent)

    def as_fraction(self) -> Fraction:
        return Fraction(1, self.prime**self.exponent)

    def __str__(self) -> str:
        s = f"{self.prime}^-{self.exponent}"
        return s + " (at precision)" if self.at_precision else s


def from_digits(p: int, digits: Sequence[int]) -> PadicInt:
    check_prime(p)
    digits = list(digits)
    if not digits:
        raise ValueError("digit sequence must be nonempty")
    value = 0
    for i, d in enumerate(digits):
        if not isinstance(d, int) or not 0 <= d < p:
            raise DigitOutOfRange(f"digit {d!r} at position {i} not in [0, {p - 1}]")
        value += d * p**i
    return PadicInt(p, len(digits), value)


def from_rational(p: int, K: int, num: int, den: int = 1) -> PadicInt:
    """num/den as an element of Z_p mod p^K; den must be prime to p."""
    check_prime(p)
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den % p == 0:
        raise DenominatorDivisibleByP(f"{p} divides the denominator {den}")
    mod = p**K
    return PadicInt(p, K, num * pow(den, -1, mod) % mod)


def arith(op: str, x: PadicInt, y: PadicInt | None = None) -> PadicInt:
    if op == "neg":
        return -x
    if y is None:
        raise TypeError(f"{op} needs two operands")
    x._coerce(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown operation {op!r}")


def valuation_norm(x: PadicInt) -> Valuation:
    return Valuation(x.prime, x.precision, x.valuation())


def canonical_decompose(x: PadicInt) -> tuple[int, tuple[int, ...]]:
    """Split x = p^gamma * unit; returns gamma and the K - gamma unit digits."""
    if x.is_zero():
        raise ZeroAtPrecision("x is zero at this precision")
    gamma = x.valuation()
    return gamma, x.digits[gamma:]


def eq_mod(x: PadicInt, y: PadicInt, k: int) -> bool:
    """True iff x and y share their first k digits, i.e. |x - y|_p <= p^(-k)."""
    x._coerce(y)
    if not 0 <= k <= x.precision:
        raise ValueError(f"k must lie in [0, {x.precision}], got {k}")
    m = x.prime**k
    return x.value % m == y.value % m


def format_digits(x: PadicInt, header: bool = True) -> str:
    body = ",".join(map(str, x.digits))
    if header:
        return f"p={x.prime} K={x.precision}\n{body}"
    return body


def parse_digits(text: str, p: int | None = None) -> PadicInt:
    """Inverse of :func:`format_digits`; the header line is optional when p is given."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    K = None
    if lines and lines[0].startswith("p="):
        fields = dict(item.split("=", 1) for item in lines[0].split())
        p = int(fields["p"])
        K = int(fields["K"])
        lines = lines[1:]
    if p is None:
        raise ValueError("no prime given and no header line found")
    if len(lines) != 1:
        raise ValueError("expected exactly one digit line")
    x = from_digits(p, [int(tok) for tok in lines[0].split(",")])
    if K is not None and x.precision != K:
        raise PrecisionMismatch(f"header says K={K} but {x.precision} digits given")
    return x
