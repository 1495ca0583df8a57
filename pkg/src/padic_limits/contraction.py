"""Affine contractions x -> a*x + b on Z_p, composition and fixed points."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import NotContractive, PrecisionMismatch, PrimeMismatch
from .padic import PadicInt, format_digits, from_digits, from_rational

__all__ = [
    "AffineMap",
    "CertificateReport",
    "ContractionSystem",
    "apply_affine",
    "certify_contraction",
    "compose_affine",
    "fixed_point_affine",
    "format_affine",
    "iterate_fixed_point",
    "parse_affine",
    "parse_coefficient",
]


@dataclass(frozen=True, slots=True)
class AffineMap:
    """The map x -> a*x + b with |a|_p <= 1/p.

    Construction fails with NotContractive when a is a unit, so identities
    and other isometries never enter a system.
    """

    a: PadicInt
    b: PadicInt

    def __post_init__(self) -> None:
        self.a._coerce(self.b)
        if self.a.valuation() < 1:
            raise NotContractive(
                f"multiplier {self.a} is a unit of Z_{self.a.prime}"
            )

    @classmethod
    def from_rationals(cls, p: int, K: int, a, b) -> "AffineMap":
        a, b = Fraction(a), Fraction(b)
        return cls(
            from_rational(p, K, a.numerator, a.denominator),
            from_rational(p, K, b.numerator, b.denominator),
        )

    @property
    def prime(self) -> int:
        return self.a.prime

    @property
    def precision(self) -> int:
        return self.a.precision

    def __call__(self, x: PadicInt) -> PadicInt:
        return apply_affine(self, x)

    def compose(self, g: "AffineMap") -> "AffineMap":
        """self o g."""
        return compose_affine(self, g)

    def fixed_point(self) -> PadicInt:
        return fixed_point_affine(self)


def apply_affine(f: AffineMap, x: PadicInt) -> PadicInt:
    return f.a * x + f.b


def compose_affine(f: AffineMap, g: AffineMap) -> AffineMap:
    """The map f(g(x)) = a_f*a_g*x + (a_f*b_g + b_f)."""
    return AffineMap(f.a * g.a, f.a * g.b + f.b)


def fixed_point_affine(f: AffineMap) -> PadicInt:
    # 1 - a is a unit because v(a) >= 1
    if f.a.valuation() < 1:
        raise NotContractive("multiplier is a unit, 1 - a may not be invertible")
    return f.b * (1 - f.a).inverse()


def iterate_fixed_point(
    f: Callable[[PadicInt], PadicInt], x0: PadicInt, max_steps: int | None = None
) -> tuple[PadicInt, int]:
    """Banach iteration until two successive iterates agree mod p^K.

    For a map with Lipschitz constant 1/p this happens within K steps.
    Returns the fixed point and the number of steps taken.
    """
    limit = x0.precision + 1 if max_steps is None else max_steps
    x = x0
    for step in range(1, limit + 1):
        y = f(x)
        if y == x:
            return y, step
        x = y
    raise NotContractive(f"iterates did not stabilise within {limit} steps")


@dataclass(frozen=True)
class ContractionSystem:
    """N affine contractions sharing one prime and precision, indexed 1..N."""

    maps: tuple[AffineMap, ...]

    def __post_init__(self) -> None:
        maps = tuple(self.maps)
        object.__setattr__(self, "maps", maps)
        if not maps:
            raise ValueError("a system needs at least one map")
        p, K = maps[0].prime, maps[0].precision
        for f in maps[1:]:
            if f.prime != p:
                raise PrimeMismatch("all maps must share the prime")
            if f.precision != K:
                raise PrecisionMismatch("all maps must share the precision")

    @property
    def N(self) -> int:
        return len(self.maps)

    @property
    def prime(self) -> int:
        return self.maps[0].prime

    @property
    def precision(self) -> int:
        return self.maps[0].precision

    def map(self, i: int) -> AffineMap:
        if not 1 <= i <= self.N:
            raise IndexError(f"map index {i} outside [1, {self.N}]")
        return self.maps[i - 1]

    def compose_word(self, symbols: Sequence[int]) -> AffineMap:
        """f_{s1} o f_{s2} o ... o f_{sn}."""
        if not symbols:
            raise ValueError("empty composition")
        out = self.map(symbols[0])
        for s in symbols[1:]:
            out = compose_affine(out, self.map(s))
        return out


@dataclass
class CertificateReport:
    """Outcome of :func:`certify_contraction`.

    ``worst_gain`` is the smallest observed v(f(x)-f(y)) - v(x-y) over the
    sampled pairs; a contraction in the required sense keeps it >= 1.
    """

    analytic: str
    pairs_tested: int = 0
    worst_gain: int | None = None
    witness: tuple[PadicInt, PadicInt] | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.analytic != "fail" and self.witness is None


def certify_contraction(
    f,
    sample_count: int = 1000,
    seed: int = 0,
    prime: int | None = None,
    precision: int | None = None,
) -> CertificateReport:
    """Check |f(x) - f(y)|_p <= |x - y|_p / p.

    Affine maps are decided from the multiplier's valuation; any other
    callable is only sampled, which can refute but never prove the bound.
    """
    if isinstance(f, AffineMap):
        analytic = "pass" if f.a.valuation() >= 1 else "fail"
        prime, precision = f.prime, f.precision
    else:
        analytic = "not-applicable"
        if prime is None or precision is None:
            raise ValueError("prime and precision are required for non-affine maps")
    report = CertificateReport(analytic=analytic)
    rng = random.Random(seed)
    mod = prime**precision
    for _ in range(sample_count):
        x = PadicInt(prime, precision, rng.randrange(mod))
        y = PadicInt(prime, precision, rng.randrange(mod))
        if x == y:
            continue
        report.pairs_tested += 1
        vxy = (x - y).valuation()
        vf = (f(x) - f(y)).valuation()
        gain = vf - vxy
        if report.worst_gain is None or gain < report.worst_gain:
            report.worst_gain = gain
        if vf < min(vxy + 1, precision) and report.witness is None:
            report.witness = (x, y)
    return report


def parse_coefficient(text: str, p: int, K: int) -> PadicInt:
    """Read a coefficient given as a rational ("-2/1", "3") or little-endian digits ("0,1,0")."""
    text = text.strip()
    if "," in text:
        digits = [int(tok) for tok in text.split(",")]
        if len(digits) > K:
            raise PrecisionMismatch(f"{len(digits)} digits given for precision {K}")
        return PadicInt(p, K, from_digits(p, digits + [0] * (K - len(digits))).value)
    q = Fraction(text)
    return from_rational(p, K, q.numerator, q.denominator)


def format_affine(f: AffineMap) -> str:
    return f"a={format_digits(f.a, header=False)}; b={format_digits(f.b, header=False)}"


def parse_affine(text: str, p: int, K: int) -> AffineMap:
    fields = {}
    for part in text.split(";"):
        key, _, val = part.partition("=")
        fields[key.strip()] = val
    if set(fields) != {"a", "b"}:
        raise ValueError(f"expected 'a=...; b=...', got {text!r}")
    return AffineMap(parse_coefficient(fields["a"], p, K), parse_coefficient(fields["b"], p, K))
