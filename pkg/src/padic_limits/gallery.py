"""
The two-map system f1(x) = p*x, f2(x) = p*x + 1 - p and its parity families.

The plain fixed point of f_{i1} o ... o f_{in} has the closed form

    (d(i1) + d(i2) p + ... + d(in) p^(n-1)) / (1 + p + ... + p^(n-1)),

with d(i) = 1 if i == 2 else 0. Its closure Lambda is the set of
p^g * (1 + x1 p + x2 p^2 + ...) with every x_i in {0, p-1}, together with 0.
"""
from __future__ import annotations

from dataclasses import dataclass

from .contraction import AffineMap, ContractionSystem
from .errors import AlphabetMismatch, EntryOutOfRange
from .family import IndexFamily, IndexMap, SymbolWord, plain_family
from .limitset import LimitSetSample, enumerate_lambda0
from .padic import PadicInt, check_prime, from_rational

__all__ = [
    "CASE_MATRICES",
    "PxSystem",
    "XiMatrix",
    "case_family",
    "case_image",
    "closed_form_fp",
    "flip_word",
    "lambda_member",
    "lambda_sample",
    "make_px_system",
    "parity_family",
]

CASE_MATRICES = {
    1: ((2, 2), (2, 2)),
    2: ((2, 1), (2, 1)),
    3: ((2, 2), (1, 1)),
    4: ((2, 1), (1, 1)),
}


@dataclass(frozen=True)
class PxSystem(ContractionSystem):
    @property
    def f1(self) -> AffineMap:
        return self.maps[0]

    @property
    def f2(self) -> AffineMap:
        return self.maps[1]


def make_px_system(p: int, K: int) -> PxSystem:
    check_prime(p)
    return PxSystem(
        (AffineMap.from_rationals(p, K, p, 0), AffineMap.from_rationals(p, K, p, 1 - p))
    )


@dataclass(frozen=True)
class XiMatrix:
    """A 2 x 2 matrix with entries in {1, 2} acting on words by parity."""

    entries: tuple[tuple[int, int], tuple[int, int]]

    def __post_init__(self) -> None:
        entries = tuple(tuple(r) for r in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) != 2 or any(len(r) != 2 for r in entries):
            raise EntryOutOfRange("parity matrix must be 2 x 2")
        for v in (v for r in entries for v in r):
            if v not in (1, 2):
                raise EntryOutOfRange(f"entry {v} not in {{1, 2}}")

    @property
    def case(self) -> int | None:
        for c, m in CASE_MATRICES.items():
            if m == self.entries:
                return c
        return None


def parity_family(matrix) -> IndexFamily:
    if not isinstance(matrix, XiMatrix):
        matrix = XiMatrix(matrix)
    return IndexFamily(tuple(tuple(IndexMap.parity(v) for v in row) for row in matrix.entries))


def case_family(case: int) -> IndexFamily:
    return parity_family(CASE_MATRICES[case])


def closed_form_fp(system: PxSystem, word: SymbolWord, n: int) -> PadicInt:
    p, K = system.prime, system.precision
    symbols = word.symbols(n)
    num = sum(p**k for k, s in enumerate(symbols) if s == 2)
    den = sum(p**k for k in range(n))
    return from_rational(p, K, num, den)


def lambda_member(x: PadicInt) -> bool:
    """Does x match p^g (1 + x1 p + ...) with x_i in {0, p-1} on its K known digits?

    The verdict only constrains digits below the precision; zero at
    precision counts as a member.
    """
    if x.is_zero():
        return True
    p = x.prime
    unit = x.digits[x.valuation():]
    return unit[0] == 1 and all(d in (0, p - 1) for d in unit[1:])


def case_image(case: int, x: PadicInt) -> PadicInt:
    if case == 1:
        return 2 * x * x
    if case == 2:
        return 2 * x * (1 - x)
    if case == 3:
        return x * x + (1 - x) * (1 - x)
    if case == 4:
        return x
    raise ValueError(f"case must be 1..4, got {case}")


def flip_word(alpha: SymbolWord) -> SymbolWord:
    for s in alpha.prefix + alpha.tail:
        if s not in (1, 2):
            raise AlphabetMismatch(f"flip needs symbols in {{1, 2}}, got {s}")
    swap = {1: 2, 2: 1}
    return SymbolWord(
        tuple(swap[s] for s in alpha.prefix), tuple(swap[s] for s in alpha.tail), alpha.N
    )


def lambda_sample(p: int, K: int, depth: int, **kw) -> LimitSetSample:
    """Lambda reduced mod p^depth, from all plain words of that length."""
    return enumerate_lambda0(make_px_system(p, K), plain_family(2), depth, **kw)
