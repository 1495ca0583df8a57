"""
Symbol words, index families and the unconventional maps built from them.

For a word alpha and depth n, each table entry xi_ij of an index family
gives one composition f_{xi_ij(alpha_1)} o ... o f_{xi_ij(alpha_n)}; the
unconventional map sums over rows the product along each row of these
compositions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import chain
from typing import Iterable, Sequence

from .contraction import AffineMap, ContractionSystem
from .errors import AlphabetMismatch, CoverageError, ValueOutOfRange, WordTooShort
from .padic import PadicInt

__all__ = [
    "IndexFamily",
    "IndexMap",
    "SymbolWord",
    "apply_F",
    "component_map",
    "concat_words",
    "parse_family",
    "plain_family",
    "star_family",
    "transform_word",
    "validate_coverage",
]


@dataclass(frozen=True, slots=True)
class SymbolWord:
    """A finite word, or an eventually periodic infinite one (prefix + repeated tail).

    Symbols are 1-based. ``N`` is the alphabet size when known.
    """

    prefix: tuple[int, ...]
    tail: tuple[int, ...] = ()
    N: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "tail", tuple(self.tail))
        if not self.prefix and not self.tail:
            raise ValueError("empty word")
        for s in chain(self.prefix, self.tail):
            if not isinstance(s, int) or s < 1 or (self.N is not None and s > self.N):
                raise AlphabetMismatch(f"symbol {s!r} outside [1, {self.N}]")

    @classmethod
    def parse(cls, text: str, N: int | None = None) -> "SymbolWord":
        """Read "1,2,1" (finite) or "1,2:1" (prefix 1,2 then 1 repeated forever)."""
        head, _, tail = text.strip().partition(":")
        prefix = tuple(int(t) for t in head.split(",") if t.strip())
        period = tuple(int(t) for t in tail.split(",") if t.strip())
        return cls(prefix, period, N)

    @property
    def is_finite(self) -> bool:
        return not self.tail

    @property
    def available(self) -> float:
        """Number of symbols available; infinite for periodic-tailed words."""
        return len(self.prefix) if self.is_finite else math.inf

    def symbols(self, n: int) -> tuple[int, ...]:
        """The first n symbols, unfolding the tail as needed."""
        if n <= len(self.prefix):
            return self.prefix[:n]
        if not self.tail:
            raise WordTooShort(f"word has {len(self.prefix)} symbols, {n} needed")
        extra = n - len(self.prefix)
        reps = -(-extra // len(self.tail))
        return self.prefix + (self.tail * reps)[:extra]

    def shift(self, n: int) -> "SymbolWord":
        """Drop the first n symbols."""
        if n <= len(self.prefix):
            if n == len(self.prefix) and not self.tail:
                raise WordTooShort("shift would leave an empty word")
            return SymbolWord(self.prefix[n:], self.tail, self.N)
        if not self.tail:
            raise WordTooShort(f"cannot shift a {len(self.prefix)}-symbol word by {n}")
        r = (n - len(self.prefix)) % len(self.tail)
        return SymbolWord((), self.tail[r:] + self.tail[:r], self.N)

    def with_alphabet(self, N: int) -> "SymbolWord":
        return SymbolWord(self.prefix, self.tail, N)

    def __str__(self) -> str:
        s = ",".join(map(str, self.prefix))
        if self.tail:
            s += ":" + ",".join(map(str, self.tail))
        return s


@dataclass(frozen=True, slots=True)
class IndexMap:
    """A map [1,N] -> [1,N] stored as its lookup row; ``label`` records how it was built."""

    images: tuple[int, ...]
    label: str = ""

    def __post_init__(self) -> None:
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        N = len(images)
        if N < 1:
            raise ValueError("empty index map")
        for v in images:
            if not 1 <= v <= N:
                raise ValueOutOfRange(f"image {v} outside [1, {N}]")
        if not self.label:
            object.__setattr__(self, "label", "perm:(" + ",".join(map(str, images)) + ")")

    @property
    def N(self) -> int:
        return len(self.images)

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    @classmethod
    def identity(cls, N: int) -> "IndexMap":
        return cls(tuple(range(1, N + 1)))

    @classmethod
    def star(cls, ell: int, N: int) -> "IndexMap":
        """k -> (ell + k) mod N, with N standing in for residue 0."""
        if not 1 <= ell <= N:
            raise ValueOutOfRange(f"star value {ell} outside [1, {N}]")
        return cls(tuple((ell + k - 1) % N + 1 for k in range(1, N + 1)), f"star:{ell}")

    @classmethod
    def parity(cls, v: int) -> "IndexMap":
        """Over {1,2}: symbol 1 if v + k is odd, 2 if even. v=2 fixes, v=1 swaps."""
        if v not in (1, 2):
            raise ValueOutOfRange(f"parity entry {v} not in {{1, 2}}")
        return cls(tuple(1 if (v + k) % 2 else 2 for k in (1, 2)), f"parity:{v}")

    @classmethod
    def parse(cls, text: str, N: int) -> "IndexMap":
        kind, _, arg = text.strip().partition(":")
        if kind == "perm":
            body = arg.strip().strip("()")
            m = cls(tuple(int(t) for t in body.split(",")))
        elif kind == "star":
            m = cls.star(int(arg), N)
        elif kind == "parity":
            m = cls.parity(int(arg))
        else:
            raise ValueError(f"unknown index map kind {kind!r}")
        if m.N != N:
            raise AlphabetMismatch(f"{text!r} acts on [1,{m.N}], expected [1,{N}]")
        return m


def validate_coverage(family, N: int) -> bool:
    """True iff the images of all table entries together cover [1, N].

    Accepts an IndexFamily or any M x L nesting of IndexMaps / lookup rows.
    """
    rows = family.rows if isinstance(family, IndexFamily) else family
    seen: set[int] = set()
    for row in rows:
        for entry in row:
            images = entry.images if isinstance(entry, IndexMap) else tuple(entry)
            seen.update(images)
    return seen == set(range(1, N + 1))


@dataclass(frozen=True)
class IndexFamily:
    """An M x L table of index maps on [1, N] that satisfies the coverage condition."""

    rows: tuple[tuple[IndexMap, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows or not rows[0]:
            raise ValueError("index family must be at least 1 x 1")
        L, N = len(rows[0]), rows[0][0].N
        for row in rows:
            if len(row) != L:
                raise ValueError("ragged index family")
            for m in row:
                if m.N != N:
                    raise AlphabetMismatch("all index maps must act on the same alphabet")
        if not validate_coverage(rows, N):
            raise CoverageError(f"images of the family do not cover [1, {N}]")

    @property
    def M(self) -> int:
        return len(self.rows)

    @property
    def L(self) -> int:
        return len(self.rows[0])

    @property
    def N(self) -> int:
        return self.rows[0][0].N

    def entry(self, i: int, j: int) -> IndexMap:
        return self.rows[i - 1][j - 1]

    def entries(self) -> Iterable[IndexMap]:
        return chain.from_iterable(self.rows)

    def describe(self) -> str:
        """M lines of L space-separated entry labels."""
        return "\n".join(" ".join(m.label for m in row) for row in self.rows)


def parse_family(text: str, N: int) -> IndexFamily:
    rows = [line.split() for line in text.strip().splitlines() if line.strip()]
    return IndexFamily(tuple(tuple(IndexMap.parse(tok, N) for tok in row) for row in rows))


def plain_family(N: int) -> IndexFamily:
    """The 1 x 1 identity family; its limit set is the ordinary IFS attractor."""
    return IndexFamily(((IndexMap.identity(N),),))


def star_family(values: Sequence[Sequence[int]], N: int) -> IndexFamily:
    return IndexFamily(tuple(tuple(IndexMap.star(v, N) for v in row) for row in values))


def transform_word(xi: IndexMap, alpha: SymbolWord) -> SymbolWord:
    return SymbolWord(
        tuple(xi(s) for s in alpha.prefix), tuple(xi(s) for s in alpha.tail), alpha.N
    )


def component_map(
    system: ContractionSystem, xi: IndexMap, alpha: SymbolWord, n: int
) -> AffineMap:
    """f_{xi(alpha_1)} o ... o f_{xi(alpha_n)}; its multiplier has valuation >= n."""
    if n < 1:
        raise ValueError("depth n must be >= 1")
    if xi.N != system.N:
        raise AlphabetMismatch(f"index map on [1,{xi.N}] for a system of {system.N} maps")
    return system.compose_word([xi(s) for s in alpha.symbols(n)])


def apply_F(
    system: ContractionSystem, family: IndexFamily, alpha: SymbolWord, n: int, x: PadicInt
) -> PadicInt:
    total = PadicInt.zero(system.prime, system.precision)
    for row in family.rows:
        prod = PadicInt.one(system.prime, system.precision)
        for xi in row:
            prod = prod * component_map(system, xi, alpha, n)(x)
        total = total + prod
    return total


def concat_words(alpha: SymbolWord, n: int, beta: SymbolWord) -> SymbolWord:
    """(alpha_1, ..., alpha_n, beta_1, beta_2, ...)."""
    return SymbolWord(alpha.symbols(n) + beta.prefix, beta.tail, alpha.N or beta.N)
