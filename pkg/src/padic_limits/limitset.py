"""
Limit points of unconventional systems and finite samples of the limit set.

The limit set is handled through its dense subset of depth-n points: a
depth-n point is trustworthy modulo p^n, so a sample built from all words of
length d is the limit set reduced modulo p^d.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator

from .contraction import ContractionSystem, fixed_point_affine
from .errors import BudgetExceeded, EmptySample, PrecisionMismatch
from .family import IndexFamily, IndexMap, SymbolWord, component_map, concat_words
from .padic import PadicInt, from_digits

__all__ = [
    "DEFAULT_BUDGET",
    "LimitPoint",
    "LimitSetSample",
    "component_fixed_point",
    "enumerate_lambda0",
    "f_tilde",
    "lambda0_point",
    "limit_point",
]

DEFAULT_BUDGET = 2**12


@dataclass(frozen=True)
class LimitPoint:
    """An approximation of x_alpha, correct modulo p^guaranteed_exponent."""

    value: PadicInt
    guaranteed_exponent: int
    word: SymbolWord


def component_fixed_point(
    system: ContractionSystem, xi: IndexMap, alpha: SymbolWord, n: int
) -> PadicInt:
    return fixed_point_affine(component_map(system, xi, alpha, n))


def _sum_of_products(system: ContractionSystem, family: IndexFamily, value_of) -> PadicInt:
    total = PadicInt.zero(system.prime, system.precision)
    for row in family.rows:
        prod = PadicInt.one(system.prime, system.precision)
        for xi in row:
            prod = prod * value_of(xi)
        total = total + prod
    return total


def lambda0_point(
    system: ContractionSystem, family: IndexFamily, alpha: SymbolWord, n: int
) -> PadicInt:
    """Sum over rows of the product of the component fixed points at depth n."""
    return _sum_of_products(
        system, family, lambda xi: component_fixed_point(system, xi, alpha, n)
    )


def limit_point(
    system: ContractionSystem, family: IndexFamily, alpha: SymbolWord, m: int
) -> LimitPoint:
    value = lambda0_point(system, family, alpha, m)
    return LimitPoint(value, min(m, system.precision), alpha)


def f_tilde(
    system: ContractionSystem,
    family: IndexFamily,
    alpha: SymbolWord,
    n: int,
    beta: SymbolWord,
    m: int,
) -> PadicInt:
    """The depth-m pre-limit of F~[x_beta] for F = F_{alpha,n}.

    Applies each component F_{alpha,n}^{xi_ij} to the matching depth-m
    component fixed point of beta. The result agrees with the limit point of
    alpha^[n] v beta modulo p^(n+m).
    """
    return _sum_of_products(
        system,
        family,
        lambda xi: component_map(system, xi, alpha, n)(
            component_fixed_point(system, xi, beta, m)
        ),
    )


def _sort_key(x: PadicInt) -> tuple[int, ...]:
    return x.digits


@dataclass(frozen=True)
class LimitSetSample:
    """Points of the limit set, pairwise distinct modulo p^depth.

    Each stored point is an exact depth-``depth`` point (full precision K);
    only its residue mod p^depth is meaningful for membership.
    """

    prime: int
    precision: int
    depth: int
    points: tuple[PadicInt, ...]
    N: int = 0
    M: int = 0
    L: int = 0
    description: str = ""
    keys: frozenset[int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not 1 <= self.depth <= self.precision:
            raise ValueError(f"depth must lie in [1, K={self.precision}]")
        mod = self.prime**self.depth
        seen: dict[int, PadicInt] = {}
        for x in self.points:
            if x.prime != self.prime or x.precision != self.precision:
                raise PrecisionMismatch("sample point does not match p and K")
            seen.setdefault(x.value % mod, x)
        points = tuple(sorted(seen.values(), key=_sort_key))
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "keys", frozenset(seen))

    @classmethod
    def from_points(
        cls, points: Iterable[PadicInt], depth: int, **meta
    ) -> "LimitSetSample":
        points = list(points)
        if not points:
            raise EmptySample("no points given")
        return cls(points[0].prime, points[0].precision, depth, tuple(points), **meta)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[PadicInt]:
        return iter(self.points)

    def contains_mod(self, x: PadicInt, k: int | None = None) -> bool:
        """Is some sample point congruent to x mod p^k (default: mod p^depth)?"""
        k = self.depth if k is None else k
        if k == self.depth:
            return x.value % self.prime**k in self.keys
        mod = self.prime**k
        return any(y.value % mod == x.value % mod for y in self.points)

    def residues(self, k: int | None = None) -> set[int]:
        mod = self.prime ** (self.depth if k is None else k)
        return {x.value % mod for x in self.points}

    def to_text(self) -> str:
        head = (
            f"p={self.prime} K={self.precision} depth={self.depth} "
            f"N={self.N} M={self.M} L={self.L}"
        )
        lines = [head]
        for row in self.description.splitlines():
            lines.append(f"family {row}")
        lines.append("points")
        lines.extend(",".join(map(str, x.digits)) for x in self.points)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "LimitSetSample":
        lines = text.splitlines()
        fields = dict(item.split("=", 1) for item in lines[0].split())
        p, K, depth = int(fields["p"]), int(fields["K"]), int(fields["depth"])
        desc: list[str] = []
        i = 1
        while lines[i] != "points":
            desc.append(lines[i].removeprefix("family "))
            i += 1
        points = [from_digits(p, [int(t) for t in ln.split(",")]) for ln in lines[i + 1 :] if ln]
        for x in points:
            if x.precision != K:
                raise PrecisionMismatch(f"point with {x.precision} digits in a K={K} sample")
        return cls(
            p, K, depth, tuple(points),
            N=int(fields["N"]), M=int(fields["M"]), L=int(fields["L"]),
            description="\n".join(desc),
        )


def enumerate_lambda0(
    system: ContractionSystem,
    family: IndexFamily,
    depth: int,
    budget: int = DEFAULT_BUDGET,
) -> LimitSetSample:
    """Depth-``depth`` points over every word of exactly that length.

    Words are visited in lexicographic order and the first word reaching a
    residue class mod p^depth supplies its representative.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    count = system.N**depth
    if count > budget:
        raise BudgetExceeded(count, budget)
    if depth > system.precision:
        raise ValueError(f"depth {depth} exceeds precision {system.precision}")
    cache: dict[tuple[int, ...], PadicInt] = {}

    def fixed(symbols: tuple[int, ...]) -> PadicInt:
        if symbols not in cache:
            cache[symbols] = fixed_point_affine(system.compose_word(symbols))
        return cache[symbols]

    points = []
    for word in product(range(1, system.N + 1), repeat=depth):
        points.append(
            _sum_of_products(system, family, lambda xi: fixed(tuple(xi(s) for s in word)))
        )
    return LimitSetSample(
        system.prime, system.precision, depth, tuple(points),
        N=system.N, M=family.M, L=family.L, description=family.describe(),
    )


def extension_pair(
    system: ContractionSystem,
    family: IndexFamily,
    alpha: SymbolWord,
    n: int,
    beta: SymbolWord,
    m: int,
) -> tuple[PadicInt, PadicInt, int]:
    """F~ at depth m, the limit point of alpha^[n] v beta at depth n+m, and their required agreement."""
    lhs = f_tilde(system, family, alpha, n, beta, m)
    rhs = limit_point(system, family, concat_words(alpha, n, beta), n + m).value
    return lhs, rhs, min(n + m, system.precision)
