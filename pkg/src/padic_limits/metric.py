"""
Ultrametric geometry of finite limit-set samples, and the symbolic Cantor metric.

All radii are powers of p and are passed as exponents: ``r_exp = k`` means
radius p^(-k). Distances are likewise reported as valuations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Iterable, Sequence

import numpy as np

from .contraction import ContractionSystem
from .errors import IncomparableLength, TooFewPoints
from .family import IndexFamily, SymbolWord
from .limitset import LimitSetSample, lambda0_point
from .padic import PadicInt, Valuation, valuation_norm

__all__ = [
    "LogRatio",
    "MetricReport",
    "SymbolDistance",
    "diameter",
    "disconnect_separation",
    "doubling_cover",
    "exhaustive_triples",
    "isolation_scan",
    "pdist",
    "perfect_annulus",
    "quasi_symmetry_audit",
    "symbol_dist",
    "valuation_matrix",
]


@dataclass
class MetricReport:
    """Verdict of one metric check.

    A failing report always carries at least one witness; a passing one
    records the extremal constant it saw in ``constants``.
    """

    property: str
    parameters: dict[str, Any] = field(default_factory=dict)
    verdict: str = "pass"
    constants: dict[str, Any] = field(default_factory=dict)
    witnesses: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict != "fail"

    def fail(self, witness: str) -> None:
        self.verdict = "fail"
        self.witnesses.append(witness)

    def to_text(self) -> str:
        lines = [f"property: {self.property}"]
        for k, v in self.parameters.items():
            lines.append(f"  param {k} = {v}")
        lines.append(f"  verdict: {self.verdict}")
        for k, v in self.constants.items():
            lines.append(f"  constant {k} = {v}")
        for w in self.witnesses:
            lines.append(f"  witness: {w}")
        return "\n".join(lines)


def pdist(x: PadicInt, y: PadicInt) -> Valuation:
    """Distance |x - y|_p as a valuation."""
    return valuation_norm(x - y)


def valuation_matrix(points: Sequence[PadicInt]) -> np.ndarray:
    """Pairwise v(x_i - x_j), from the first differing digit (K on the diagonal)."""
    if not points:
        return np.zeros((0, 0), dtype=np.int64)
    K = points[0].precision
    digits = np.array([x.digits for x in points], dtype=np.int64)
    differ = digits[:, None, :] != digits[None, :, :]
    first = differ.argmax(axis=2)
    return np.where(differ.any(axis=2), first, K)


def diameter(sample: LimitSetSample) -> Valuation:
    """Largest pairwise distance, i.e. the smallest pairwise valuation.

    In an ultrametric every point is a diametral centre, so one row of
    distances suffices.
    """
    pts = list(sample)
    if len(pts) < 2:
        raise TooFewPoints("diameter needs at least two distinct points")
    return Valuation(sample.prime, sample.precision, min((y - pts[0]).valuation() for y in pts[1:]))


def _fmt(x: PadicInt) -> str:
    return ",".join(map(str, x.digits))


def perfect_annulus(
    sample: LimitSetSample, x0: PadicInt, r_exp: int, c_exp: int = 1
) -> MetricReport:
    """Look for y in the sample with p^(-r_exp-c_exp) <= |y - x0|_p <= p^(-r_exp).

    The witness is the qualifying point with the smallest residue mod p^depth.
    """
    report = MetricReport(
        "uniform-perfectness annulus",
        {"x0": _fmt(x0), "r_exp": r_exp, "c_exp": c_exp},
    )
    mod = sample.prime**sample.depth
    hits = [y for y in sample if r_exp <= (y - x0).valuation() <= r_exp + c_exp]
    if not hits:
        report.fail(f"annulus empty around {_fmt(x0)} at valuations [{r_exp}, {r_exp + c_exp}]")
        return report
    y = min(hits, key=lambda z: z.value % mod)
    report.constants["valuation"] = (y - x0).valuation()
    report.witnesses.append(_fmt(y))
    return report


def disconnect_separation(
    sample: LimitSetSample, a: PadicInt, r_exp: int, V: np.ndarray | None = None
) -> MetricReport:
    """Exact dist(A, S \\ A) for A = S intersected with the closed ball B(a, p^(-r_exp)).

    Passes when the separation is strictly larger than the radius, i.e. the
    separation valuation is < r_exp. ``V`` may carry a precomputed
    :func:`valuation_matrix` of the sample.
    """
    pts = list(sample)
    report = MetricReport("uniform disconnectedness", {"a": _fmt(a), "r_exp": r_exp})
    if V is None:
        V = valuation_matrix(pts)
    to_a = np.array([(x - a).valuation() for x in pts], dtype=np.int64)
    inside = to_a >= r_exp
    if inside.all():
        report.verdict = "pass"
        report.constants["separation_exp"] = None
        report.witnesses.append("complement empty")
        return report
    if not inside.any():
        report.verdict = "not-applicable"
        report.witnesses.append("ball holds no sample point")
        return report
    block = V[np.ix_(inside, ~inside)]
    sep = int(block.max())
    report.constants["separation_exp"] = sep
    i, j = np.unravel_index(int(block.argmax()), block.shape)
    pair = f"{_fmt(pts[np.flatnonzero(inside)[i]])} ~ {_fmt(pts[np.flatnonzero(~inside)[j]])}"
    if sep >= r_exp:
        report.fail(f"separation p^-{sep} not larger than radius p^-{r_exp}: {pair}")
    else:
        report.witnesses.append(pair)
    return report


def doubling_cover(sample: LimitSetSample, a: PadicInt, r_exp: int) -> MetricReport:
    """Split the ball around a into subballs of radius p^(-r_exp-1) by the digit at r_exp."""
    report = MetricReport("doubling", {"a": _fmt(a), "r_exp": r_exp})
    ball = [x for x in sample if (x - a).valuation() >= r_exp]
    sub = min(r_exp + 1, sample.precision)
    mod = sample.prime**sub
    centers: dict[int, PadicInt] = {}
    for x in ball:
        c = x.value % mod
        centers.setdefault(c, PadicInt(x.prime, x.precision, c))
    for x in ball:
        if (x - centers[x.value % mod]).valuation() < sub:
            report.fail(f"{_fmt(x)} not covered")
    count = len(centers)
    report.constants["subballs"] = count
    report.constants["centers"] = sorted(centers)
    if count > sample.prime:
        report.fail(f"{count} subballs exceed p={sample.prime}")
    return report


@dataclass(frozen=True)
class SymbolDistance:
    """d_a(x, y) = a^L where L is the common-prefix length; L None means infinite."""

    a: Fraction
    L: int | None

    @property
    def value(self) -> Fraction:
        return Fraction(0) if self.L is None else self.a**self.L


def symbol_dist(x: SymbolWord, y: SymbolWord, a=Fraction(1, 2)) -> SymbolDistance:
    """Symbolic Cantor distance between two words.

    Periodic-tailed words are compared exactly. A finite word is compared on
    its own length; two finite words of different lengths that agree on the
    shorter one cannot be told apart and raise IncomparableLength.
    """
    a = Fraction(a)
    if not 0 < a < 1:
        raise ValueError("a must lie in (0, 1)")
    if x.is_finite or y.is_finite:
        n = int(min(x.available, y.available))
    else:
        n = max(len(x.prefix), len(y.prefix)) + math.lcm(len(x.tail), len(y.tail))
    xs, ys = x.symbols(n), y.symbols(n)
    for i, (s, t) in enumerate(zip(xs, ys)):
        if s != t:
            return SymbolDistance(a, i)
    if x.is_finite and y.is_finite and len(x.prefix) != len(y.prefix):
        raise IncomparableLength(f"{x} and {y} agree on their common length")
    return SymbolDistance(a, None)


@dataclass(frozen=True)
class LogRatio:
    """The exponent coeff * log(num) / log(den), kept symbolic for exact comparison."""

    num: Fraction
    den: Fraction
    coeff: Fraction = Fraction(1)

    def __float__(self) -> float:
        return float(self.coeff) * math.log(self.num) / math.log(self.den)


def _eta_holds(dv: int, dL: int, p: int, a: Fraction, s) -> bool:
    """p^(-dv) <= (a^dL)^s, i.e. dv*log p >= s*dL*log(1/a), decided exactly when possible."""
    inv_a = 1 / a
    if isinstance(s, LogRatio) and Fraction(s.den) == inv_a:
        c = Fraction(s.coeff)
        # k*dv*log p >= m*dL*log(num)
        return Fraction(p) ** (c.denominator * dv) >= Fraction(s.num) ** (c.numerator * dL)
    if isinstance(s, (int, Fraction)):
        s = Fraction(s)
        return Fraction(p) ** (s.denominator * dv) >= inv_a ** (s.numerator * dL)
    # float exponents are compared in floating point
    return dv * math.log(p) >= float(s) * dL * math.log(inv_a)


def exhaustive_triples(N: int, depth: int) -> Iterable[tuple[SymbolWord, SymbolWord, SymbolWord]]:
    words = [SymbolWord(w, (), N) for w in product(range(1, N + 1), repeat=depth)]
    return product(words, repeat=3)


def quasi_symmetry_audit(
    triples: Iterable[tuple[SymbolWord, SymbolWord, SymbolWord]],
    system: ContractionSystem,
    family: IndexFamily,
    eta_exponent,
    a=Fraction(1, 2),
) -> MetricReport:
    """Audit word -> limit point against the modulus eta(t) = t^s.

    For each triple, t is the exact ratio d_a(x,y)/d_a(x,z) and the check is
    |pi(x)-pi(y)|_p <= t^s |pi(x)-pi(z)|_p. Finite words are mapped to their
    depth-len(word) points. Triples with x = z are counted and skipped.
    """
    a = Fraction(a)
    p, K = system.prime, system.precision
    report = MetricReport(
        "quasi-symmetry audit", {"eta_exponent": eta_exponent, "a": a}
    )
    values: dict[SymbolWord, PadicInt] = {}

    def pi(w: SymbolWord) -> PadicInt:
        if not w.is_finite:
            raise ValueError("audit words must be finite")
        if w not in values:
            values[w] = lambda0_point(system, family, w, len(w.prefix))
        return values[w]

    verdicts: dict[tuple[int, int], bool] = {}
    checked = degenerate = 0
    worst = None
    for x, y, z in triples:
        Lxz = symbol_dist(x, z, a).L
        if Lxz is None:
            degenerate += 1
            continue
        checked += 1
        Lxy = symbol_dist(x, y, a).L
        if Lxy is None:
            continue
        vxy = (pi(x) - pi(y)).valuation()
        vxz = (pi(x) - pi(z)).valuation()
        if vxy >= K:
            continue
        if vxz >= K:
            report.fail(f"pi({x}) = pi({z}) at precision but pi({y}) differs")
            continue
        dv, dL = vxy - vxz, Lxy - Lxz
        if (dv, dL) not in verdicts:
            verdicts[(dv, dL)] = _eta_holds(dv, dL, p, a, eta_exponent)
        if worst is None or dv - dL < worst[0]:
            worst = (dv - dL, (dv, dL))
        if not verdicts[(dv, dL)]:
            if len(report.witnesses) < 5:
                report.fail(f"triple ({x}; {y}; {z}): dv={dv}, dL={dL}")
            else:
                report.verdict = "fail"
    report.constants["triples_checked"] = checked
    report.constants["degenerate_skipped"] = degenerate
    if worst is not None:
        report.constants["worst (dv, dL)"] = worst[1]
    return report


def isolation_scan(
    coarse: LimitSetSample, fine: LimitSetSample, margin: int = 0
) -> MetricReport:
    """No coarse point is isolated: each has a fine-sample neighbour at valuation >= d - margin."""
    d, d2 = coarse.depth, fine.depth
    report = MetricReport(
        "perfectness (isolation scan)", {"coarse_depth": d, "fine_depth": d2, "margin": margin}
    )
    if d2 <= d:
        raise ValueError("fine sample must be deeper than the coarse one")
    if len(fine) < 2:
        report.verdict = "not-applicable"
        report.witnesses.append("fewer than two points")
        return report
    mod = fine.prime**d2
    isolated = 0
    closest = None
    for x in coarse:
        best = None
        for y in fine:
            if y.value % mod == x.value % mod:
                continue
            v = (x - y).valuation()
            if best is None or v > best:
                best = v
        if best is None or best < d - margin:
            isolated += 1
            report.fail(f"{_fmt(x)} isolated (nearest at valuation {best})")
        elif closest is None or best < closest:
            closest = best
    report.constants["isolated"] = isolated
    report.constants["min_neighbour_valuation"] = closest
    return report
