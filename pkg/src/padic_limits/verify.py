"""Invariant suites run by ``padic-limits verify``; each returns MetricReports."""
from __future__ import annotations

import random

from .config import RunConfig
from .contraction import certify_contraction
from .family import SymbolWord, apply_F
from .gallery import CASE_MATRICES, PxSystem, case_family, case_image, lambda_sample
from .limitset import LimitSetSample, enumerate_lambda0, lambda0_point, extension_pair
from .metric import (
    MetricReport,
    disconnect_separation,
    doubling_cover,
    isolation_scan,
    valuation_matrix,
)
from .padic import PadicInt

__all__ = [
    "annulus_suite",
    "cauchy_suite",
    "case_identity_suite",
    "certificate_suite",
    "disconnected_suite",
    "doubling_suite",
    "lipschitz_suite",
    "perfectness_suite",
    "run_all",
    "extension_suite",
]


def random_word(rng: random.Random, N: int, length: int) -> SymbolWord:
    return SymbolWord(tuple(rng.randint(1, N) for _ in range(length)), (), N)


def random_padic(rng: random.Random, p: int, K: int) -> PadicInt:
    return PadicInt(p, K, rng.randrange(p**K))


def certificate_suite(cfg: RunConfig) -> list[MetricReport]:
    out = []
    for i, f in enumerate(cfg.system.maps, start=1):
        cert = certify_contraction(f, sample_count=cfg.verify_samples, seed=cfg.seed + i)
        r = MetricReport("contraction certificate", {"map": i})
        r.constants["analytic"] = cert.analytic
        r.constants["worst_gain"] = cert.worst_gain
        if not cert.passed:
            r.fail(f"pair {cert.witness}")
        out.append(r)
    return out


def lipschitz_suite(cfg: RunConfig, max_n: int = 6) -> list[MetricReport]:
    """v(F(x) - F(y)) >= v(x - y) + n for random words of length n."""
    rng = random.Random(cfg.seed)
    S, fam = cfg.system, cfg.family
    p, K = S.prime, S.precision
    r = MetricReport("Lipschitz bound of F_{alpha,n}", {"samples": cfg.verify_samples})
    worst = None
    for _ in range(cfg.verify_samples):
        n = rng.randint(1, max_n)
        alpha = random_word(rng, S.N, n)
        x, y = random_padic(rng, p, K), random_padic(rng, p, K)
        if x == y:
            continue
        vxy = (x - y).valuation()
        vf = (apply_F(S, fam, alpha, n, x) - apply_F(S, fam, alpha, n, y)).valuation()
        slack = vf - min(vxy + n, K)
        worst = slack if worst is None else min(worst, slack)
        if slack < 0:
            r.fail(f"alpha={alpha} x={x} y={y}: {vf} < {vxy} + {n}")
    r.constants["min_slack"] = worst
    return [r]


def cauchy_suite(cfg: RunConfig, max_depth: int = 8) -> list[MetricReport]:
    """Depth-n and depth-m points of one word agree mod p^m."""
    rng = random.Random(cfg.seed + 1)
    S, fam = cfg.system, cfg.family
    top = min(max_depth, S.precision)
    r = MetricReport("Cauchy rate of x_alpha^(n)", {"samples": cfg.verify_samples, "max_depth": top})
    for _ in range(cfg.verify_samples):
        alpha = random_word(rng, S.N, top)
        pts = {n: lambda0_point(S, fam, alpha, n) for n in range(1, top + 1)}
        for n in range(2, top + 1):
            for m in range(1, n):
                if not pts[n].eq_mod(pts[m], m):
                    r.fail(f"alpha={alpha} n={n} m={m}")
    return [r]


def extension_suite(cfg: RunConfig, max_n: int = 4, max_m: int = 6) -> list[MetricReport]:
    """F~ applied to x_beta matches the limit point of alpha^[n] v beta."""
    rng = random.Random(cfg.seed + 2)
    S, fam = cfg.system, cfg.family
    r = MetricReport("F~[x_beta] = x_(alpha^[n] v beta)", {"samples": cfg.verify_samples})
    for _ in range(cfg.verify_samples):
        n, m = rng.randint(1, max_n), rng.randint(1, max_m)
        alpha = random_word(rng, S.N, n)
        beta = SymbolWord(
            tuple(rng.randint(1, S.N) for _ in range(rng.randint(0, m))),
            tuple(rng.randint(1, S.N) for _ in range(rng.randint(1, 3))),
            S.N,
        )
        lhs, rhs, k = extension_pair(S, fam, alpha, n, beta, m)
        if not lhs.eq_mod(rhs, k):
            r.fail(f"alpha={alpha} n={n} beta={beta} m={m}")
    return [r]


def perfectness_suite(cfg: RunConfig, sample: LimitSetSample) -> list[MetricReport]:
    if sample.depth < 2:
        return [MetricReport("perfectness (isolation scan)", verdict="not-applicable")]
    coarse = enumerate_lambda0(cfg.system, cfg.family, max(1, sample.depth // 2), cfg.budget)
    return [isolation_scan(coarse, sample)]


def annulus_suite(cfg: RunConfig, sample: LimitSetSample) -> list[MetricReport]:
    """Smallest c such that every annulus [k, k + c] around a sample point meets the sample.

    Radii run over 1 <= k <= depth - 2 so that the annulus stays inside the
    resolved part of the sample. Scales where nothing at valuation >= k is
    visible are counted as unresolved; they fail the suite only at
    k <= depth // 2, where they would mean an isolated point.
    """
    d = sample.depth
    r = MetricReport("uniform perfectness", {"depth": d, "radii": f"1..{d - 2}"})
    if len(sample) < 2:
        r.verdict = "not-applicable"
        return [r]
    pts = list(sample)
    V = valuation_matrix(pts)
    worst = 0
    unresolved = 0
    for i, x in enumerate(pts):
        row = sorted(int(v) for j, v in enumerate(V[i]) if j != i)
        for k in range(1, d - 1):
            above = [v for v in row if v >= k]
            if not above:
                unresolved += 1
                if k <= d // 2:
                    r.fail(f"no sample point within p^-{k} of {x}")
                continue
            worst = max(worst, above[0] - k, 1)
    r.constants["c_exp"] = worst
    r.constants["unresolved"] = unresolved
    return [r]


def disconnected_suite(cfg: RunConfig, sample: LimitSetSample) -> list[MetricReport]:
    r = MetricReport("uniform disconnectedness", {"depth": sample.depth})
    if len(sample) < 2:
        r.verdict = "not-applicable"
        return [r]
    V = valuation_matrix(list(sample))
    for a in sample:
        for k in range(sample.depth):
            sub = disconnect_separation(sample, a, k, V)
            if not sub.passed:
                r.fail(sub.witnesses[-1])
    return [r]


def doubling_suite(cfg: RunConfig, sample: LimitSetSample) -> list[MetricReport]:
    r = MetricReport("doubling", {"depth": sample.depth})
    most = 0
    for a in sample:
        for k in range(sample.depth):
            sub = doubling_cover(sample, a, k)
            most = max(most, sub.constants["subballs"])
            if not sub.passed:
                r.fail(sub.witnesses[-1])
    r.constants["max_subballs"] = most
    return [r]


def case_identity_suite(cfg: RunConfig, sample: LimitSetSample) -> list[MetricReport]:
    """For the two-map system with a parity family: the sample equals the case image of Lambda."""
    case = None
    if isinstance(cfg.system, PxSystem):
        table = [[xi.images for xi in row] for row in cfg.family.rows]
        for c in CASE_MATRICES:
            if table == [[xi.images for xi in row] for row in case_family(c).rows]:
                case = c
    r = MetricReport("case image identity", {"case": case})
    if case is None:
        r.verdict = "not-applicable"
        return [r]
    d = sample.depth
    lam = lambda_sample(cfg.prime, cfg.precision, d, budget=cfg.budget)
    mod = cfg.prime**d
    image = {case_image(case, x).value % mod for x in lam}
    if image != sample.keys:
        r.fail(f"{len(image ^ sample.keys)} residues differ mod p^{d}")
    r.constants["points"] = len(image)
    return [r]


def run_all(cfg: RunConfig, depth: int | None = None) -> list[MetricReport]:
    depth = cfg.depth if depth is None else depth
    sample = enumerate_lambda0(cfg.system, cfg.family, depth, cfg.budget)
    reports: list[MetricReport] = []
    if cfg.verify["certificate"]:
        reports += certificate_suite(cfg)
    if cfg.verify["lipschitz"]:
        reports += lipschitz_suite(cfg)
    if cfg.verify["cauchy"]:
        reports += cauchy_suite(cfg)
    if cfg.verify["extension"]:
        reports += extension_suite(cfg)
    if cfg.verify["perfectness"]:
        reports += perfectness_suite(cfg, sample)
    if cfg.verify["annulus"]:
        reports += annulus_suite(cfg, sample)
    if cfg.verify["disconnected"]:
        reports += disconnected_suite(cfg, sample)
    if cfg.verify["doubling"]:
        reports += doubling_suite(cfg, sample)
    if cfg.verify["cases"]:
        reports += case_identity_suite(cfg, sample)
    return reports
