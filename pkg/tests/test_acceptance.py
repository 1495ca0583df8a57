"""Acceptance criteria, each checked exactly (zero violations / exact set equality).

Every test records one PASS/FAIL line; the lines are printed as they run
(visible with -s) and repeated in the terminal summary.
"""
import random
from itertools import product
from pathlib import Path

from oracles import px_coeffs, rational_fixed_point, to_residue
from padic_limits.config import load_config
from padic_limits.contraction import fixed_point_affine, iterate_fixed_point
from padic_limits.family import SymbolWord, apply_F
from padic_limits.gallery import (
    case_image,
    closed_form_fp,
    flip_word,
    lambda_member,
    lambda_sample,
    make_px_system,
)
from padic_limits.limitset import enumerate_lambda0, lambda0_point, extension_pair
from padic_limits.metric import (
    LogRatio,
    disconnect_separation,
    doubling_cover,
    exhaustive_triples,
    perfect_annulus,
    quasi_symmetry_audit,
    symbol_dist,
    valuation_matrix,
)
from padic_limits.padic import PadicInt, from_digits

CONFIGS = Path(__file__).resolve().parents[1] / "docs" / "examples"
CASES = (1, 2, 3, 4)
RESULTS: list[str] = []


def record(number: int, title: str, violations: list) -> None:
    status = "PASS" if not violations else "FAIL"
    line = f"[{status}] criterion {number:>2}: {title} ({len(violations)} violations)"
    RESULTS.append(line)
    print(line)
    assert not violations, violations[:5]


def case_config(case):
    return load_config(str(CONFIGS / f"case{case}.cfg"))


def all_words(max_len):
    for length in range(1, max_len + 1):
        for w in product((1, 2), repeat=length):
            yield SymbolWord(w, (), 2)


def test_closed_form_oracle_equivalence():
    K = 12
    bad = []
    checked = 0
    for p in (2, 3, 5):
        S = make_px_system(p, K)
        for word in all_words(6):
            n = len(word.prefix)
            cf = closed_form_fp(S, word, n)
            composed = fixed_point_affine(S.compose_word(word.prefix))
            iterated, _ = iterate_fixed_point(S.compose_word(word.prefix), PadicInt.zero(p, K))
            oracle = to_residue(rational_fixed_point(px_coeffs(p), word.prefix), p, K)
            checked += 1
            if not (cf == composed == iterated and cf.value == oracle):
                bad.append((p, str(word)))
    assert checked == 3 * 126
    record(1, "closed form = composed map = Banach iteration, p in {2,3,5}, K=12", bad)


def test_lipschitz_of_unconventional_maps():
    bad = []
    for case in CASES:
        cfg = case_config(case)
        S, fam, K = cfg.system, cfg.family, cfg.precision
        rng = random.Random(1000 + case)
        for _ in range(1000):
            n = rng.randint(1, 6)
            alpha = SymbolWord(tuple(rng.randint(1, 2) for _ in range(n)), (), 2)
            x = PadicInt(3, K, rng.randrange(3**K))
            y = PadicInt(3, K, rng.randrange(3**K))
            vf = (apply_F(S, fam, alpha, n, x) - apply_F(S, fam, alpha, n, y)).valuation()
            if vf < min((x - y).valuation() + n, K):
                bad.append((case, str(alpha), x.value, y.value))
    record(2, "v(F(x)-F(y)) >= v(x-y) + n, 1000 triples per case", bad)


def test_cauchy_rate():
    bad = []
    for case in CASES:
        cfg = case_config(case)
        rng = random.Random(2000 + case)
        for _ in range(100):
            alpha = SymbolWord(tuple(rng.randint(1, 2) for _ in range(8)), (), 2)
            pts = {k: lambda0_point(cfg.system, cfg.family, alpha, k) for k in range(1, 9)}
            for n in range(2, 9):
                for m in range(1, n):
                    if not pts[n].eq_mod(pts[m], m):
                        bad.append((case, str(alpha), n, m))
    record(3, "depth-n and depth-m points agree mod p^m, 1 <= m < n <= 8", bad)


def test_extension_identity():
    bad = []
    for case in CASES:
        cfg = case_config(case)
        rng = random.Random(3000 + case)
        for _ in range(100):
            n, m = rng.randint(1, 4), rng.randint(1, 6)
            alpha = SymbolWord(tuple(rng.randint(1, 2) for _ in range(n)), (), 2)
            beta = SymbolWord(
                tuple(rng.randint(1, 2) for _ in range(rng.randint(0, 4))),
                tuple(rng.randint(1, 2) for _ in range(rng.randint(1, 3))),
                2,
            )
            lhs, rhs, k = extension_pair(cfg.system, cfg.family, alpha, n, beta, m)
            assert k == min(n + m, cfg.precision)
            if not lhs.eq_mod(rhs, k):
                bad.append((case, str(alpha), n, str(beta), m))
    record(4, "F~[x_beta] = x(alpha^[n] v beta) mod p^min(n+m,K), 100 tuples per case", bad)


def digit_pattern(p, K, gamma, tail_choices):
    """p^gamma * (1 + sum t_i p^i) as K digits, t_i in {0, p-1}."""
    digits = [0] * gamma + [1] + [(p - 1) * t for t in tail_choices]
    return from_digits(p, (digits + [0] * K)[:K])


def test_membership_characterization():
    p, K, d = 3, 12, 8
    sample = lambda_sample(p, K, d)
    bad = [str(x) for x in sample if not lambda_member(x)]
    # the admissible patterns, generated directly from the digit rule
    required = set()
    for gamma in range(0, 4):
        for tail in product((0, 1), repeat=d - gamma - 1):
            required.add(digit_pattern(p, K, gamma, tail).value % p**d)
    bad += [("unmatched", r) for r in sorted(required - sample.keys)]
    # every residue class mod p^8 carrying the pattern at all gammas, plus zero
    full = {0}
    for gamma in range(0, d):
        for tail in product((0, 1), repeat=d - gamma - 1):
            full.add(digit_pattern(p, K, gamma, tail).value % p**d)
    if full != set(sample.keys):
        bad.append(("set mismatch", len(full ^ sample.keys)))
    assert len(required) == 128 + 64 + 32 + 16
    record(5, "digit-pattern characterization both ways, p=3, depth 8", bad)


def test_uniform_perfectness():
    sample = lambda_sample(3, 12, 8)
    bad = []
    for x0 in sample:
        for k in range(1, 8):
            r = perfect_annulus(sample, x0, k, 1)
            if not r.passed:
                bad.append(r.witnesses[0])
    record(6, "annulus p^-(k+1) <= |y-x0| <= p^-k meets the sample, k = 1..7", bad)


def test_disconnectedness_and_doubling():
    samples = [lambda_sample(3, 12, 8)] + [
        enumerate_lambda0(case_config(c).system, case_config(c).family, 6) for c in CASES
    ]
    bad = []
    for sample in samples:
        V = valuation_matrix(list(sample))
        for a in sample:
            for k in range(0, min(8, sample.depth)):
                sep = disconnect_separation(sample, a, k, V)
                if sep.verdict != "pass":
                    bad.append(("separation", sep.witnesses))
                dbl = doubling_cover(sample, a, k)
                if not dbl.passed or dbl.constants["subballs"] > sample.prime:
                    bad.append(("doubling", dbl.witnesses))
    record(7, "separation exceeds radius and at most p subballs, k <= 7", bad)


def test_case_image_identities():
    bad = []
    d = 6
    for case in CASES:
        cfg = case_config(case)
        lam = lambda_sample(cfg.prime, cfg.precision, d)
        image = {case_image(case, x).value % cfg.prime**d for x in lam}
        got = enumerate_lambda0(cfg.system, cfg.family, d).keys
        if got != image:
            bad.append((case, len(got ^ image)))
    record(8, "case samples equal case images of the plain sample, depth 6", bad)


def test_coding_identity_and_quasi_symmetry():
    cfg = case_config(4)
    S = cfg.system
    bad = []
    for d in range(1, 7):
        words = [SymbolWord(w, (), 2) for w in product((1, 2), repeat=d)]
        pts = {w: closed_form_fp(S, w, d) for w in words}
        for u in words:
            for v in words:
                if u != v and (pts[u] - pts[v]).valuation() != symbol_dist(u, v).L:
                    bad.append((str(u), str(v)))
    audit = quasi_symmetry_audit(
        exhaustive_triples(2, 6), S, cfg.family, LogRatio(3, 2)
    )
    assert audit.constants["triples_checked"] == 64**3 - 64**2
    if not audit.passed:
        bad += audit.witnesses
    record(9, "v(x_a - x_b) = L(a,b) and quasi-symmetry with t^(log3/log2), depth 6", bad)


def test_symmetry_and_flip():
    p, K = 3, 12
    rng = random.Random(10)
    bad = []
    for i in range(1000):
        if i % 2:
            gamma = rng.randrange(K)
            x = digit_pattern(p, K, gamma, [rng.randint(0, 1) for _ in range(K)])
            if not lambda_member(x):
                bad.append(("admissible rejected", str(x)))
        else:
            x = PadicInt(p, K, rng.randrange(p**K))
        if lambda_member(x) != lambda_member(1 - x):
            bad.append(("asymmetric", str(x)))
    for q in (2, 3, 5):
        S = make_px_system(q, K)
        for word in all_words(6):
            n = len(word.prefix)
            if closed_form_fp(S, flip_word(word), n) != 1 - closed_form_fp(S, word, n):
                bad.append(("flip", q, str(word)))
    record(10, "membership symmetric under x -> 1-x; flipped word gives 1 - fixed point", bad)
