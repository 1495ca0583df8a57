"""
Flat ``key = value`` run configuration.

Recognised keys::

    p, precision                      prime and digit count K
    maps.N                            number of base maps
    maps.<i>.a, maps.<i>.b            coefficients of f_i(x) = a x + b, given as a
                                      rational ("-2", "3/1") or little-endian digits ("1,2,2")
    family.M, family.L                table shape
    family.entry.<i>.<j>              "perm:(v1,...,vN)", "star:l" or "parity:v"
    enumerate.depth                   sample depth
    seed, budget                      RNG seed, word budget for enumeration
    verify.samples                    random cases per verification suite
    verify.<suite>                    true/false toggle for one suite
    output.path                       default artefact path

Blank lines and ``#`` comments are ignored.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .contraction import AffineMap, ContractionSystem, parse_coefficient
from .errors import (
    AlphabetMismatch,
    CoverageError,
    NotContractive,
    NotPrime,
    ParseError,
    PadicError,
    ValidationError,
    ValueOutOfRange,
)
from .family import IndexFamily, IndexMap
from .gallery import PxSystem
from .limitset import DEFAULT_BUDGET
from .padic import check_prime

__all__ = ["RunConfig", "SUITES", "load_config", "parse_config"]

SUITES = (
    "certificate",
    "lipschitz",
    "cauchy",
    "extension",
    "perfectness",
    "annulus",
    "disconnected",
    "doubling",
    "cases",
)

_KEY_PATTERNS = [
    r"p",
    r"precision",
    r"seed",
    r"budget",
    r"maps\.N",
    r"maps\.\d+\.[ab]",
    r"family\.[ML]",
    r"family\.entry\.\d+\.\d+",
    r"enumerate\.depth",
    r"verify\.samples",
    r"verify\.(" + "|".join(SUITES) + ")",
    r"output\.path",
]
_KEY_RE = re.compile("|".join(f"(?:{k})" for k in _KEY_PATTERNS) + r"\Z")
_TRUE = {"true", "yes", "on", "1"}
_FALSE = {"false", "no", "off", "0"}


@dataclass
class RunConfig:
    prime: int
    precision: int
    system: ContractionSystem
    family: IndexFamily
    depth: int = 6
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    verify_samples: int = 100
    verify: dict[str, bool] = field(default_factory=lambda: {s: True for s in SUITES})
    output: str | None = None


def _split(text: str) -> dict[str, tuple[str, int]]:
    entries: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if "=" not in line:
            col = len(raw) - len(raw.lstrip()) + 1
            raise ParseError("expected 'key = value'", lineno, col)
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not _KEY_RE.match(key):
            raise ParseError(f"unknown key {key!r}", lineno, raw.index(key) + 1)
        if not value:
            raise ParseError(f"empty value for {key!r}", lineno, raw.index("=") + 2)
        if key in entries:
            raise ParseError(f"duplicate key {key!r} (first on line {entries[key][1]})", lineno)
        entries[key] = (value, lineno)
    return entries


def parse_config(
    text: str, precision: int | None = None, depth: int | None = None
) -> RunConfig:
    """Parse and validate a configuration; ``precision`` and ``depth`` override the file."""
    entries = _split(text)

    def need(key: str) -> tuple[str, int]:
        if key not in entries:
            raise ValidationError("required key", f"missing {key!r}")
        return entries[key]

    def as_int(key: str, default: int | None = None) -> int:
        if key not in entries and default is not None:
            return default
        value, line = need(key)
        try:
            return int(value)
        except ValueError:
            raise ParseError(f"{key} must be an integer, got {value!r}", line) from None

    p = as_int("p")
    try:
        check_prime(p)
    except NotPrime:
        raise ValidationError("prime", f"p={p} is not prime", entries["p"][1]) from None
    K = precision if precision is not None else as_int("precision")
    if K < 1:
        raise ValidationError("precision", f"K={K} must be >= 1", entries.get("precision", ("", None))[1])

    N = as_int("maps.N")
    if N < 1:
        raise ValidationError("maps", "maps.N must be >= 1", entries["maps.N"][1])
    maps = []
    for i in range(1, N + 1):
        a_text, a_line = need(f"maps.{i}.a")
        b_text, b_line = need(f"maps.{i}.b")
        try:
            a = parse_coefficient(a_text, p, K)
        except (PadicError, ValueError, ZeroDivisionError) as exc:
            raise ValidationError("coefficient", str(exc), a_line) from None
        try:
            b = parse_coefficient(b_text, p, K)
        except (PadicError, ValueError, ZeroDivisionError) as exc:
            raise ValidationError("coefficient", str(exc), b_line) from None
        try:
            maps.append(AffineMap(a, b))
        except NotContractive as exc:
            raise ValidationError("contraction certificate", f"map {i}: {exc}", a_line) from None
    for key, (_, line) in entries.items():
        m = re.match(r"maps\.(\d+)\.", key)
        if m and not 1 <= int(m.group(1)) <= N:
            raise ValidationError("maps", f"{key} outside 1..{N}", line)

    M, L = as_int("family.M"), as_int("family.L")
    rows = []
    for i in range(1, M + 1):
        row = []
        for j in range(1, L + 1):
            text_ij, line = need(f"family.entry.{i}.{j}")
            try:
                row.append(IndexMap.parse(text_ij, N))
            except (AlphabetMismatch, ValueOutOfRange, ValueError) as exc:
                raise ValidationError("family entry", str(exc), line) from None
        rows.append(tuple(row))
    for key, (_, line) in entries.items():
        m = re.match(r"family\.entry\.(\d+)\.(\d+)", key)
        if m and not (1 <= int(m.group(1)) <= M and 1 <= int(m.group(2)) <= L):
            raise ValidationError("family", f"{key} outside the {M} x {L} table", line)
    try:
        family = IndexFamily(tuple(rows))
    except CoverageError as exc:
        raise ValidationError("coverage", str(exc), entries["family.M"][1]) from None

    system_cls = ContractionSystem
    if N == 2 and _is_px(maps, p):
        system_cls = PxSystem
    system = system_cls(tuple(maps))

    cfg = RunConfig(p, K, system, family)
    cfg.depth = depth if depth is not None else as_int("enumerate.depth", cfg.depth)
    cfg.seed = as_int("seed", cfg.seed)
    cfg.budget = as_int("budget", cfg.budget)
    cfg.verify_samples = as_int("verify.samples", cfg.verify_samples)
    for suite in SUITES:
        key = f"verify.{suite}"
        if key in entries:
            value, line = entries[key]
            if value.lower() in _TRUE:
                cfg.verify[suite] = True
            elif value.lower() in _FALSE:
                cfg.verify[suite] = False
            else:
                raise ParseError(f"{key} must be true or false", line)
    if "output.path" in entries:
        cfg.output = entries["output.path"][0]
    if not 1 <= cfg.depth <= K:
        line = None if depth is not None else entries.get("enumerate.depth", ("", None))[1]
        raise ValidationError("depth", f"depth {cfg.depth} must lie in [1, {K}]", line)
    return cfg


def _is_px(maps: list[AffineMap], p: int) -> bool:
    f1, f2 = maps
    return (
        f1.a.value == p % f1.a.modulus
        and f1.b.value == 0
        and f2.a.value == p % f2.a.modulus
        and f2.b.value == (1 - p) % f2.b.modulus
    )


def load_config(
    path: str, precision: int | None = None, depth: int | None = None
) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read(), precision, depth)
