"""Artefact writers: sample files, Monna reals and valuation matrices."""
from __future__ import annotations

import os
import tempfile
from fractions import Fraction

from .errors import EmptySample
from .limitset import LimitSetSample
from .metric import valuation_matrix
from .padic import PadicInt

__all__ = ["export_points", "monna", "distance_matrix_text", "write_atomic"]


def monna(x: PadicInt) -> Fraction:
    """sum d_i p^i  ->  sum d_i p^(-i-1), over the K known digits."""
    p = x.prime
    return sum((Fraction(d, p ** (i + 1)) for i, d in enumerate(x.digits)), Fraction(0))


def export_points(sample: LimitSetSample, fmt: str = "digits") -> str:
    if len(sample) == 0:
        raise EmptySample("nothing to export")
    if fmt == "digits":
        return sample.to_text()
    if fmt == "monna":
        # lossy: K digits only, for plotting
        lines = [f"# monna p={sample.prime} K={sample.precision} depth={sample.depth} (lossy)"]
        for x in sample:
            lines.append(f"{float(monna(x))!r} {','.join(map(str, x.digits))}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown export format {fmt!r}")


def distance_matrix_text(sample: LimitSetSample) -> str:
    """Pairwise valuations; entry K on the diagonal means zero distance at precision."""
    V = valuation_matrix(list(sample))
    lines = [f"# valuations p={sample.prime} K={sample.precision} depth={sample.depth} n={len(sample)}"]
    lines.extend(" ".join(str(int(v)) for v in row) for row in V)
    return "\n".join(lines) + "\n"


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
