"""Scalar search routines shared by the polygon and covering code."""

from __future__ import annotations

import math
from typing import Callable

from .errors import BracketFailure

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_min(f: Callable[[float], float], lo: float, hi: float,
                       xtol: float = 1e-12, max_iter: int = 200) -> tuple[float, float]:
    """Minimize a unimodal ``f`` on ``[lo, hi]``; returns ``(x, f(x))``.

    The endpoints are compared against the interior optimum so that monotone
    functions return the correct boundary minimizer.
    """
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= xtol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    best = min(((c, fc), (d, fd), (lo, f(lo)), (hi, f(hi))), key=lambda t: t[1])
    return best


def bisect_increasing(f: Callable[[float], float], lo: float, hi: float,
                      xtol: float = 1e-15, max_iter: int = 200) -> float:
    """Root of an increasing function with ``f(lo) < 0 < f(hi)``."""
    flo, fhi = f(lo), f(hi)
    if not (flo < 0.0 < fhi):
        raise BracketFailure(f"no sign change on [{lo}, {hi}]: f={flo}, {fhi}")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= xtol * max(1.0, abs(mid)) or mid in (lo, hi):
            break
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
