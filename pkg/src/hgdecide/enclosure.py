"""Rigorous enclosures of constant expressions.

Expression trees over {rationals, sqrt(n), pi, exp, sin, cos} evaluate to
dyadic intervals guaranteed to contain the exact value.  All series carry
explicit tail bounds folded into the interval; there is no heuristic
rounding anywhere.

Refinement is monotone by construction: `eval_enclosure` walks the standard
precision ladder 64, 128, 256, ... intersecting as it goes, so a result at
higher requested precision is always nested inside the lower-precision one.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .config import DEFAULT_CONFIG, EngineConfig
from .dyadic import DyadicInterval
from .errors import DecideError, PrecisionExceeded

# Instrumented counter: number of top-level enclosure evaluations.  Test
# hooks use this to prove the symbolic equality path never touches numerics.
_EVAL_COUNTER = itertools.count()
_evals_done = 0


def evaluation_count() -> int:
    return _evals_done


# ---------------------------------------------------------------------------
# Expression nodes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Expr:
    def __add__(self, other):
        return Add((self, _coerce(other)))

    def __radd__(self, other):
        return Add((_coerce(other), self))

    def __sub__(self, other):
        return Add((self, Neg(_coerce(other))))

    def __rsub__(self, other):
        return Add((_coerce(other), Neg(self)))

    def __mul__(self, other):
        return Mul((self, _coerce(other)))

    def __rmul__(self, other):
        return Mul((_coerce(other), self))

    def __truediv__(self, other):
        return Div(self, _coerce(other))

    def __rtruediv__(self, other):
        return Div(_coerce(other), self)

    def __neg__(self):
        return Neg(self)

    def __pow__(self, k: int):
        return Pow(self, k)


@dataclass(frozen=True)
class Rc(Expr):
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class Sqrt(Expr):
    n: int  # positive integer radicand

    def __post_init__(self):
        if self.n <= 0:
            raise DecideError("Sqrt expects a positive integer")


@dataclass(frozen=True)
class Pi(Expr):
    pass


@dataclass(frozen=True)
class Add(Expr):
    args: tuple


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class Mul(Expr):
    args: tuple


@dataclass(frozen=True)
class Div(Expr):
    num: Expr
    den: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    k: int


@dataclass(frozen=True)
class Exp(Expr):
    arg: Expr


@dataclass(frozen=True)
class Sin(Expr):
    arg: Expr


@dataclass(frozen=True)
class Cos(Expr):
    arg: Expr


def _coerce(x) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, (int, Fraction)):
        return Rc(Fraction(x))
    raise TypeError(f"cannot use {x!r} in a constant expression")


def sinh(x: Expr) -> Expr:
    return (Exp(x) - Exp(Neg(x))) * Fraction(1, 2)


def cosh(x: Expr) -> Expr:
    return (Exp(x) + Exp(Neg(x))) * Fraction(1, 2)


# ---------------------------------------------------------------------------
# Constants with explicit error terms
# ---------------------------------------------------------------------------


def _atan_inv_scaled(x: int, shift: int) -> tuple[int, int]:
    """(scaled value, error bound) for atan(1/x) * 2**shift, x >= 2.

    Alternating series; per-term floor error <= 1 and the truncation error
    is below the first dropped term.
    """
    total = 0
    err = 1
    k = 0
    xsq = x * x
    denom_pow = x
    while True:
        term = (1 << shift) // ((2 * k + 1) * denom_pow)
        if term == 0:
            err += 1
            break
        total += -term if k % 2 else term
        err += 1
        denom_pow *= xsq
        k += 1
    return total, err


@lru_cache(maxsize=None)
def pi_interval(prec: int) -> DyadicInterval:
    """Machin: pi = 16*atan(1/5) - 4*atan(1/239)."""
    shift = prec + 16
    a5, e5 = _atan_inv_scaled(5, shift)
    a239, e239 = _atan_inv_scaled(239, shift)
    man = 16 * a5 - 4 * a239
    err = 16 * e5 + 4 * e239
    return DyadicInterval(man - err, -shift, man + err, -shift).round(prec + 8)


@lru_cache(maxsize=None)
def _e_interval(prec: int) -> DyadicInterval:
    tol = Fraction(1, 1 << (prec + 8))
    total = Fraction(1)
    term = Fraction(1)
    k = 0
    while True:
        k += 1
        term /= k
        total += term
        if 2 * term < tol:
            break
    return _frac_pm(total, 2 * term, prec)


def _frac_pm(center: Fraction, radius: Fraction, prec: int) -> DyadicInterval:
    lo = DyadicInterval.from_fraction(center - radius, prec + 8)
    hi = DyadicInterval.from_fraction(center + radius, prec + 8)
    return DyadicInterval(lo.lo_man, lo.lo_exp, hi.hi_man, hi.hi_exp)


@lru_cache(maxsize=None)
def sqrt_int_interval(n: int, prec: int) -> DyadicInterval:
    m = math.isqrt(n << (2 * prec))
    exact = m * m == n << (2 * prec)
    return DyadicInterval(m, -prec, m if exact else m + 1, -prec)


def _exp_fraction(x: Fraction, prec: int) -> DyadicInterval:
    """Enclosure of exp(x) for exact rational x."""
    n = x.numerator // x.denominator  # floor
    f = x - n  # in [0, 1)
    tol = Fraction(1, 1 << (prec + 8))
    total = Fraction(1)
    term = Fraction(1)
    k = 0
    while True:
        k += 1
        term = term * f / k
        total += term
        if 2 * term < tol and k >= 2:
            break
    frac_part = _frac_pm(total, 2 * term, prec + 8)  # tail <= 2*f^K/K!
    if n == 0:
        return frac_part.round(prec)
    e_pow = _e_interval(prec + 8).pow_int(n, prec + 8)
    return frac_part.mul(e_pow, prec)


def exp_interval(x: DyadicInterval, prec: int) -> DyadicInterval:
    lo = _exp_fraction(x.lo, prec)
    hi = _exp_fraction(x.hi, prec)
    return DyadicInterval(lo.lo_man, lo.lo_exp, hi.hi_man, hi.hi_exp)


def _sin_cos_fraction(x: Fraction, prec: int, want_sin: bool) -> DyadicInterval:
    """Taylor with Lagrange remainder |x|^K / K! (|f^(K)| <= 1)."""
    tol = Fraction(1, 1 << (prec + 8))
    total = x if want_sin else Fraction(1)
    term = total
    k = 1 if want_sin else 0
    xx = x * x
    while True:
        term = -term * xx / ((k + 1) * (k + 2))
        k += 2
        total += term
        bound = abs(term)
        if bound < tol and k > abs(x):
            break
    return _frac_pm(total, bound, prec)


def _reduce_angle(x: DyadicInterval, prec: int) -> DyadicInterval:
    """x - 2*k*pi with k chosen from the midpoint; result near [-pi, pi]."""
    pi_iv = pi_interval(prec + 16)
    two_pi_mid = 2 * pi_iv.mid()
    k = int((x.mid() / two_pi_mid).__round__())
    if k == 0:
        return x
    return x.sub(pi_iv.scale(Fraction(2 * k), prec + 8), prec + 8)


def _sin_or_cos(x: DyadicInterval, prec: int, want_sin: bool) -> DyadicInterval:
    y = _reduce_angle(x, prec)
    mid = y.mid()
    rad = y.width() / 2
    core = _sin_cos_fraction(mid, prec + 4, want_sin)
    # |sin'| and |cos'| are bounded by 1, so widen by the radius
    return _frac_pm((core.lo + core.hi) / 2, (core.hi - core.lo) / 2 + rad, prec)


def sin_interval(x: DyadicInterval, prec: int) -> DyadicInterval:
    return _sin_or_cos(x, prec, True)


def cos_interval(x: DyadicInterval, prec: int) -> DyadicInterval:
    return _sin_or_cos(x, prec, False)


# ---------------------------------------------------------------------------
# Evaluator
# ---------------------------------------------------------------------------


def _eval(expr: Expr, prec: int, cache: dict) -> DyadicInterval:
    hit = cache.get(expr)
    if hit is not None:
        return hit
    if isinstance(expr, Rc):
        out = DyadicInterval.from_fraction(expr.value, prec)
    elif isinstance(expr, Sqrt):
        out = sqrt_int_interval(expr.n, prec)
    elif isinstance(expr, Pi):
        out = pi_interval(prec)
    elif isinstance(expr, Add):
        out = DyadicInterval.from_int(0)
        for a in expr.args:
            out = out.add(_eval(a, prec, cache), prec)
    elif isinstance(expr, Neg):
        out = _eval(expr.arg, prec, cache).neg()
    elif isinstance(expr, Mul):
        out = DyadicInterval.from_int(1)
        for a in expr.args:
            out = out.mul(_eval(a, prec, cache), prec)
    elif isinstance(expr, Div):
        out = _eval(expr.num, prec, cache).div(_eval(expr.den, prec, cache), prec)
    elif isinstance(expr, Pow):
        out = _eval(expr.base, prec, cache).pow_int(expr.k, prec)
    elif isinstance(expr, Exp):
        out = exp_interval(_eval(expr.arg, prec, cache), prec)
    elif isinstance(expr, Sin):
        out = sin_interval(_eval(expr.arg, prec, cache), prec)
    elif isinstance(expr, Cos):
        out = cos_interval(_eval(expr.arg, prec, cache), prec)
    else:
        raise DecideError(f"unknown expression node {type(expr).__name__}")
    cache[expr] = out
    return out


def eval_enclosure(
    expr: Expr,
    precision_bits: int,
    config: EngineConfig = DEFAULT_CONFIG,
) -> DyadicInterval:
    """Interval certain to contain the exact value of `expr`.

    Walks the precision ladder 64, 128, ... up to `precision_bits`,
    intersecting successive results, which makes refinement nested.  Raises
    PrecisionExceeded when `precision_bits` breaches the configured cap.
    """
    global _evals_done
    if precision_bits > config.precision_cap_bits:
        raise PrecisionExceeded(
            f"requested {precision_bits} bits exceeds cap {config.precision_cap_bits}"
        )
    _evals_done += 1
    result: DyadicInterval | None = None
    p = 64
    while True:
        step = _eval(expr, p + 32, {})
        result = step if result is None else result.intersect(step)
        if p >= precision_bits:
            return result
        p *= 2
