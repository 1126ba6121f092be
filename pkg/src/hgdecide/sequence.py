"""Hypergeometric sequence evaluation, classification, and search bounds.

The sequence satisfies p(n) * u_{n+1} = q(n) * u_n, so
u_n = u0 * prod_{k=0}^{n-1} q(k)/p(k).  Scans keep unreduced integer
numerator/denominator pairs; order and equality tests against the target
use a float-log prefilter but are always settled by exact cross-multiplied
integer comparisons.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .config import DEFAULT_CONFIG, EngineConfig
from .errors import DecideError, ScanCapExceeded
from .numutil import divisors
from .polys import IntPoly


class Problem(enum.Enum):
    MEMBERSHIP = "membership"
    THRESHOLD = "threshold"


def nonneg_integer_roots(f: IntPoly) -> list[int]:
    """Sorted nonnegative integer roots of f (f nonzero)."""
    if f.is_zero:
        raise DecideError("zero polynomial")
    g = f
    out = set()
    if g.coeffs[0] == 0:
        out.add(0)
        while g.coeffs and g.coeffs[0] == 0:
            g = IntPoly(g.coeffs[1:])
    if g.degree >= 1:
        # integer roots of an integer polynomial divide the constant term
        for d in divisors(g.coeffs[0]):
            if g(d) == 0:
                out.add(d)
    return sorted(out)


@dataclass(frozen=True)
class HGInstance:
    p: IntPoly
    q: IntPoly
    u0: Fraction
    t: Fraction
    problem: Problem

    def __post_init__(self):
        object.__setattr__(self, "u0", Fraction(self.u0))
        object.__setattr__(self, "t", Fraction(self.t))
        if self.p.is_zero or self.q.is_zero:
            raise DecideError("p and q must be nonzero")
        self.p.check_caps()
        self.q.check_caps()
        bad = nonneg_integer_roots(self.p)
        if bad:
            raise DecideError(f"p vanishes at nonnegative integer {bad[0]}")

    @property
    def is_monic_pair(self) -> bool:
        return self.p.is_monic and self.q.is_monic

    def ratio(self, k: int) -> Fraction:
        return Fraction(self.q(k), self.p(k))


class Variant(enum.Enum):
    DIVERGES_TO_INFINITY = "diverges_to_infinity"
    CONVERGES_TO_ZERO_RATIO = "converges_to_zero_ratio"
    CONVERGES_TO = "converges_to"
    RATIO_LIMIT_ONE = "ratio_limit_one"
    RATIO_LIMIT_MINUS_ONE = "ratio_limit_minus_one"


@dataclass(frozen=True)
class AsymptoticClass:
    """Limit behavior of the shift quotient r(k) = q(k)/p(k).

    Determined solely by degrees and the top two coefficients.  For
    RATIO_LIMIT_ONE, `exponent` is the partial-product growth exponent
    A = (sum of roots of p) - (sum of roots of q), read off the subleading
    coefficients by Vieta; the partial products behave like n**A, so A = 0
    is exactly the balanced (convergent-product) case.
    """

    variant: Variant
    ratio_limit: Fraction | None = None
    exponent: Fraction | None = None

    @property
    def is_balanced(self) -> bool:
        return self.variant is Variant.RATIO_LIMIT_ONE and self.exponent == 0

    @property
    def grows(self) -> bool:
        if self.variant is Variant.DIVERGES_TO_INFINITY:
            return True
        if self.variant is Variant.CONVERGES_TO and abs(self.ratio_limit) > 1:
            return True
        return self.variant is Variant.RATIO_LIMIT_ONE and self.exponent > 0

    @property
    def shrinks(self) -> bool:
        if self.variant is Variant.CONVERGES_TO_ZERO_RATIO:
            return True
        if self.variant is Variant.CONVERGES_TO and abs(self.ratio_limit) < 1:
            return True
        return self.variant is Variant.RATIO_LIMIT_ONE and self.exponent < 0


def classify(p: IntPoly, q: IntPoly) -> AsymptoticClass:
    if p.is_zero or q.is_zero:
        raise DecideError("classify expects nonzero polynomials")
    dp, dq = p.degree, q.degree
    if dq > dp:
        return AsymptoticClass(Variant.DIVERGES_TO_INFINITY)
    if dq < dp:
        return AsymptoticClass(Variant.CONVERGES_TO_ZERO_RATIO)
    c = Fraction(q.lead, p.lead)
    if c == 1:
        if dp == 0:
            return AsymptoticClass(Variant.RATIO_LIMIT_ONE, exponent=Fraction(0))
        a = Fraction(q.coeffs[dp - 1] - p.coeffs[dp - 1], p.lead)
        return AsymptoticClass(Variant.RATIO_LIMIT_ONE, exponent=a)
    if c == -1:
        return AsymptoticClass(Variant.RATIO_LIMIT_MINUS_ONE)
    return AsymptoticClass(Variant.CONVERGES_TO, ratio_limit=c)


# ---------------------------------------------------------------------------
# Exact scanning
# ---------------------------------------------------------------------------


class ExactScan:
    """State of the exact forward scan of u_n.

    Keeps num/den unreduced.  `logabs` tracks log|u_n| in floats with a
    conservative error window; any decision inside the window falls back to
    exact integer arithmetic.
    """

    __slots__ = ("inst", "n", "num", "den", "logabs", "steps", "zero_since")

    def __init__(self, inst: HGInstance):
        self.inst = inst
        self.n = 0
        self.num = inst.u0.numerator
        self.den = inst.u0.denominator
        self.logabs = math.log(abs(self.num)) - math.log(self.den) if self.num else 0.0
        self.steps = 0
        self.zero_since: int | None = 0 if self.num == 0 else None

    def _window(self) -> float:
        return 1e-4 + 1e-10 * self.steps + abs(self.logabs) * 1e-12

    def step(self):
        k = self.n
        pk = self.inst.p(k)
        qk = self.inst.q(k)
        # p has no nonnegative integer roots (validated); q may hit zero
        self.num *= qk
        self.den *= pk
        self.n += 1
        self.steps += 1
        if self.num == 0:
            if self.zero_since is None:
                self.zero_since = self.n
        else:
            self.logabs += math.log(abs(qk)) - math.log(abs(pk))

    def fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def is_zero(self) -> bool:
        return self.num == 0

    def sign(self) -> int:
        if self.num == 0:
            return 0
        s = 1 if (self.num > 0) == (self.den > 0) else -1
        return s

    def equals(self, t: Fraction) -> bool:
        if self.num == 0:
            return t == 0
        if t == 0:
            return False
        if (self.sign() > 0) != (t > 0):
            return False
        lt = math.log(abs(t.numerator)) - math.log(t.denominator)
        if abs(self.logabs - lt) > self._window():
            return False
        return self.num * t.denominator == t.numerator * self.den

    def cmp(self, t: Fraction) -> int:
        """sign(u_n - t), exact."""
        lt = (math.log(abs(t.numerator)) - math.log(t.denominator)) if t else None
        if self.num == 0:
            return (t < 0) - (t > 0)
        s = self.sign()
        if t == 0:
            return s
        if s != (1 if t > 0 else -1):
            return 1 if s > 0 else -1
        if lt is not None and abs(self.logabs - lt) > self._window():
            # same sign; compare magnitudes via logs, settled outside window
            bigger = self.logabs > lt
            return (1 if bigger else -1) * s
        diff = self.num * t.denominator - t.numerator * self.den
        if diff == 0:
            return 0
        sd = 1 if diff > 0 else -1
        return sd * (1 if self.den > 0 else -1)

    def abs_cmp(self, t: Fraction) -> int:
        """sign(|u_n| - |t|), exact."""
        if self.num == 0:
            return -1 if t != 0 else 0
        if t == 0:
            return 1
        lt = math.log(abs(t.numerator)) - math.log(t.denominator)
        if abs(self.logabs - lt) > self._window():
            return 1 if self.logabs > lt else -1
        diff = abs(self.num) * t.denominator - abs(t.numerator) * abs(self.den)
        return (diff > 0) - (diff < 0)


def term(inst: HGInstance, n: int, config: EngineConfig = DEFAULT_CONFIG) -> Fraction:
    """Exact n-th term; term(inst, 0) == u0."""
    if n < 0:
        raise DecideError("negative index")
    if n > config.scan_cap:
        raise ScanCapExceeded(f"term index {n} exceeds cap {config.scan_cap}")
    scan = ExactScan(inst)
    for _ in range(n):
        scan.step()
    return scan.fraction()


def terms(inst: HGInstance, count: int, config: EngineConfig = DEFAULT_CONFIG):
    """First `count` terms as exact Fractions."""
    if count > config.scan_cap:
        raise ScanCapExceeded(f"{count} terms exceed cap {config.scan_cap}")
    scan = ExactScan(inst)
    for _ in range(count):
        yield scan.fraction()
        scan.step()


# ---------------------------------------------------------------------------
# Bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SearchBound:
    """Index N with a re-checkable guarantee for all n >= N."""

    n: int
    justification: str  # ratio_exceeds_target | tail_below_target | product_monotone_beyond


def monotonicity_index(p: IntPoly, q: IntPoly) -> int:
    """Index beyond which r(k) > 0 has constant sign and r(k) - 1 does too.

    Uses the Cauchy root bound of p, q, q-p and q+p: past every real root
    of those, none of them changes sign.  Not minimal; soundness only.
    """
    cands = [p, q, q - p, q + p]
    bound = Fraction(0)
    for f in cands:
        if not f.is_zero and f.degree >= 1:
            bound = max(bound, f.cauchy_bound())
    return 1 + math.ceil(bound)


def divergence_bound(
    inst: HGInstance,
    cls: AsymptoticClass | None = None,
    config: EngineConfig = DEFAULT_CONFIG,
) -> SearchBound:
    """N with |u_n| > |t| and |r(n)| > 1 for all n >= N (growing classes)."""
    cls = cls or classify(inst.p, inst.q)
    if not cls.grows:
        raise DecideError("divergence_bound needs a growing class")
    if inst.t == 0:
        raise DecideError("target must be nonzero")
    if inst.u0 == 0:
        raise DecideError("zero initial value never grows")
    k1 = monotonicity_index(inst.p, inst.q)
    qq_pp = inst.q * inst.q - inst.p * inst.p
    if qq_pp(k1) <= 0:
        raise DecideError("internal: |r| not above 1 past the root bound")
    scan = ExactScan(inst)
    while scan.n < k1:
        scan.step()
    while scan.abs_cmp(inst.t) <= 0:
        if scan.n >= config.scan_cap:
            raise ScanCapExceeded(f"no divergence bound within {config.scan_cap} terms")
        scan.step()
    return SearchBound(scan.n, "ratio_exceeds_target")


def shrink_bound(
    inst: HGInstance,
    cls: AsymptoticClass | None = None,
    config: EngineConfig = DEFAULT_CONFIG,
) -> SearchBound:
    """N with |u_n| < |t| and |r(n)| < 1 for all n >= N (shrinking classes)."""
    cls = cls or classify(inst.p, inst.q)
    if not cls.shrinks:
        raise DecideError("shrink_bound needs a shrinking class")
    if inst.t == 0:
        raise DecideError("target must be nonzero")
    k1 = monotonicity_index(inst.p, inst.q)
    qq_pp = inst.q * inst.q - inst.p * inst.p
    if qq_pp(k1) >= 0:
        raise DecideError("internal: |r| not below 1 past the root bound")
    scan = ExactScan(inst)
    while scan.n < k1:
        scan.step()
    while not scan.is_zero() and scan.abs_cmp(inst.t) >= 0:
        if scan.n >= config.scan_cap:
            raise ScanCapExceeded(f"no shrink bound within {config.scan_cap} terms")
        scan.step()
    return SearchBound(scan.n, "tail_below_target")


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------


class BruteKind(enum.Enum):
    FOUND_MEMBERSHIP = "found_membership"
    NONE_UP_TO = "none_up_to"
    THRESHOLD_VIOLATION = "threshold_violation"
    THRESHOLD_HOLDS_UP_TO = "threshold_holds_up_to"


@dataclass(frozen=True)
class BruteResult:
    kind: BruteKind
    index: int | None = None
    up_to: int | None = None


def brute_force(
    inst: HGInstance,
    up_to: int,
    config: EngineConfig = DEFAULT_CONFIG,
) -> BruteResult:
    """Exhaustive exact scan of u_0 .. u_{up_to - 1}.

    Used inside the deciders for prefix searches and as the independent
    oracle in the test suite.  Membership reports the least witness.
    """
    if up_to > config.scan_cap:
        raise ScanCapExceeded(f"{up_to} exceeds scan cap {config.scan_cap}")
    scan = ExactScan(inst)
    membership = inst.problem is Problem.MEMBERSHIP
    for n in range(up_to):
        if membership:
            if scan.equals(inst.t):
                return BruteResult(BruteKind.FOUND_MEMBERSHIP, index=n)
        else:
            if scan.cmp(inst.t) < 0:
                return BruteResult(BruteKind.THRESHOLD_VIOLATION, index=n)
        scan.step()
    kind = BruteKind.NONE_UP_TO if membership else BruteKind.THRESHOLD_HOLDS_UP_TO
    return BruteResult(kind, up_to=up_to)
