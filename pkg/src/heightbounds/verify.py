"""Hypothesis checks and certified verification of the height inequality on
concrete points, with the sum-equals-N and totally-real-integer entry points.
"""

from __future__ import annotations

import multiprocessing
from fractions import Fraction

from .algebraic import AlgebraicNumber, DegreeCapExceeded, as_algebraic
from .bounds import rho
from .forms import (ExceptionalSet, FormError, MultihomogeneousPolynomial,
                    c_max, delta, require_valid)
from .heights import HeightValue, MultiProjectivePoint, point_log_height
from .intervals import Interval, Rect

EQUALITY_WIDTH = Fraction(1, 1 << 64)
PRECISION_CAP = 4096

HOLDS = "holds"
EQUALITY = "equality-candidate"
VIOLATED = "violated-hypotheses"
UNDECIDED = "undecided-at-precision"


class InstanceError(ValueError):
    """The provided data is not an instance of the sum-equals-N setup."""


class UndecidedError(ArithmeticError):
    """Sign undecidable at the precision/degree caps; never silently guessed."""


class HypothesisResult:
    __slots__ = ("name", "passed", "witness")

    def __init__(self, name, passed, witness=""):
        self.name = name
        self.passed = passed
        self.witness = witness

    def __repr__(self):
        return "HypothesisResult(%s=%s%s)" % (
            self.name, self.passed, ", %s" % self.witness if self.witness else "")


class Verdict:
    __slots__ = ("status", "hypotheses", "lhs", "log_rho", "margin", "precision_bits")

    def __init__(self, status, hypotheses, lhs=None, log_rho=None, margin=None,
                 precision_bits=0):
        self.status = status
        self.hypotheses = hypotheses
        self.lhs = lhs
        self.log_rho = log_rho
        self.margin = margin
        self.precision_bits = precision_bits

    def __repr__(self):
        extra = ""
        if self.margin is not None:
            extra = ", margin~%.6g" % float(self.margin.mid)
        return "Verdict(%s%s)" % (self.status, extra)


class CorollaryInstance:
    """Nonzero algebraic numbers whose exact sum should be the totally real
    algebraic integer N."""

    __slots__ = ("alphas", "n_value")

    def __init__(self, alphas, n_value):
        alphas = tuple(as_algebraic(a) for a in alphas)
        if not alphas:
            raise InstanceError("need at least one alpha")
        for k, a in enumerate(alphas):
            if a.is_zero():
                raise InstanceError("alpha_%d is zero" % k)
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "n_value", as_algebraic(n_value))

    def __setattr__(self, *a):
        raise AttributeError("CorollaryInstance is immutable")

    def __reduce__(self):
        return (CorollaryInstance, (self.alphas, self.n_value))

    @property
    def r(self) -> int:
        return len(self.alphas)


# ---------------------------------------------------------------------------
# evaluation of F at a point


def evaluate_exact(F: MultihomogeneousPolynomial, point: MultiProjectivePoint,
                   cap: int = 64) -> AlgebraicNumber:
    """Exact value of F at the point through algebraic arithmetic."""
    if point.shape != F.shape:
        raise FormError("point shape %r does not match polynomial shape %r"
                        % (point.shape, F.shape))
    total = AlgebraicNumber.zero()
    for exp, coeff in sorted(F.monomials.items()):
        term = as_algebraic(coeff) if not isinstance(coeff, AlgebraicNumber) else coeff
        for i, row in enumerate(exp):
            for j, m in enumerate(row):
                if m:
                    c = as_algebraic(point.blocks[i][j])
                    if c.is_zero():
                        term = AlgebraicNumber.zero()
                        break
                    term = term.mul(c.pow(m, cap), cap)
            if term.is_zero():
                break
        total = total.add(term, cap)
    return total


def evaluate_interval(F: MultihomogeneousPolynomial, point: MultiProjectivePoint,
                      bits: int) -> Rect:
    """Certified rectangle around F(point); fallback when exact arithmetic
    would blow the degree cap."""
    eps = Fraction(1, 1 << bits)
    total = Rect(Interval(0), Interval(0))
    for exp, coeff in sorted(F.monomials.items()):
        if isinstance(coeff, AlgebraicNumber):
            term = coeff.box(eps).rect()
        else:
            term = Rect(Interval(coeff), Interval(0))
        for i, row in enumerate(exp):
            for j, m in enumerate(row):
                if m:
                    c = point.blocks[i][j]
                    if isinstance(c, AlgebraicNumber):
                        base = c.box(eps).rect()
                    else:
                        base = Rect(Interval(c), Interval(0))
                    for _ in range(m):
                        term = term * base
        total = total + term
    return total


def evaluate(F: MultihomogeneousPolynomial, point: MultiProjectivePoint,
             cap: int = 64, max_bits: int = PRECISION_CAP):
    """Exact algebraic value when the degree cap allows; otherwise a certified
    rectangle.  A zero claim is never made from intervals alone."""
    try:
        return evaluate_exact(F, point, cap)
    except DegreeCapExceeded:
        bits = 64
        while bits <= max_bits:
            rect = evaluate_interval(F, point, bits)
            if not rect.contains_zero():
                return rect
            bits *= 2
        # last escalation: exact arithmetic with a doubled cap
        try:
            return evaluate_exact(F, point, cap * 2)
        except DegreeCapExceeded:
            raise UndecidedError(
                "value sign undecidable: degree cap exceeded and the interval "
                "keeps containing zero at %d bits" % max_bits) from None


def _is_zero_value(value) -> tuple[bool, bool]:
    """(is_zero, decided) for the result of evaluate()."""
    if isinstance(value, AlgebraicNumber):
        return value.is_zero(), True
    return False, True  # a rectangle is only returned when it excludes zero


def point_inverse(point: MultiProjectivePoint) -> MultiProjectivePoint:
    blocks = []
    for block in point.blocks:
        row = []
        for c in block:
            if isinstance(c, AlgebraicNumber):
                row.append(c.inv())
            else:
                row.append(1 / Fraction(c))
        blocks.append(row)
    return MultiProjectivePoint(blocks)


def check_hypotheses(F: MultihomogeneousPolynomial, E: ExceptionalSet,
                     point: MultiProjectivePoint, cap: int = 64) -> list[HypothesisResult]:
    """The three exact gates: F(x) = 0, all coordinates nonzero, F(x^-1) != 0."""
    results = []
    value = evaluate(F, point, cap)
    on_zero_set, _ = _is_zero_value(value)
    results.append(HypothesisResult(
        "zero-set", on_zero_set,
        "" if on_zero_set else "F(x) != 0"))

    zero_at = None
    for i, block in enumerate(point.blocks):
        for j, c in enumerate(block):
            is_z = c.is_zero() if isinstance(c, AlgebraicNumber) else c == 0
            if is_z:
                zero_at = (i, j)
                break
        if zero_at:
            break
    results.append(HypothesisResult(
        "coordinates-nonzero", zero_at is None,
        "" if zero_at is None else "coordinate x_%d%d is zero" % zero_at))

    if zero_at is None:
        inv_value = evaluate(F, point_inverse(point), cap)
        inv_zero, _ = _is_zero_value(inv_value)
        results.append(HypothesisResult(
            "reciprocal-nonzero", not inv_zero,
            "" if not inv_zero else "F(x^-1) = 0"))
    else:
        results.append(HypothesisResult(
            "reciprocal-nonzero", False, "x^-1 undefined: a coordinate is zero"))
    return results


def verify_theorem(F: MultihomogeneousPolynomial, E: ExceptionalSet,
                   point: MultiProjectivePoint, precision: int = 128,
                   cap: int = 64) -> Verdict:
    """Certified margin for sum (n_i+1) log H(x_i) - log rho, refined until
    the sign is decided or the equality threshold is reached."""
    require_valid(F, E)
    hypotheses = check_hypotheses(F, E, point, cap)
    if not all(h.passed for h in hypotheses):
        return Verdict(VIOLATED, hypotheses, precision_bits=precision)
    dlt = delta(F, E)
    cf = c_max(F, E)
    bits = max(precision, 16)
    while True:
        _, log_rho = rho(cf, dlt, bits)
        lhs = point_log_height(point, bits)
        margin = lhs.log_height - log_rho
        if margin.lo > 0:
            return Verdict(HOLDS, hypotheses, lhs, log_rho, margin, bits)
        if margin.hi < 0:
            raise ArithmeticError(
                "certified negative margin %r contradicts the proved bound; "
                "this indicates an implementation defect" % margin)
        if margin.width < EQUALITY_WIDTH:
            return Verdict(EQUALITY, hypotheses, lhs, log_rho, margin, bits)
        bits *= 2
        if bits > PRECISION_CAP:
            return Verdict(UNDECIDED, hypotheses, lhs, log_rho, margin, bits // 2)


# ---------------------------------------------------------------------------
# the sum-equals-N construction


def build_sum_form(n_value: AlgebraicNumber, r: int) -> tuple[MultihomogeneousPolynomial, ExceptionalSet]:
    """Homogeneous version of x_10 + ... + x_r0 - N over (P^1)^r:
    F(x) = sum_i x_i1 prod_{j != i} x_j0  -  N prod_j x_j0, with every block
    exceptional."""
    shape = (1,) * r
    degrees = (1,) * r
    mons = {}
    for i in range(r):
        exp = tuple((0, 1) if k == i else (1, 0) for k in range(r))
        mons[exp] = 1
    all_zero = tuple((1, 0) for _ in range(r))
    coeff = n_value.neg()
    mons[all_zero] = int(coeff.as_fraction()) if coeff.is_integer() else coeff
    F = MultihomogeneousPolynomial(shape, degrees, mons)
    return F, ExceptionalSet(range(r))


def _halve(iv: Interval) -> Interval:
    return Interval(iv.lo / 2, iv.hi / 2)


def verify_corollary(instance: CorollaryInstance, precision: int = 128,
                     cap: int = 64) -> Verdict:
    """Validates sum alpha_i = N exactly, then certifies
    sum log h(alpha_i) >= (1/2) log((1+sqrt5)/2) through the theorem on the
    point with blocks (1, alpha_i).  All reported quantities are on the
    corollary scale (half the theorem scale)."""
    n_value = instance.n_value
    if not n_value.is_totally_real():
        raise InstanceError("N is not totally real")
    if not n_value.is_algebraic_integer():
        raise InstanceError("N is not an algebraic integer")
    total = AlgebraicNumber.zero()
    for a in instance.alphas:
        total = total.add(a, cap)
    if not total.equals(n_value):
        raise InstanceError("sum of the alphas is not N")
    F, E = build_sum_form(n_value, instance.r)
    # internal consistency of the construction
    assert delta(F, E) == 1, "construction should give delta = 1"
    assert c_max(F, E) == 1, "construction should give C_F = 1"
    point = MultiProjectivePoint([(1, a) for a in instance.alphas])
    verdict = verify_theorem(F, E, point, precision, cap)
    if verdict.margin is None:
        return verdict
    return Verdict(verdict.status, verdict.hypotheses,
                   HeightValue(_halve(verdict.lhs.log_height), verdict.lhs.bits),
                   _halve(verdict.log_rho), _halve(verdict.margin),
                   verdict.precision_bits)


class SchinzelResult:
    __slots__ = ("applicable", "reasons", "verdict")

    def __init__(self, applicable, reasons, verdict=None):
        self.applicable = applicable
        self.reasons = tuple(reasons)
        self.verdict = verdict

    def __repr__(self):
        if self.applicable:
            return "SchinzelResult(%r)" % self.verdict
        return "SchinzelResult(not applicable: %s)" % "; ".join(self.reasons)


def schinzel_check(alpha: AlgebraicNumber, precision: int = 128,
                   cap: int = 64) -> SchinzelResult:
    """log h(alpha) >= (1/2) log((1+sqrt5)/2) for totally real algebraic
    integers outside {0, +-1}; anything else is reported not-applicable."""
    alpha = as_algebraic(alpha)
    reasons = []
    if alpha.is_zero():
        reasons.append("alpha is 0")
    elif alpha.is_rational() and abs(alpha.as_fraction()) == 1:
        reasons.append("alpha is a unit +-1")
    if not alpha.is_totally_real():
        reasons.append("alpha is not totally real")
    if not alpha.is_algebraic_integer():
        reasons.append("alpha is not an algebraic integer")
    if reasons:
        return SchinzelResult(False, reasons)
    verdict = verify_corollary(CorollaryInstance([alpha], alpha), precision, cap)
    return SchinzelResult(True, (), verdict)


# ---------------------------------------------------------------------------
# deterministic batch verification


def _batch_worker(args):
    alphas_data, n_data, precision = args
    # instances arrive as already-constructed objects under fork; pickled fine
    inst = CorollaryInstance(alphas_data, n_data)
    return verify_corollary(inst, precision)


def verify_corollary_batch(instances, precision: int = 128, jobs: int = 1) -> list[Verdict]:
    """Order-preserving batch verification; results are independent of jobs."""
    work = [(inst.alphas, inst.n_value, precision) for inst in instances]
    if jobs <= 1:
        return [_batch_worker(w) for w in work]
    with multiprocessing.Pool(jobs) as pool:
        return pool.map(_batch_worker, work)
