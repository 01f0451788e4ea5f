"""Weil heights of algebraic numbers and projective heights of points.

The place-sum definitions are realized through classical closed forms: the
Mahler-measure formula for the Weil height of an algebraic number, and the
coprime-integer-vector maximum for rational projective blocks.  Every
numeric output is a certified interval on the natural-log scale.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .algebraic import AlgebraicNumber
from .factor import factor_over_rationals
from .intervals import Interval, ln_fraction
from .polys import IntPolynomial, is_cyclotomic
from .roots import isolate_roots, refine_box

DEFAULT_BITS = 128


class HeightError(ValueError):
    pass


class UnsupportedBlockShape(HeightError):
    """Algebraic coordinates in blocks of dimension > 1 are not computable here."""


class HeightValue:
    """Certified enclosure of a logarithmic height."""

    __slots__ = ("log_height", "bits")

    def __init__(self, log_height: Interval, bits: int):
        # heights are nonnegative; clamp rounding dust on the low side
        lo = max(log_height.lo, Fraction(0))
        object.__setattr__(self, "log_height", Interval(lo, max(log_height.hi, lo)))
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, *a):
        raise AttributeError("HeightValue is immutable")

    def __reduce__(self):
        return (HeightValue, (self.log_height, self.bits))

    def __repr__(self):
        return "HeightValue(~%.12g, bits=%d)" % (float(self.log_height.mid), self.bits)

    def is_exact_zero(self) -> bool:
        return self.log_height.lo == 0 and self.log_height.hi == 0


def mahler_measure(f: IntPolynomial, eps) -> Interval:
    """Certified interval of width <= eps around M(f).

    M(f) = |lead| * prod max(1, |root|) over all roots with multiplicity;
    computed factorwise so root isolation always sees squarefree input.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise HeightError("eps must be positive")
    if f.is_zero():
        raise HeightError("Mahler measure of the zero polynomial")
    if f.degree == 0:
        c = abs(f.constant)
        return Interval(c, c)
    content = abs(f.content())
    parts = factor_over_rationals(f)
    width_target = eps
    box_width = Fraction(1, 1 << 24)
    while True:
        total = Interval(content)
        for g, mult in parts:
            total = total * _mahler_irreducible(g, box_width).pow_int(mult)
        if total.width <= width_target:
            return total
        box_width /= Fraction(1 << 16)


def _mahler_irreducible(g: IntPolynomial, box_width: Fraction) -> Interval:
    if g.degree == 0:
        c = abs(g.constant)
        return Interval(c, c)
    bits = max(24, box_width.denominator.bit_length() + 8)
    acc = Interval(abs(g.lead))
    for box in isolate_roots(g):
        box = refine_box(g, box, box_width, round_bits=bits + 16)
        acc = acc * box.abs_interval(bits).max_with(1)
    return acc


def weil_log_height(a: AlgebraicNumber, bits: int = DEFAULT_BITS) -> HeightValue:
    """log h(alpha) = (1/deg) * log M(minpoly); exactly [0,0] in the
    Kronecker cases (zero or a root of unity)."""
    if a.is_zero() or is_cyclotomic(a.minpoly):
        return HeightValue(Interval(0), bits)
    deg = a.degree
    tol = Fraction(1, 1 << (bits + 4))
    # relative precision on M controls absolute precision of log M
    rough = mahler_measure(a.minpoly, Fraction(1, 4))
    m = mahler_measure(a.minpoly, rough.lo * tol)
    log_m = Interval(ln_fraction(m.lo, bits + 8).lo, ln_fraction(m.hi, bits + 8).hi)
    return HeightValue(Interval(log_m.lo / deg, log_m.hi / deg), bits)


def rational_block_log_height(coords, bits: int = DEFAULT_BITS) -> HeightValue:
    """log H of a projective block of rationals: log max|c_i| after
    clearing to a coprime integer vector; exact scale invariance."""
    coords = [Fraction(c) for c in coords]
    if all(c == 0 for c in coords):
        raise HeightError("all-zero projective block")
    denom_lcm = 1
    for c in coords:
        denom_lcm = denom_lcm * c.denominator // gcd(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in coords]
    g = 0
    for v in ints:
        g = gcd(g, v)
    ints = [v // g for v in ints]
    m = max(abs(v) for v in ints)
    if m == 1:
        return HeightValue(Interval(0), bits)
    return HeightValue(ln_fraction(Fraction(m), bits + 4), bits)


class MultiProjectivePoint:
    """Point in a product of projective spaces; coordinates are Fractions or
    AlgebraicNumbers, at least one nonzero per block."""

    __slots__ = ("blocks",)

    def __init__(self, blocks):
        norm = []
        for bi, block in enumerate(blocks):
            row = []
            nonzero = False
            for c in block:
                if isinstance(c, AlgebraicNumber):
                    row.append(c)
                    nonzero = nonzero or not c.is_zero()
                else:
                    q = Fraction(c)
                    row.append(q)
                    nonzero = nonzero or q != 0
            if not nonzero:
                raise HeightError("block %d has no nonzero coordinate" % bi)
            norm.append(tuple(row))
        object.__setattr__(self, "blocks", tuple(norm))

    def __setattr__(self, *a):
        raise AttributeError("MultiProjectivePoint is immutable")

    def __reduce__(self):
        return (MultiProjectivePoint, (self.blocks,))

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(b) - 1 for b in self.blocks)

    def __repr__(self):
        return "MultiProjectivePoint(shape=%r)" % (self.shape,)

    def block_is_rational(self, i: int) -> bool:
        return all(not isinstance(c, AlgebraicNumber) or c.is_rational()
                   for c in self.blocks[i])


def _coord_is_zero(c) -> bool:
    if isinstance(c, AlgebraicNumber):
        return c.is_zero()
    return c == 0


def _as_algebraic(c) -> AlgebraicNumber:
    if isinstance(c, AlgebraicNumber):
        return c
    return AlgebraicNumber.from_rational(c)


def block_log_height(block, bits: int = DEFAULT_BITS) -> HeightValue:
    """log H of one projective block (not yet weighted by n_i + 1)."""
    if all(not isinstance(c, AlgebraicNumber) or c.is_rational() for c in block):
        rat = [c.as_fraction() if isinstance(c, AlgebraicNumber) else Fraction(c)
               for c in block]
        return rational_block_log_height(rat, bits)
    if len(block) != 2:
        raise UnsupportedBlockShape(
            "algebraic coordinates are supported only in blocks of shape "
            "(x0, x1); got a block of length %d" % len(block))
    x0, x1 = block
    if _coord_is_zero(x0):
        # (0, x1) ~ (0, 1): height 0
        return HeightValue(Interval(0), bits)
    if _coord_is_zero(x1):
        return HeightValue(Interval(0), bits)
    alpha = _as_algebraic(x1).div(_as_algebraic(x0))
    return weil_log_height(alpha, bits)


def point_log_height(point: MultiProjectivePoint, bits: int = DEFAULT_BITS) -> HeightValue:
    """The weighted sum over blocks of (n_i + 1) * log H(block_i)."""
    total = Interval(0)
    # extra per-block bits keep the summed width within the stated precision
    extra = (len(point.blocks) - 1).bit_length() + 3
    for block in point.blocks:
        h = block_log_height(block, bits + extra)
        total = total + h.log_height * Interval(len(block))
    return HeightValue(total, bits)
