"""Factorization of integer polynomials over the rationals.

Pipeline: content/primitive split, Yun squarefree decomposition, then for
each squarefree part a Zassenhaus round: factor mod a good small prime
(Berlekamp), Hensel-lift to a Mignotte-sized modulus, recombine factors by
subset search.  Exponential recombination is fine at the degrees this
package targets (<= ~64; practical inputs stay below ~30).
"""

from __future__ import annotations

from math import ceil, isqrt, log2

from .polys import IntPolynomial, PolynomialError, poly_gcd

# ---------------------------------------------------------------------------
# dense arithmetic mod p (ascending coefficient lists, normalized)


def _gf_strip(a: list[int]) -> list[int]:
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    del a[n:]
    return a


def gf_from_poly(f: IntPolynomial, p: int) -> list[int]:
    return _gf_strip([c % p for c in f.coeffs])


def gf_to_poly(a: list[int], p: int) -> IntPolynomial:
    """Lift with balanced residues in (-p/2, p/2]."""
    half = p // 2
    return IntPolynomial([c - p if c > half else c for c in a])


def gf_add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _gf_strip(out)


def gf_sub(a, b, p):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _gf_strip(out)


def gf_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _gf_strip([c % p for c in out])


def gf_monic(a, p):
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [(c * inv) % p for c in a]


def gf_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("gf division by zero")
    a = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = (a[i + len(b) - 1] * inv) % p
        if c:
            q[i] = c
            for j, cb in enumerate(b):
                a[i + j] = (a[i + j] - c * cb) % p
    return q and _gf_strip(q) or [], _gf_strip(a[: len(b) - 1])


def gf_rem(a, b, p):
    return gf_divmod(a, b, p)[1]


def gf_gcd(a, b, p):
    while b:
        a, b = b, gf_rem(a, b, p)
    return gf_monic(a, p)


def gf_gcdex(a, b, p):
    """Extended gcd: returns (s, t, g) with s*a + t*b = g, g monic."""
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while b:
        q, r = gf_divmod(a, b, p)
        a, b = b, r
        s0, s1 = s1, gf_sub(s0, gf_mul(q, s1, p), p)
        t0, t1 = t1, gf_sub(t0, gf_mul(q, t1, p), p)
    if not a:
        raise ZeroDivisionError("gcdex of zero polynomials")
    inv = pow(a[-1], -1, p)
    scale = lambda u: [(c * inv) % p for c in u]
    return scale(s0), scale(t0), gf_monic(a, p)


def gf_pow_mod(a, n, f, p):
    result = [1]
    a = gf_rem(a, f, p)
    while n:
        if n & 1:
            result = gf_rem(gf_mul(result, a, p), f, p)
        a = gf_rem(gf_mul(a, a, p), f, p)
        n >>= 1
    return result


def gf_deriv(a, p):
    return _gf_strip([(i * c) % p for i, c in enumerate(a)][1:])


def gf_is_squarefree(a, p):
    d = gf_deriv(a, p)
    if not d:
        return False
    return len(gf_gcd(a, d, p)) == 1


# ---------------------------------------------------------------------------
# Berlekamp factorization over GF(p), deterministic


def _berlekamp_matrix(f, p):
    n = len(f) - 1
    xp = gf_pow_mod([0, 1], p, f, p)
    rows = []
    power = [1]
    for _ in range(n):
        row = list(power) + [0] * (n - len(power))
        rows.append(row)
        power = gf_rem(gf_mul(power, xp, p), f, p)
    # rows[i] = x^(i*p) mod f
    return rows


def _nullspace_mod(matrix, p):
    """Basis of the left operand's nullspace for (M - I)^T x = 0 convention.

    `matrix` rows are x^(ip) mod f; we solve v (Q - I) = 0 treating v as a
    coefficient row vector, i.e. the classical Berlekamp subalgebra basis.
    """
    n = len(matrix)
    m = [[(matrix[i][j] - (1 if i == j else 0)) % p for j in range(n)] for i in range(n)]
    # row-reduce m^T so kernel vectors come out as rows
    a = [[m[i][j] for i in range(n)] for j in range(n)]
    pivots = []
    row = 0
    for col in range(n):
        sel = None
        for r in range(row, n):
            if a[r][col]:
                sel = r
                break
        if sel is None:
            continue
        a[row], a[sel] = a[sel], a[row]
        inv = pow(a[row][col], -1, p)
        a[row] = [(c * inv) % p for c in a[row]]
        for r in range(n):
            if r != row and a[r][col]:
                factor = a[r][col]
                a[r] = [(c - factor * d) % p for c, d in zip(a[r], a[row])]
        pivots.append(col)
        row += 1
    basis = []
    free_cols = [c for c in range(n) if c not in pivots]
    for fc in free_cols:
        v = [0] * n
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-a[r][fc]) % p
        basis.append(v)
    return basis


def gf_factor_squarefree(f, p) -> list[list[int]]:
    """Monic irreducible factors of a monic squarefree f over GF(p)."""
    f = gf_monic(f, p)
    if len(f) <= 2:
        return [f] if len(f) == 2 else []
    rows = _berlekamp_matrix(f, p)
    basis = _nullspace_mod(rows, p)
    r = len(basis)
    factors = [f]
    if r == 1:
        return factors
    for v in basis:
        vv = _gf_strip(list(v))
        if len(vv) <= 1:
            continue  # constant vector splits nothing
        next_factors = []
        for g in factors:
            if len(g) - 1 <= 1:
                next_factors.append(g)
                continue
            pieces = []
            rem_g = g
            for s in range(p):
                if len(rem_g) - 1 <= 0:
                    break
                h = gf_gcd(rem_g, gf_sub(vv, [s], p), p)
                if 1 < len(h) <= len(rem_g):
                    if len(h) < len(rem_g):
                        pieces.append(h)
                        rem_g = gf_divmod(rem_g, h, p)[0]
                    elif len(h) == len(rem_g):
                        break
            if len(rem_g) > 1:
                pieces.append(gf_monic(rem_g, p))
            next_factors.extend(pieces if pieces else [g])
        factors = next_factors
        if len(factors) == r:
            break
    return sorted(factors, key=lambda g: (len(g), g))


# ---------------------------------------------------------------------------
# Hensel lifting (quadratic, pairwise split)


def _trunc_sym(f: IntPolynomial, m: int) -> IntPolynomial:
    half = m // 2
    out = []
    for c in f.coeffs:
        c %= m
        if c > half:
            c -= m
        out.append(c)
    return IntPolynomial(out)


def _hensel_step(m, f, g, h, s, t):
    """One quadratic lift: from mod m to mod m^2 (Gathen-Gerhard style)."""
    M = m * m
    e = _trunc_sym(f - g * h, M)
    q, r, _ = (s * e).pseudo_divmod(h)  # h is monic, so pseudo == true division
    q = _trunc_sym(q, M)
    r = _trunc_sym(r, M)
    u = t * e + q * g
    G = _trunc_sym(g + u, M)
    H = _trunc_sym(h + r, M)
    b = _trunc_sym(s * G + t * H - IntPolynomial([1]), M)
    c, d, _ = (s * b).pseudo_divmod(H)
    c = _trunc_sym(c, M)
    d = _trunc_sym(d, M)
    u2 = t * b + c * G
    S = _trunc_sym(s - d, M)
    T = _trunc_sym(t - u2, M)
    return G, H, S, T


def _hensel_lift(p, f, modular_factors, l) -> list[IntPolynomial]:
    """Lift monic pairwise-coprime factors of f mod p to factors mod p^l."""
    r = len(modular_factors)
    lc = f.lead
    if r == 1:
        inv = pow(lc, -1, p ** l)
        return [_trunc_sym(f.scale(inv), p ** l)]
    k = r // 2
    d = int(ceil(log2(l))) if l > 1 else 1
    g = [lc % p]
    for mf in modular_factors[:k]:
        g = gf_mul(g, gf_from_poly(mf, p), p)
    h = gf_from_poly(modular_factors[k], p)
    for mf in modular_factors[k + 1:]:
        h = gf_mul(h, gf_from_poly(mf, p), p)
    s, t, one = gf_gcdex(g, h, p)
    if len(one) != 1:
        raise PolynomialError("modular factors not coprime")
    G = gf_to_poly(g, p)
    H = gf_to_poly(h, p)
    S = gf_to_poly(s, p)
    T = gf_to_poly(t, p)
    m = p
    for _ in range(d):
        G, H, S, T = _hensel_step(m, f, G, H, S, T)
        m = m * m
        if m >= p ** l:
            break
    return (_hensel_lift(p, G, modular_factors[:k], l)
            + _hensel_lift(p, H, modular_factors[k:], l))


# ---------------------------------------------------------------------------
# Zassenhaus over Z


def _small_primes(limit=100000):
    sieve = bytearray([1]) * limit
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i::i] = b"\x00" * len(sieve[i * i::i])
    return [i for i in range(limit) if sieve[i]]


_PRIMES = _small_primes()


def _mignotte_bound(f: IntPolynomial) -> int:
    n = f.degree
    a = max(abs(c) for c in f.coeffs)
    return (isqrt(n + 1) + 1) * (1 << n) * a * abs(f.lead)


def factor_squarefree_primitive(f: IntPolynomial) -> list[IntPolynomial]:
    """Irreducible factors of a primitive squarefree f with positive lead."""
    n = f.degree
    if n <= 1:
        return [f]
    lc = f.lead
    best = None
    for p in _PRIMES[1:]:
        if lc % p == 0:
            continue
        fp = gf_from_poly(f, p)
        if len(fp) - 1 != n or not gf_is_squarefree(fp, p):
            continue
        facs = gf_factor_squarefree(gf_monic(fp, p), p)
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
        if len(facs) <= 3 or (best and len(best[1]) <= 6 and p > 30):
            break
    if best is None:
        raise PolynomialError("no usable prime found")
    p, modular = best
    if len(modular) == 1:
        return [f]
    B = _mignotte_bound(f)
    # smallest l with p^l > 2B (integer arithmetic; B can exceed float range)
    l = max(1, (2 * B + 1).bit_length() // max(1, p.bit_length() - 1))
    while p ** l <= 2 * B:
        l += 1
    lifted = _hensel_lift(p, f, [gf_to_poly(g, p) for g in modular], l)
    pl = p ** l

    # subset recombination
    fc = f.constant
    factors: list[IntPolynomial] = []
    rest = f
    b = rest.lead
    indices = list(range(len(lifted)))
    s = 1
    while 2 * s <= len(indices):
        found = False
        for subset in _subsets(indices, s):
            # cheap test: constant coefficient of candidate must divide f's
            q = b % pl
            for i in subset:
                q = (q * lifted[i].constant) % pl
            half = pl // 2
            qs = q - pl if q > half else q
            if qs != 0 and fc % qs != 0 and b == 1:
                continue
            G = IntPolynomial([b])
            for i in subset:
                G = _trunc_sym(G * lifted[i], pl)
            G = G.primitive_part()
            if G.lead < 0:
                G = -G
            if G.degree >= 1 and G.divides(rest):
                rest = rest.exact_div(G)
                b = rest.lead
                factors.append(G)
                subset_set = set(subset)
                indices = [i for i in indices if i not in subset_set]
                found = True
                break
        if not found:
            s += 1
    if rest.degree >= 1:
        factors.append(rest.canonical())
    return sorted(factors, key=lambda g: (g.degree, g.coeffs))


def _subsets(items, size):
    from itertools import combinations

    return combinations(items, size)


def squarefree_decomposition(f: IntPolynomial) -> list[tuple[IntPolynomial, int]]:
    """Yun decomposition of a primitive f: list of (squarefree part, multiplicity)."""
    out = []
    g = poly_gcd(f, f.derivative())
    if g.degree == 0:
        return [(f.canonical(), 1)]
    w = f.canonical().exact_div(g)
    mult = 1
    while w.degree >= 1:
        y = poly_gcd(w, g)
        z = w.exact_div(y)
        if z.degree >= 1:
            out.append((z.canonical(), mult))
        w = y
        g = g.exact_div(y)
        mult += 1
        if g.degree == 0 and w.degree >= 1:
            out.append((w.canonical(), mult))
            break
    return out


def factor_over_rationals(f: IntPolynomial) -> list[tuple[IntPolynomial, int]]:
    """Complete factorization into canonical irreducible factors with multiplicity.

    The product of the factors (with multiplicities) equals f up to a
    rational constant.  Factors are sorted by (degree, coefficient tuple).
    """
    if f.is_zero():
        raise PolynomialError("cannot factor the zero polynomial")
    if f.degree == 0:
        return []
    work = f.canonical()
    out: list[tuple[IntPolynomial, int]] = []
    # pull off powers of x first (frequent in practice, cheap)
    k = 0
    while work.coeffs[0] == 0:
        work = IntPolynomial(work.coeffs[1:])
        k += 1
    if k:
        out.append((IntPolynomial([0, 1]), k))
    if work.degree >= 1:
        for part, mult in squarefree_decomposition(work):
            for irr in factor_squarefree_primitive(part):
                out.append((irr.canonical(), mult))
    return sorted(out, key=lambda t: (t[0].degree, t[0].coeffs))


def is_irreducible(f: IntPolynomial) -> bool:
    """True iff f is irreducible over Q (up to constants), degree >= 1."""
    if f.degree < 1:
        return False
    facs = factor_over_rationals(f)
    return len(facs) == 1 and facs[0][1] == 1 and facs[0][0].degree == f.degree
