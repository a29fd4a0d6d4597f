"""Exact arithmetic in cyclotomic fields and homogeneous binary forms.

Scalars live in Q(zeta_N) for varying N, represented on the power basis
1, z, ..., z^{phi(N)-1} modulo the N-th cyclotomic polynomial, with
Fraction coefficients.  Every value is kept at its minimal conductor so
that equal numbers compare and hash equally no matter how they were
produced.  Binary forms are dictionaries of monomials with these scalars
as coefficients; gcd / squarefree machinery works on dehomogenized
coefficient lists with exact field operations throughout.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm, isqrt


class VerificationError(AssertionError):
    """An exact identity that was asserted to hold failed to hold."""


# ----------------------------------------------------------------------
# cyclotomic polynomials and reduction tables


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divmod_int(num, den):
    # exact division of integer polynomial lists (little-endian), den monic
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1]
        q[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    assert all(c == 0 for c in num[len(den) - 1:]), "nonexact division"
    return q, num[: len(den) - 1]


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int):
    """Coefficients of Phi_n, little-endian, as a tuple of ints."""
    if n == 1:
        return (-1, 1)
    poly = [0] * n + [1]
    poly[0] = -1  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_int(poly, cyclotomic_poly(d))
            assert not any(rem)
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(n: int):
    """z^k reduced mod Phi_n for every k < max(n, 2*phi(n) - 1)."""
    phi = euler_phi(n)
    Phi = cyclotomic_poly(n)
    # x^phi = -(low part of Phi) since Phi is monic
    top = [Fraction(-c) for c in Phi[:phi]]
    rows = []
    for k in range(phi):
        row = [Fraction(0)] * phi
        row[k] = Fraction(1)
        rows.append(tuple(row))
    for k in range(phi, max(n, 2 * phi - 1)):
        prev = rows[k - 1]
        row = [Fraction(0)] * phi
        for j in range(phi - 1):
            row[j + 1] += prev[j]
        c = prev[phi - 1]
        if c:
            for j in range(phi):
                row[j] += c * top[j]
        rows.append(tuple(row))
    return rows


def _reduce_exponents(n: int, terms):
    """Sum of c * z^e (e arbitrary ints) reduced to the power basis mod Phi_n."""
    phi = euler_phi(n)
    table = _power_table(n)
    pending = {}
    for e, c in terms:
        pending[e % n] = pending.get(e % n, Fraction(0)) + c
    out = [Fraction(0)] * phi
    for e, c in pending.items():
        if not c:
            continue
        row = table[e]
        for j in range(phi):
            out[j] += c * row[j]
    return out


def _vec_mul(n: int, a, b):
    phi = euler_phi(n)
    table = _power_table(n)
    acc = [Fraction(0)] * phi
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            if not cb:
                continue
            row = table[i + j]
            c = ca * cb
            for k in range(phi):
                acc[k] += c * row[k]
    return acc


@lru_cache(maxsize=None)
def _descent_matrix(n: int, m: int):
    """Columns: images of the power basis of Q(zeta_m) inside Q(zeta_n), m | n."""
    phi_n = euler_phi(n)
    phi_m = euler_phi(m)
    step = n // m
    cols = []
    for j in range(phi_m):
        vec = _reduce_exponents(n, [(j * step, Fraction(1))])
        cols.append(tuple(vec))
    _ = phi_n
    return cols


class Cyclo:
    """An element of some cyclotomic field, at its minimal conductor.

    The conductor is never 2 mod 4 (such fields coincide with their odd
    half), and an element fixed by the Galois group of Q(zeta_n) over
    Q(zeta_{n/p}) is rewritten at the smaller conductor.  This makes
    __eq__ / __hash__ structural.
    """

    __slots__ = ("n", "coeffs")

    def __init__(self, n, coeffs, reduced=False):
        if not reduced:
            coeffs = _reduce_exponents(n, list(enumerate(coeffs)))
        n, coeffs = _canonicalize(n, coeffs)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, *a):
        raise AttributeError("Cyclo is immutable")

    # -- constructors

    @classmethod
    def rational(cls, value) -> "Cyclo":
        return cls(1, [Fraction(value)], reduced=True)

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "Cyclo":
        """Primitive n-th root of unity to the k-th power."""
        if n < 1:
            raise ValueError("conductor must be positive")
        coeffs = _reduce_exponents(n, [(k, Fraction(1))])
        return cls(n, coeffs, reduced=True)

    @classmethod
    def i(cls) -> "Cyclo":
        return cls.zeta(4)

    # -- basic predicates

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return self.n == 1

    def as_rational(self) -> Fraction:
        if self.n != 1:
            raise ValueError("not a rational number: %r" % (self,))
        return self.coeffs[0]

    # -- ring structure

    def _promote(self, other):
        """Common conductor L and both coefficient vectors at length phi(L).

        Returns raw vectors, not Cyclo instances: re-canonicalising the
        embedded operands would undo the promotion.
        """
        if not isinstance(other, Cyclo):
            other = Cyclo.rational(other)
        L = lcm(self.n, other.n)
        return L, self._embed_vec(L), other._embed_vec(L)

    def _embed_vec(self, L: int):
        if L == self.n:
            return list(self.coeffs)
        step = L // self.n
        terms = [(j * step, c) for j, c in enumerate(self.coeffs) if c]
        return _reduce_exponents(L, terms)

    def __add__(self, other):
        L, a, b = self._promote(other)
        return Cyclo(L, [x + y for x, y in zip(a, b)], reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.n, [-c for c in self.coeffs], reduced=True)

    def __sub__(self, other):
        L, a, b = self._promote(other)
        return Cyclo(L, [x - y for x, y in zip(a, b)], reduced=True)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclo(self.n, [c * other for c in self.coeffs], reduced=True)
        L, a, b = self._promote(other)
        return Cyclo(L, _vec_mul(L, a, b), reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclo":
        if self.is_zero():
            raise ZeroDivisionError("cyclotomic zero has no inverse")
        if self.n == 1:
            return Cyclo.rational(1 / self.coeffs[0])
        # extended Euclid against Phi_n over Q
        phi = [Fraction(c) for c in cyclotomic_poly(self.n)]
        a = list(self.coeffs)
        while a and a[-1] == 0:
            a.pop()
        u = _poly_ext_gcd_mod(a, phi)
        return Cyclo(self.n, u + [Fraction(0)] * (euler_phi(self.n) - len(u)))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclo(self.n, [c / Fraction(other) for c in self.coeffs],
                         reduced=True)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Cyclo.rational(other) / self if isinstance(other, (int, Fraction)) \
            else NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclo.rational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclo.rational(other)
        if not isinstance(other, Cyclo):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, self.coeffs))

    def __bool__(self):
        return not self.is_zero()

    # -- Galois structure

    def galois(self, k: int) -> "Cyclo":
        """Apply zeta_n -> zeta_n^k (k must be invertible mod n)."""
        if gcd(k, self.n) != 1:
            raise ValueError("galois exponent not coprime to conductor")
        terms = [(j * k, c) for j, c in enumerate(self.coeffs) if c]
        return Cyclo(self.n, _reduce_exponents(self.n, terms), reduced=True)

    def conjugate(self) -> "Cyclo":
        """Complex conjugation (zeta -> zeta^{-1})."""
        if self.n == 1:
            return self
        return self.galois(self.n - 1)

    # -- roots of unity and square roots

    def as_root_of_unity(self):
        """Return (d, t) with self == zeta_d^t, gcd(t,d) arbitrary, or None.

        The roots of unity in Q(zeta_n) are exactly +-zeta_n^k, so the
        test is self^M == 1 for M = lcm(2, n).
        """
        if self.is_zero():
            return None
        M = lcm(2, self.n)
        if self ** M != 1:
            return None
        z = Cyclo.zeta(M)
        cur = Cyclo.rational(1)
        for t in range(M):
            if cur == self:
                if t == 0:
                    return (1, 0)
                d = gcd(M, t)
                return (M // d, t // d)
            cur = cur * z
        raise AssertionError("unit of finite order not found among powers")

    def sqrt(self):
        """A square root within cyclotomic scalars, or None.

        Handles rational squares, roots of unity, and products of the
        two; anything else returns None (the caller reports it as not
        representable within this scalar domain).
        """
        if self.is_zero():
            return Cyclo.rational(0)
        if self.is_rational():
            q = self.as_rational()
            if q > 0:
                num, den = q.numerator, q.denominator
                rn, rd = isqrt(num), isqrt(den)
                if rn * rn == num and rd * rd == den:
                    return Cyclo.rational(Fraction(rn, rd))
                return None
            r = (-self).sqrt()
            return None if r is None else Cyclo.i() * r
        ru = self.as_root_of_unity()
        if ru is not None:
            d, t = ru
            return Cyclo.zeta(2 * d, t)
        # q * (root of unity) with q rational > 0:  q^2 = self * conj(self)
        norm = self * self.conjugate()
        if norm.is_rational() and norm.as_rational() > 0:
            q = norm.sqrt()
            if q is not None and q.is_rational():
                phase = self / q
                ru = phase.as_root_of_unity()
                if ru is not None:
                    qs = q.sqrt()
                    if qs is None:
                        return None
                    d, t = ru
                    return qs * Cyclo.zeta(2 * d, t)
        return None

    # -- display

    def __repr__(self):
        if self.n == 1:
            return "Cyclo(%s)" % self.coeffs[0]
        parts = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append("z%d^%d" % (self.n, j) if j > 1 else "z%d" % self.n)
            else:
                parts.append("%s*z%d^%d" % (c, self.n, j))
        return "Cyclo<%s>" % (" + ".join(parts) or "0")


def _canonicalize(n, coeffs):
    coeffs = list(coeffs)
    # conductor 2 mod 4 never survives: zeta_{2m} = -zeta_m^{(m+1)/2}, m odd
    if n % 4 == 2:
        m = n // 2
        terms = []
        for j, c in enumerate(coeffs):
            if c:
                # zeta_n^j = (-1)^j zeta_m^{j(m+1)/2}
                terms.append((j * ((m + 1) // 2), c if j % 2 == 0 else -c))
        return _canonicalize(m, _reduce_exponents(m, terms))
    if n > 1:
        for p in _prime_factors(n):
            m = n // p
            if _fixed_by_subfield(n, m, coeffs):
                return _canonicalize(m, _descend(n, m, coeffs))
    if n > 1 and all(c == 0 for c in coeffs[1:]):
        return 1, [coeffs[0]]
    if n == 1 and not coeffs:
        coeffs = [Fraction(0)]
    return n, coeffs


@lru_cache(maxsize=None)
def _prime_factors(n: int):
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return tuple(out)


def _fixed_by_subfield(n, m, coeffs):
    # fixed by sigma_k for every k = 1 mod m with gcd(k, n) = 1
    for k in range(1 + m, n, m):
        if gcd(k, n) != 1:
            continue
        img = _reduce_exponents(n, [(j * k, c) for j, c in enumerate(coeffs) if c])
        if img != list(coeffs):
            return False
    return True


def _descend(n, m, coeffs):
    cols = _descent_matrix(n, m)
    phi_n = euler_phi(n)
    phi_m = euler_phi(m)
    # solve sum_j y_j * cols[j] == coeffs  (over Q, guaranteed solvable)
    rows = [[cols[j][i] for j in range(phi_m)] + [coeffs[i]] for i in range(phi_n)]
    sol = _solve_fraction_system(rows, phi_m)
    assert sol is not None, "descent claimed but not solvable"
    return sol


def _solve_fraction_system(aug, ncols):
    rows = [list(r) for r in aug]
    piv_cols = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
        if r == len(rows):
            break
    for i in range(r, len(rows)):
        if rows[i][ncols] != 0:
            return None
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(piv_cols):
        sol[c] = rows[i][ncols]
    return sol


def _poly_ext_gcd_mod(a, phi):
    """u with u*a == 1 mod phi (both little-endian Fraction lists)."""
    r0, r1 = list(phi), list(a)
    s0, s1 = [Fraction(0)], [Fraction(1)]

    def deg(p):
        d = len(p) - 1
        while d >= 0 and p[d] == 0:
            d -= 1
        return d

    def sub_scaled(p, q, c, shift):
        out = list(p) + [Fraction(0)] * max(0, len(q) + shift - len(p))
        for i, x in enumerate(q):
            out[i + shift] -= c * x
        return out

    while deg(r1) > 0:
        q_deg = deg(r0) - deg(r1)
        if q_deg < 0:
            r0, r1, s0, s1 = r1, r0, s1, s0
            continue
        c = r0[deg(r0)] / r1[deg(r1)]
        r0 = sub_scaled(r0, r1, c, q_deg)
        s0 = sub_scaled(s0, s1, c, q_deg)
        if deg(r0) < deg(r1):
            r0, r1, s0, s1 = r1, r0, s1, s0
    d1 = deg(r1)
    if d1 < 0:
        # a divides phi: impossible for nonzero a of smaller degree since
        # Phi is irreducible, unless a is a scalar already handled below
        raise ZeroDivisionError("element not invertible")
    lead = r1[d1]
    return [c / lead for c in s1[: max(1, deg(s1) + 1)]]


ZERO = Cyclo.rational(0)
ONE = Cyclo.rational(1)


def as_cyclo(x) -> Cyclo:
    if isinstance(x, Cyclo):
        return x
    return Cyclo.rational(x)


# ----------------------------------------------------------------------
# homogeneous binary forms


class Poly2:
    """A homogeneous polynomial in u0, u1 with cyclotomic coefficients."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms=None):
        tidy = {}
        for (a, b), c in (terms or {}).items():
            c = as_cyclo(c)
            if a + b != degree:
                raise ValueError("monomial u0^%d u1^%d in degree-%d form"
                                 % (a, b, degree))
            if not c.is_zero():
                tidy[(a, b)] = tidy.get((a, b), ZERO) + c
        tidy = {k: v for k, v in tidy.items() if not v.is_zero()}
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "terms", tidy)

    def __setattr__(self, *a):
        raise AttributeError("Poly2 is immutable")

    @classmethod
    def monomial(cls, a: int, b: int, coeff=1) -> "Poly2":
        return cls(a + b, {(a, b): as_cyclo(coeff)})

    @classmethod
    def zero(cls, degree: int = 0) -> "Poly2":
        return cls(degree, {})

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, a: int, b: int) -> Cyclo:
        return self.terms.get((a, b), ZERO)

    def __add__(self, other):
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError("degree mismatch %d vs %d"
                             % (self.degree, other.degree))
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return Poly2(self.degree, out)

    def __neg__(self):
        return Poly2(self.degree, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclo)):
            c = as_cyclo(other)
            return Poly2(self.degree,
                         {k: v * c for k, v in self.terms.items()})
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, ZERO) + c1 * c2
        return Poly2(self.degree + other.degree, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Poly2(0, {(0, 0): ONE})
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, Poly2):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def conj_coeffs(self) -> "Poly2":
        return Poly2(self.degree,
                     {k: c.conjugate() for k, c in self.terms.items()})

    def compose(self, m) -> "Poly2":
        """Substitute (u0, u1) -> (m00 u0 + m01 u1, m10 u0 + m11 u1)."""
        (m00, m01), (m10, m11) = m
        row0 = Poly2(1, {(1, 0): as_cyclo(m00), (0, 1): as_cyclo(m01)})
        row1 = Poly2(1, {(1, 0): as_cyclo(m10), (0, 1): as_cyclo(m11)})
        # cache powers
        p0 = {0: Poly2(0, {(0, 0): ONE})}
        p1 = {0: Poly2(0, {(0, 0): ONE})}
        for k in range(1, self.degree + 1):
            p0[k] = p0[k - 1] * row0
            p1[k] = p1[k - 1] * row1
        out = Poly2.zero(self.degree)
        for (a, b), c in self.terms.items():
            out = out + (p0[a] * p1[b]) * c
        return out

    def evaluate(self, v0, v1) -> Cyclo:
        v0, v1 = as_cyclo(v0), as_cyclo(v1)
        total = ZERO
        for (a, b), c in self.terms.items():
            total = total + c * v0 ** a * v1 ** b
        return total

    def derivative(self, var: int) -> "Poly2":
        out = {}
        for (a, b), c in self.terms.items():
            if var == 0 and a > 0:
                out[(a - 1, b)] = c * a
            elif var == 1 and b > 0:
                out[(a, b - 1)] = c * b
        return Poly2(max(self.degree - 1, 0), out)

    def leading(self):
        """(monomial, coeff) for the lex-largest monomial (u0 first)."""
        key = max(self.terms)
        return key, self.terms[key]

    def monic(self) -> "Poly2":
        if self.is_zero():
            return self
        _, c = self.leading()
        return self * c.inverse()

    def real_coefficients(self) -> bool:
        return all(c == c.conjugate() for c in self.terms.values())

    def __repr__(self):
        if self.is_zero():
            return "Poly2<0>"
        bits = []
        for (a, b) in sorted(self.terms, reverse=True):
            bits.append("(%r)*u0^%d*u1^%d" % (self.terms[(a, b)], a, b))
        return "Poly2<%s>" % " + ".join(bits)


# ----------------------------------------------------------------------
# gcd / squarefree structure of binary forms
#
# A binary form factors as u0^e0 * u1^e1 * h where h has nonzero
# coefficients at both ends; h corresponds to a univariate polynomial in
# t = u0/u1 with nonzero constant term.  All the root structure we need
# (distinct roots, odd-multiplicity count, square part) is read off the
# pair (e0, e1) and Yun's decomposition of that univariate polynomial.


def _to_univariate(g: Poly2):
    """Return (e0, e1, coeff list p) with g = u0^e0 u1^e1 * P(u0,u1),
    P the homogenization of p (p[k] multiplies u0^k)."""
    if g.is_zero():
        raise ValueError("zero form has no factor structure")
    e0 = min(a for (a, b) in g.terms)
    e1 = min(b for (a, b) in g.terms)
    d = g.degree - e0 - e1
    p = [ZERO] * (d + 1)
    for (a, b), c in g.terms.items():
        p[a - e0] = c
    return e0, e1, p


def _from_univariate(e0, e1, p):
    terms = {}
    d = len(p) - 1
    for k, c in enumerate(p):
        if isinstance(c, Cyclo) and c.is_zero():
            continue
        terms[(k + e0, d - k + e1)] = c
    return Poly2(e0 + e1 + d, terms)


def _udeg(p):
    d = len(p) - 1
    while d >= 0 and p[d].is_zero():
        d -= 1
    return d


def _utrim(p):
    return p[: _udeg(p) + 1] or [ZERO]


def _uscale(p, c):
    return [x * c for x in p]


def _usub(p, q):
    n = max(len(p), len(q))
    p = p + [ZERO] * (n - len(p))
    q = q + [ZERO] * (n - len(q))
    return [a - b for a, b in zip(p, q)]


def _umul(p, q):
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a.is_zero():
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return out


def _udivmod(p, q):
    dq = _udeg(q)
    assert dq >= 0, "division by zero polynomial"
    inv = q[dq].inverse()
    rem = list(p)
    quo = [ZERO] * max(1, len(p) - dq)
    while _udeg(rem) >= dq:
        dr = _udeg(rem)
        c = rem[dr] * inv
        quo[dr - dq] = c
        for j in range(dq + 1):
            rem[dr - dq + j] = rem[dr - dq + j] - c * q[j]
        rem[dr] = ZERO  # guard against residue from inexact cancellation
    return _utrim(quo), _utrim(rem)


def _udiv_exact(p, q):
    quo, rem = _udivmod(p, q)
    assert _udeg(rem) < 0, "inexact polynomial division"
    return quo


def _ugcd(p, q):
    a, b = _utrim(list(p)), _utrim(list(q))
    if _udeg(a) < 0:
        return _umonic(b)
    if _udeg(b) < 0:
        return _umonic(a)
    while _udeg(b) >= 0:
        _, r = _udivmod(a, b)
        a, b = b, r
    return _umonic(a)


def _umonic(p):
    d = _udeg(p)
    if d < 0:
        return [ZERO]
    return _uscale(p, p[d].inverse())


def _uderiv(p):
    return _utrim([p[k] * k for k in range(1, len(p))]) if len(p) > 1 else [ZERO]


def yun_decomposition(p):
    """Squarefree decomposition: p monic = prod out[i-1]^i (Yun)."""
    p = _umonic(p)
    if _udeg(p) <= 0:
        return []
    dp = _uderiv(p)
    g = _ugcd(p, dp)
    w = _udiv_exact(p, g)
    y = _udiv_exact(dp, g)
    out = []
    while _udeg(w) > 0:
        z = _usub(y, _uderiv(w))
        f = _ugcd(w, _utrim(z))
        out.append(f)
        w = _udiv_exact(w, f)
        y = _udiv_exact(_utrim(z), f)
    return out


def root_multiplicities(g: Poly2):
    """Multiset of root multiplicities of g (roots counted without
    naming them; the roots u1=0 and u0=0 are included)."""
    e0, e1, p = _to_univariate(g)
    mults = []
    if e0:
        mults.append(e0)
    if e1:
        mults.append(e1)
    for i, f in enumerate(yun_decomposition(p), start=1):
        d = _udeg(f)
        mults.extend([i] * d)
    return sorted(mults, reverse=True)


def distinct_root_count(g: Poly2) -> int:
    return len(root_multiplicities(g))


def odd_multiplicity_root_count(g: Poly2) -> int:
    return sum(1 for m in root_multiplicities(g) if m % 2 == 1)


def square_test(g: Poly2):
    """Decide whether g = scalar * h^2 for a binary form h.

    Returns a dict with keys 'is_square', and when true also 'h',
    'scalar', and 'scalar_sqrt' (None when the scalar has no square
    root within cyclotomic scalars, in which case 'note' explains).
    """
    if g.is_zero():
        return {"is_square": True, "h": Poly2.zero(0), "scalar": ZERO,
                "scalar_sqrt": ZERO}
    if g.degree % 2 == 1:
        return {"is_square": False}
    e0, e1, p = _to_univariate(g)
    if e0 % 2 or e1 % 2:
        return {"is_square": False}
    parts = yun_decomposition(p)
    if any(_udeg(f) > 0 for i, f in enumerate(parts, start=1) if i % 2 == 1):
        return {"is_square": False}
    h_uni = [ONE]
    for i, f in enumerate(parts, start=1):
        if _udeg(f) > 0:
            h_uni = _umul(h_uni, _upow(f, i // 2))
    h = _from_univariate(e0 // 2, e1 // 2, h_uni)
    hh = h * h
    # scalar = g / h^2, read off any monomial present in both
    key = next(iter(hh.terms))
    scalar = g.coeff(*key) * hh.terms[key].inverse()
    assert h * h * scalar == g
    root = scalar.sqrt()
    result = {"is_square": True, "h": h, "scalar": scalar, "scalar_sqrt": root}
    if root is None:
        result["note"] = "scalar square root not representable within " \
                         "cyclotomic scalars"
    return result


def _upow(p, k):
    out = [ONE]
    for _ in range(k):
        out = _umul(out, p)
    return out


def gcd_forms(g: Poly2, h: Poly2) -> Poly2:
    """Monic gcd of two binary forms (including u0/u1 factors)."""
    if g.is_zero():
        return h.monic()
    if h.is_zero():
        return g.monic()
    e0g, e1g, pg = _to_univariate(g)
    e0h, e1h, ph = _to_univariate(h)
    core = _ugcd(pg, ph)
    return (_from_univariate(min(e0g, e0h), min(e1g, e1h), core)).monic()


# ----------------------------------------------------------------------
# exact linear algebra over the cyclotomic scalars


def solve_linear(rows, rhs):
    """One solution x of rows * x = rhs over the cyclotomic field, or None."""
    if not rows:
        return []
    ncols = len(rows[0])
    aug = [list(map(as_cyclo, r)) + [as_cyclo(b)] for r, b in zip(rows, rhs)]
    piv_cols = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(aug)) if not aug[i][c].is_zero()),
                   None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = aug[r][c].inverse()
        aug[r] = [x * inv for x in aug[r]]
        for i in range(len(aug)):
            if i != r and not aug[i][c].is_zero():
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
        if r == len(aug):
            break
    for i in range(r, len(aug)):
        if not aug[i][ncols].is_zero():
            return None
    sol = [ZERO] * ncols
    for i, c in enumerate(piv_cols):
        sol[c] = aug[i][ncols]
    return sol


# ----------------------------------------------------------------------
# 2x2 matrices over the cyclotomic scalars


class Mat2:
    """Exact 2x2 matrix, immutable.

    Iterating yields the two rows, so a Mat2 can be passed straight to
    Poly2.compose.  normalized() scales so the first nonzero row-major
    entry is 1, making projective equality structural.
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        object.__setattr__(self, "a", as_cyclo(a))
        object.__setattr__(self, "b", as_cyclo(b))
        object.__setattr__(self, "c", as_cyclo(c))
        object.__setattr__(self, "d", as_cyclo(d))

    def __setattr__(self, *argv):
        raise AttributeError("Mat2 is immutable")

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(1, 0, 0, 1)

    @classmethod
    def diag(cls, x, y) -> "Mat2":
        return cls(x, 0, 0, y)

    def entries(self):
        return ((self.a, self.b), (self.c, self.d))

    def __iter__(self):
        return iter(self.entries())

    def __mul__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return Mat2(self.a * other.a + self.b * other.c,
                    self.a * other.b + self.b * other.d,
                    self.c * other.a + self.d * other.c,
                    self.c * other.b + self.d * other.d)

    def scale(self, s) -> "Mat2":
        s = as_cyclo(s)
        return Mat2(self.a * s, self.b * s, self.c * s, self.d * s)

    def det(self) -> Cyclo:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> "Mat2":
        dt = self.det()
        if dt.is_zero():
            raise ZeroDivisionError("singular matrix")
        inv = dt.inverse()
        return Mat2(self.d * inv, -self.b * inv, -self.c * inv, self.a * inv)

    def conj(self) -> "Mat2":
        """Entrywise complex conjugation."""
        return Mat2(self.a.conjugate(), self.b.conjugate(),
                    self.c.conjugate(), self.d.conjugate())

    def transpose(self) -> "Mat2":
        return Mat2(self.a, self.c, self.b, self.d)

    def is_scalar(self) -> bool:
        return self.b.is_zero() and self.c.is_zero() and self.a == self.d

    def normalized(self) -> "Mat2":
        """Projective canonical form: first nonzero row-major entry = 1."""
        for e in (self.a, self.b, self.c, self.d):
            if not e.is_zero():
                return self.scale(e.inverse())
        raise ValueError("zero matrix has no projective class")

    def proj_eq(self, other: "Mat2") -> bool:
        return self.normalized() == other.normalized()

    def apply(self, p, q):
        """Image of the point [p:q] of the projective line."""
        p, q = as_cyclo(p), as_cyclo(q)
        return (self.a * p + self.b * q, self.c * p + self.d * q)

    def __eq__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return (self.a, self.b, self.c, self.d) == \
               (other.a, other.b, other.c, other.d)

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def __repr__(self):
        return "Mat2[[%r, %r], [%r, %r]]" % (self.a, self.b, self.c, self.d)


def from_factors(factors, scalar=1) -> Poly2:
    """Binary form with prescribed roots: scalar times monic linear factors.

    factors: iterable of ((p, q), multiplicity) with [p:q] pairwise
    distinct points of the projective line.  The factor for [p:q] is
    u0 - (p/q) u1, or u1 for the point at infinity, so root data is
    recovered exactly by repeated division.
    """
    scalar = as_cyclo(scalar)
    if scalar.is_zero():
        raise ValueError("leading scalar must be nonzero")
    seen = []
    out = Poly2(0, {(0, 0): scalar})
    for (p, q), mult in factors:
        p, q = as_cyclo(p), as_cyclo(q)
        if p.is_zero() and q.is_zero():
            raise ValueError("(0, 0) is not a point of the projective line")
        for (p0, q0) in seen:
            if (p * q0 - q * p0).is_zero():
                raise ValueError("repeated root [%r : %r]" % (p, q))
        seen.append((p, q))
        if q.is_zero():
            lin = Poly2(1, {(0, 1): ONE})
        else:
            lin = Poly2(1, {(1, 0): ONE, (0, 1): -(p / q)})
        out = out * lin ** mult
    return out
