"""Exact arithmetic in the coefficient field Q(p, q) and its rational specializations.

Symbolic scalars are rational functions in the two parameters p, q.  They are
stored as a reduced fraction of sparse bivariate polynomials (exponent pair ->
Fraction), with the denominator content-normalized over the integers and its
graded-lex leading coefficient positive, so equality of scalars is structural
equality of the stored dicts.  Negative parameter powers only exist at the
Laurent-embedding layer; internally p^-1 is the fraction 1/p.

The numeric backend binds p, q to concrete nonzero rationals and computes with
plain Fraction values.  Both backends satisfy the same small field interface
(`zero/one/p/q`, embeddings, formatting, specialization), which is all the rest
of the engine relies on.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Union

__all__ = [
    "ScalarError",
    "SpecializationError",
    "RatFunc",
    "SymbolicField",
    "NumericField",
    "Scalar",
]


class ScalarError(ArithmeticError):
    """Invalid scalar operation (division by zero, bad embedding)."""


class SpecializationError(ScalarError):
    """A denominator vanishes at the requested parameter point."""


# A bivariate polynomial is a dict {(i, j): Fraction} with no zero values;
# (i, j) are the (nonnegative) exponents of p and q.
_ZERO = Fraction(0)
_ONE = Fraction(1)
_UNIT_MONO = (0, 0)


def _gl_key(m):
    # graded-lex on (deg_p, deg_q)
    return (m[0] + m[1], m[0])


def _padd(f, g):
    h = dict(f)
    for m, c in g.items():
        s = h.get(m, _ZERO) + c
        if s:
            h[m] = s
        elif m in h:
            del h[m]
    return h


def _pneg(f):
    return {m: -c for m, c in f.items()}


def _pscale(f, c):
    if not c:
        return {}
    return {m: v * c for m, v in f.items()}


def _pmul(f, g):
    h = {}
    for (a, b), c in f.items():
        for (a2, b2), c2 in g.items():
            m = (a + a2, b + b2)
            s = h.get(m, _ZERO) + c * c2
            if s:
                h[m] = s
            elif m in h:
                del h[m]
    return h


def _plead(f):
    return max(f, key=_gl_key)


def _pcontent(f):
    """Positive rational content: gcd of numerators over lcm of denominators."""
    gn = 0
    ld = 1
    for c in f.values():
        gn = gcd(gn, abs(c.numerator))
        ld = ld * c.denominator // gcd(ld, c.denominator)
    return Fraction(gn, ld)


def _pmonic_int(f):
    """Scale f to integer coefficients with content 1 and positive leading
    coefficient; return (scaled_poly, applied_factor) with f = poly / factor...
    actually poly = f * factor."""
    c = _pcontent(f)
    if f[_plead(f)] < 0:
        c = -c
    inv = 1 / c
    return {m: v * inv for m, v in f.items()}, inv


def _pdiv_exact(f, g):
    """Exact division f / g; raises ScalarError when not divisible."""
    if not g:
        raise ScalarError("polynomial division by zero")
    f = dict(f)
    q = {}
    glead = _plead(g)
    gc = g[glead]
    while f:
        flead = _plead(f)
        a, b = flead[0] - glead[0], flead[1] - glead[1]
        if a < 0 or b < 0:
            raise ScalarError("inexact polynomial division")
        c = f[flead] / gc
        q[(a, b)] = c
        for m, v in g.items():
            t = (m[0] + a, m[1] + b)
            s = f.get(t, _ZERO) - v * c
            if s:
                f[t] = s
            elif t in f:
                del f[t]
    return q


# -- univariate helpers over Q[p] (dict {exp: Fraction}) used by the gcd -----


def _ulead(u):
    return max(u)


def _uscale(u, c):
    if not c:
        return {}
    return {e: v * c for e, v in u.items()}


def _usub(u, v):
    w = dict(u)
    for e, c in v.items():
        s = w.get(e, _ZERO) - c
        if s:
            w[e] = s
        elif e in w:
            del w[e]
    return w


def _umul(u, v):
    w = {}
    for e, c in u.items():
        for e2, c2 in v.items():
            m = e + e2
            s = w.get(m, _ZERO) + c * c2
            if s:
                w[m] = s
            elif m in w:
                del w[m]
    return w


def _umod(u, v):
    dv = _ulead(v)
    cv = v[dv]
    while u and _ulead(u) >= dv:
        du = _ulead(u)
        c = u[du] / cv
        u = _usub(u, {e + du - dv: cf * c for e, cf in v.items()})
    return u


def _unormal(u):
    """Primitive integer coefficients, positive leading coefficient."""
    if not u:
        return u
    gn = 0
    ld = 1
    for c in u.values():
        gn = gcd(gn, abs(c.numerator))
        ld = ld * c.denominator // gcd(ld, c.denominator)
    c = Fraction(gn, ld)
    if u[_ulead(u)] < 0:
        c = -c
    return _uscale(u, 1 / c)


def _ugcd(u, v):
    if not u:
        return _unormal(v)
    if not v:
        return _unormal(u)
    while v:
        u, v = v, _umod(dict(u), v)
    return _unormal(u)


def _udiv_exact(u, v):
    q = {}
    dv = _ulead(v)
    cv = v[dv]
    u = dict(u)
    while u:
        du = _ulead(u)
        if du < dv:
            raise ScalarError("inexact univariate division")
        c = u[du] / cv
        q[du - dv] = c
        u = _usub(u, {e + du - dv: cf * c for e, cf in v.items()})
    return q


def _to_rec(f):
    """Flat dict -> recursive form: {q_exp: {p_exp: Fraction}}."""
    r = {}
    for (i, j), c in f.items():
        r.setdefault(j, {})[i] = c
    return r


def _from_rec(r):
    f = {}
    for j, u in r.items():
        for i, c in u.items():
            f[(i, j)] = c
    return f


def _rec_content(r):
    c = {}
    for u in r.values():
        c = _ugcd(c, u)
        if c and _ulead(c) == 0 and c[0] == 1:
            break
    return c


def _rec_pp(r, cont):
    if cont == {0: _ONE}:
        return r
    return {j: _udiv_exact(u, cont) for j, u in r.items()}


def _rec_scale(r, u):
    return {j: _umul(v, u) for j, v in r.items()}


def _rec_sub(r, s):
    out = dict(r)
    for j, u in s.items():
        w = _usub(out.get(j, {}), u)
        if w:
            out[j] = w
        elif j in out:
            del out[j]
    return out


def _rec_shift(r, k):
    return {j + k: u for j, u in r.items()}


def _prem_q(A, B):
    """Pseudo-remainder of A by B in (Q[p])[q]."""
    dB = max(B)
    lcB = B[dB]
    R = A
    while R and max(R) >= dB:
        dR = max(R)
        lcR = R[dR]
        R = _rec_sub(_rec_scale(R, lcB), _rec_shift(_rec_scale(B, lcR), dR - dB))
    return R


def _pgcd(f, g):
    """Gcd in Q[p, q], returned with integer content 1 and positive lead.

    Monomials get a fast path; the general case is a primitive PRS with q as
    the main variable.  Inputs may have rational coefficients.
    """
    if not f:
        return _pmonic_int(g)[0] if g else {}
    if not g:
        return _pmonic_int(f)[0]
    if len(f) == 1 or len(g) == 1:
        mi = min(min(m[0] for m in f), min(m[0] for m in g))
        mj = min(min(m[1] for m in f), min(m[1] for m in g))
        return {(mi, mj): _ONE}
    A, B = _to_rec(f), _to_rec(g)
    ca, cb = _rec_content(A), _rec_content(B)
    cg = _ugcd(ca, cb)
    A, B = _rec_pp(A, ca), _rec_pp(B, cb)
    if max(A) < max(B):
        A, B = B, A
    while B:
        R = _prem_q(A, B)
        if R:
            R = _rec_pp(R, _rec_content(R))
        A, B = B, R
    out = _from_rec(_rec_scale(A, cg))
    return _pmonic_int(out)[0]


def _reduce(num, den):
    """Canonical form of num/den.

    Shared monomial factors are stripped, the denominator is made integer
    primitive with positive graded-lex leading coefficient, and a full
    polynomial gcd runs only when the denominator is not a monomial.
    """
    if not den:
        raise ScalarError("zero denominator")
    if not num:
        return {}, {_UNIT_MONO: _ONE}
    mi = min(min(m[0] for m in num), min(m[0] for m in den))
    mj = min(min(m[1] for m in num), min(m[1] for m in den))
    if mi or mj:
        num = {(i - mi, j - mj): c for (i, j), c in num.items()}
        den = {(i - mi, j - mj): c for (i, j), c in den.items()}
    if len(den) > 1:
        g = _pgcd(num, den)
        if len(g) > 1 or _plead(g) != _UNIT_MONO:
            num = _pdiv_exact(num, g)
            den = _pdiv_exact(den, g)
    den, factor = _pmonic_int(den)
    if factor != 1:
        num = _pscale(num, factor)
    return num, den


class RatFunc:
    """A rational function in p and q, always kept in canonical reduced form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den, _reduced=False):
        if not _reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # construction helpers -------------------------------------------------

    @staticmethod
    def from_fraction(c: Fraction) -> "RatFunc":
        if not c:
            return RatFunc({}, {_UNIT_MONO: _ONE}, _reduced=True)
        return RatFunc({_UNIT_MONO: Fraction(c)}, {_UNIT_MONO: _ONE}, _reduced=True)

    @staticmethod
    def monomial(a: int, b: int, coeff: Fraction = _ONE) -> "RatFunc":
        """Exact embedding of coeff * p^a * q^b, a and b possibly negative."""
        if not coeff:
            return RatFunc.from_fraction(_ZERO)
        ni, nj = max(a, 0), max(b, 0)
        di, dj = max(-a, 0), max(-b, 0)
        return RatFunc({(ni, nj): Fraction(coeff)}, {(di, dj): _ONE})

    # predicates ------------------------------------------------------------

    def __bool__(self):
        return bool(self.num)

    def is_monomial(self) -> bool:
        return len(self.num) == 1 and len(self.den) == 1

    # arithmetic ------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc.from_fraction(Fraction(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RatFunc(_padd(self.num, o.num), self.den)
        return RatFunc(
            _padd(_pmul(self.num, o.den), _pmul(o.num, self.den)),
            _pmul(self.den, o.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(_pneg(self.num), self.den, _reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RatFunc(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o.num:
            raise ScalarError("scalar division by zero")
        return RatFunc(_pmul(self.num, o.den), _pmul(self.den, o.num))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o / self

    def __pow__(self, n: int):
        if n == 0:
            return RatFunc.from_fraction(_ONE)
        base = self if n > 0 else RatFunc.from_fraction(_ONE) / self
        out = base
        for _ in range(abs(n) - 1):
            out = out * base
        return out

    # identity --------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc.from_fraction(Fraction(other))
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (frozenset(self.num.items()), frozenset(self.den.items()))
            )
        return self._hash

    def canon(self) -> "RatFunc":
        """Re-run canonicalization (idempotent by construction)."""
        return RatFunc(self.num, self.den)

    def specialize(self, p0: Fraction, q0: Fraction) -> Fraction:
        """Exact evaluation at p = p0, q = q0."""
        if not p0 or not q0:
            raise SpecializationError("parameters must be nonzero")
        dv = sum(c * p0**i * q0**j for (i, j), c in self.den.items())
        if not dv:
            raise SpecializationError("denominator vanishes at (%s, %s)" % (p0, q0))
        nv = sum(c * p0**i * q0**j for (i, j), c in self.num.items())
        return nv / dv

    def __repr__(self):
        return "RatFunc(%s)" % format_ratfunc(self)


def _format_poly(f, shift=(0, 0)) -> str:
    """Terms descending by graded-lex; exponents offset by `shift` (Laurent)."""
    if not f:
        return "0"
    parts = []
    for (i, j) in sorted(f, key=_gl_key, reverse=True):
        c = f[(i, j)]
        a, b = i - shift[0], j - shift[1]
        factors = []
        if a:
            factors.append("p" if a == 1 else "p^%d" % a)
        if b:
            factors.append("q" if b == 1 else "q^%d" % b)
        mag = abs(c)
        if not factors or mag != 1:
            factors.insert(0, str(mag))
        term = "*".join(factors)
        if not parts:
            parts.append(term if c > 0 else "-" + term)
        else:
            parts.append((" + " if c > 0 else " - ") + term)
    return "".join(parts)


def format_ratfunc(x: RatFunc) -> str:
    """Canonical printable form, reparseable by the presentation grammar.

    Monomial denominators are folded into Laurent exponents; anything else
    prints as a quotient of two parenthesized polynomials.
    """
    if not x.num:
        return "0"
    if len(x.den) == 1:
        (di, dj), dc = next(iter(x.den.items()))
        num = x.num if dc == 1 else _pscale(x.num, 1 / dc)
        return _format_poly(num, shift=(di, dj))
    return "(%s)/(%s)" % (_format_poly(x.num), _format_poly(x.den))


def _poly_is_multiterm(s: str) -> bool:
    depth = 0
    for k, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and k > 0 and ch in "+-" and s[k - 1] == " ":
            return True
    return False


class SymbolicField:
    """The field Q(p, q) with p, q independent transcendentals."""

    name = "symbolic"

    def __init__(self):
        self.zero = RatFunc.from_fraction(_ZERO)
        self.one = RatFunc.from_fraction(_ONE)
        self.p = RatFunc.monomial(1, 0)
        self.q = RatFunc.monomial(0, 1)

    def from_int(self, n: int) -> RatFunc:
        return RatFunc.from_fraction(Fraction(n))

    def from_fraction(self, c: Fraction) -> RatFunc:
        return RatFunc.from_fraction(c)

    def monomial(self, a: int, b: int, coeff=_ONE) -> RatFunc:
        return RatFunc.monomial(a, b, Fraction(coeff))

    def format(self, x: RatFunc) -> str:
        return format_ratfunc(x)

    def format_coefficient(self, x: RatFunc):
        """(sign, text, atomic) for use in front of a word."""
        s = format_ratfunc(x)
        sign = 1
        if s.startswith("-") and not _poly_is_multiterm(s):
            sign, s = -1, s[1:]
        atomic = not _poly_is_multiterm(s)
        return sign, s, atomic

    def specialize(self, x: RatFunc, p0: Fraction, q0: Fraction) -> Fraction:
        return x.specialize(p0, q0)

    def parameters_swapped(self) -> "SwappedView":
        return SwappedView(self)


class SwappedView:
    """Same backend with the roles of p and q exchanged.

    Used to build presentations whose parameter convention is the mirror one;
    scalars produced through this view still live in the parent field.
    """

    def __init__(self, base):
        self.base = base
        self.zero = base.zero
        self.one = base.one
        self.p = base.q
        self.q = base.p
        self.name = base.name

    def from_int(self, n):
        return self.base.from_int(n)

    def from_fraction(self, c):
        return self.base.from_fraction(c)

    def monomial(self, a, b, coeff=_ONE):
        return self.base.monomial(b, a, coeff)

    def format(self, x):
        return self.base.format(x)

    def format_coefficient(self, x):
        return self.base.format_coefficient(x)

    def specialize(self, x, p0, q0):
        return self.base.specialize(x, p0, q0)

    def parameters_swapped(self):
        return self.base


class NumericField:
    """Q(p, q) specialized at a fixed nonzero rational point (p0, q0).

    Scalars are plain Fraction values, so every identity checked symbolically
    can be re-checked cheaply; a vanishing denominator surfaces as
    ZeroDivisionError and the caller retries with a fresh random point.
    """

    name = "numeric"

    def __init__(self, p0, q0):
        p0, q0 = Fraction(p0), Fraction(q0)
        if not p0 or not q0:
            raise SpecializationError("parameters must be nonzero")
        self.p0, self.q0 = p0, q0
        self.zero = _ZERO
        self.one = _ONE
        self.p = p0
        self.q = q0

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def from_fraction(self, c: Fraction) -> Fraction:
        return Fraction(c)

    def monomial(self, a: int, b: int, coeff=_ONE) -> Fraction:
        return Fraction(coeff) * self.p0**a * self.q0**b

    def format(self, x: Fraction) -> str:
        return str(x)

    def format_coefficient(self, x: Fraction):
        s = str(x)
        if s.startswith("-"):
            return -1, s[1:], True
        return 1, s, True

    def specialize(self, x: Fraction, p0, q0) -> Fraction:
        return x

    def parameters_swapped(self) -> "NumericField":
        f = NumericField(self.q0, self.p0)
        return f


Scalar = Union[RatFunc, Fraction]
