"""Exact arithmetic for the commutative coefficient ring.

All operator coefficients live in one ring: Gaussian rationals times integer
powers of hbar, polynomials in the four momentum components ``p0..p3`` and
the four acceleration parameters ``a0..a3``, extended by a central square
root ``w`` of the Minkowski square ``p.p = p0^2 - p1^2 - p2^2 - p3^2``, with
denominators restricted to powers of ``w``.

A :class:`Scalar` is kept in the canonical form ``(A + B*w) / w^(2m)`` where
``A`` and ``B`` are sparse polynomials, ``w^2`` never appears textually
(every occurrence is reduced via ``w^2 = p.p``) and ``m >= 0`` is minimal
(``A`` and ``B`` are not both divisible by ``p.p``).  Equality is therefore
plain comparison of canonical forms.

Inverses exist only for units, i.e. coefficients of the shape
``c * w^k`` with ``c`` a nonzero Gaussian rational times a power of hbar;
anything else raises :class:`NonInvertibleCoefficient`, which signals a
modeling bug rather than a recoverable condition.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _gcd

from .conventions import SIGNATURE


class NonInvertibleCoefficient(ArithmeticError):
    """Inversion was attempted on a coefficient that is not c * w^k."""


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------

class GRat:
    """Gaussian rational number ``(a + b*i)/d`` with normalized integers.

    The integer-triple representation keeps ring operations on plain ints
    with a single gcd per normalization, which is what makes large
    normal-form computations affordable.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, re=0, im=0):
        if isinstance(re, int) and isinstance(im, int):
            self.a, self.b, self.d = re, im, 1
            return
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // _gcd(re.denominator, im.denominator)
        self.a = re.numerator * (d // re.denominator)
        self.b = im.numerator * (d // im.denominator)
        self.d = d

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> "GRat":
        self = cls.__new__(cls)
        if d < 0:
            a, b, d = -a, -b, -d
        g = _gcd(_gcd(a if a >= 0 else -a, b if b >= 0 else -b), d)
        if g > 1:
            a //= g
            b //= g
            d //= g
        self.a, self.b, self.d = a, b, d
        return self

    @property
    def re(self) -> Fraction:
        return Fraction(self.a, self.d)

    @property
    def im(self) -> Fraction:
        return Fraction(self.b, self.d)

    def __add__(self, other: "GRat") -> "GRat":
        d1, d2 = self.d, other.d
        if d1 == d2:
            return GRat._raw(self.a + other.a, self.b + other.b, d1)
        return GRat._raw(self.a * d2 + other.a * d1, self.b * d2 + other.b * d1,
                         d1 * d2)

    def __sub__(self, other: "GRat") -> "GRat":
        d1, d2 = self.d, other.d
        if d1 == d2:
            return GRat._raw(self.a - other.a, self.b - other.b, d1)
        return GRat._raw(self.a * d2 - other.a * d1, self.b * d2 - other.b * d1,
                         d1 * d2)

    def __neg__(self) -> "GRat":
        out = GRat.__new__(GRat)
        out.a, out.b, out.d = -self.a, -self.b, self.d
        return out

    def __mul__(self, other: "GRat") -> "GRat":
        a, b, c, e = self.a, self.b, other.a, other.b
        return GRat._raw(a * c - b * e, a * e + b * c, self.d * other.d)

    def inv(self) -> "GRat":
        n = self.a * self.a + self.b * self.b
        if n == 0:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GRat._raw(self.d * self.a, -self.d * self.b, n)

    def conj(self) -> "GRat":
        out = GRat.__new__(GRat)
        out.a, out.b, out.d = self.a, -self.b, self.d
        return out

    def scale(self, q: Fraction) -> "GRat":
        return GRat._raw(self.a * q.numerator, self.b * q.numerator,
                         self.d * q.denominator)

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __eq__(self, other) -> bool:
        return (isinstance(other, GRat) and self.a == other.a
                and self.b == other.b and self.d == other.d)

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.d))

    def __repr__(self) -> str:
        return f"GRat({self.re!r}, {self.im!r})"


_G0 = GRat(0)
_G1 = GRat(1)


# ---------------------------------------------------------------------------
# Sparse polynomial layer
#
# A polynomial is a dict mapping a flat monomial key to a GRat coefficient.
# Key layout: (h, p0, p1, p2, p3, a0, a1, a2, a3) where h is the (possibly
# negative) hbar exponent and the remaining entries are >= 0.
# ---------------------------------------------------------------------------

_KEY1 = (0, 0, 0, 0, 0, 0, 0, 0, 0)

# p.p = p0^2 - p1^2 - p2^2 - p3^2 as a polynomial dict.
_PP = {
    (0, 2, 0, 0, 0, 0, 0, 0, 0): GRat(SIGNATURE[0]),
    (0, 0, 2, 0, 0, 0, 0, 0, 0): GRat(SIGNATURE[1]),
    (0, 0, 0, 2, 0, 0, 0, 0, 0): GRat(SIGNATURE[2]),
    (0, 0, 0, 0, 2, 0, 0, 0, 0): GRat(SIGNATURE[3]),
}


def _padd_into(acc: dict, other: dict, negate: bool = False) -> None:
    for k, c in other.items():
        prev = acc.get(k)
        v = (prev - c if negate else prev + c) if prev is not None else (-c if negate else c)
        if v:
            acc[k] = v
        elif prev is not None:
            del acc[k]


def _pmul(P: dict, Q: dict) -> dict:
    if not P or not Q:
        return {}
    out: dict = {}
    for k1, c1 in P.items():
        for k2, c2 in Q.items():
            k = tuple(a + b for a, b in zip(k1, k2))
            c = c1 * c2
            prev = out.get(k)
            v = prev + c if prev is not None else c
            if v:
                out[k] = v
            elif prev is not None:
                del out[k]
    return out


def _pscale(P: dict, c: GRat) -> dict:
    if not c:
        return {}
    return {k: v * c for k, v in P.items()}


def _pderiv(P: dict, nu: int) -> dict:
    # d/dp^nu on the plain polynomial part.
    out: dict = {}
    j = 1 + nu
    for k, c in P.items():
        e = k[j]
        if e:
            kk = list(k)
            kk[j] = e - 1
            kk = tuple(kk)
            v = GRat._raw(c.a * e, c.b * e, c.d)
            prev = out.get(kk)
            v = prev + v if prev is not None else v
            if v:
                out[kk] = v
            elif prev is not None:
                del out[kk]
    return out


def _pdivmod_pp(P: dict):
    """Divide P by p.p; return (quotient, remainder) with p0-degree(r) <= 1."""
    q: dict = {}
    r = dict(P)
    while r:
        e0max = max(k[1] for k in r)
        if e0max < 2:
            break
        for k in [k for k in r if k[1] == e0max]:
            c = r.pop(k)
            qk = list(k)
            qk[1] = e0max - 2
            qk = tuple(qk)
            prev = q.get(qk)
            v = prev + c if prev is not None else c
            if v:
                q[qk] = v
            elif prev is not None:
                del q[qk]
            # p0^2 == p.p + p1^2 + p2^2 + p3^2, so the reduced monomial
            # re-enters the remainder with each spatial square attached.
            for j in (2, 3, 4):
                kk = list(qk)
                kk[j] += 2
                kk = tuple(kk)
                prev = r.get(kk)
                v = prev + c if prev is not None else c
                if v:
                    r[kk] = v
                elif prev is not None:
                    del r[kk]
    return q, r


def _pp_power(j: int) -> dict:
    out = {_KEY1: _G1}
    for _ in range(j):
        out = _pmul(out, _PP)
    return out


def _p_lower_poly(nu: int) -> dict:
    k = [0] * 9
    k[1 + nu] = 1
    return {tuple(k): GRat(SIGNATURE[nu])}


# ---------------------------------------------------------------------------
# Scalar
# ---------------------------------------------------------------------------

class Scalar:
    """Element of the coefficient ring in canonical form (A + B*w)/w^(2m)."""

    __slots__ = ("_a", "_b", "_m")

    def __init__(self, a: dict | None = None, b: dict | None = None, m: int = 0,
                 normalize: bool = True):
        a = a or {}
        b = b or {}
        if normalize:
            a = {k: c for k, c in a.items() if c}
            b = {k: c for k, c in b.items() if c}
            while m > 0:
                qa, ra = _pdivmod_pp(a)
                if ra:
                    break
                qb, rb = _pdivmod_pp(b)
                if rb:
                    break
                a, b, m = qa, qb, m - 1
            if not a and not b:
                m = 0
        self._a = a
        self._b = b
        self._m = m

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "Scalar":
        return cls({}, {}, 0, normalize=False)

    @classmethod
    def one(cls) -> "Scalar":
        return cls({_KEY1: _G1}, {}, 0, normalize=False)

    @classmethod
    def from_rational(cls, q) -> "Scalar":
        q = Fraction(q)
        if not q:
            return cls.zero()
        return cls({_KEY1: GRat(q)}, {}, 0, normalize=False)

    @classmethod
    def from_grat(cls, g: GRat) -> "Scalar":
        if not g:
            return cls.zero()
        return cls({_KEY1: g}, {}, 0, normalize=False)

    @classmethod
    def imag_unit(cls) -> "Scalar":
        return cls({_KEY1: GRat(0, 1)}, {}, 0, normalize=False)

    @classmethod
    def hbar(cls, k: int = 1) -> "Scalar":
        key = (k, 0, 0, 0, 0, 0, 0, 0, 0)
        return cls({key: _G1}, {}, 0, normalize=False)

    @classmethod
    def p(cls, mu: int) -> "Scalar":
        """Contravariant momentum component p^mu."""
        k = [0] * 9
        k[1 + mu] = 1
        return cls({tuple(k): _G1}, {}, 0, normalize=False)

    @classmethod
    def p_lower(cls, mu: int) -> "Scalar":
        """Lowered momentum component P_mu = eta_{mu mu} p^mu."""
        return cls(_p_lower_poly(mu), {}, 0, normalize=False)

    @classmethod
    def alpha(cls, mu: int) -> "Scalar":
        """Contravariant acceleration parameter a^mu."""
        k = [0] * 9
        k[5 + mu] = 1
        return cls({tuple(k): _G1}, {}, 0, normalize=False)

    @classmethod
    def w_pow(cls, k: int) -> "Scalar":
        """Any integer power of w, folded into canonical form."""
        q, r = divmod(k, 2)
        if q >= 0:
            poly = _pp_power(q)
            return cls(poly if r == 0 else {}, poly if r == 1 else {}, 0)
        one = {_KEY1: _G1}
        return cls(one if r == 0 else {}, one if r == 1 else {}, -q)

    # -- predicates ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._a and not self._b

    @property
    def p_free(self) -> bool:
        """True when no monomial involves p or w (all p-derivatives vanish)."""
        if self._m or self._b:
            return False
        return all(not (k[1] or k[2] or k[3] or k[4]) for k in self._a)

    def __bool__(self) -> bool:
        return not self.is_zero

    def __eq__(self, other) -> bool:
        return (isinstance(other, Scalar) and self._m == other._m
                and self._a == other._a and self._b == other._b)

    def __hash__(self) -> int:
        return hash((self._m,
                     frozenset(self._a.items()),
                     frozenset(self._b.items())))

    # -- ring operations ----------------------------------------------------

    def __add__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        m1, m2 = self._m, other._m
        if m1 == m2:
            a = dict(self._a)
            b = dict(self._b)
            _padd_into(a, other._a)
            _padd_into(b, other._b)
            return Scalar(a, b, m1)
        if m1 < m2:
            lo, hi = self, other
        else:
            lo, hi = other, self
        scale = _pp_power(hi._m - lo._m)
        a = _pmul(lo._a, scale)
        b = _pmul(lo._b, scale)
        _padd_into(a, hi._a)
        _padd_into(b, hi._b)
        return Scalar(a, b, hi._m)

    __radd__ = __add__

    def __sub__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __neg__(self) -> "Scalar":
        return Scalar({k: -c for k, c in self._a.items()},
                      {k: -c for k, c in self._b.items()},
                      self._m, normalize=False)

    def __mul__(self, other) -> "Scalar":
        if isinstance(other, int):
            if other == 0:
                return Scalar.zero()
            return Scalar({k: GRat._raw(c.a * other, c.b * other, c.d)
                           for k, c in self._a.items()},
                          {k: GRat._raw(c.a * other, c.b * other, c.d)
                           for k, c in self._b.items()},
                          self._m, normalize=False)
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Scalar.zero()
        # (A1 + B1 w)(A2 + B2 w) = A1A2 + B1B2 p.p + (A1B2 + B1A2) w
        a = _pmul(self._a, other._a)
        _padd_into(a, _pmul(_pmul(self._b, other._b), _PP))
        b = _pmul(self._a, other._b)
        _padd_into(b, _pmul(self._b, other._a))
        return Scalar(a, b, self._m + other._m)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            return self.invert() ** (-n)
        out = Scalar.one()
        for _ in range(n):
            out = out * self
        return out

    def invert(self) -> "Scalar":
        """Inverse of a unit c * w^k; raises NonInvertibleCoefficient otherwise."""
        if self.is_zero:
            raise NonInvertibleCoefficient("zero is not invertible")
        if self._a and self._b:
            raise NonInvertibleCoefficient("mixed w-parity coefficient is not a unit")
        poly, parity = (self._a, 0) if self._a else (self._b, 1)
        j = 0
        while True:
            q, r = _pdivmod_pp(poly)
            if r or not q:
                break
            poly, j = q, j + 1
        if len(poly) != 1:
            raise NonInvertibleCoefficient("coefficient is not c * w^k")
        key, c = next(iter(poly.items()))
        if any(key[1:]):
            raise NonInvertibleCoefficient("coefficient is not c * w^k")
        h = key[0]
        # self == c * hbar^h * w^(2j + parity - 2m)
        k = 2 * j + parity - 2 * self._m
        inv_unit = Scalar({(-h, 0, 0, 0, 0, 0, 0, 0, 0): c.inv()}, {}, 0, normalize=False)
        return inv_unit * Scalar.w_pow(-k)

    # -- calculus -----------------------------------------------------------

    def pderiv(self, nu: int) -> "Scalar":
        """Partial derivative with respect to p^nu (chain rule through w)."""
        if self.is_zero:
            return self
        m = self._m
        p_nu = _p_lower_poly(nu)
        # d[(A + Bw) w^(-2m)] = (dA pp - 2m A p_nu + (dB pp + (1-2m) B p_nu) w) w^(-2(m+1))
        a = _pmul(_pderiv(self._a, nu), _PP)
        _padd_into(a, _pscale(_pmul(self._a, p_nu), GRat(-2 * m)))
        b = _pmul(_pderiv(self._b, nu), _PP)
        _padd_into(b, _pscale(_pmul(self._b, p_nu), GRat(1 - 2 * m)))
        return Scalar(a, b, m + 1)

    def conj_i(self) -> "Scalar":
        """Complex conjugation i -> -i; p, alpha, hbar, w are fixed."""
        return Scalar({k: c.conj() for k, c in self._a.items()},
                      {k: c.conj() for k, c in self._b.items()},
                      self._m, normalize=False)

    # -- alpha grading ------------------------------------------------------

    def alpha_degree(self) -> int:
        """Maximal total degree in a0..a3; -1 for the zero scalar."""
        deg = -1
        for poly in (self._a, self._b):
            for k in poly:
                d = k[5] + k[6] + k[7] + k[8]
                if d > deg:
                    deg = d
        return deg

    def alpha_min_degree(self) -> int:
        """Minimal total degree in a0..a3; -1 for the zero scalar."""
        if self.is_zero:
            return -1
        return min(k[5] + k[6] + k[7] + k[8]
                   for poly in (self._a, self._b) for k in poly)

    def alpha_truncate(self, n: int) -> "Scalar":
        """Drop every monomial of alpha-degree above n."""
        a = {k: c for k, c in self._a.items() if k[5] + k[6] + k[7] + k[8] <= n}
        b = {k: c for k, c in self._b.items() if k[5] + k[6] + k[7] + k[8] <= n}
        return Scalar(a, b, self._m)

    def alpha_part(self, n: int) -> "Scalar":
        """Keep only the monomials of alpha-degree exactly n."""
        a = {k: c for k, c in self._a.items() if k[5] + k[6] + k[7] + k[8] == n}
        b = {k: c for k, c in self._b.items() if k[5] + k[6] + k[7] + k[8] == n}
        return Scalar(a, b, self._m)

    def subst_alpha(self, values) -> "Scalar":
        """Substitute rational numbers for the four alpha parameters."""
        vals = [Fraction(v) for v in values]
        out_a: dict = {}
        out_b: dict = {}
        for poly, out in ((self._a, out_a), (self._b, out_b)):
            for k, c in poly.items():
                f = Fraction(1)
                for j in range(4):
                    e = k[5 + j]
                    if e:
                        f *= vals[j] ** e
                if not f:
                    continue
                kk = k[:5] + (0, 0, 0, 0)
                v = c.scale(f)
                prev = out.get(kk)
                v = prev + v if prev is not None else v
                if v:
                    out[kk] = v
                elif prev is not None:
                    del out[kk]
        return Scalar(out_a, out_b, self._m)

    # -- rendering ----------------------------------------------------------

    def display_monomials(self, reverse: bool = False):
        """Expanded monomials (w_exp, key, coeff) in the canonical print order."""
        items = []
        for poly, wshift in ((self._a, 0), (self._b, 1)):
            wexp = wshift - 2 * self._m
            for k, c in poly.items():
                items.append((k, wexp, c))
        items.sort(key=lambda t: (sum(t[0][1:]),
                                  tuple(-e for e in t[0][1:5]),
                                  tuple(-e for e in t[0][5:9]),
                                  t[0][0], t[1]),
                   reverse=reverse)
        return items

    def render(self, reverse: bool = False) -> str:
        if self.is_zero:
            return "0"
        parts = [_mono_str(k, w, c) for k, w, c in self.display_monomials(reverse)]
        out = parts[0]
        for s in parts[1:]:
            if s.startswith("-"):
                out += " - " + s[1:]
            else:
                out += " + " + s
        return out

    def latex(self) -> str:
        if self.is_zero:
            return "0"
        parts = [_mono_latex(k, w, c) for k, w, c in self.display_monomials()]
        out = parts[0]
        for s in parts[1:]:
            if s.startswith("-"):
                out += " - " + s[1:]
            else:
                out += " + " + s
        return out

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Scalar({self.render()})"


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar.from_rational(x)
    if isinstance(x, GRat):
        return Scalar.from_grat(x)
    return NotImplemented


def _frac_str(q: Fraction) -> str:
    return str(q)


def _coeff_str(c: GRat):
    """Return (text, needs_sep) for a Gaussian rational coefficient."""
    if not c.im:
        return _frac_str(c.re), True
    if not c.re:
        if c.im == 1:
            return "i", True
        if c.im == -1:
            return "-i", True
        return f"{_frac_str(c.im)}*i", True
    im = c.im
    sign = "+" if im > 0 else "-"
    im_abs = abs(im)
    im_part = "i" if im_abs == 1 else f"{_frac_str(im_abs)}*i"
    return f"({_frac_str(c.re)} {sign} {im_part})", True


def _mono_str(k, wexp: int, c: GRat) -> str:
    factors = []
    h = k[0]
    if h:
        factors.append("hbar" if h == 1 else f"hbar^{h}")
    for j in range(4):
        e = k[1 + j]
        if e:
            factors.append(f"p{j}" if e == 1 else f"p{j}^{e}")
    for j in range(4):
        e = k[5 + j]
        if e:
            factors.append(f"a{j}" if e == 1 else f"a{j}^{e}")
    if wexp:
        factors.append("w" if wexp == 1 else f"w^{wexp}")
    cs, _ = _coeff_str(c)
    if not factors:
        return cs
    body = "*".join(factors)
    if cs == "1":
        return body
    if cs == "-1":
        return "-" + body
    return f"{cs}*{body}"


def _mono_latex(k, wexp: int, c: GRat) -> str:
    factors = []
    h = k[0]
    if h:
        factors.append(r"\hbar" if h == 1 else r"\hbar^{%d}" % h)
    for j in range(4):
        e = k[1 + j]
        if e:
            factors.append("p^{%d}" % j if e == 1 else "(p^{%d})^{%d}" % (j, e))
    for j in range(4):
        e = k[5 + j]
        if e:
            factors.append(r"\alpha^{%d}" % j if e == 1 else r"(\alpha^{%d})^{%d}" % (j, e))
    if wexp:
        factors.append("w" if wexp == 1 else "w^{%d}" % wexp)
    if not c.im:
        q = c.re
        cs = _frac_latex(q)
    elif not c.re:
        cs = ("i" if c.im == 1 else "-i" if c.im == -1 else _frac_latex(c.im) + " i")
    else:
        sign = "+" if c.im > 0 else "-"
        im_abs = abs(c.im)
        im_part = "i" if im_abs == 1 else _frac_latex(im_abs) + " i"
        cs = r"\left(%s %s %s\right)" % (_frac_latex(c.re), sign, im_part)
    if not factors:
        return cs
    body = r" \, ".join(factors)
    if cs == "1":
        return body
    if cs == "-1":
        return "-" + body
    return cs + r" \, " + body


def _frac_latex(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    s = r"\tfrac{%d}{%d}" % (abs(q.numerator), q.denominator)
    return "-" + s if q < 0 else s
