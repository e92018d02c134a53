"""Exact Laurent polynomials in ``t`` and rational functions built from them.

Coefficients are Python ints, or :class:`fractions.Fraction` when a
representation has non-integral entries.  Units of the coefficient ring are
taken to be ``+-t^i``, so ``doteq`` and ``unit_normalize`` never rescale by
anything other than a sign.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce as _fold
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

Coeff = int | Fraction


def _clean(c) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


def _exact_div(a: Coeff, b: Coeff) -> Coeff:
    if isinstance(a, int) and isinstance(b, int) and a % b == 0:
        return a // b
    return _clean(Fraction(a) / b)


class LaurentPolynomial:
    """Immutable Laurent polynomial ``sum c_i t^i``.

    Stored densely: ``coeffs[k]`` is the coefficient of ``t^(low + k)``, with
    nonzero first and last entries.  The zero polynomial has no coefficients.
    """

    __slots__ = ("_c", "_low", "_hash")

    def __init__(self, coeffs: Sequence[Coeff] | Mapping[int, Coeff] = (), low: int = 0):
        if isinstance(coeffs, Mapping):
            items = {int(d): c for d, c in coeffs.items() if c}
            if items:
                lo, hi = min(items), max(items)
                coeffs = [items.get(d, 0) for d in range(lo, hi + 1)]
                low = lo
            else:
                coeffs = []
        c = [_clean(x) for x in coeffs]
        start = 0
        while start < len(c) and not c[start]:
            start += 1
        end = len(c)
        while end > start and not c[end - 1]:
            end -= 1
        self._c = tuple(c[start:end])
        self._low = low + start if self._c else 0
        self._hash = None

    @classmethod
    def _raw(cls, c: tuple, low: int) -> "LaurentPolynomial":
        # caller guarantees trimmed, cleaned coefficients
        p = object.__new__(cls)
        p._c, p._low, p._hash = c, (low if c else 0), None
        return p

    @classmethod
    def constant(cls, c: Coeff) -> "LaurentPolynomial":
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c: Coeff = 1) -> "LaurentPolynomial":
        return cls([c], degree)

    @classmethod
    def t(cls) -> "LaurentPolynomial":
        return cls([1], 1)

    # -- accessors -------------------------------------------------------
    @property
    def low(self) -> int:
        """Lowest degree (0 for the zero polynomial)."""
        return self._low

    @property
    def high(self) -> int:
        return self._low + len(self._c) - 1 if self._c else 0

    @property
    def coefficients(self) -> tuple[Coeff, ...]:
        """Ascending coefficients starting at degree ``low``."""
        return self._c

    def coeff(self, degree: int) -> Coeff:
        k = degree - self._low
        return self._c[k] if 0 <= k < len(self._c) else 0

    def as_dict(self) -> dict[int, Coeff]:
        return {self._low + k: c for k, c in enumerate(self._c) if c}

    def is_zero(self) -> bool:
        return not self._c

    def is_constant(self) -> bool:
        return not self._c or (len(self._c) == 1 and self._low == 0)

    def is_polynomial(self) -> bool:
        return self._low >= 0

    def leading(self) -> Coeff:
        return self._c[-1] if self._c else 0

    def trailing(self) -> Coeff:
        return self._c[0] if self._c else 0

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._c)

    def content(self) -> Fraction:
        """Positive rational content; the primitive part has coprime integer coefficients."""
        if not self._c:
            return Fraction(0)
        nums = [Fraction(c) for c in self._c]
        den = _fold(lcm, (x.denominator for x in nums), 1)
        num = _fold(gcd, (x.numerator for x in nums), 0)
        return Fraction(abs(num), den)

    def primitive(self) -> "LaurentPolynomial":
        if not self._c:
            return self
        return self.scale(1 / self.content())

    # -- arithmetic ------------------------------------------------------
    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPolynomial.constant(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._low == other._low and self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._low, self._c))
        return self._hash

    @staticmethod
    def _coerce(x) -> "LaurentPolynomial":
        if isinstance(x, LaurentPolynomial):
            return x
        if isinstance(x, (int, Fraction)):
            return LaurentPolynomial.constant(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to a Laurent polynomial")

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not other._c:
            return self
        if not self._c:
            return other
        lo = min(self._low, other._low)
        hi = max(self.high, other.high)
        out = [0] * (hi - lo + 1)
        for k, c in enumerate(self._c):
            out[self._low - lo + k] += c
        for k, c in enumerate(other._c):
            out[other._low - lo + k] += c
        return LaurentPolynomial(out, lo)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial._raw(tuple(-c for c in self._c), self._low)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._c, other._c
        if not a or not b:
            return LaurentPolynomial()
        if len(b) == 1:
            return self.scale(b[0]).shift(other._low)
        if len(a) == 1:
            return other.scale(a[0]).shift(self._low)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return LaurentPolynomial(out, self._low + other._low)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._c) == 1 and self._c[0] in (1, -1):
                return LaurentPolynomial.monomial(-self._low, self._c[0]) ** (-n)
            raise ValueError("negative powers only exist for units")
        result = LaurentPolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: Coeff) -> "LaurentPolynomial":
        c = _clean(c)
        if not c:
            return LaurentPolynomial()
        return LaurentPolynomial._raw(tuple(_clean(x * c) for x in self._c), self._low)

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by ``t^k``."""
        return LaurentPolynomial._raw(self._c, self._low + k)

    def __call__(self, x):
        total = 0
        # exact for Fraction/int points, also fine for float/complex
        for k, c in enumerate(self._c):
            d = self._low + k
            total += c * (x ** d) if d >= 0 else c / (x ** -d)
        return total

    def divmod_poly(self, other: "LaurentPolynomial") -> tuple["LaurentPolynomial", "LaurentPolynomial"]:
        """Euclidean division of ordinary polynomials over Q."""
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        if self._low < 0 or other._low < 0:
            raise ValueError("divmod_poly needs ordinary polynomials")
        rem = [0] * self._low + list(self._c)
        den = [0] * other._low + list(other._c)
        dq = len(den) - 1
        if len(rem) - 1 < dq:
            return LaurentPolynomial(), self
        quot = [0] * (len(rem) - dq)
        lead = den[-1]
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if not c:
                continue
            q = _exact_div(c, lead)
            quot[k - dq] = q
            for i, d in enumerate(den):
                rem[k - dq + i] -= q * d
        return LaurentPolynomial(quot), LaurentPolynomial(rem[:dq])

    def exact_div(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        """Divide in Q[t, t^-1]; raises ``ArithmeticError`` if not exact."""
        if not other:
            raise ZeroDivisionError("Laurent division by zero")
        if not self:
            return self
        a = self.shift(-self._low)
        b = other.shift(-other._low)
        q, r = a.divmod_poly(b)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q.shift(self._low - other._low)

    def __floordiv__(self, other):
        return self.exact_div(self._coerce(other))

    # -- text ------------------------------------------------------------
    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"LaurentPolynomial({render(self)!r})"


LP = LaurentPolynomial
ZERO = LaurentPolynomial()
ONE = LaurentPolynomial.constant(1)
T = LaurentPolynomial.t()


def from_coeffs(coeffs: Sequence[Coeff], low: int = 0) -> LaurentPolynomial:
    """Build from the ascending coefficient-list exchange format."""
    return LaurentPolynomial(list(coeffs), low)


def to_coeffs(p: LaurentPolynomial) -> dict:
    return {"low": p.low, "coeffs": [str(c) if isinstance(c, Fraction) else c for c in p.coefficients]}


# -- involution and units ------------------------------------------------

def bar(p: LaurentPolynomial) -> LaurentPolynomial:
    """Substitute ``t -> t^-1``."""
    return LaurentPolynomial._raw(tuple(reversed(p.coefficients)), -p.high)


def unit_normalize(p: LaurentPolynomial) -> LaurentPolynomial:
    """Canonical ``+-t^i`` multiple: nonzero constant term, positive leading coefficient."""
    if not p:
        return p
    q = p.shift(-p.low)
    return -q if q.leading() < 0 else q


def doteq(p: LaurentPolynomial, q: LaurentPolynomial) -> bool:
    return unit_normalize(p) == unit_normalize(q)


def is_reciprocal(p: LaurentPolynomial) -> bool:
    return doteq(bar(p), p)


# -- gcd over Q[t] -------------------------------------------------------

def poly_gcd(p: LaurentPolynomial, q: LaurentPolynomial) -> LaurentPolynomial:
    """Gcd of the power-cleared parts in Q[t], returned primitive and unit-normalized."""
    a = p.shift(-p.low) if p else p
    b = q.shift(-q.low) if q else q
    while b:
        _, r = a.divmod_poly(b)
        a, b = b, (r.primitive() if r else r)
    if not a:
        return a
    return unit_normalize(a.primitive())


# -- rational functions --------------------------------------------------

class RationalFunction:
    """Reduced quotient ``num / den`` of Laurent polynomials.

    The denominator is primitive with integer coefficients and in canonical
    ``unit_normalize`` form; any rational scalar lives in the numerator, so
    the stored pair is a faithful representation of the function.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE):
        num = LaurentPolynomial._coerce(num)
        den = LaurentPolynomial._coerce(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.num, self.den = ZERO, ONE
            return
        g = poly_gcd(num, den)
        if not g.is_constant():
            num = num.exact_div(g)
            den = den.exact_div(g)
        # move units and scalars of den into num
        shift = den.low
        sign = -1 if den.leading() < 0 else 1
        cont = den.content()
        den = den.shift(-shift).scale(Fraction(sign) / cont)
        num = num.shift(-shift).scale(Fraction(sign) / cont)
        self.num, self.den = num, den

    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return self.den == ONE

    def __eq__(self, other):
        if isinstance(other, (LaurentPolynomial, int, Fraction)):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __mul__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction(other)
        return RationalFunction(self.num * other.den, self.den * other.num)

    def bar(self) -> "RationalFunction":
        return RationalFunction(bar(self.num), bar(self.den))

    def __str__(self):
        if self.is_polynomial():
            return render(self.num)
        return f"({render(self.num)}) / ({render(self.den)})"

    def __repr__(self):
        return f"RationalFunction({str(self)!r})"


def rf_make(num, den=ONE) -> RationalFunction:
    return RationalFunction(num, den)


def rf_mul(a: RationalFunction, b: RationalFunction) -> RationalFunction:
    return a * b


def rf_doteq(a: RationalFunction, b: RationalFunction) -> bool:
    """Equality up to ``+-t^i``."""
    return doteq(a.num * b.den, b.num * a.den)


def rf_is_reciprocal(w: RationalFunction) -> bool:
    return rf_doteq(w.bar(), w)


def rf_normalize(w: RationalFunction) -> RationalFunction:
    """Canonical ``+-t^i`` representative with normalized numerator."""
    if w.is_zero():
        return w
    return RationalFunction(unit_normalize(w.num), w.den)


# -- polynomial matrices and resultants ----------------------------------

def det(matrix: Sequence[Sequence[LaurentPolynomial]]) -> LaurentPolynomial:
    """Determinant of a square matrix over Q[t, t^-1] by fraction-free elimination.

    Each column is first multiplied by ``t^-m`` (``m`` its minimal degree) so
    the elimination runs over Q[t]; the unit is restored at the end.
    """
    n = len(matrix)
    if n == 0:
        return ONE
    rows = [[LaurentPolynomial._coerce(x) for x in row] for row in matrix]
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    unit = 0
    for j in range(n):
        lows = [rows[i][j].low for i in range(n) if rows[i][j]]
        if not lows:
            return ZERO
        m = min(lows)
        if m:
            unit += m
            for i in range(n):
                rows[i][j] = rows[i][j].shift(-m)
    return _bareiss(rows).shift(unit)


def _bareiss(a: list[list[LaurentPolynomial]]) -> LaurentPolynomial:
    n = len(a)
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if not a[k][k]:
            # smallest nonzero pivot keeps intermediate degrees down
            cands = [i for i in range(k + 1, n) if a[i][k]]
            if not cands:
                return ZERO
            p = min(cands, key=lambda i: (len(a[i][k].coefficients), i))
            a[k], a[p] = a[p], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                num = piv * row_i[j] - aik * row_k[j]
                row_i[j] = num.exact_div(prev) if prev != ONE else num
            row_i[k] = ZERO
        prev = piv
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def resultant(p: Sequence[LaurentPolynomial], q: Sequence[LaurentPolynomial]) -> LaurentPolynomial:
    """Resultant in an auxiliary variable ``lam`` of two polynomials in ``lam``.

    ``p`` and ``q`` are ascending coefficient lists (coefficients are Laurent
    polynomials in ``t``).  The Sylvester matrix has the ``p`` rows first, so
    ``res(p, q) = lc(p)^deg(q) * prod q(root)`` over the roots of ``p``.
    """
    p = _trim([LaurentPolynomial._coerce(c) for c in p])
    q = _trim([LaurentPolynomial._coerce(c) for c in q])
    if not p or not q:
        raise ValueError("resultant with a zero polynomial")
    m, n = len(p) - 1, len(q) - 1
    if m == 0 or n == 0:
        # degenerate Sylvester matrix: a pure power of the constant side
        return p[0] ** n if m == 0 else q[0] ** m
    size = m + n
    rows = []
    for i in range(n):
        row = [ZERO] * size
        for k, c in enumerate(reversed(p)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [ZERO] * size
        for k, c in enumerate(reversed(q)):
            row[i + k] = c
        rows.append(row)
    return det(rows)


def _trim(cs: list[LaurentPolynomial]) -> list[LaurentPolynomial]:
    while cs and not cs[-1]:
        cs.pop()
    return cs


def root_product(f: LaurentPolynomial, h: LaurentPolynomial) -> LaurentPolynomial:
    """``prod h(t*lam)`` over the roots ``lam`` of the monic polynomial ``f``, exactly."""
    if not f or f.low < 0 or f.leading() != 1:
        raise ValueError("root_product needs a monic ordinary polynomial")
    d = f.high
    if d == 0:
        return ONE
    f_lam = [LaurentPolynomial.constant(f.coeff(i)) for i in range(d + 1)]
    # h(t lam) = sum c_i t^i lam^i; multiply by lam^-low to get a polynomial in lam
    h_lam = [LaurentPolynomial.monomial(i, h.coeff(i)) for i in range(h.low, h.high + 1)]
    res = resultant(f_lam, h_lam)
    # undo lam^-low:  prod lam = (-1)^d f(0)
    root_prod = (-1) ** d * f.coeff(0)
    if h.low:
        if root_prod == 0:
            raise ValueError("f has a zero root; h(t*lam) is undefined there")
        res = res.scale(Fraction(root_prod) ** h.low)
    return res


def check_standing_f(f: LaurentPolynomial) -> None:
    """Require a monic integral polynomial with constant term -1 and f(1) = +-1."""
    if not f or f.low < 0 or f.high < 1:
        raise ValueError(f"f must be a polynomial of degree >= 1, got {render(f)}")
    if not f.is_integral():
        raise ValueError("f must have integer coefficients")
    if f.leading() != 1:
        raise ValueError(f"f must be monic, got {render(f)}")
    if f.coeff(0) != -1:
        raise ValueError(f"f must have constant coefficient -1, got {render(f)}")
    if f(1) not in (1, -1):
        raise ValueError(f"f(1) must be +-1, got {f(1)}")


def check_companion_f(f: LaurentPolynomial) -> None:
    """Require a monic integral polynomial with constant term +-1 and f(1) = +-1."""
    if not f or f.low < 0 or f.high < 1:
        raise ValueError(f"f must be a polynomial of degree >= 1, got {render(f)}")
    if not f.is_integral():
        raise ValueError("f must have integer coefficients")
    if f.leading() != 1:
        raise ValueError(f"f must be monic, got {render(f)}")
    if f.coeff(0) not in (1, -1):
        raise ValueError(f"f must have constant coefficient +-1, got {render(f)}")
    if f(1) not in (1, -1):
        raise ValueError(f"f(1) must be +-1, got {f(1)}")


def g_of_f(f: LaurentPolynomial) -> LaurentPolynomial:
    """Unit-normalized ``prod f(t lam) f(t^-1 lam^-1)`` over the roots of ``f``."""
    check_standing_f(f)
    # f(t^-1 lam^-1) is bar(f) evaluated at t*lam
    return unit_normalize(root_product(f, f) * root_product(f, bar(f)))


# -- text ----------------------------------------------------------------

def _fmt_coeff(c: Coeff) -> str:
    return f"({c})" if isinstance(c, Fraction) else str(c)


def render(p: LaurentPolynomial, var: str = "t") -> str:
    """Sparse descending text, e.g. ``t^2 - 3*t + 1`` or ``t^-1 - 1``."""
    if not p:
        return "0"
    parts = []
    for k in range(len(p.coefficients) - 1, -1, -1):
        c = p.coefficients[k]
        if not c:
            continue
        d = p.low + k
        neg = c < 0
        a = -c if neg else c
        if d == 0:
            body = _fmt_coeff(a)
        else:
            mono = var if d == 1 else f"{var}^{d}"
            body = mono if a == 1 else f"{_fmt_coeff(a)}*{mono}"
        parts.append(("-" if neg else "+", body))
    s0, b0 = parts[0]
    out = ("-" if s0 == "-" else "") + b0
    for s, b in parts[1:]:
        out += f" {s} {b}"
    return out


_TERM = re.compile(
    r"\s*([+-])?\s*(?:\(?\s*(\d+(?:/\d+)?)\s*\)?)?\s*(\*)?\s*(?:([A-Za-z])(?:\^\(?(-?\d+)\)?)?)?\s*"
)


def parse(text: str, var: str = "t") -> LaurentPolynomial:
    """Parse the sparse text form produced by :func:`render` (no parentheses products)."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    pos = 0
    acc: dict[int, Coeff] = {}
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at column {pos + 1}: {text!r}")
        sign, num, star, v, exp = m.groups()
        if sign is None and not first:
            raise ValueError(f"missing operator at column {pos + 1}: {text!r}")
        if num is None and v is None:
            raise ValueError(f"empty term at column {pos + 1}: {text!r}")
        if v is not None and v != var:
            raise ValueError(f"unexpected variable {v!r}")
        if star and (num is None or v is None):
            raise ValueError(f"dangling '*' at column {pos + 1}: {text!r}")
        c: Coeff = _clean(Fraction(num)) if num is not None else 1
        if sign == "-":
            c = -c
        d = 0 if v is None else int(exp) if exp is not None else 1
        acc[d] = acc.get(d, 0) + c
        pos = m.end()
        first = False
    return LaurentPolynomial(acc)


def product(factors: Iterable[LaurentPolynomial]) -> LaurentPolynomial:
    out = ONE
    for f in factors:
        out = out * f
    return out
