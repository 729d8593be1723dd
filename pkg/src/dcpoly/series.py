"""Exact truncated-series arithmetic used throughout the package.

Three coefficient domains cover every computation here:

* ``XSeries``: a power series in one variable, truncated at a fixed order,
  with exact coefficients (rationals, or elements of a real quadratic
  field when a square root forces one).  Division and square root are
  exact and refuse to proceed when the leading terms make the result
  leave the ring.

* ``BiPoly``: a polynomial in two variables ``d`` (diagonal marker) and
  ``x`` (half-perimeter marker) with integer coefficients, truncated in
  the ``x`` degree.

* ``ZPolySeries``: a polynomial in a third variable ``z`` whose
  coefficients are ``BiPoly`` values.  The layered iteration keeps its
  generating functions in this shape, with ``z`` marking cells on the
  active diagonal.  The two tail operators it needs,

      tail_sum:      z^m  |->  sum of coefficients s_k with k > m,
      tail_weighted: z^m  |->  sum of (k - m) s_k with k > m (m >= 1),

  are finite sums here, computed by suffix-sum recurrences, so the
  substitution never divides by ``z``.
"""

from fractions import Fraction
from math import isqrt


class ValuationError(ValueError):
    """A shift or division needs more leading zeros than the series has."""


class ZeroValuationError(ValuationError):
    """Division by a series that is zero through its whole truncation."""


class NonDivisibleError(ValueError):
    """Low-order terms do not cancel, so the quotient is not a series."""


class NonSquareConstantError(ValueError):
    """The constant term has no exact square root in the coefficient field."""


def _is_rational(v):
    return isinstance(v, (int, Fraction))


class QuadExt:
    """Element a + b*sqrt(disc) of a real quadratic extension of Q.

    ``disc`` is a fixed positive non-square integer; all arithmetic stays
    exact.  Values with ``b == 0`` compare equal to plain rationals and
    combine with elements of any other discriminant.
    """

    __slots__ = ("a", "b", "disc")

    def __init__(self, a, b, disc):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.disc = int(disc)
        if self.disc <= 0:
            raise ValueError("discriminant must be positive")

    def _pair(self, other):
        if _is_rational(other):
            return QuadExt(other, 0, self.disc)
        if isinstance(other, QuadExt):
            if other.b == 0:
                return QuadExt(other.a, 0, self.disc)
            if self.b == 0:
                return other
            if other.disc != self.disc:
                raise ValueError(
                    "cannot mix sqrt(%d) with sqrt(%d)" % (self.disc, other.disc)
                )
            return other
        return None

    def __add__(self, other):
        o = self._pair(other)
        if o is None:
            return NotImplemented
        disc = o.disc if self.b == 0 else self.disc
        return QuadExt(self.a + o.a, self.b + o.b, disc)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.disc)

    def __sub__(self, other):
        o = self._pair(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._pair(other)
        if o is None:
            return NotImplemented
        disc = o.disc if self.b == 0 else self.disc
        return QuadExt(
            self.a * o.a + self.b * o.b * disc,
            self.a * o.b + self.b * o.a,
            disc,
        )

    __rmul__ = __mul__

    def inverse(self):
        norm = self.a * self.a - self.b * self.b * self.disc
        if norm == 0:
            raise ZeroDivisionError("zero or degenerate quadratic element")
        return QuadExt(self.a / norm, -self.b / norm, self.disc)

    def __truediv__(self, other):
        o = self._pair(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        if not _is_rational(other):
            return NotImplemented
        return QuadExt(other, 0, self.disc) * self.inverse()

    def __eq__(self, other):
        if _is_rational(other):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadExt):
            if self.b == 0 or other.b == 0:
                return self.a == other.a and self.b == other.b
            return (
                self.disc == other.disc
                and self.a == other.a
                and self.b == other.b
            )
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.disc))

    def is_positive(self):
        if self.b == 0:
            return self.a > 0
        if self.a >= 0 and self.b >= 0:
            return self.a > 0 or self.b > 0
        if self.a <= 0 and self.b <= 0:
            return False
        # opposite signs: compare a^2 with b^2 * disc on the correct side
        if self.a > 0:
            return self.a * self.a > self.b * self.b * self.disc
        return self.b * self.b * self.disc > self.a * self.a

    def __gt__(self, other):
        o = self._pair(other)
        if o is None:
            return NotImplemented
        return (self - o).is_positive()

    def __lt__(self, other):
        o = self._pair(other)
        if o is None:
            return NotImplemented
        return (o - self).is_positive()

    def __repr__(self):
        return "QuadExt(%s, %s, %d)" % (self.a, self.b, self.disc)


def _rational_sqrt(value):
    """Exact square root of a nonnegative rational, or None."""
    num, den = value.numerator, value.denominator
    if num < 0:
        return None
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    return Fraction(rn, rd)


class XSeries:
    """Truncated power series sum_{k<=order} c_k x^k with exact coefficients.

    Binary operations truncate to the smaller of the two orders, so a
    value never claims more precision than both inputs carry.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order):
        if order < 0:
            raise ValueError("order must be nonnegative")
        padded = list(coeffs[: order + 1])
        padded.extend([Fraction(0)] * (order + 1 - len(padded)))
        self.coeffs = tuple(
            Fraction(c) if isinstance(c, int) else c for c in padded
        )
        self.order = order

    @classmethod
    def from_terms(cls, terms, order):
        coeffs = [Fraction(0)] * (order + 1)
        for k, v in terms.items():
            if 0 <= k <= order:
                coeffs[k] = Fraction(v) if isinstance(v, int) else v
        return cls(coeffs, order)

    @classmethod
    def zero(cls, order):
        return cls([], order)

    @classmethod
    def one(cls, order):
        return cls([Fraction(1)], order)

    def coefficient(self, k):
        if k < 0 or k > self.order:
            raise ValueError("coefficient x^%d beyond truncation order %d" % (k, self.order))
        return self.coeffs[k]

    def coeff_list(self):
        return list(self.coeffs)

    def valuation(self):
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return k
        return None

    def is_zero(self):
        return self.valuation() is None

    def truncate(self, new_order):
        if new_order > self.order:
            raise ValueError("cannot extend a truncated series")
        return XSeries(self.coeffs[: new_order + 1], new_order)

    def __add__(self, other):
        if not isinstance(other, XSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return XSeries(
            [self.coeffs[k] + other.coeffs[k] for k in range(n + 1)], n
        )

    def __sub__(self, other):
        if not isinstance(other, XSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return XSeries(
            [self.coeffs[k] - other.coeffs[k] for k in range(n + 1)], n
        )

    def __neg__(self):
        return XSeries([-c for c in self.coeffs], self.order)

    def __mul__(self, other):
        if isinstance(other, XSeries):
            n = min(self.order, other.order)
            out = [Fraction(0)] * (n + 1)
            for i, a in enumerate(self.coeffs[: n + 1]):
                if a == 0:
                    continue
                for j in range(n + 1 - i):
                    b = other.coeffs[j]
                    if b != 0:
                        out[i + j] = out[i + j] + a * b
            return XSeries(out, n)
        if _is_rational(other) or isinstance(other, QuadExt):
            return XSeries([c * other for c in self.coeffs], self.order)
        return NotImplemented

    __rmul__ = __mul__

    def divide(self, den):
        """Exact quotient self/den; the order drops by den's valuation."""
        if not isinstance(den, XSeries):
            raise TypeError("divide expects an XSeries denominator")
        n = min(self.order, den.order)
        v = den.valuation()
        if v is None or v > n:
            raise ZeroValuationError("division by a series that is zero through its order")
        for k in range(min(v, self.order + 1)):
            if self.coeffs[k] != 0:
                raise NonDivisibleError(
                    "numerator has x^%d but denominator starts at x^%d" % (k, v)
                )
        m = n - v
        lead = den.coeffs[v]
        out = []
        for k in range(m + 1):
            acc = self.coeffs[k + v]
            for j in range(k):
                acc = acc - out[j] * den.coeffs[k - j + v]
            out.append(acc / lead)
        return XSeries(out, m)

    def shift_down(self, k):
        """Divide by x^k; the first k coefficients must vanish."""
        if k < 0:
            raise ValueError("shift amount must be nonnegative")
        if k > self.order:
            raise ValuationError("cannot shift past the truncation order")
        for j in range(k):
            if self.coeffs[j] != 0:
                raise ValuationError("nonzero coefficient at x^%d blocks division by x^%d" % (j, k))
        return XSeries(self.coeffs[k:], self.order - k)

    def sqrt(self, c0_root=None):
        """Exact square root; the branch is fixed by the constant term.

        Without a hint the constant term must be a positive rational
        square.  Passing ``c0_root`` (for instance a ``QuadExt``) selects
        a root of the constant term explicitly and lets the result live
        in a quadratic extension.
        """
        c0 = self.coeffs[0]
        if c0_root is None:
            val = c0
            if isinstance(val, QuadExt):
                if val.b != 0:
                    raise NonSquareConstantError(
                        "constant term %r needs an explicit root hint" % (val,)
                    )
                val = val.a
            if val <= 0:
                raise NonSquareConstantError(
                    "constant term %s is not a positive square" % (val,)
                )
            root = _rational_sqrt(val)
            if root is None:
                raise NonSquareConstantError(
                    "constant term %s is not a rational square" % (val,)
                )
        else:
            root = c0_root
            if not root * root == c0:
                raise ValueError("hinted root does not square to the constant term")
        out = [root]
        twice = 2 * root
        for n in range(1, self.order + 1):
            acc = self.coeffs[n]
            for k in range(1, n):
                acc = acc - out[k] * out[n - k]
            out.append(acc / twice)
        return XSeries(out, self.order)

    def __eq__(self, other):
        if not isinstance(other, XSeries):
            return NotImplemented
        return self.order == other.order and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        parts = [
            "%s*x^%d" % (c, k) for k, c in enumerate(self.coeffs) if c != 0
        ]
        return "XSeries(%s; order=%d)" % (" + ".join(parts) or "0", self.order)


class BiPoly:
    """Integer polynomial in d and x, truncated at x-degree ``trunc``.

    Terms live in a dict keyed by ``(d_degree, x_degree)``.  The product
    drops any term whose x-degree exceeds the truncation, which is what
    keeps the layered iteration polynomial-sized.
    """

    __slots__ = ("terms", "trunc")

    def __init__(self, terms, trunc):
        self.trunc = trunc
        self.terms = {
            k: v for k, v in terms.items() if v != 0 and k[1] <= trunc
        }

    @classmethod
    def zero(cls, trunc):
        return cls({}, trunc)

    @classmethod
    def monomial(cls, coeff, kd, kx, trunc):
        return cls({(kd, kx): coeff}, trunc)

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            newv = out.get(k, 0) + v
            if newv:
                out[k] = newv
            else:
                out.pop(k, None)
        return BiPoly(out, min(self.trunc, other.trunc))

    def __sub__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            newv = out.get(k, 0) - v
            if newv:
                out[k] = newv
            else:
                out.pop(k, None)
        return BiPoly(out, min(self.trunc, other.trunc))

    def __neg__(self):
        return BiPoly({k: -v for k, v in self.terms.items()}, self.trunc)

    @staticmethod
    def _mul_into(acc, aterms, bterms, trunc):
        if len(aterms) > len(bterms):
            aterms, bterms = bterms, aterms
        for (ad, ax), av in aterms.items():
            for (bd, bx), bv in bterms.items():
                x = ax + bx
                if x > trunc:
                    continue
                key = (ad + bd, x)
                newv = acc.get(key, 0) + av * bv
                if newv:
                    acc[key] = newv
                else:
                    del acc[key]

    def __mul__(self, other):
        if isinstance(other, BiPoly):
            trunc = min(self.trunc, other.trunc)
            acc = {}
            BiPoly._mul_into(acc, self.terms, other.terms, trunc)
            return BiPoly(acc, trunc)
        if isinstance(other, int):
            return self.scaled(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scaled(other)
        return NotImplemented

    def scaled(self, c):
        if c == 0:
            return BiPoly({}, self.trunc)
        return BiPoly({k: c * v for k, v in self.terms.items()}, self.trunc)

    def mul_monomial(self, coeff, kd, kx):
        out = {}
        for (ad, ax), v in self.terms.items():
            x = ax + kx
            if x <= self.trunc:
                out[(ad + kd, x)] = coeff * v
        return BiPoly(out, self.trunc)

    def x_counts(self):
        """Collapse d: map each x-degree to the sum of its coefficients."""
        out = {}
        for (_, kx), v in self.terms.items():
            out[kx] = out.get(kx, 0) + v
        return {k: v for k, v in out.items() if v}

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.trunc == other.trunc and self.terms == other.terms

    def __hash__(self):
        return hash((self.trunc, frozenset(self.terms.items())))

    def __repr__(self):
        parts = [
            "%d*d^%d*x^%d" % (v, kd, kx)
            for (kd, kx), v in sorted(self.terms.items())
        ]
        return "BiPoly(%s; trunc=%d)" % (" + ".join(parts) or "0", self.trunc)


class ZPolySeries:
    """Polynomial in z with BiPoly coefficients, stored densely in z.

    Trailing zero coefficients are stripped so that equality is canonical.
    ``order`` is the shared x-truncation of the coefficients.
    """

    __slots__ = ("zc", "order")

    def __init__(self, z_coeff_list, order):
        zc = list(z_coeff_list)
        while zc and zc[-1].is_zero():
            zc.pop()
        self.zc = tuple(zc)
        self.order = order

    @classmethod
    def zero(cls, order):
        return cls([], order)

    def z_coeffs(self):
        return self.zc

    def z_degree(self):
        return len(self.zc) - 1

    def is_zero(self):
        return not self.zc

    def _coeff(self, m, order):
        if m < len(self.zc):
            return self.zc[m]
        return BiPoly.zero(order)

    def __add__(self, other):
        if not isinstance(other, ZPolySeries):
            return NotImplemented
        order = min(self.order, other.order)
        n = max(len(self.zc), len(other.zc))
        return ZPolySeries(
            [self._coeff(m, order) + other._coeff(m, order) for m in range(n)],
            order,
        )

    def __sub__(self, other):
        if not isinstance(other, ZPolySeries):
            return NotImplemented
        order = min(self.order, other.order)
        n = max(len(self.zc), len(other.zc))
        return ZPolySeries(
            [self._coeff(m, order) - other._coeff(m, order) for m in range(n)],
            order,
        )

    def __mul__(self, other):
        if not isinstance(other, ZPolySeries):
            return NotImplemented
        order = min(self.order, other.order)
        if not self.zc or not other.zc:
            return ZPolySeries.zero(order)
        accs = [dict() for _ in range(len(self.zc) + len(other.zc) - 1)]
        for i, a in enumerate(self.zc):
            if a.is_zero():
                continue
            for j, b in enumerate(other.zc):
                if not b.is_zero():
                    BiPoly._mul_into(accs[i + j], a.terms, b.terms, order)
        return ZPolySeries([BiPoly(t, order) for t in accs], order)

    def scaled(self, c):
        return ZPolySeries([b.scaled(c) for b in self.zc], self.order)

    def monomial_scaled(self, coeff, kd, kx, dz):
        """Multiply by coeff * d^kd * x^kx * z^dz."""
        pad = [BiPoly.zero(self.order)] * dz
        return ZPolySeries(
            pad + [b.mul_monomial(coeff, kd, kx) for b in self.zc], self.order
        )

    def _suffix_sums(self):
        """V[m] = sum of coefficients s_k with k >= m, for m = 0..D+1."""
        vee = [BiPoly.zero(self.order)] * (len(self.zc) + 1)
        for m in range(len(self.zc) - 1, -1, -1):
            vee[m] = vee[m + 1] + self.zc[m]
        return vee

    def tail_sum(self):
        """z^m coefficient becomes sum_{k>m} s_k, for m = 0..D-1."""
        if len(self.zc) <= 1:
            return ZPolySeries.zero(self.order)
        vee = self._suffix_sums()
        return ZPolySeries(vee[1:len(self.zc)], self.order)

    def tail_weighted(self):
        """z^m coefficient becomes sum_{k>m} (k-m) s_k, for m >= 1."""
        if len(self.zc) <= 2:
            return ZPolySeries.zero(self.order)
        vee = self._suffix_sums()
        tee = [BiPoly.zero(self.order)] * len(self.zc)
        for m in range(len(self.zc) - 2, 0, -1):
            tee[m] = tee[m + 1] + vee[m + 1]
        tee[0] = BiPoly.zero(self.order)
        return ZPolySeries(tee[: len(self.zc) - 1], self.order)

    def eval_at_one(self):
        """Substitute z = 1, collapsing to a single BiPoly."""
        acc = BiPoly.zero(self.order)
        for b in self.zc:
            acc = acc + b
        return acc

    def deriv_at_one(self):
        """d/dz at z = 1: sum of m * s_m."""
        acc = BiPoly.zero(self.order)
        for m, b in enumerate(self.zc):
            if m:
                acc = acc + b.scaled(m)
        return acc

    def __eq__(self, other):
        if not isinstance(other, ZPolySeries):
            return NotImplemented
        return self.order == other.order and self.zc == other.zc

    def __hash__(self):
        return hash((self.order, self.zc))

    def __repr__(self):
        return "ZPolySeries(z-degree=%d, order=%d)" % (self.z_degree(), self.order)
