"""Closed-form algebra behind the perimeter generating functions.

The layered iteration and the exhaustive generator count shapes
directly.  This module carries the third, purely algebraic route and
the identities that tie all routes together:

* three nested square roots whose squares are explicit polynomials in
  the diagonal marker and the perimeter variable;
* the kernel of the size-marked functional equation, factored into an
  x-only polynomial, a quadratic in z, and a quartic in z, together
  with the three factor roots that are genuine power series;
* the symmetric-function identities satisfied by the two quartic roots;
* three printed shapes of the column-convex perimeter series, all equal
  as formal series but arranged around different radicals;
* the algebraic fixed point counting directed shapes by diagonals, with
  the matching binomial formula;
* the decimal table of column-convex to diagonally-convex count ratios.

The diagonal marker d enters every formula polynomially, so identities
are verified at several rational sample values rather than symbolically;
vanishing at four samples to high x-order leaves no room for a wrong
transcription.  All arithmetic is exact.  Roots whose constant terms are
irrational live in a quadratic extension of the rationals; identities
about them must come out with a vanishing irrational part, and that
vanishing is checked, never assumed.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple

from .layered import NonConvergenceError, perimeter_counts
from .series import QuadExt, XSeries


class Radical(NamedTuple):
    """A verified square root: ``value`` squares back to ``radicand``."""

    value: XSeries
    radicand: XSeries


class RadicalTriple(NamedTuple):
    """The three nested radicals of the diagonally convex series.

    ``kernel`` is the square root of the quadratic-factor discriminant,
    ``base`` the innermost free-standing radical, and ``nested`` the
    outer radical whose radicand contains ``base``.
    """

    kernel: Radical
    base: Radical
    nested: Radical


class KernelFactors(NamedTuple):
    """Kernel of the functional equation, split into its three factors.

    ``plain`` involves only x and therefore contributes no roots in z;
    ``quadratic`` and ``quartic`` are polynomials in z with power-series
    coefficients, given as ascending coefficient lists.
    """

    plain: XSeries
    quadratic: "tuple[XSeries, ...]"
    quartic: "tuple[XSeries, ...]"


class KernelRoots(NamedTuple):
    """The kernel roots that are power series in x.

    ``quadratic`` is the series root of the quadratic factor;
    ``quartic_plus`` and ``quartic_minus`` are the two series roots of
    the quartic factor, labelled by the sign in front of the auxiliary
    radical.  ``aux_plus`` and ``aux_minus`` expose that auxiliary pair:
    the quartic factor splits over them into two quadratics in z, and
    each series root solves x^4 z^2 - (aux/2) z + 1 = 0.
    """

    quadratic: XSeries
    quartic_plus: XSeries
    quartic_minus: XSeries
    aux_plus: XSeries
    aux_minus: XSeries


class RatioRow(NamedTuple):
    """One row of the count comparison table."""

    perimeter: int
    column_convex: int
    diagonally_convex: int
    ratio: str


CC_VARIANTS = ("ratio", "nested", "split")


def _square_free_split(m):
    """Write a positive integer as outside^2 * core with core square free."""
    outside = 1
    core = 1
    k = 2
    while k * k <= m:
        if m % k == 0:
            e = 0
            while m % k == 0:
                m //= k
                e += 1
            outside *= k ** (e // 2)
            if e % 2:
                core *= k
        k += 1
    return outside, core * m


def _exact_sqrt(value):
    """Exact positive square root of a positive rational.

    Returns a Fraction when the value is a perfect square, otherwise a
    QuadExt over the square-free core of numerator times denominator.
    """
    value = Fraction(value)
    if value <= 0:
        raise ValueError("square root needs a positive value")
    outside, core = _square_free_split(value.numerator * value.denominator)
    if core == 1:
        return Fraction(outside, value.denominator)
    return QuadExt(0, Fraction(outside, value.denominator), core)


def _quad_parts(series):
    """Split a series over a quadratic extension into (rational, surd)."""
    plain = []
    surd = []
    for c in series.coeff_list():
        if isinstance(c, QuadExt):
            plain.append(c.a)
            surd.append(c.b)
        else:
            plain.append(Fraction(c))
            surd.append(Fraction(0))
    return XSeries(plain, series.order), XSeries(surd, series.order)


def radicals(d, order):
    """The three nested radicals at diagonal-marker sample ``d``.

    Each returned pair carries the square root and the polynomial it
    squares back to; for the outer radical the radicand itself contains
    the middle one.  All three constant terms are rational squares, so
    the values are honest rational series.
    """
    d = Fraction(d)
    kernel_radicand = XSeries.from_terms(
        {0: 1, 4: -2, 6: -2 * d, 8: 1, 10: -2 * d, 12: d * d}, order
    )
    base_radicand = XSeries.from_terms(
        {
            0: 1,
            2: -(4 + 4 * d),
            4: 6 + 8 * d,
            6: -(4 + 2 * d),
            8: 1 - 4 * d,
            10: 2 * d,
            12: d * d,
        },
        order,
    )
    base_value = base_radicand.sqrt()
    nested_radicand = (
        XSeries.from_terms(
            {
                0: 2 + 4 * d + d * d,
                2: -(4 * d + 4 * d * d),
                4: -4 + 6 * d * d,
                8: 2 + 4 * d - 7 * d * d,
                10: 4 * d + 4 * d * d,
                12: 2 * d * d,
            },
            order,
        )
        + XSeries.from_terms({0: 2, 2: 4, 4: 2, 6: 2 * d}, order) * base_value
    )
    return RadicalTriple(
        Radical(kernel_radicand.sqrt(), kernel_radicand),
        Radical(base_value, base_radicand),
        Radical(nested_radicand.sqrt(), nested_radicand),
    )


def kernel_factors(d, order):
    """The factored kernel at diagonal-marker sample ``d``.

    The full kernel is the product of the three returned factors.  The
    z-coefficient lists are ascending; the quartic is palindromic up to
    powers of x^4, which is what makes its series roots come in the two
    aux-labelled pairs produced by :func:`roots`.
    """
    d = Fraction(d)
    e = d * d
    plain = XSeries.from_terms(
        {
            22: e,
            20: 1,
            18: -4 * e,
            16: -(2 * e + 5),
            14: e * e * e + 2 * e * e + 6 * e,
            12: e * e + 6 * e + 10,
            10: -(4 * e * e + 4 * e),
            8: -(e * e + 6 * e + 10),
            6: 2 * e * e + e,
            4: 2 * e + 5,
            0: -1,
        },
        order,
    )
    quadratic = (
        XSeries.one(order),
        XSeries.from_terms({6: e, 4: -1, 0: -1}, order),
        XSeries.from_terms({4: 1}, order),
    )
    quartic = (
        XSeries.one(order),
        XSeries.from_terms({6: -2 * e, 4: -(e + 2), 2: 2 * e, 0: -(e + 2)}, order),
        XSeries.from_terms(
            {12: e * e, 10: 2 * e, 8: 1, 4: 4 * e + 4, 2: -2 * e, 0: 1}, order
        ),
        XSeries.from_terms({10: -2 * e, 8: -(e + 2), 6: 2 * e, 4: -(e + 2)}, order),
        XSeries.from_terms({8: 1}, order),
    )
    return KernelFactors(plain, quadratic, quartic)


def kernel_sextic(d, order):
    """The expanded kernel: ascending z-coefficients of plain*quad*quartic.

    For integer samples ``d`` every coefficient must be an integer, a
    cheap transcription check on all three factors at once.
    """
    factors = kernel_factors(d, order)
    zero = XSeries.zero(order)
    product = [zero] * (len(factors.quadratic) + len(factors.quartic) - 1)
    for i, a in enumerate(factors.quadratic):
        for j, b in enumerate(factors.quartic):
            product[i + j] = product[i + j] + a * b
    return [factors.plain * c for c in product]


def roots(d, order):
    """Power-series roots of the kernel factors at sample ``d``.

    The quadratic factor has exactly one root that is a power series
    (the other has a pole at x = 0); the quartic has two, one for each
    sign of the auxiliary radical.  Every root is computed from its
    quadratic formula at four extra orders of precision, and the leading
    cancellation down to x^4 is enforced, so a transcription error
    surfaces as a ValuationError instead of a silently wrong series.
    """
    d = Fraction(d)
    if d == 0:
        raise ValueError("the diagonal-marker sample must be nonzero")
    e = d * d
    high = order + 4
    discriminant_root = radicals(e, high).kernel.value
    numerator = XSeries.from_terms({0: 1, 4: 1, 6: -e}, high) - discriminant_root
    quadratic_root = numerator.shift_down(4) * Fraction(1, 2)

    inner = XSeries.from_terms({0: 1, 2: 1}, high) * XSeries.from_terms(
        {0: 4 + e, 2: 4 - 3 * e, 4: 4 * e}, high
    )
    w = inner.sqrt(_exact_sqrt(4 + e))
    shape = XSeries.from_terms({0: 2 + e, 2: -2 * e, 4: 2 + e, 6: 2 * e}, high)
    swing = XSeries.from_terms({0: d, 2: -d}, high) * w
    quartic_roots = []
    aux_pair = []
    for aux in (shape + swing, shape - swing):
        radicand = aux * aux - XSeries.from_terms({4: 16}, high)
        s = radicand.sqrt(aux.coefficient(0))
        quartic_roots.append((aux - s).shift_down(4) * Fraction(1, 4))
        aux_pair.append(aux.truncate(order))
    return KernelRoots(
        quadratic_root, quartic_roots[0], quartic_roots[1], aux_pair[0], aux_pair[1]
    )


def _eval_z_poly(coeffs, z):
    """Evaluate an ascending z-coefficient list at a series value."""
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * z + c
    return acc


def kernel_root_residuals(d, order):
    """Kernel factors evaluated at their series roots.

    Returns the quadratic factor at its root and the quartic factor at
    both of its series roots; all three must be the zero series through
    the requested order.
    """
    factors = kernel_factors(d, order)
    r = roots(d, order)
    return (
        _eval_z_poly(factors.quadratic, r.quadratic),
        _eval_z_poly(factors.quartic, r.quartic_plus),
        _eval_z_poly(factors.quartic, r.quartic_minus),
    )


def quartic_pair_remainder(d, order):
    """Remainder of the quartic factor modulo its series-root quadratic.

    Dividing the quartic factor by the monic quadratic whose roots are
    the two power-series roots must leave a zero remainder; the
    complementary roots live in the quotient, multiplied by x^8 so that
    their poles never appear.  Returns the two remainder coefficients
    (z and constant), both zero on a faithful transcription.
    """
    factors = kernel_factors(d, order)
    r = roots(d, order)
    root_sum = r.quartic_plus + r.quartic_minus
    root_product = r.quartic_plus * r.quartic_minus
    work = list(reversed(factors.quartic))
    for i in range(3):
        lead = work[i]
        work[i + 1] = work[i + 1] + lead * root_sum
        work[i + 2] = work[i + 2] - lead * root_product
    return work[3], work[4]


def symmetric_identity_residuals(d, order):
    """Residuals of the symmetric-function identities for the quartic roots.

    The sum of the two series roots, and the sum of their reciprocals,
    are each expressible through the outer nested radical taken at the
    squared sample; the irrational parts of the individual roots cancel
    in both combinations.  Returns the two residual series, zero when
    the identities hold through the requested order.
    """
    d = Fraction(d)
    e = d * d
    r = roots(d, order)
    nested = radicals(e, order + 4).nested.value
    shape = XSeries.from_terms(
        {0: 2 + e, 2: -2 * e, 4: 2 + e, 6: 2 * e}, order + 4
    )
    first = (r.quartic_plus + r.quartic_minus) - (shape - nested).shift_down(
        4
    ) * Fraction(1, 2)
    one = XSeries.one(order)
    reciprocal_sum = one.divide(r.quartic_plus) + one.divide(r.quartic_minus)
    second = reciprocal_sum - (shape + nested) * Fraction(1, 2)
    return first, second


def _cc_frame(r, order):
    """Shared pieces for the column-convex variants: y^2 and 1 - y^2."""
    y_squared = XSeries.from_terms({2: r * r}, order)
    return y_squared, XSeries.one(order) - y_squared


def _cc_ratio(r, order):
    y_squared, co = _cc_frame(r, order)
    palindrome_a = XSeries.from_terms({0: 42, 2: -10}, order)
    ell = (
        palindrome_a
        + XSeries.from_terms({0: -84, 2: 28}, order) * y_squared
        + palindrome_a * y_squared * y_squared
    )
    palindrome_d = XSeries.from_terms({0: 18, 2: -2}, order)
    delta = (
        palindrome_d
        + XSeries.from_terms({0: -36, 2: 5}, order) * y_squared
        + palindrome_d * y_squared * y_squared
    )
    palindrome_r = XSeries.from_terms({0: 1, 2: -2, 4: 1}, order)
    inner = (
        palindrome_r
        + XSeries.from_terms({0: -2, 2: -12, 4: -2}, order) * y_squared
        + palindrome_r * y_squared * y_squared
    )
    middle = inner.sqrt()
    outer = (
        XSeries.from_terms({0: 2, 2: 2}, order) * co * co + (co * middle) * 2
    ).sqrt()
    numerator = (
        ell
        - (co * middle) * 6
        - XSeries.from_terms({0: 17, 2: -1}, order) * co * outer
        - middle * outer
    )
    return (co * numerator).divide(delta * 8)


def _cc_nested(r, order):
    y_squared, co = _cc_frame(r, order)
    corner = XSeries.from_terms({4: 16 * r * r}, order).divide(co * co)
    inner = (XSeries.from_terms({0: 1, 2: -2, 4: 1}, order) - corner).sqrt()
    root_two = QuadExt(0, 1, 2)
    outer = (XSeries.from_terms({0: 1, 2: 1}, order) + inner).sqrt(root_two)
    fraction_part = (XSeries.one(order) * (2 * root_two)).divide(
        XSeries.one(order) * (3 * root_two) - outer
    )
    full = co * (XSeries.one(order) - fraction_part)
    plain, surd = _quad_parts(full)
    if not surd.is_zero():
        raise ArithmeticError(
            "irrational part of the nested column-convex form did not cancel"
        )
    return plain


def _cc_split(r, order):
    y_squared, co = _cc_frame(r, order)
    corner = XSeries.from_terms({3: 4 * r * r}, order).divide(co)
    left = (XSeries.from_terms({0: 1, 1: -2, 2: 1}, order) - corner).sqrt()
    right = (XSeries.from_terms({0: 1, 1: 2, 2: 1}, order) + corner).sqrt()
    fraction_part = XSeries.from_terms({0: 4}, order).divide(
        XSeries.from_terms({0: 6}, order) - left - right
    )
    return co * (XSeries.one(order) - fraction_part)


def column_convex_gf(variant, r, order):
    """Closed-form perimeter series for column-convex polyominoes.

    ``r`` is the vertical-to-horizontal marker ratio: each vertical edge
    pair carries weight r, so at r = 1 the coefficient of x^n counts
    shapes of total perimeter n.  The three variants are equal as formal
    series and differ only in how the radicals are arranged:

    * ``"ratio"``   - one rational prefactor and two stacked radicals;
    * ``"nested"``  - one radical inside another, evaluated over the
      quadratic extension by the square root of two, whose irrational
      part must cancel (checked);
    * ``"split"``   - two independent radicals and rational arithmetic
      only, the cheapest shape for large orders.
    """
    r = Fraction(r)
    if variant == "ratio":
        return _cc_ratio(r, order)
    if variant == "nested":
        return _cc_nested(r, order)
    if variant == "split":
        return _cc_split(r, order)
    raise ValueError("unknown column-convex variant %r" % (variant,))


def column_convex_perimeter_counts(max_perimeter, variant="split"):
    """Column-convex counts by perimeter from the closed form.

    Extracts integer counts from :func:`column_convex_gf` at r = 1 and
    refuses fractional, negative, or odd-exponent coefficients, all of
    which would signal a transcription error.
    """
    series = column_convex_gf(variant, 1, max_perimeter)
    counts = {}
    for k, c in enumerate(series.coeff_list()):
        if c == 0:
            continue
        if k % 2 or k < 4 or c.denominator != 1 or c < 0:
            raise ArithmeticError(
                "impossible count %s at x^%d in the column-convex series" % (c, k)
            )
        counts[k] = int(c)
    return counts


def ternary_count(k):
    """Number of directed shapes with k diagonals, in closed form.

    The count is binomial(3k+1, k)/(3k+1); the division is checked to be
    exact.
    """
    if k < 0:
        raise ValueError("diagonal count must be nonnegative")
    quotient, remainder = divmod(math.comb(3 * k + 1, k), 3 * k + 1)
    if remainder:
        raise ArithmeticError("ternary formula failed to divide at k=%d" % (k,))
    return quotient


def directed_series(order):
    """Series counting directed shapes by diagonals, via its fixed point.

    The series E satisfies E = d(E+1)^3 with d marking diagonals; plain
    iteration from zero gains one correct coefficient per pass and is
    run to an exact fixed point.  Coefficient k equals
    :func:`ternary_count` (k) for every k >= 1.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    marker = XSeries.from_terms({1: 1}, order)
    one = XSeries.one(order)
    current = XSeries.zero(order)
    for _ in range(order + 2):
        bump = current + one
        nxt = marker * bump * bump * bump
        if nxt == current:
            return current
        current = nxt
    raise NonConvergenceError("directed fixed point failed to stabilize")


def round_half_even(value, places):
    """Render an exact rational as a decimal string, ties to even.

    This matches the rounding a bank would use: 1.00005 at four places
    becomes 1.0000 while 1.00015 becomes 1.0002.
    """
    value = Fraction(value)
    sign = "-" if value < 0 else ""
    value = abs(value)
    scale = 10**places
    units, remainder = divmod(value.numerator * scale, value.denominator)
    doubled = 2 * remainder
    if doubled > value.denominator or (doubled == value.denominator and units % 2):
        units += 1
    whole, frac = divmod(units, scale)
    if places == 0:
        return "%s%d" % (sign, whole)
    return "%s%d.%0*d" % (sign, whole, places, frac)


def ratio_table(max_perimeter):
    """Rows comparing column-convex to diagonally convex counts.

    For every even perimeter from 4 to ``max_perimeter`` the row carries
    both exact counts and their ratio rendered to four decimal places
    with ties to even.
    """
    if max_perimeter < 4 or max_perimeter % 2:
        raise ValueError("perimeter bound must be an even number, at least 4")
    straight = perimeter_counts(max_perimeter)
    convex = column_convex_perimeter_counts(max_perimeter)
    rows = []
    for n in range(4, max_perimeter + 1, 2):
        ratio = Fraction(convex[n], straight[n])
        rows.append(RatioRow(n, convex[n], straight[n], round_half_even(ratio, 4)))
    return rows
