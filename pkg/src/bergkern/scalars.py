"""Scalar helpers shared by the jet and operator layers.

Coefficients are ordinarily Python ``complex``.  For golden-test generation
the whole algebraic pipeline can instead run on :class:`QC`, a complex number
with exact ``Fraction`` real and imaginary parts.  The helpers below dispatch
on the coefficient type so the jet/operator code stays generic.
"""

from __future__ import annotations

from fractions import Fraction


class QC:
    """Complex number with exact rational real/imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, QC):
            return other
        if isinstance(other, (int, Fraction)):
            return QC(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QC(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return QC(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QC(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QC(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = o.re * o.re + o.im * o.im
        return QC((self.re * o.re + self.im * o.im) / d, (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    # -- structure --------------------------------------------------------
    def conjugate(self):
        return QC(self.re, -self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __abs__(self):
        return abs(complex(self))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"QC({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re} {sign} {abs(self.im)}*i"


def conj(x):
    """Complex conjugate, working for complex, float and QC alike."""
    if isinstance(x, QC):
        return x.conjugate()
    if isinstance(x, (int, float, Fraction)):
        return x
    return x.conjugate()


def times_i(x):
    """Multiply by the imaginary unit without leaving the coefficient field."""
    if isinstance(x, QC):
        return QC(-x.im, x.re)
    return 1j * x


def re_part(x):
    if isinstance(x, QC):
        return x.re
    if isinstance(x, (int, float, Fraction)):
        return x
    return x.real


def im_part(x):
    if isinstance(x, QC):
        return x.im
    if isinstance(x, (int, float, Fraction)):
        return 0 * x
    return x.imag


def abs2(x):
    """|x|^2 staying in the coefficient field (Fraction for QC)."""
    if isinstance(x, QC):
        return x.re * x.re + x.im * x.im
    if isinstance(x, (int, float, Fraction)):
        return x * x
    return (x * x.conjugate()).real


def to_complex(x):
    return complex(x)


def is_exact(x) -> bool:
    return isinstance(x, (QC, Fraction)) or isinstance(x, int)


def abs_val(x):
    """|x| for the real scalars lambda_j; exact for Fraction input."""
    if isinstance(x, Fraction):
        return -x if x < 0 else x
    return abs(x)


def solve_exact_linear(rows, rhs):
    """Solve an (over)determined consistent linear system over Fraction.

    ``rows`` is a list of lists of Fractions, ``rhs`` a list of Fractions.
    Returns the unique solution; raises ValueError when the system is
    rank-deficient or inconsistent.
    """
    m = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    nrows = len(m)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        inv = pr[c]
        m[r] = [v / inv for v in pr]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    if len(pivots) < ncols:
        missing = sorted(set(range(ncols)) - set(pivots))
        raise ValueError(f"rank-deficient exact system, free columns {missing}")
    for i in range(r, nrows):
        if m[i][ncols] != 0:
            raise ValueError("inconsistent exact linear system")
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = m[i][ncols]
    return x
