"""Exact Gaussian-rational matrices, characteristic polynomials and a Jacobi
eigensolver for real symmetric float matrices.

Exact matrices keep integer numerator arrays (real and imaginary part) over
one shared positive denominator.  That keeps products in plain Python
integers, which is far cheaper than element-wise Fraction arithmetic, while
individual entries are still handed out as :class:`GaussianRational`.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import ConvergenceFailure, DimensionMismatch, NotSquare, NotSymmetric

FloatMatrix = np.ndarray


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact rational: {x!r}")


class GaussianRational:
    """Immutable complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            re, im = re.re, re.im + _frac(im)
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("float complex values are not exact")
        return cls(x)

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Inverse of ``str``: accepts ``"3"``, ``"-1/2"``, ``"2i"``, ``"1/2-3/4i"``."""
        s = text.replace(" ", "")
        if not s.endswith("i"):
            return cls(Fraction(s))
        body = s[:-1]
        # split real and imaginary parts at the last sign that is not leading
        cut = max(body.rfind("+"), body.rfind("-"))
        if cut <= 0:
            re_s, im_s = "0", body
        else:
            re_s, im_s = body[:cut], body[cut:]
        if im_s in ("", "+"):
            im_s = "1"
        elif im_s == "-":
            im_s = "-1"
        return cls(Fraction(re_s), Fraction(im_s))

    # arithmetic
    def __add__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero")
        return GaussianRational((self.re * o.re + self.im * o.im) / d, (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __float__(self):
        if self.im != 0:
            raise TypeError("complex value has no float conversion")
        return float(self.re)

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        im = self.im
        if im == 1:
            ims = "i"
        elif im == -1:
            ims = "-i"
        else:
            ims = f"{im}i"
        if self.re == 0:
            return ims
        return f"{self.re}{'' if ims.startswith('-') else '+'}{ims}"

    def __repr__(self):
        return f"GaussianRational({self})"


def _coerce_or_none(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction, np.integer)):
        return GaussianRational(x)
    return None


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I_UNIT = GaussianRational(0, 1)


def _int_obj(arr: np.ndarray) -> np.ndarray:
    """Coerce an integer numpy array to an object array of Python ints."""
    if arr.dtype == object:
        return arr
    return np.array(arr.tolist(), dtype=object).reshape(arr.shape)


class ExactMatrix:
    """Dense immutable matrix over the Gaussian rationals.

    ``ExactMatrix([[1, 2], [3, 4]])`` accepts ints, Fractions, strings such as
    ``"1/2"`` and :class:`GaussianRational` entries.
    """

    __slots__ = ("rows", "cols", "_re", "_im", "_den", "_hash")

    def __init__(self, data: Iterable[Iterable]):
        rows = [[GaussianRational.coerce(x) if not isinstance(x, (int, np.integer)) else x for x in r] for r in data]
        r = len(rows)
        c = len(rows[0]) if r else 0
        if r == 0 or c == 0:
            raise DimensionMismatch("empty matrices are not supported")
        if any(len(row) != c for row in rows):
            raise DimensionMismatch("ragged rows")
        den = 1
        for row in rows:
            for x in row:
                if isinstance(x, GaussianRational):
                    den = math.lcm(den, x.re.denominator, x.im.denominator)
        re = np.empty((r, c), dtype=object)
        im = np.empty((r, c), dtype=object)
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                if isinstance(x, GaussianRational):
                    re[i, j] = int(x.re * den)
                    im[i, j] = int(x.im * den)
                else:
                    re[i, j] = int(x) * den
                    im[i, j] = 0
        self._set(re, im, den)

    # construction helpers
    def _set(self, re, im, den):
        if den < 0:
            re, den = -re, -den
            if im is not None:
                im = -im
        if im is not None and not any(im.flat):
            im = None
        if den != 1:
            g = math.gcd(den, *re.flat) if im is None else math.gcd(den, *re.flat, *im.flat)
            if g > 1:
                re = re // g
                if im is not None:
                    im = im // g
                den //= g
        object.__setattr__(self, "rows", re.shape[0])
        object.__setattr__(self, "cols", re.shape[1])
        object.__setattr__(self, "_re", re)
        object.__setattr__(self, "_im", im)
        object.__setattr__(self, "_den", den)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def _raw(cls, re: np.ndarray, im, den: int) -> "ExactMatrix":
        if re.ndim != 2 or re.shape[0] == 0 or re.shape[1] == 0:
            raise DimensionMismatch("empty matrices are not supported")
        m = cls.__new__(cls)
        m._set(re, im, int(den))
        return m

    @classmethod
    def from_int_array(cls, arr) -> "ExactMatrix":
        a = np.asarray(arr)
        if a.ndim != 2:
            raise DimensionMismatch("expected a 2-d array")
        return cls._raw(_int_obj(a.astype(np.int64) if a.dtype != object else a), None, 1)

    @classmethod
    def zeros(cls, r: int, c: int) -> "ExactMatrix":
        return cls._raw(np.zeros((r, c), dtype=np.int64).astype(object), None, 1)

    @classmethod
    def ones(cls, r: int, c: int) -> "ExactMatrix":
        return cls._raw(np.ones((r, c), dtype=np.int64).astype(object), None, 1)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls._raw(np.eye(n, dtype=np.int64).astype(object), None, 1)

    @classmethod
    def scalar(cls, c) -> "ExactMatrix":
        return cls([[GaussianRational.coerce(c)]])

    # inspection
    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def denominator(self) -> int:
        return self._den

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_real(self) -> bool:
        return self._im is None

    def is_integer(self) -> bool:
        return self._im is None and self._den == 1

    def numerators(self):
        """(real numerators, imaginary numerators or None, denominator)."""
        return self._re, self._im, self._den

    def entry(self, i: int, j: int) -> GaussianRational:
        re = Fraction(self._re[i, j], self._den)
        im = Fraction(self._im[i, j], self._den) if self._im is not None else 0
        return GaussianRational(re, im)

    @property
    def entries(self) -> tuple:
        return tuple(self.entry(i, j) for i in range(self.rows) for j in range(self.cols))

    def to_lists(self) -> list:
        return [[self.entry(i, j) for j in range(self.cols)] for i in range(self.rows)]

    def scalar_value(self) -> GaussianRational:
        if self.shape != (1, 1):
            raise DimensionMismatch(f"not a scalar: shape {self.shape}")
        return self.entry(0, 0)

    def to_numpy(self) -> np.ndarray:
        """Float (or complex) numpy copy."""
        d = self._den
        re = np.array([[float(Fraction(x, d)) for x in row] for row in self._re], dtype=float)
        if self._im is None:
            return re
        im = np.array([[float(Fraction(x, d)) for x in row] for row in self._im], dtype=float)
        return re + 1j * im

    def to_int_array(self) -> np.ndarray:
        if not self.is_integer():
            raise ValueError("matrix is not integral")
        return self._re.copy()

    # equality and hashing
    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.shape != other.shape or self._den != other._den:
            return False
        if (self._im is None) != (other._im is None):
            return False
        if not np.array_equal(self._re, other._re):
            return False
        return self._im is None or np.array_equal(self._im, other._im)

    def __hash__(self):
        if self._hash is None:
            h = hash((self.shape, self._den, tuple(self._re.flat), None if self._im is None else tuple(self._im.flat)))
            object.__setattr__(self, "_hash", h)
        return self._hash

    # arithmetic
    def _align(self, other: "ExactMatrix"):
        l = math.lcm(self._den, other._den)
        fa, fb = l // self._den, l // other._den
        are = self._re * fa if fa != 1 else self._re
        bre = other._re * fb if fb != 1 else other._re
        aim = None if self._im is None else (self._im * fa if fa != 1 else self._im)
        bim = None if other._im is None else (other._im * fb if fb != 1 else other._im)
        return are, aim, bre, bim, l

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add shapes {self.shape} and {other.shape}")
        are, aim, bre, bim, l = self._align(other)
        im = _add_opt(aim, bim)
        return ExactMatrix._raw(are + bre, im, l)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return mat_mul(self, other)

    def scale(self, c) -> "ExactMatrix":
        c = GaussianRational.coerce(c)
        d = math.lcm(c.re.denominator, c.im.denominator)
        x, y = int(c.re * d), int(c.im * d)
        re, im = self._re, self._im
        if y == 0:
            nre = re * x
            nim = None if im is None else im * x
        else:
            nre = re * x if im is None else re * x - im * y
            nim = re * y if im is None else re * y + im * x
        return ExactMatrix._raw(nre, nim, self._den * d)

    def hadamard(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"pointwise product of shapes {self.shape} and {other.shape}")
        ar, ai, br, bi = self._re, self._im, other._re, other._im
        re = ar * br
        if ai is not None and bi is not None:
            re = re - ai * bi
        im = _add_opt(None if bi is None else ar * bi, None if ai is None else ai * br)
        return ExactMatrix._raw(re, im, self._den * other._den)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix._raw(self._re.T.copy(), None if self._im is None else self._im.T.copy(), self._den)

    def conj(self) -> "ExactMatrix":
        return ExactMatrix._raw(self._re, None if self._im is None else -self._im, self._den)

    def conj_transpose(self) -> "ExactMatrix":
        return ExactMatrix._raw(self._re.T.copy(), None if self._im is None else (-self._im).T.copy(), self._den)

    def trace(self) -> GaussianRational:
        if not self.is_square():
            raise NotSquare(f"trace of non-square {self.shape}")
        re = Fraction(sum(self._re[i, i] for i in range(self.rows)), self._den)
        im = Fraction(sum(self._im[i, i] for i in range(self.rows)), self._den) if self._im is not None else 0
        return GaussianRational(re, im)

    def sum_entries(self) -> GaussianRational:
        re = Fraction(sum(self._re.flat), self._den)
        im = Fraction(sum(self._im.flat), self._den) if self._im is not None else 0
        return GaussianRational(re, im)

    def map(self, fn) -> "ExactMatrix":
        """Entrywise map with a function GaussianRational -> GaussianRational."""
        return ExactMatrix([[fn(self.entry(i, j)) for j in range(self.cols)] for i in range(self.rows)])

    def column(self, j: int) -> "ExactMatrix":
        return ExactMatrix._raw(self._re[:, j:j + 1].copy(), None if self._im is None else self._im[:, j:j + 1].copy(), self._den)

    def diag_matrix(self) -> "ExactMatrix":
        """diag(v) for a column vector v."""
        if self.cols != 1:
            raise DimensionMismatch(f"diag expects a column vector, got {self.shape}")
        n = self.rows
        re = np.zeros((n, n), dtype=np.int64).astype(object)
        im = None
        for i in range(n):
            re[i, i] = self._re[i, 0]
        if self._im is not None:
            im = np.zeros((n, n), dtype=np.int64).astype(object)
            for i in range(n):
                im[i, i] = self._im[i, 0]
        return ExactMatrix._raw(re, im, self._den)

    def __repr__(self):
        rows = ", ".join("[" + ", ".join(str(self.entry(i, j)) for j in range(self.cols)) + "]" for i in range(self.rows))
        return f"ExactMatrix([{rows}])"

    def __str__(self):
        cells = [[str(self.entry(i, j)) for j in range(self.cols)] for i in range(self.rows)]
        w = max(len(c) for row in cells for c in row)
        return "\n".join(" ".join(c.rjust(w) for c in row) for row in cells)


def _add_opt(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a + b


def mat_mul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    ar, ai, br, bi = a._re, a._im, b._re, b._im
    re = ar.dot(br)
    if ai is not None and bi is not None:
        re = re - ai.dot(bi)
    im = _add_opt(None if bi is None else ar.dot(bi), None if ai is None else ai.dot(br))
    return ExactMatrix._raw(re, im, a._den * b._den)


def conj_transpose(a: ExactMatrix) -> ExactMatrix:
    return a.conj_transpose()


def trace(a: ExactMatrix) -> GaussianRational:
    return a.trace()


def matrix_power(a: ExactMatrix, k: int) -> ExactMatrix:
    if not a.is_square():
        raise NotSquare(f"power of non-square {a.shape}")
    out = ExactMatrix.identity(a.rows)
    base = a
    while k:
        if k & 1:
            out = out @ base
        base = base @ base
        k >>= 1
    return out


# --------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Polynomial with exact coefficients, ascending by degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = [GaussianRational.coerce(c) for c in coeffs]
        while len(cs) > 1 and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs) if cs else (ZERO,))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @property
    def degree(self) -> int:
        if len(self.coeffs) == 1 and self.coeffs[0].is_zero():
            return -1
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            cs = str(c)
            if not c.is_real():
                cs = f"({cs})"
            if mono and cs == "1":
                cs = ""
            elif mono and cs == "-1":
                cs = "-"
            terms.append(f"{cs}{mono}")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out

    def __repr__(self):
        return f"Polynomial({self})"


# integer-coefficient polynomial helpers as plain lists (ascending)

def _pmul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _psub(p, q):
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)]


def _ptrim(p):
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _pdiv_monic(p, m):
    """Exact quotient p / m for monic m; the remainder must vanish."""
    p = _ptrim(list(p))
    m = _ptrim(list(m))
    dm = len(m) - 1
    if len(p) - 1 < dm:
        if any(x != 0 for x in p):
            raise ArithmeticError("inexact polynomial division")
        return [0]
    q = [0] * (len(p) - dm)
    for k in range(len(p) - 1, dm - 1, -1):
        c = p[k]
        if c != 0:
            q[k - dm] = c
            for j in range(dm + 1):
                p[k - dm + j] -= c * m[j]
    if any(x != 0 for x in p[:dm]):
        raise ArithmeticError("inexact polynomial division")
    return q


def _integral_entries(a: ExactMatrix):
    """Numerator entries as ints or GaussianRational integers, plus denominator."""
    re, im, den = a.numerators()
    n = a.rows
    if im is None:
        return [[re[i, j] for j in range(n)] for i in range(n)], den
    return [[GaussianRational(re[i, j], im[i, j]) for j in range(n)] for i in range(n)], den


def char_poly(a: ExactMatrix) -> Polynomial:
    """det(xI - A) by fraction-free Bareiss elimination over the polynomial ring.

    The k-th pivot is a leading principal minor of xI - A, hence monic and
    never zero, so no pivoting is needed and all divisions are by monic
    polynomials.
    """
    if not a.is_square():
        raise NotSquare(f"characteristic polynomial of non-square {a.shape}")
    n = a.rows
    ents, den = _integral_entries(a)
    zero = ents[0][0] * 0
    one = zero + 1
    # entries of d*x*I - N  as polynomials in y = d*x
    m = [[([-ents[i][j], one] if i == j else [-ents[i][j]]) for j in range(n)] for i in range(n)]
    prev = [one]
    for k in range(n - 1):
        piv = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = _psub(_pmul(piv, m[i][j]), _pmul(m[i][k], m[k][j]))
                m[i][j] = _pdiv_monic(num, prev)
        prev = piv
    p = _ptrim(list(m[n - 1][n - 1]))
    # p(y) = det(yI - N) with y = d*x; det(xI - A) = d^-n p(d x)
    coeffs = []
    for k, c in enumerate(p):
        coeffs.append(GaussianRational.coerce(c) * GaussianRational(Fraction(den ** k, den ** n)))
    return Polynomial(coeffs)


def char_poly_faddeev(a: ExactMatrix) -> Polynomial:
    """Faddeev-LeVerrier recursion; an independent route to char_poly."""
    if not a.is_square():
        raise NotSquare(f"characteristic polynomial of non-square {a.shape}")
    n = a.rows
    c = [ZERO] * (n + 1)
    c[n] = ONE
    ident = ExactMatrix.identity(n)
    m = ExactMatrix.zeros(n, n)
    for k in range(1, n + 1):
        m = a @ m + ident.scale(c[n - k + 1])
        c[n - k] = -(a @ m).trace() / k
    return Polynomial(c)


def determinant(a: ExactMatrix) -> GaussianRational:
    """Exact determinant by Bareiss elimination with row pivoting."""
    if not a.is_square():
        raise NotSquare(f"determinant of non-square {a.shape}")
    n = a.rows
    m, den = _integral_entries(a)
    m = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return ZERO
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        piv = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = piv * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = _exact_div(num, prev)
        prev = piv
    return GaussianRational.coerce(m[n - 1][n - 1]) * sign / GaussianRational(den) ** n


def _exact_div(num, d):
    if isinstance(num, int) and isinstance(d, int):
        q, r = divmod(num, d)
        if r:
            raise ArithmeticError("inexact Bareiss division")
        return q
    return GaussianRational.coerce(num) / GaussianRational.coerce(d)


def _gauss_jordan(a: ExactMatrix):
    """Reduced row echelon form over the Gaussian rationals, returns (rref, pivots)."""
    rows = a.to_lists()
    r, c = a.rows, a.cols
    if a.is_real():
        rows = [[x.re for x in row] for row in rows]
    pivots = []
    pr = 0
    for col in range(c):
        p = next((i for i in range(pr, r) if rows[i][col] != 0), None)
        if p is None:
            continue
        rows[pr], rows[p] = rows[p], rows[pr]
        inv = 1 / rows[pr][col]
        rows[pr] = [x * inv for x in rows[pr]]
        for i in range(r):
            if i != pr and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[pr])]
        pivots.append(col)
        pr += 1
        if pr == r:
            break
    return rows, pivots


def rank(a: ExactMatrix) -> int:
    return len(_gauss_jordan(a)[1])


def inverse(a: ExactMatrix):
    """Exact inverse, or None when singular."""
    if not a.is_square():
        raise NotSquare(f"inverse of non-square {a.shape}")
    n = a.rows
    aug = ExactMatrix([row + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(a.to_lists())])
    rows, pivots = _gauss_jordan(aug)
    if pivots[:n] != list(range(n)):
        return None
    return ExactMatrix([row[n:] for row in rows])


# --------------------------------------------------------------------------
# float path


def eig_sym(a, tol: float = 1e-10, max_sweeps: int = 100):
    """Eigendecomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Returns ``(values, vectors)`` with ascending eigenvalues and orthonormal
    eigenvectors in the columns of ``vectors``.  Raises
    :class:`ConvergenceFailure` if the residual bounds
    ``max|AV - V diag(w)| <= tol * n * max|A|`` and ``max|V^T V - I| <= tol``
    are not met.
    """
    if isinstance(a, ExactMatrix):
        a = a.to_numpy()
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSquare(f"eigendecomposition of non-square {a.shape}")
    if np.iscomplexobj(a):
        if np.abs(a.imag).max(initial=0.0) > 0:
            raise NotSymmetric("complex input; only real symmetric matrices are supported")
        a = a.real
    a = np.array(a, dtype=float)
    if not np.all(np.isfinite(a)):
        raise ValueError("non-finite matrix entries")
    n = a.shape[0]
    scale = float(np.abs(a).max(initial=0.0))
    if np.abs(a - a.T).max(initial=0.0) > tol * max(scale, 1.0):
        raise NotSymmetric("matrix is not symmetric")
    orig = (a + a.T) / 2
    a = orig.copy()
    v = np.eye(n)
    eps = np.finfo(float).eps
    for _ in range(max_sweeps):
        off = np.abs(a - np.diag(np.diag(a))).max(initial=0.0)
        if off <= eps * max(scale, 1e-300):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                colp = a[:, p].copy()
                colq = a[:, q].copy()
                a[:, p] = c * colp - s * colq
                a[:, q] = s * colp + c * colq
                rowp = a[p, :].copy()
                rowq = a[q, :].copy()
                a[p, :] = c * rowp - s * rowq
                a[q, :] = s * rowp + c * rowq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    w = w[order]
    v = v[:, order]
    resid = np.abs(orig @ v - v * w).max(initial=0.0)
    ortho = np.abs(v.T @ v - np.eye(n)).max(initial=0.0)
    if resid > tol * n * max(scale, 1.0) or ortho > tol:
        raise ConvergenceFailure(f"Jacobi did not converge: residual {resid:.3e}, orthogonality {ortho:.3e}")
    return w, v


sym_eigendecomposition = eig_sym
