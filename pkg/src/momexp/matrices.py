"""Scalar backends and dense complex matrix arithmetic.

Two scalar backends coexist:

* exact  -- Gaussian rationals (pairs of ``fractions.Fraction``), so that
  coefficient identities can be tested with no tolerance at all;
* float  -- IEEE-754 binary64 complex numbers (Python ``complex``).

Mixing backends in one operation raises :class:`BackendMismatch`; the only
bridge is the explicit, lossy :meth:`CMatrix.to_float`.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .errors import BackendMismatch, DimensionMismatch, SingularMatrix

EXACT = "exact"
FLOAT = "float"


class GaussianRational:
    """Complex number with arbitrary-precision rational real/imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _coerce(value):
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(value)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pow__(self, p):
        if not isinstance(p, int) or p < 0:
            return NotImplemented
        out = GaussianRational(1)
        base = self
        while p:
            if p & 1:
                out = out * base
            base = base * base
            p >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __abs__(self):
        return math.hypot(float(self.re), float(self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def _coerce_exact(value):
    g = GaussianRational._coerce(value)
    if g is None:
        raise BackendMismatch(f"not an exact scalar: {value!r}")
    return g


def _coerce_float(value):
    if isinstance(value, GaussianRational):
        raise BackendMismatch(
            "exact scalar in a float-backend matrix; convert explicitly"
        )
    return complex(value)


class CMatrix:
    """Immutable dense n x n complex matrix over one scalar backend."""

    __slots__ = ("n", "rows", "backend")

    def __init__(self, rows, backend=None):
        rows = [list(r) for r in rows]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise DimensionMismatch("matrix must be square and nonempty")
        if backend is None:
            has_float = any(
                isinstance(x, (float, complex)) for r in rows for x in r
            )
            has_exact = any(isinstance(x, GaussianRational) for r in rows for x in r)
            if has_float and has_exact:
                raise BackendMismatch("mixed exact and float entries")
            backend = FLOAT if has_float else EXACT
        coerce = _coerce_exact if backend == EXACT else _coerce_float
        object.__setattr__(self, "n", n)
        object.__setattr__(
            self, "rows", tuple(tuple(coerce(x) for x in r) for r in rows)
        )
        object.__setattr__(self, "backend", backend)

    def __setattr__(self, *a):
        raise AttributeError("CMatrix is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def identity(cls, n, backend=EXACT):
        one = GaussianRational(1) if backend == EXACT else 1.0 + 0j
        zero = GaussianRational(0) if backend == EXACT else 0j
        return cls(
            [[one if i == j else zero for j in range(n)] for i in range(n)],
            backend,
        )

    @classmethod
    def zeros(cls, n, backend=EXACT):
        zero = GaussianRational(0) if backend == EXACT else 0j
        return cls([[zero] * n for _ in range(n)], backend)

    @classmethod
    def from_numpy(cls, arr):
        arr = np.asarray(arr, dtype=complex)
        return cls([[complex(x) for x in row] for row in arr], FLOAT)

    def to_numpy(self):
        if self.backend != FLOAT:
            raise BackendMismatch("to_numpy requires the float backend")
        return np.array([[x for x in r] for r in self.rows], dtype=complex)

    def to_float(self):
        """Explicit (lossy for exact) conversion to the float backend."""
        if self.backend == FLOAT:
            return self
        return CMatrix([[complex(x) for x in r] for r in self.rows], FLOAT)

    # -- arithmetic ---------------------------------------------------

    def _check(self, other):
        if not isinstance(other, CMatrix):
            raise TypeError("expected CMatrix")
        if self.n != other.n:
            raise DimensionMismatch(f"{self.n} vs {other.n}")
        if self.backend != other.backend:
            raise BackendMismatch(f"{self.backend} vs {other.backend}")

    def __matmul__(self, other):
        self._check(other)
        n = self.n
        bt = other.rows
        out = []
        for i in range(n):
            ai = self.rows[i]
            row = []
            for j in range(n):
                s = ai[0] * bt[0][j]
                for k in range(1, n):
                    s = s + ai[k] * bt[k][j]
                row.append(s)
            out.append(row)
        return CMatrix(out, self.backend)

    def __add__(self, other):
        self._check(other)
        return CMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
            self.backend,
        )

    def __sub__(self, other):
        self._check(other)
        return CMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
            self.backend,
        )

    def __neg__(self):
        return CMatrix([[-a for a in r] for r in self.rows], self.backend)

    def scale(self, s):
        if self.backend == EXACT:
            s = _coerce_exact(s)
        else:
            s = complex(s)
        return CMatrix([[a * s for a in r] for r in self.rows], self.backend)

    def pow(self, p):
        if not isinstance(p, int) or p < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = CMatrix.identity(self.n, self.backend)
        base = self
        while p:
            if p & 1:
                out = out @ base
            base = base @ base
            p >>= 1
        return out

    def trace(self):
        t = self.rows[0][0]
        for i in range(1, self.n):
            t = t + self.rows[i][i]
        return t

    def row_sum_norm(self):
        """Max row sum of entry moduli; normalized and submultiplicative."""
        return max(sum(abs(x) for x in r) for r in self.rows)

    # -- elimination --------------------------------------------------

    def _eliminate(self, augment):
        """Gaussian elimination on [self | augment]; returns (pivots, rows).

        Exact backend picks the first nonzero pivot; float backend uses
        partial pivoting and rejects pivots below 1e-12 * ||A||.
        """
        n = self.n
        work = [list(self.rows[i]) + list(augment[i]) for i in range(n)]
        width = len(work[0])
        exact = self.backend == EXACT
        threshold = 0.0 if exact else 1e-12 * max(self.row_sum_norm(), 1e-300)
        pivots = []
        for col in range(n):
            if exact:
                pr = next(
                    (r for r in range(col, n) if bool(work[r][col])), None
                )
            else:
                pr = max(range(col, n), key=lambda r: abs(work[r][col]))
                if abs(work[pr][col]) <= threshold:
                    pr = None
            if pr is None:
                raise SingularMatrix("matrix is singular at the working precision")
            work[col], work[pr] = work[pr], work[col]
            piv = work[col][col]
            pivots.append((piv, pr != col))
            inv = 1 / piv if not exact else None
            for j in range(col, width):
                work[col][j] = (
                    work[col][j] / piv if exact else work[col][j] * inv
                )
            for r in range(n):
                if r == col:
                    continue
                f = work[r][col]
                if not bool(f) if exact else f == 0:
                    continue
                for j in range(col, width):
                    work[r][j] = work[r][j] - f * work[col][j]
        return pivots, work

    def inverse(self):
        eye = CMatrix.identity(self.n, self.backend)
        _, work = self._eliminate([list(r) for r in eye.rows])
        n = self.n
        return CMatrix([row[n:] for row in work], self.backend)

    def det(self):
        try:
            pivots, _ = self._eliminate([[] for _ in range(self.n)])
        except SingularMatrix:
            return GaussianRational(0) if self.backend == EXACT else 0j
        d = GaussianRational(1) if self.backend == EXACT else 1 + 0j
        for piv, swapped in pivots:
            d = d * piv
            if swapped:
                d = -d
        return d

    # -- misc ---------------------------------------------------------

    def is_zero(self):
        return all(not bool(x) if self.backend == EXACT else x == 0
                   for r in self.rows for x in r)

    def __eq__(self, other):
        if not isinstance(other, CMatrix):
            return NotImplemented
        return (
            self.n == other.n
            and self.backend == other.backend
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.n, self.backend, self.rows))

    def __repr__(self):
        return f"CMatrix({[list(r) for r in self.rows]!r}, backend={self.backend!r})"


# module-level operation names, matching the rest of the package's vocabulary

def mat_mul(a, b):
    return a @ b


def mat_pow(a, p):
    return a.pow(p)


def row_sum_norm(a):
    return a.row_sum_norm()


def mat_inverse(a):
    return a.inverse()


# -- vectors ----------------------------------------------------------
# Vectors are plain tuples of scalars from one backend.

def mat_vec(a, v):
    if len(v) != a.n:
        raise DimensionMismatch(f"matrix {a.n} vs vector {len(v)}")
    return tuple(
        sum((row[k] * v[k] for k in range(1, a.n)), row[0] * v[0])
        for row in a.rows
    )


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(v, s):
    return tuple(a * s for a in v)


def vec_norm(v):
    return max(abs(x) for x in v) if v else 0.0


# -- JSON wire format --------------------------------------------------
# {"n": int, "entries": [[[re, im], ...], ...]}; re/im are JSON numbers for
# the float backend or "p/q" strings for the exact backend.

def _part_to_json(x):
    return str(x) if isinstance(x, Fraction) else x


def scalar_to_json(x):
    if isinstance(x, GaussianRational):
        return [_part_to_json(x.re), _part_to_json(x.im)]
    x = complex(x)
    return [x.real, x.imag]


def scalar_from_json(pair):
    if not isinstance(pair, (list, tuple)) or len(pair) != 2:
        raise ValueError(f"scalar entry must be a [re, im] pair, got {pair!r}")
    re, im = pair
    if isinstance(re, str) or isinstance(im, str):
        return GaussianRational(Fraction(str(re)), Fraction(str(im)))
    return complex(float(re), float(im))


def matrix_to_json(m):
    return {"n": m.n, "entries": [[scalar_to_json(x) for x in r] for r in m.rows]}


def matrix_from_json(obj):
    if not isinstance(obj, dict) or "entries" not in obj:
        raise ValueError("matrix JSON must be an object with an 'entries' field")
    entries = obj["entries"]
    scalars = [[scalar_from_json(x) for x in row] for row in entries]
    kinds = {isinstance(x, GaussianRational) for row in scalars for x in row}
    if len(kinds) > 1:
        raise BackendMismatch(
            "matrix JSON mixes exact ('p/q' string) and float (number) entries"
        )
    m = CMatrix(scalars)
    if "n" in obj and obj["n"] != m.n:
        raise ValueError(f"declared n={obj['n']} but got {m.n} rows")
    return m


def vector_from_json(obj):
    vals = [scalar_from_json(x) for x in obj]
    kinds = {isinstance(x, GaussianRational) for x in vals}
    if len(kinds) > 1:
        raise BackendMismatch("vector JSON mixes exact and float entries")
    return tuple(vals)


def vector_to_json(v):
    return [scalar_to_json(x) for x in v]
