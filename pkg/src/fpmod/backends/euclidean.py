"""Integers, rationals and prime fields.

All three share one echelon routine: Hermite normal form over Z, reduced
row echelon form over fields, each with the unimodular row transform. The
rows of the transform that produce zero rows are a basis of the left kernel.
"""
from __future__ import annotations

import re
from fractions import Fraction

from ..ring import BasisResult, Matrix, Ring


class EuclideanRing(Ring):
    # subclasses: _quo(a, p) quotient used to reduce a by pivot p;
    # _size(a) pivot preference; _normalizer(a) unit u making u*a canonical

    def dot(self, xs, ys):
        return sum(map(self.mul, xs, ys), self.zero)

    def _axpy(self, target, q, src):
        # target - q*src
        return [t - q * s for t, s in zip(target, src)]

    def _scale_row(self, u, row):
        return [u * x for x in row]

    def echelon(self, rows, ncols):
        """Return ``(H, U, pivots)`` with ``H = U A`` in echelon form."""
        A = [list(r) for r in rows]
        m = len(A)
        one, zero = self.one, self.zero
        U = [[one if i == j else zero for j in range(m)] for i in range(m)]
        iz = self.is_zero
        pivots = []
        k = 0
        for j in range(ncols):
            if k == m:
                break
            while True:
                nz = [i for i in range(k, m) if not iz(A[i][j])]
                if not nz:
                    break
                p = min(nz, key=lambda i: self._size(A[i][j]))
                if p != k:
                    A[k], A[p] = A[p], A[k]
                    U[k], U[p] = U[p], U[k]
                done = True
                piv = A[k][j]
                for i in range(k + 1, m):
                    if not iz(A[i][j]):
                        q = self._quo(A[i][j], piv)
                        A[i] = self._axpy(A[i], q, A[k])
                        U[i] = self._axpy(U[i], q, U[k])
                        if not iz(A[i][j]):
                            done = False
                if done:
                    break
            if k < m and not iz(A[k][j]):
                u = self._normalizer(A[k][j])
                if u != one:
                    A[k] = self._scale_row(u, A[k])
                    U[k] = self._scale_row(u, U[k])
                piv = A[k][j]
                for i in range(k):
                    if not iz(A[i][j]):
                        q = self._quo(A[i][j], piv)
                        if not iz(q):
                            A[i] = self._axpy(A[i], q, A[k])
                            U[i] = self._axpy(U[i], q, U[k])
                pivots.append(j)
                k += 1
        return A, U, pivots

    def basis(self, m: Matrix) -> BasisResult:
        H, U, pivots = self.echelon(m.rows, m.ncols)
        r = len(pivots)
        G = Matrix(self, (tuple(row) for row in H[:r]), m.ncols, coerce=False)
        C = Matrix(self, (tuple(row) for row in U[:r]), m.nrows, coerce=False)
        return BasisResult(G, C, tuple(pivots))

    def reduce(self, b: Matrix, br: BasisResult):
        G = br.basis
        pivots = br.data
        iz = self.is_zero
        out, cert = [], []
        for row in b.rows:
            r = list(row)
            c = [self.zero] * G.nrows
            for i, j in enumerate(pivots):
                if not iz(r[j]):
                    q = self._quo(r[j], G.rows[i][j])
                    if not iz(q):
                        r = self._axpy(r, q, G.rows[i])
                        c[i] = self.neg(q)
            out.append(tuple(r))
            cert.append(tuple(c))
        return (Matrix(self, out, b.ncols, coerce=False),
                Matrix(self, cert, G.nrows, coerce=False))

    def syzygies(self, m: Matrix) -> Matrix:
        _, U, pivots = self.echelon(m.rows, m.ncols)
        return Matrix(self, (tuple(row) for row in U[len(pivots):]), m.nrows, coerce=False)


class Integers(EuclideanRing):
    def _key(self):
        return ()

    def __repr__(self):
        return "Integers()"

    zero = 0
    one = 1

    def coerce(self, x):
        if isinstance(x, bool):
            raise TypeError("booleans are not ring elements")
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {x!r} into the integers")

    def _quo(self, a, p):
        return a // p

    def _size(self, a):
        return abs(a)

    def _normalizer(self, a):
        return -1 if a < 0 else 1

    def unit_inverse(self, a):
        return a if a in (1, -1) else None

    def parse(self, text):
        text = text.strip()
        if not re.fullmatch(r"[+-]?\d+", text):
            raise ValueError(f"not an integer literal: {text!r}")
        return int(text)

    def to_json(self):
        return {"type": "integers"}


class Rationals(EuclideanRing):
    is_field = True

    def _key(self):
        return ()

    def __repr__(self):
        return "Rationals()"

    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        if isinstance(x, bool):
            raise TypeError("booleans are not ring elements")
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {x!r} into the rationals")

    def _quo(self, a, p):
        return a / p

    def _size(self, a):
        return 0

    def _normalizer(self, a):
        return 1 / a

    def unit_inverse(self, a):
        return None if a == 0 else 1 / a

    def inverse(self, a):
        return 1 / a

    def parse(self, text):
        text = text.strip()
        if not re.fullmatch(r"[+-]?\d+(/\d+)?", text):
            raise ValueError(f"not a rational literal: {text!r}")
        return Fraction(text)

    def format(self, a):
        return str(a)

    def to_json(self):
        return {"type": "rationals"}


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class PrimeField(EuclideanRing):
    is_field = True

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def _key(self):
        return (self.p,)

    def __repr__(self):
        return f"PrimeField({self.p})"

    zero = 0
    one = 1

    def coerce(self, x):
        if isinstance(x, bool):
            raise TypeError("booleans are not ring elements")
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {x!r} into GF({self.p})")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def dot(self, xs, ys):
        return sum(x * y for x, y in zip(xs, ys)) % self.p

    def _axpy(self, target, q, src):
        p = self.p
        return [(t - q * s) % p for t, s in zip(target, src)]

    def _scale_row(self, u, row):
        p = self.p
        return [u * x % p for x in row]

    def _quo(self, a, b):
        return a * pow(b, -1, self.p) % self.p

    def _size(self, a):
        return 0

    def _normalizer(self, a):
        return pow(a, -1, self.p)

    def unit_inverse(self, a):
        return None if a % self.p == 0 else pow(a, -1, self.p)

    def inverse(self, a):
        return pow(a, -1, self.p)

    def parse(self, text):
        text = text.strip()
        m = re.fullmatch(r"([+-]?\d+)(?:/(\d+))?", text)
        if not m:
            raise ValueError(f"not a GF({self.p}) literal: {text!r}")
        if m.group(2):
            return self.coerce(Fraction(int(m.group(1)), int(m.group(2))))
        return int(m.group(1)) % self.p

    def to_json(self):
        return {"type": "primefield", "p": self.p}


def extended_gcd(a: int, b: int):
    """Return ``(g, x, y)`` with ``g = x*a + y*b`` and ``g >= 0``."""
    x, nx, y, ny = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
    if a < 0:
        a, x, y = -a, -x, -y
    return a, x, y

