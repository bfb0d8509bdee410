"""Multivariate polynomials over Q or GF(p) with module Gröbner bases.

Module elements are rows of polynomials. The module order is
position-over-term: the first nonzero position dominates, ties are broken by
the ring's monomial order. Buchberger's algorithm tracks cofactors so every
basis element comes with its expression in the input rows, and syzygies are
read off the S-pair reductions (Schreyer).
"""
from __future__ import annotations

import re
from fractions import Fraction

from ..ring import BasisResult, Matrix, Ring, basis_of_module
from .euclidean import PrimeField, Rationals

ORDERS = ("degrevlex", "lex")


class Polynomial:
    """Immutable sparse polynomial: ``{exponent tuple: coefficient}``."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: dict):
        self.terms = terms
        self._hash = None

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Polynomial({self.terms!r})"

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)


def _degrevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def _lex_key(e):
    return e


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*)|([+-])|(\S))")


class PolynomialRing(Ring):
    def __init__(self, coeffs: Ring, variables, order: str = "degrevlex"):
        if not isinstance(coeffs, (Rationals, PrimeField)):
            raise ValueError("polynomial coefficients must be a field (rationals or GF(p))")
        variables = tuple(variables)
        if not variables:
            raise ValueError("a polynomial ring needs at least one variable")
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names")
        if order not in ORDERS:
            raise ValueError(f"unknown monomial order {order!r}")
        self.coeffs = coeffs
        self.vars = variables
        self.order = order
        self.nvars = len(variables)
        self._mkey = _degrevlex_key if order == "degrevlex" else _lex_key
        self._zero_exp = (0,) * self.nvars
        self._zero = Polynomial({})
        self._one = Polynomial({self._zero_exp: coeffs.one})

    def _key(self):
        return (self.coeffs, self.vars, self.order)

    def __repr__(self):
        return f"PolynomialRing({self.coeffs!r}, {list(self.vars)}, {self.order!r})"

    # -- elements -------------------------------------------------------
    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    def gen(self, name):
        i = self.vars.index(name)
        e = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial({e: self.coeffs.one})

    def constant(self, c):
        c = self.coeffs.coerce(c)
        return Polynomial({self._zero_exp: c}) if not self.coeffs.is_zero(c) else self._zero

    def coerce(self, x):
        if isinstance(x, Polynomial):
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return self.constant(x)
        raise TypeError(f"cannot coerce {x!r} into {self!r}")

    def add(self, a, b):
        return Polynomial(self._padd(a.terms, b.terms))

    def sub(self, a, b):
        return Polynomial(self._padd(a.terms, self._pneg(b.terms)))

    def neg(self, a):
        return Polynomial(self._pneg(a.terms))

    def mul(self, a, b):
        return Polynomial(self._pmul(a.terms, b.terms))

    def dot(self, xs, ys):
        acc = {}
        for x, y in zip(xs, ys):
            if x.terms and y.terms:
                self._addmul_into(acc, x.terms, y.terms)
        return Polynomial(acc)

    def is_zero(self, a):
        return not a.terms

    def unit_inverse(self, a):
        if len(a.terms) == 1 and self._zero_exp in a.terms:
            return Polynomial({self._zero_exp: self.coeffs.inverse(a.terms[self._zero_exp])})
        return None

    # -- dict-level arithmetic -------------------------------------------
    def _padd(self, a, b):
        K = self.coeffs
        out = dict(a)
        for m, c in b.items():
            v = K.add(out.get(m, K.zero), c)
            if K.is_zero(v):
                out.pop(m, None)
            else:
                out[m] = v
        return out

    def _pneg(self, a):
        neg = self.coeffs.neg
        return {m: neg(c) for m, c in a.items()}

    def _pmul(self, a, b):
        out = {}
        self._addmul_into(out, a, b)
        return out

    def _addmul_into(self, acc, a, b):
        K = self.coeffs
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = _mono_mul(ma, mb)
                v = K.add(acc.get(m, K.zero), K.mul(ca, cb))
                if K.is_zero(v):
                    acc.pop(m, None)
                else:
                    acc[m] = v

    def _term_times(self, c, t, a):
        # c * x^t * a
        mul = self.coeffs.mul
        return {_mono_mul(t, m): mul(c, v) for m, v in a.items()}

    def leading_monomial(self, a: Polynomial):
        return max(a.terms, key=self._mkey) if a.terms else None

    # -- literals -------------------------------------------------------
    def format(self, a):
        if not a.terms:
            return "0"
        K = self.coeffs
        parts = []
        for m in sorted(a.terms, key=self._mkey, reverse=True):
            c = a.terms[m]
            neg = isinstance(K, Rationals) and c < 0
            mag = -c if neg else c
            mono = "*".join(v if e == 1 else f"{v}^{e}"
                            for v, e in zip(self.vars, m) if e)
            if not mono:
                body = K.format(mag)
            elif mag == K.one:
                body = mono
            else:
                body = f"{K.format(mag)}*{mono}"
            if parts:
                parts.append(("-" if neg else "+") + body)
            else:
                parts.append(("-" if neg else "") + body)
        return "".join(parts)

    def parse(self, text):
        K = self.coeffs
        toks = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.group(6):
                raise ValueError(f"bad polynomial literal {text!r} at {pos}")
            toks.append((m.lastindex, m.group(m.lastindex)))
            pos = m.end()
        if not toks:
            raise ValueError("empty polynomial literal")
        acc = {}
        i = 0
        n = len(toks)
        expect_term = True
        while i < n:
            sign = 1
            if toks[i][0] == 5:
                sign = -1 if toks[i][1] == "-" else 1
                i += 1
            elif not expect_term:
                raise ValueError(f"missing operator in {text!r}")
            coef = K.one if sign > 0 else K.neg(K.one)
            exp = list(self._zero_exp)
            need_factor = True
            while i < n:
                kind, val = toks[i]
                if kind == 1:
                    coef = K.mul(coef, K.parse(val))
                elif kind == 2:
                    if val not in self.vars:
                        raise ValueError(f"unknown variable {val!r}")
                    e = 1
                    if i + 1 < n and toks[i + 1][0] == 3:
                        if i + 2 >= n or toks[i + 2][0] != 1 or "/" in toks[i + 2][1]:
                            raise ValueError(f"bad exponent in {text!r}")
                        e = int(toks[i + 2][1])
                        i += 2
                    exp[self.vars.index(val)] += e
                else:
                    raise ValueError(f"unexpected token {val!r} in {text!r}")
                need_factor = False
                i += 1
                if i < n and toks[i][0] == 4:
                    i += 1
                    need_factor = True
                    continue
                break
            if need_factor:
                raise ValueError(f"dangling operator in {text!r}")
            acc = self._padd(acc, {tuple(exp): coef})
            expect_term = False
        return Polynomial(acc)

    def to_json(self):
        coeffs = "rationals" if isinstance(self.coeffs, Rationals) else self.coeffs.to_json()
        return {"type": "poly", "coeffs": coeffs, "vars": list(self.vars), "order": self.order}

    # -- module Gröbner machinery ----------------------------------------
    def _lead(self, v):
        """Leading ``(position, monomial)`` of a vector of term dicts."""
        for pos, comp in enumerate(v):
            if comp:
                return pos, max(comp, key=self._mkey)
        return None

    def _vec_sub_term(self, v, c, t, g):
        # v - c*x^t*g, in place
        for j, comp in enumerate(g):
            if comp:
                v[j] = self._padd(v[j], self._term_times(self.coeffs.neg(c), t, comp))

    def _vec_combine(self, pairs, length):
        """Sum of ``poly * vector`` over ``pairs``."""
        out = [{} for _ in range(length)]
        for p, vec in pairs:
            if not p:
                continue
            for j, comp in enumerate(vec):
                if comp:
                    self._addmul_into(out[j], p, comp)
        return out

    def _reduce_full(self, f, G, leads, skip=None):
        """Fully reduce ``f`` by ``G``; returns ``(remainder, quotients)``
        with ``f = remainder + sum(q_k * G_k)``."""
        K = self.coeffs
        p = [dict(c) for c in f]
        r = [{} for _ in f]
        q = [{} for _ in G]
        while True:
            lt = self._lead(p)
            if lt is None:
                return r, q
            pos, mono = lt
            c = p[pos][mono]
            for k, (gpos, gmono) in enumerate(leads):
                if k != skip and gpos == pos and _divides(gmono, mono):
                    t = _mono_div(mono, gmono)
                    coef = K.mul(c, K.inverse(G[k][gpos][gmono]))
                    self._vec_sub_term(p, coef, t, G[k])
                    q[k] = self._padd(q[k], {t: coef})
                    break
            else:
                r[pos][mono] = c
                del p[pos][mono]

    def _monic(self, g, gc):
        K = self.coeffs
        pos, mono = self._lead(g)
        inv = K.inverse(g[pos][mono])
        if inv == K.one:
            return g, gc
        scale = {self._zero_exp: inv}
        return ([self._pmul(scale, x) for x in g], [self._pmul(scale, x) for x in gc])

    def _groebner(self, m: Matrix):
        """Reduced Gröbner basis of the row module with cofactors."""
        n = m.nrows
        K = self.coeffs
        G, C, leads = [], [], []
        pending = set()

        def add(g, gc):
            g, gc = self._monic(g, gc)
            k = len(G)
            G.append(g)
            C.append(gc)
            ld = self._lead(g)
            leads.append(ld)
            for i in range(k):
                if leads[i][0] == ld[0]:
                    pending.add((i, k))

        for i, row in enumerate(m.rows):
            v = [dict(x.terms) for x in row]
            vc = [({self._zero_exp: K.one} if j == i else {}) for j in range(n)]
            r, q = self._reduce_full(v, G, leads)
            if self._lead(r) is None:
                continue
            rc = self._sub_combination(vc, q, C, n)
            add(r, rc)

        mkey = self._mkey
        while pending:
            pair = min(pending, key=lambda ij: (-leads[ij[0]][0],
                                                mkey(_lcm(leads[ij[0]][1], leads[ij[1]][1])),
                                                ij))
            pending.discard(pair)
            i, j = pair
            pos = leads[i][0]
            L = _lcm(leads[i][1], leads[j][1])
            if self._chain_skip(i, j, L, pos, leads, pending):
                continue
            ti, tj = _mono_div(L, leads[i][1]), _mono_div(L, leads[j][1])
            s = [{} for _ in G[i]]
            sc = [{} for _ in range(n)]
            self._vec_sub_term(s, self.coeffs.neg(K.one), ti, G[i])
            self._vec_sub_term(s, K.one, tj, G[j])
            self._vec_sub_term(sc, self.coeffs.neg(K.one), ti, C[i])
            self._vec_sub_term(sc, K.one, tj, C[j])
            r, q = self._reduce_full(s, G, leads)
            if self._lead(r) is not None:
                add(r, self._sub_combination(sc, q, C, n))

        # minimize
        keep = []
        for k, (pos, mono) in enumerate(leads):
            redundant = any(
                l != k and leads[l][0] == pos and _divides(leads[l][1], mono)
                and (leads[l][1] != mono or l < k)
                for l in range(len(G)))
            if not redundant:
                keep.append(k)
        G = [G[k] for k in keep]
        C = [C[k] for k in keep]
        leads = [leads[k] for k in keep]
        # interreduce
        for k in range(len(G)):
            r, q = self._reduce_full(G[k], G, leads, skip=k)
            C[k] = self._sub_combination(C[k], q, C, n)
            G[k], C[k] = self._monic(r, C[k])
        order = sorted(range(len(G)), key=lambda k: (-leads[k][0], mkey(leads[k][1])),
                       reverse=True)
        return [G[k] for k in order], [C[k] for k in order], [leads[k] for k in order]

    def _sub_combination(self, vc, q, C, n):
        comb = self._vec_combine(zip(q, C), n)
        return [self._padd(a, self._pneg(b)) for a, b in zip(vc, comb)]

    @staticmethod
    def _chain_skip(i, j, L, pos, leads, pending):
        for k in range(len(leads)):
            if k in (i, j) or leads[k][0] != pos or not _divides(leads[k][1], L):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                return True
        return False

    def _to_matrix(self, vecs, ncols):
        return Matrix(self, (tuple(Polynomial(c) for c in v) for v in vecs), ncols,
                      coerce=False)

    def basis(self, m: Matrix) -> BasisResult:
        G, C, leads = self._groebner(m)
        return BasisResult(self._to_matrix(G, m.ncols), self._to_matrix(C, m.nrows),
                           (G, leads))

    def reduce(self, b: Matrix, br: BasisResult):
        G, leads = br.data
        out, cert = [], []
        for row in b.rows:
            r, q = self._reduce_full([dict(x.terms) for x in row], G, leads)
            out.append(tuple(Polynomial(c) for c in r))
            cert.append(tuple(Polynomial(self._pneg(c)) for c in q))
        return (Matrix(self, out, b.ncols, coerce=False),
                Matrix(self, cert, len(G), coerce=False))

    def syzygies(self, m: Matrix) -> Matrix:
        br = basis_of_module(m)
        G, leads = br.data
        K = self.coeffs
        ng = len(G)
        rows = []
        for i in range(ng):
            for j in range(i + 1, ng):
                if leads[i][0] != leads[j][0]:
                    continue
                L = _lcm(leads[i][1], leads[j][1])
                ti, tj = _mono_div(L, leads[i][1]), _mono_div(L, leads[j][1])
                s = [{} for _ in range(m.ncols)]
                self._vec_sub_term(s, K.neg(K.one), ti, G[i])
                self._vec_sub_term(s, K.one, tj, G[j])
                _, q = self._reduce_full(s, G, leads)
                coords = [self._pneg(x) for x in q]
                coords[i] = self._padd(coords[i], {ti: K.one})
                coords[j] = self._padd(coords[j], {tj: K.neg(K.one)})
                rows.append(tuple(Polynomial(c) for c in coords))
        syz = Matrix(self, rows, ng, coerce=False) @ br.transform
        # rows of A not reproduced by the cofactors: e_i - D_i C_A
        _, D = self.reduce(m, br)
        rest = Matrix.identity(self, m.nrows) + D @ br.transform
        return syz.stack(rest)
