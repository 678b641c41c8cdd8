"""Exact arithmetic over GF(q) and dense linear algebra on tuple matrices.

Field elements are ints in ``range(q)``.  Prime fields use modular
arithmetic directly.  Prime-power fields GF(p^k) with q <= 64 encode
polynomials over GF(p) in base p and multiply through log/antilog tables
built from a fixed table of Conway polynomials; the generator x is
primitive, so the tables cover every nonzero element.

Vectors are int tuples and matrices are tuples of row tuples; every
routine is a pure function of its inputs.
"""

from __future__ import annotations

import functools
from itertools import combinations, product

# Conway polynomials, coefficients in ascending degree, monic.  Enough for
# every prime power q = p^k <= 64 with k >= 2.
_CONWAY = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 4, 1),
    (7, 2): (3, 6, 1),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, k) with n == p**k, or None when n is not a prime power."""
    if n < 2:
        return None
    p = 2
    while p * p <= n:
        if n % p == 0:
            k, m = 0, n
            while m % p == 0:
                m //= p
                k += 1
            return (p, k) if m == 1 else None
        p += 1
    return (n, 1)


class GF:
    """The finite field with q elements, q a prime power."""

    def __init__(self, q: int):
        pk = prime_power(q)
        if pk is None:
            raise ValueError(f"{q} is not a prime power")
        self.q = q
        self.p, self.k = pk
        if self.k > 1:
            if (self.p, self.k) not in _CONWAY:
                raise ValueError(f"GF({q}) is not supported (prime powers up to 64 only)")
            self._build_tables()

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _undigits(self, ds) -> int:
        v = 0
        for d in reversed(ds):
            v = v * self.p + d
        return v

    def _mul_x(self, a: int, conway) -> int:
        # multiply by the generator x, reducing modulo the Conway polynomial
        ds = self._digits(a)
        carry = ds[-1]
        ds = [0] + ds[:-1]
        if carry:
            for i in range(self.k):
                ds[i] = (ds[i] - carry * conway[i]) % self.p
        return self._undigits(ds)

    def _build_tables(self):
        q = self.q
        conway = _CONWAY[(self.p, self.k)]
        exp = [0] * (q - 1)
        log = [0] * q
        cur = 1
        for i in range(q - 1):
            if cur != 1 and log[cur]:
                raise AssertionError("generator is not primitive")
            exp[i] = cur
            log[cur] = i
            cur = self._mul_x(cur, conway)
        if cur != 1:
            raise AssertionError("generator is not primitive")
        self._exp, self._log = exp, log
        add_digit = lambda a, b: self._undigits(
            [(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))]
        )
        self._add_tab = [[add_digit(a, b) for b in range(q)] for a in range(q)]
        self._neg_tab = [self._undigits([(-x) % self.p for x in self._digits(a)]) for a in range(q)]

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.q
        return self._add_tab[a][b]

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.q
        return self._neg_tab[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.q
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        if self.k == 1:
            return pow(a, -1, self.q)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def __repr__(self):
        return f"GF({self.q})"


@functools.lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)


# ---------------------------------------------------------------------------
# matrices


def rref(rows, fld: GF):
    """Reduced row echelon form with unit pivots.

    Returns (rows, pivots) with zero rows dropped; the result is the unique
    canonical basis of the row space.
    """
    mat = [list(r) for r in rows]
    if not mat:
        return (), ()
    ncols = len(mat[0])
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        lead = mat[rank][col]
        if lead != 1:
            inv = fld.inv(lead)
            mat[rank] = [fld.mul(inv, x) for x in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col] != 0:
                c = mat[i][col]
                mat[i] = [fld.sub(x, fld.mul(c, y)) for x, y in zip(mat[i], mat[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(mat):
            break
    return tuple(tuple(r) for r in mat[:rank]), tuple(pivots)


def reduce_vector(rref_rows, pivots, vec, fld: GF):
    """Residual of vec after eliminating against an RREF basis."""
    res = list(vec)
    for row, p in zip(rref_rows, pivots):
        c = res[p]
        if c != 0:
            res = [fld.sub(x, fld.mul(c, y)) for x, y in zip(res, row)]
    return tuple(res)


def in_rowspace(rref_rows, pivots, vec, fld: GF) -> bool:
    return not any(reduce_vector(rref_rows, pivots, vec, fld))


def _rref_with_tags(rows, fld: GF):
    """Gauss-Jordan keeping a tag per row: tags[i] . rows == reduced[i].

    Zero rows are kept (at the bottom) so their tags span the left
    combination nullspace.
    """
    n = len(rows)
    mat = [list(r) for r in rows]
    tags = [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    if not mat:
        return [], [], []
    ncols = len(mat[0])
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, n) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        tags[rank], tags[piv] = tags[piv], tags[rank]
        lead = mat[rank][col]
        if lead != 1:
            inv = fld.inv(lead)
            mat[rank] = [fld.mul(inv, x) for x in mat[rank]]
            tags[rank] = [fld.mul(inv, x) for x in tags[rank]]
        for i in range(n):
            if i != rank and mat[i][col] != 0:
                c = mat[i][col]
                mat[i] = [fld.sub(x, fld.mul(c, y)) for x, y in zip(mat[i], mat[rank])]
                tags[i] = [fld.sub(x, fld.mul(c, y)) for x, y in zip(tags[i], tags[rank])]
        pivots.append(col)
        rank += 1
        if rank == n:
            break
    return mat, tags, pivots


def combination_nullspace(rows, fld: GF):
    """RREF basis of {a : sum_i a_i * rows_i = 0}."""
    if not rows:
        return ()
    mat, tags, _ = _rref_with_tags(rows, fld)
    null_tags = [tuple(tags[i]) for i in range(len(rows)) if not any(mat[i])]
    return rref(null_tags, fld)[0]


def solve_combination(rows, target, fld: GF):
    """Coefficients a with sum_i a_i * rows_i == target, or None."""
    if not rows:
        return None if any(target) else ()
    mat, tags, _ = _rref_with_tags(rows, fld)
    res = list(target)
    coeff = [0] * len(rows)
    for i in range(len(rows)):
        if not any(mat[i]):
            continue
        p = next(j for j, c in enumerate(mat[i]) if c)
        c = res[p]
        if c:
            res = [fld.sub(x, fld.mul(c, y)) for x, y in zip(res, mat[i])]
            coeff = [fld.add(a, fld.mul(c, t)) for a, t in zip(coeff, tags[i])]
    return tuple(coeff) if not any(res) else None


def intersect_rowspaces(a_rows, b_rows, width: int, fld: GF):
    """RREF basis of rowspace(A) intersect rowspace(B) (Zassenhaus)."""
    if not a_rows or not b_rows:
        return ()
    zero = (0,) * width
    big = [tuple(r) + tuple(r) for r in a_rows] + [tuple(r) + zero for r in b_rows]
    red, _ = rref(big, fld)
    inter = [row[width:] for row in red if not any(row[:width])]
    return rref(inter, fld)[0]


def sum_rowspaces(a_rows, b_rows, fld: GF):
    """RREF basis of rowspace(A) + rowspace(B)."""
    return rref(tuple(a_rows) + tuple(b_rows), fld)[0]


def enumerate_rref_matrices(width: int, r: int, fld: GF):
    """Yield every r-row RREF matrix with `width` columns over the field.

    Each r-dimensional subspace of GF(q)^width appears exactly once.
    """
    if r == 0:
        yield ()
        return
    q = fld.q
    for pivots in combinations(range(width), r):
        pivot_set = set(pivots)
        free = [
            (i, c)
            for i in range(r)
            for c in range(pivots[i] + 1, width)
            if c not in pivot_set
        ]
        for vals in product(range(q), repeat=len(free)):
            mat = [[0] * width for _ in range(r)]
            for i in range(r):
                mat[i][pivots[i]] = 1
            for (i, c), val in zip(free, vals):
                mat[i][c] = val
            yield tuple(tuple(row) for row in mat)
