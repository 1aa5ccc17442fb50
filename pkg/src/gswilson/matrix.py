"""Small exact matrices over Fraction / LaurentPoly / RatFunc entries.

Everything the group-element computations need: products, LDU (Gaussian)
decomposition without pivoting, unitriangular inverses that stay inside the
polynomial ring, Gauss-Jordan inverse over a field, subset-DP determinants
(division-free, so they work over the Laurent ring directly), and projective
comparison by cross-multiplication.
"""

from fractions import Fraction

from .laurent import LaurentPoly, RatFunc, as_poly


class MinorVanishes(Exception):
    """Raised by ldu() when a leading principal minor is zero."""

    def __init__(self, k):
        self.k = k
        super().__init__("leading principal minor of size %d vanishes" % k)


def _one_like(x):
    if isinstance(x, RatFunc):
        return RatFunc(LaurentPoly.const(1))
    if isinstance(x, LaurentPoly):
        return LaurentPoly.const(1)
    return Fraction(1)


def _zero_like(x):
    return x - x


class Mat:
    __slots__ = ("rows", "nr", "nc")

    def __init__(self, rows):
        self.rows = tuple(tuple(r) for r in rows)
        self.nr = len(self.rows)
        self.nc = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.nc:
                raise ValueError("ragged rows")

    @staticmethod
    def identity(n, one=None):
        one = Fraction(1) if one is None else one
        zero = _zero_like(one)
        return Mat([[one if i == j else zero for j in range(n)]
                    for i in range(n)])

    @staticmethod
    def diagonal(entries):
        entries = list(entries)
        zero = _zero_like(entries[0])
        n = len(entries)
        return Mat([[entries[i] if i == j else zero for j in range(n)]
                    for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, Mat) and self.nr == other.nr and \
            self.nc == other.nc and all(
                self.rows[i][j] == other.rows[i][j]
                for i in range(self.nr) for j in range(self.nc))

    def __mul__(self, other):
        if not isinstance(other, Mat):
            return self.map_entries(lambda e: e * other)
        if self.nc != other.nr:
            raise ValueError("dimension mismatch")
        bcols = list(zip(*other.rows))
        out = []
        for row in self.rows:
            orow = []
            for col in bcols:
                acc = None
                for a, b in zip(row, col):
                    if not a or not b:
                        continue
                    term = a * b
                    acc = term if acc is None else acc + term
                if acc is None:
                    acc = _zero_like(row[0])
                orow.append(acc)
            out.append(orow)
        return Mat(out)

    def __rmul__(self, other):
        return self.map_entries(lambda e: other * e)

    def __add__(self, other):
        return Mat([[a + b for a, b in zip(ra, rb)]
                    for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return Mat([[a - b for a, b in zip(ra, rb)]
                    for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self):
        return self.map_entries(lambda e: -e)

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        out = Mat.identity(self.nr, _one_like(self.rows[0][0]))
        for _ in range(n):
            out = out * self
        return out

    def transpose(self):
        return Mat(list(zip(*self.rows)))

    def map_entries(self, fn):
        return Mat([[fn(e) for e in row] for row in self.rows])

    def trace(self):
        acc = self.rows[0][0]
        for i in range(1, self.nr):
            acc = acc + self.rows[i][i]
        return acc

    def is_upper_triangular(self):
        return all(not self.rows[i][j]
                   for i in range(self.nr) for j in range(i))

    def is_lower_triangular(self):
        return all(not self.rows[i][j]
                   for i in range(self.nr) for j in range(i + 1, self.nc))

    def is_diagonal(self):
        return self.is_upper_triangular() and self.is_lower_triangular()

    # -- determinant, division-free (works over the Laurent ring)

    def det(self):
        n = self.nr
        if n != self.nc:
            raise ValueError("det of non-square matrix")
        zero = _zero_like(self.rows[0][0])
        # dp over column subsets: dp[S] = signed minor of rows 0..|S|-1, cols S
        dp = {0: _one_like(self.rows[0][0])}
        for i in range(n):
            ndp = {}
            for S, val in dp.items():
                if not val:
                    continue
                # sign of appending column j = parity of chosen columns > j
                above = 0
                for j in range(n - 1, -1, -1):
                    bit = 1 << j
                    if S & bit:
                        above += 1
                        continue
                    a = self.rows[i][j]
                    if a:
                        key = S | bit
                        term = val * a if above % 2 == 0 else -(val * a)
                        acc = ndp.get(key)
                        ndp[key] = term if acc is None else acc + term
            dp = ndp
        full = (1 << n) - 1
        return dp.get(full, zero)

    # -- triangular factorization (no pivoting; order matters)

    def ldu(self):
        """LDU with L unit lower, D diagonal, U unit upper.

        Raises MinorVanishes(k) when the leading principal k-minor is zero.
        Entries must support division by the pivots (use to_ratfunc() first
        for polynomial matrices whose pivots are not monomials).
        """
        n = self.nr
        one = _one_like(self.rows[0][0])
        zero = _zero_like(self.rows[0][0])
        a = [list(row) for row in self.rows]
        L = [[one if i == j else zero for j in range(n)] for i in range(n)]
        U = [[one if i == j else zero for j in range(n)] for i in range(n)]
        D = [zero] * n
        for k in range(n):
            piv = a[k][k]
            if not piv:
                raise MinorVanishes(k + 1)
            D[k] = piv
            for j in range(k + 1, n):
                U[k][j] = a[k][j] / piv
            for i in range(k + 1, n):
                L[i][k] = a[i][k] / piv
            for i in range(k + 1, n):
                if not a[i][k]:
                    continue
                for j in range(k + 1, n):
                    a[i][j] = a[i][j] - L[i][k] * a[k][j]
                a[i][k] = zero
        return Mat(L), Mat.diagonal(D), Mat(U)

    # -- inverses

    def inv(self):
        """Gauss-Jordan inverse with row pivoting (entries must divide)."""
        n = self.nr
        one = _one_like(self.rows[0][0])
        zero = _zero_like(one)
        a = [list(row) for row in self.rows]
        b = [[one if i == j else zero for j in range(n)] for i in range(n)]
        for k in range(n):
            p = next((i for i in range(k, n) if a[i][k]), None)
            if p is None:
                raise ZeroDivisionError("singular matrix")
            if p != k:
                a[k], a[p] = a[p], a[k]
                b[k], b[p] = b[p], b[k]
            piv = a[k][k]
            a[k] = [e / piv for e in a[k]]
            b[k] = [e / piv for e in b[k]]
            for i in range(n):
                if i == k or not a[i][k]:
                    continue
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
                b[i] = [x - f * y for x, y in zip(b[i], b[k])]
        return Mat(b)

    def unitri_inv(self):
        """Inverse of a unitriangular (upper or lower) matrix.

        Division-free (Neumann series of the nilpotent part), so it stays in
        the polynomial ring.
        """
        n = self.nr
        one = _one_like(self.rows[0][0])
        I = Mat.identity(n, one)
        N = self - I
        out = I
        power = I
        for k in range(n - 1):
            power = power * N
            out = out + (-power if k % 2 == 0 else power)
        return out

    def diag_inv(self):
        return Mat.diagonal([_one_like(e) / e
                             for e in (self.rows[i][i] for i in range(self.nr))])

    # -- coefficient-ring changes

    def to_ratfunc(self):
        return self.map_entries(
            lambda e: e if isinstance(e, RatFunc) else RatFunc(as_poly(e)))

    def to_laurent(self):
        def conv(e):
            if isinstance(e, RatFunc):
                return e.as_laurent()
            return as_poly(e)
        return self.map_entries(conv)

    def eval_positive(self, assignment):
        def ev(e):
            if isinstance(e, (LaurentPoly, RatFunc)):
                return e.eval_positive(assignment)
            return Fraction(e)
        return self.map_entries(ev)

    def __str__(self):
        cells = [[str(e) for e in row] for row in self.rows]
        w = max((len(c) for row in cells for c in row), default=0)
        return "\n".join("[ " + "  ".join(c.rjust(w) for c in row) + " ]"
                         for row in cells)

    __repr__ = __str__


def proj_equal(A, B):
    """A == lambda * B for some invertible scalar, via cross-multiplication."""
    if A.nr != B.nr or A.nc != B.nc:
        return False
    pivot = None
    for i in range(A.nr):
        for j in range(A.nc):
            if A.rows[i][j] or B.rows[i][j]:
                pivot = (i, j)
                break
        if pivot:
            break
    if pivot is None:
        return True
    i0, j0 = pivot
    a0, b0 = A.rows[i0][j0], B.rows[i0][j0]
    if not a0 or not b0:
        return False
    for i in range(A.nr):
        for j in range(A.nc):
            if not (a0 * B.rows[i][j] == b0 * A.rows[i][j]):
                return False
    return True


def monomial_clear(A):
    """Factor A = m * B with m the greatest common monomial of all entries.

    Clears projective scalars: for Laurent matrices whose entries share a
    monomial factor (fractional exponents included), B has exponent-minimum 0
    in every variable.  Returns (m, B) with m a LaurentPoly monomial.
    """
    entries = []
    allvars = set()
    for row in A.rows:
        for e in row:
            e = as_poly(e)
            if isinstance(e, RatFunc):
                e = e.as_laurent()
            if not e.is_zero():
                entries.append(e)
                allvars |= e.variables()
    mins = {}
    for v in allvars:
        # exponents() reports 0 for terms not containing v, so an entry
        # missing v altogether correctly contributes 0 here
        mins[v] = min(min(e.exponents(v)) for e in entries)
    mins = {v: e for v, e in mins.items() if e != 0}
    m = LaurentPoly.monomial(1, mins)
    minv = LaurentPoly.monomial(1, {v: -e for v, e in mins.items()})

    def clear(e):
        e = as_poly(e)
        if isinstance(e, RatFunc):
            e = e.as_laurent()
        return e * minv

    return m, A.map_entries(clear)
