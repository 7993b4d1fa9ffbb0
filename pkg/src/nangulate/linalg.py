"""Exact dense linear algebra over prime fields F_p and the rationals.

Everything downstream (algebras, modules, homotopy solvers) reduces to the
routines in this file, so the contract is strict: arithmetic is exact, row
reduction always picks the leftmost available pivot, and unsolvable systems
come with a certificate (a left null vector of A that does not kill B).

Matrices are immutable once built.  A matrix is stored row-major; entries are
plain ints for F_p and `fractions.Fraction` for Q.
"""

from __future__ import annotations

from fractions import Fraction


class PrimeField:
    """F_p for a small prime p (p <= 97 is all we ever need)."""

    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError(f"not a prime: {p}")
        if p > 97:
            raise ValueError(f"prime too large (max 97): {p}")
        self.p = p
        self.zero = 0
        self.one = 1 % p

    @property
    def name(self) -> str:
        return f"F{self.p}"

    def of_int(self, a) -> int:
        return int(a) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, -1, self.p)

    def parse(self, s) -> int:
        return int(s) % self.p

    def fmt(self, a):
        return a % self.p

    def elements(self):
        return range(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return self.name


class RationalField:
    """Q with arbitrary-precision Fraction entries."""

    def __init__(self):
        self.p = 0
        self.zero = Fraction(0)
        self.one = Fraction(1)

    @property
    def name(self) -> str:
        return "Q"

    def of_int(self, a) -> Fraction:
        return Fraction(a)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / Fraction(a)

    def parse(self, s) -> Fraction:
        if isinstance(s, str) and "/" in s:
            num, den = s.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(s))

    def fmt(self, a):
        a = Fraction(a)
        if a.denominator == 1:
            return int(a)
        return f"{a.numerator}/{a.denominator}"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")

    def __repr__(self):
        return "Q"


QQ = RationalField()

_FIELDS = {"Q": QQ}


def field_by_name(name: str):
    if name in _FIELDS:
        return _FIELDS[name]
    if name.startswith("F"):
        f = PrimeField(int(name[1:]))
        _FIELDS[name] = f
        return f
    raise ValueError(f"unknown field {name!r} (use F<p> or Q)")


class Mat:
    """Immutable dense matrix over an exact field.

    Maps act on row vectors: a linear map k^m -> k^n is an m x n matrix F
    applied as v |-> v @ F, and `F @ G` is "apply F, then G".
    """

    __slots__ = ("field", "nrows", "ncols", "rows", "_rref", "_hash")

    def __init__(self, field, rows, ncols=None):
        self.field = field
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        if self.nrows:
            self.ncols = len(self.rows[0])
            if any(len(r) != self.ncols for r in self.rows):
                raise ValueError("ragged rows")
        else:
            if ncols is None:
                raise ValueError("empty matrix needs explicit ncols")
            self.ncols = ncols
        self._rref = None
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_int_rows(field, rows, ncols=None):
        conv = field.of_int
        return Mat(field, [[conv(a) for a in r] for r in rows], ncols)

    @staticmethod
    def zeros(field, m, n):
        z = field.zero
        return Mat(field, [[z] * n for _ in range(m)], n)

    @staticmethod
    def identity(field, n):
        z, o = field.zero, field.one
        return Mat(field, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    @staticmethod
    def from_row(field, vec):
        return Mat(field, [list(vec)], len(vec))

    # -- basic structure ---------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.field == other.field
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.nrows, self.ncols, self.rows))
        return self._hash

    def __repr__(self):
        return f"Mat({self.field.name}, {self.nrows}x{self.ncols}, {list(map(list, self.rows))})"

    def row(self, i):
        return self.rows[i]

    def entry(self, i, j):
        return self.rows[i][j]

    def is_zero(self) -> bool:
        z = self.field.zero
        return all(a == z for r in self.rows for a in r)

    def to_lists(self):
        return [list(r) for r in self.rows]

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        self._check_shape(other)
        add = self.field.add
        return Mat(
            self.field,
            [[add(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)],
            self.ncols,
        )

    def __sub__(self, other):
        self._check_shape(other)
        sub = self.field.sub
        return Mat(
            self.field,
            [[sub(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)],
            self.ncols,
        )

    def __neg__(self):
        neg = self.field.neg
        return Mat(self.field, [[neg(a) for a in r] for r in self.rows], self.ncols)

    def scale(self, c):
        mul = self.field.mul
        return Mat(self.field, [[mul(c, a) for a in r] for r in self.rows], self.ncols)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        F = self.field
        if not self.nrows or not other.ncols or not self.ncols:
            return Mat.zeros(F, self.nrows, other.ncols)
        cols = list(zip(*other.rows))
        if isinstance(F, PrimeField):
            p = F.p
            out = [
                [sum([a * b for a, b in zip(r, c)]) % p for c in cols]
                for r in self.rows
            ]
        else:
            out = [
                [sum([a * b for a, b in zip(r, c)], F.zero) for c in cols]
                for r in self.rows
            ]
        return Mat(F, out, other.ncols)

    def transpose(self):
        if not self.nrows:
            return Mat(self.field, [[] for _ in range(self.ncols)] if self.ncols else [], 0)
        return Mat(self.field, list(zip(*self.rows)), self.nrows)

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise ValueError("hstack row mismatch")
        return Mat(
            self.field,
            [list(r1) + list(r2) for r1, r2 in zip(self.rows, other.rows)],
            self.ncols + other.ncols,
        )

    def vstack(self, other):
        if self.ncols != other.ncols:
            raise ValueError("vstack col mismatch")
        return Mat(self.field, list(self.rows) + list(other.rows), self.ncols)

    @staticmethod
    def block_diag(field, blocks):
        m = sum(b.nrows for b in blocks)
        n = sum(b.ncols for b in blocks)
        z = field.zero
        rows = [[z] * n for _ in range(m)]
        i0 = j0 = 0
        for b in blocks:
            for i, r in enumerate(b.rows):
                rows[i0 + i][j0 : j0 + b.ncols] = list(r)
            i0 += b.nrows
            j0 += b.ncols
        return Mat(field, rows, n)

    @staticmethod
    def block(field, grid, row_dims, col_dims):
        """Assemble a matrix from a 2d grid of blocks (None = zero block)."""
        m, n = sum(row_dims), sum(col_dims)
        z = field.zero
        rows = [[z] * n for _ in range(m)]
        i0 = 0
        for bi, rd in enumerate(row_dims):
            j0 = 0
            for bj, cd in enumerate(col_dims):
                blk = grid[bi][bj]
                if blk is not None:
                    if blk.nrows != rd or blk.ncols != cd:
                        raise ValueError("block shape mismatch")
                    for i, r in enumerate(blk.rows):
                        rows[i0 + i][j0 : j0 + cd] = list(r)
                j0 += cd
            i0 += rd
        return Mat(field, rows, n)

    def submatrix(self, row_idx, col_idx):
        return Mat(
            self.field,
            [[self.rows[i][j] for j in col_idx] for i in row_idx],
            len(col_idx),
        )

    def flatten(self):
        """Row-major entry list."""
        return [a for r in self.rows for a in r]

    def _check_shape(self, other):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("shape mismatch")

    # -- reduction ---------------------------------------------------------

    def rref(self):
        """Reduced row echelon form with leftmost-pivot tie-breaking.

        Returns (R, pivots) and caches the result.
        """
        if self._rref is None:
            R, piv, _ = _rref_with_transform(self, want_transform=False)
            self._rref = (R, piv)
        return self._rref

    def rank(self) -> int:
        return len(self.rref()[1])

    def inverse(self):
        if self.nrows != self.ncols:
            raise ValueError("inverse of non-square matrix")
        n = self.nrows
        R, piv, T = _rref_with_transform(self, want_transform=True)
        if len(piv) != n:
            raise ValueError("matrix not invertible")
        return T

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows


def _rref_f2(A: Mat, want_transform: bool):
    """Bit-packed row reduction over F_2: rows are ints, elimination is XOR.

    Produces entry-identical output to the generic path (same pivot choices,
    same normalization), just faster.
    """
    m, n = A.nrows, A.ncols
    packed = []
    for row in A.rows:
        v = 0
        for j, a in enumerate(row):
            if a & 1:
                v |= 1 << j
        packed.append(v)
    t = [1 << i for i in range(m)] if want_transform else None
    pivots = []
    r = 0
    for c in range(n):
        bit = 1 << c
        pr = next((i for i in range(r, m) if packed[i] & bit), None)
        if pr is None:
            continue
        packed[r], packed[pr] = packed[pr], packed[r]
        if t is not None:
            t[r], t[pr] = t[pr], t[r]
        lead = packed[r]
        tl = t[r] if t is not None else 0
        for i in range(m):
            if i != r and packed[i] & bit:
                packed[i] ^= lead
                if t is not None:
                    t[i] ^= tl
        pivots.append(c)
        r += 1
        if r == m:
            break
    F = A.field
    rows = [tuple((v >> j) & 1 for j in range(n)) for v in packed]
    R = Mat(F, rows, n)
    T = None
    if t is not None:
        T = Mat(F, [tuple((v >> j) & 1 for j in range(m)) for v in t], m)
    return R, pivots, T


def _rref_with_transform(A: Mat, want_transform: bool):
    """Row reduce A.  Returns (R, pivots, T) with T @ A = R when requested."""
    F = A.field
    if isinstance(F, PrimeField) and F.p == 2:
        return _rref_f2(A, want_transform)
    m, n = A.nrows, A.ncols
    rows = [list(r) for r in A.rows]
    if want_transform:
        t = [[F.one if i == j else F.zero for j in range(m)] for i in range(m)]
    else:
        t = None
    pivots = []
    r = 0
    if isinstance(F, PrimeField):
        p = F.p
        for c in range(n):
            pr = next((i for i in range(r, m) if rows[i][c] % p), None)
            if pr is None:
                continue
            rows[r], rows[pr] = rows[pr], rows[r]
            if t is not None:
                t[r], t[pr] = t[pr], t[r]
            inv = pow(rows[r][c], -1, p)
            if inv != 1:
                rows[r] = [(a * inv) % p for a in rows[r]]
                if t is not None:
                    t[r] = [(a * inv) % p for a in t[r]]
            lead = rows[r]
            tl = t[r] if t is not None else None
            for i in range(m):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [(a - f * b) % p for a, b in zip(rows[i], lead)]
                    if t is not None:
                        t[i] = [(a - f * b) % p for a, b in zip(t[i], tl)]
            pivots.append(c)
            r += 1
            if r == m:
                break
    else:
        for c in range(n):
            pr = next((i for i in range(r, m) if rows[i][c] != F.zero), None)
            if pr is None:
                continue
            rows[r], rows[pr] = rows[pr], rows[r]
            if t is not None:
                t[r], t[pr] = t[pr], t[r]
            inv = F.inv(rows[r][c])
            rows[r] = [F.mul(a, inv) for a in rows[r]]
            if t is not None:
                t[r] = [F.mul(a, inv) for a in t[r]]
            lead = rows[r]
            tl = t[r] if t is not None else None
            for i in range(m):
                if i != r and rows[i][c] != F.zero:
                    f = rows[i][c]
                    rows[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(rows[i], lead)]
                    if t is not None:
                        t[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(t[i], tl)]
            pivots.append(c)
            r += 1
            if r == m:
                break
    R = Mat(F, rows, n)
    T = Mat(F, t, m) if t is not None else None
    return R, pivots, T


def null_right(A: Mat) -> Mat:
    """Basis of {x : A @ x = 0} as the columns of the returned matrix.

    Basis vectors are indexed by the free columns of rref(A) in increasing
    order, each normalized with a 1 in its free position.
    """
    F = A.field
    R, piv = A.rref()
    free = [j for j in range(A.ncols) if j not in piv]
    cols = []
    for j in free:
        v = [F.zero] * A.ncols
        v[j] = F.one
        for r, pc in enumerate(piv):
            v[pc] = F.neg(R.rows[r][j])
        cols.append(v)
    if not cols:
        return Mat(F, [[] for _ in range(A.ncols)] if A.ncols else [], 0)
    return Mat(F, list(zip(*cols)), len(cols))


def solve_right(A: Mat, B: Mat, want_kernel=True, want_cert=True):
    """Solve A @ X = B.

    Returns (X, kernel, None) on success where kernel = null_right(A), or
    (None, kernel, cert) when unsolvable; cert is a row vector v with
    v @ A = 0 and v @ B != 0.  Kernel and certificate computation can be
    switched off by callers that only need a particular solution.
    """
    if A.nrows != B.nrows:
        raise ValueError("solve: A.rows must equal B.rows")
    F = A.field
    aug = A.hstack(B)
    R, piv, _ = _rref_with_transform(aug, want_transform=False)
    ker = null_right(A) if want_kernel else None
    bad = next((c for c in piv if c >= A.ncols), None)
    if bad is not None:
        cert = None
        if want_cert:
            _, piv2, T = _rref_with_transform(aug, want_transform=True)
            r = piv2.index(bad)
            cert = Mat(F, [T.rows[r]], A.nrows)
        return None, ker, cert
    z = F.zero
    xrows = [[z] * B.ncols for _ in range(A.ncols)]
    for r, pc in enumerate(piv):
        xrows[pc] = list(R.rows[r][A.ncols :])
    return Mat(F, xrows, B.ncols), ker, None


def row_space_basis(A: Mat) -> Mat:
    """Nonzero rows of rref(A); deterministic basis of the row space."""
    R, piv = A.rref()
    return Mat(A.field, [R.rows[i] for i in range(len(piv))], A.ncols)


def left_null_basis(A: Mat) -> Mat:
    """Rows spanning {v : v @ A = 0}."""
    K = null_right(A.transpose())
    return K.transpose()


def solve_xa_b(A: Mat, B: Mat):
    """Solve X @ A = B for X (row-vector world).  Returns X or None."""
    Xt, _, cert = solve_right(A.transpose(), B.transpose())
    if Xt is None:
        return None
    return Xt.transpose()


def image_basis(A: Mat) -> Mat:
    """Column-space basis of A, returned as columns (column-world op)."""
    Rt = row_space_basis(A.transpose())
    return Rt.transpose()


def mat_kernel_basis(A: Mat) -> Mat:
    """Basis of ker A = {x : A x = 0}, as the columns of the returned matrix."""
    return null_right(A)


def vec_in_row_space(v, B: Mat):
    """Is the row vector v in the row space of B?  Returns coords or None."""
    V = Mat(B.field, [list(v)], B.ncols)
    X = solve_xa_b(B, V)
    return None if X is None else X.rows[0]
