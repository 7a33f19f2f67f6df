"""Exact linear algebra over Q: matrices, subspaces, spectra.

Everything here is small and dense (n <= 8 in practice), so plain Gaussian
elimination over exact rationals is the right tool; no floating point
anywhere. Subspaces keep a reduced-echelon basis so that equality and
hashing are structural.
"""

from .errors import NonNilpotentMonodromy
from .scalars import Rational, ZERO, ONE

__all__ = [
    "Matrix",
    "Subspace",
    "char_poly",
    "det",
    "exterior_trace",
    "EigenSplit",
    "jordan_nilpotent",
    "jordan_partition",
    "kernel_basis",
    "kernel_dim",
    "matrix_power",
    "rank",
    "rational_eigenvalues",
    "solve_columns",
]


class Matrix:
    """Immutable exact-rational matrix."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        data = tuple(tuple(Rational(x) for x in row) for row in rows)
        if not data or not data[0]:
            raise ValueError("matrix needs at least one row and one column")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise ValueError("ragged rows")
        object.__setattr__(self, "rows", data)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, n):
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n, m):
        return cls([[ZERO] * m for _ in range(n)])

    @classmethod
    def diagonal(cls, values):
        vals = [Rational(v) for v in values]
        n = len(vals)
        return cls([[vals[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns, nrows):
        cols = [tuple(Rational(x) for x in c) for c in columns]
        if not cols:
            raise ValueError("from_columns needs at least one column")
        if any(len(c) != nrows for c in cols):
            raise ValueError("column length mismatch")
        return cls([[c[i] for c in cols] for i in range(nrows)])

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0])

    @property
    def is_square(self):
        return self.nrows == self.ncols

    @property
    def is_zero(self):
        return all(x == 0 for row in self.rows for x in row)

    def column(self, j):
        return tuple(row[j] for row in self.rows)

    def columns(self):
        return tuple(self.column(j) for j in range(self.ncols))

    def transpose(self):
        return Matrix(self.columns())

    def trace(self):
        if not self.is_square:
            raise ValueError("trace of a non-square matrix")
        return sum((self.rows[i][i] for i in range(self.nrows)), ZERO)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        cols = other.columns()
        return Matrix(
            [[sum((a * c[k] for k, a in enumerate(row)), ZERO) for c in cols] for row in self.rows]
        )

    def __add__(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch in +")
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Matrix([[-a for a in row] for row in self.rows])

    def __mul__(self, scalar):
        c = Rational(scalar)
        return Matrix([[c * a for a in row] for row in self.rows])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def inverse(self):
        if not self.is_square:
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        aug = [list(row) + [ONE if i == j else ZERO for j in range(n)]
               for i, row in enumerate(self.rows)]
        reduced, pivots = _rref(aug)
        if len(pivots) < n or any(p >= n for p in pivots):
            raise ValueError("matrix is singular")
        return Matrix([row[n:] for row in reduced])

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.rows)
        return f"Matrix[{body}]"


def _rref(rows):
    """In-place reduced row echelon form; returns (rows, pivot column list)."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rank(m):
    _, pivots = _rref([list(row) for row in m.rows])
    return len(pivots)


def kernel_dim(m):
    """Dimension of the null space (columns minus rank)."""
    return m.ncols - rank(m)


def kernel_basis(m):
    """Canonical basis of the null space, one vector per free column."""
    reduced, pivots = _rref([list(row) for row in m.rows])
    pivot_of = {c: i for i, c in enumerate(pivots)}
    free = [c for c in range(m.ncols) if c not in pivot_of]
    out = []
    for f in free:
        v = [ZERO] * m.ncols
        v[f] = ONE
        for c, i in pivot_of.items():
            v[c] = -reduced[i][f]
        out.append(tuple(v))
    return tuple(out)


def solve_columns(a, b):
    """One exact solution X of A @ X = B, or None when inconsistent.

    Free variables, if any, are set to zero.
    """
    if a.nrows != b.nrows:
        raise ValueError("row count mismatch in solve")
    k = a.ncols
    aug = [list(ra) + list(rb) for ra, rb in zip(a.rows, b.rows)]
    reduced, pivots = _rref(aug)
    if any(p >= k for p in pivots):
        return None
    x = [[ZERO] * b.ncols for _ in range(k)]
    for i, c in enumerate(pivots):
        for j in range(b.ncols):
            x[c][j] = reduced[i][k + j]
    return Matrix(x)


def det(m):
    if not m.is_square:
        raise ValueError("determinant of a non-square matrix")
    rows = [list(row) for row in m.rows]
    n = len(rows)
    sign = ONE
    acc = ONE
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pivot_row is None:
            return ZERO
        if pivot_row != c:
            rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
            sign = -sign
        acc *= rows[c][c]
        inv = ONE / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                factor = rows[i][c] * inv
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[c])]
    return sign * acc


def matrix_power(m, k):
    if not m.is_square:
        raise ValueError("power of a non-square matrix")
    if k < 0:
        return matrix_power(m.inverse(), -k)
    out = Matrix.identity(m.nrows)
    base = m
    while k:
        if k & 1:
            out = out @ base
        base = base @ base if k > 1 else base
        k >>= 1
    return out


def char_poly(m):
    """Characteristic polynomial det(x*I - M), coefficients ascending, monic.

    Faddeev-LeVerrier recursion: every division is by an integer k, so the
    result is exact over Q.
    """
    if not m.is_square:
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = m.nrows
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    a = m
    c = ONE
    for k in range(1, n + 1):
        if k > 1:
            a = m @ (a + c * Matrix.identity(n))
        c = -a.trace() / Rational(k)
        coeffs[n - k] = c
    return tuple(coeffs)


def exterior_trace(m, r):
    """Trace of the r-th exterior power: the sum of r x r principal minors."""
    n = m.nrows
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= {n}, got {r}")
    coeffs = char_poly(m)
    return coeffs[n - r] if r % 2 == 0 else -coeffs[n - r]


class EigenSplit:
    """Outcome of rational spectrum extraction.

    ``roots`` lists (value, multiplicity) sorted by value; ``residual`` is
    the monic factor without rational roots, or None when the polynomial
    splits completely.
    """

    __slots__ = ("roots", "residual")

    def __init__(self, roots, residual):
        object.__setattr__(self, "roots", tuple(roots))
        object.__setattr__(self, "residual", None if residual is None else tuple(residual))

    def __setattr__(self, name, value):
        raise AttributeError("EigenSplit is immutable")

    @property
    def is_split(self):
        return self.residual is None

    def multiset(self):
        out = []
        for value, mult in self.roots:
            out.extend([value] * mult)
        return out

    def __repr__(self):
        return f"EigenSplit(roots={self.roots!r}, residual={self.residual!r})"


def _divisors(n):
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _poly_eval(coeffs, x):
    acc = ZERO
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deflate(coeffs, root):
    # divide the monic polynomial by (x - root); exact synthetic division
    out = [ZERO] * (len(coeffs) - 1)
    carry = ZERO
    for i in range(len(coeffs) - 1, 0, -1):
        carry = coeffs[i] + carry * root
        out[i - 1] = carry
    return out


def rational_eigenvalues(m):
    """Split the characteristic polynomial into rational roots and a residual.

    Never raises on irrational spectrum; inspect ``is_split`` instead.
    """
    coeffs = list(char_poly(m))
    roots = {}
    zero_mult = 0
    while coeffs[0] == 0 and len(coeffs) > 1:
        coeffs = coeffs[1:]
        zero_mult += 1
    if zero_mult:
        roots[ZERO] = zero_mult
    if len(coeffs) > 1:
        scale = 1
        for c in coeffs:
            scale = scale * int(c.denominator) // _gcd(scale, int(c.denominator))
        ints = [int(c * scale) for c in coeffs]
        candidates = set()
        for top in _divisors(ints[0]):
            for bottom in _divisors(ints[-1]):
                candidates.add(Rational(top) / bottom)
                candidates.add(Rational(-top) / bottom)
        for cand in sorted(candidates):
            while len(coeffs) > 1 and _poly_eval(coeffs, cand) == 0:
                coeffs = _deflate(coeffs, cand)
                roots[cand] = roots.get(cand, 0) + 1
    residual = None if len(coeffs) == 1 else coeffs
    ordered = tuple(sorted(roots.items()))
    return EigenSplit(ordered, residual)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def jordan_nilpotent(sizes):
    """Canonical nilpotent with the given Jordan block sizes (ones above the diagonal)."""
    sizes = [int(k) for k in sizes]
    if not sizes or any(k < 1 for k in sizes):
        raise ValueError("block sizes must be positive")
    n = sum(sizes)
    rows = [[ZERO] * n for _ in range(n)]
    offset = 0
    for k in sizes:
        for i in range(k - 1):
            rows[offset + i][offset + i + 1] = ONE
        offset += k
    return Matrix(rows)


def jordan_partition(n_mat):
    """Jordan block sizes of a nilpotent matrix, largest first.

    Computed as the conjugate of the kernel-growth partition
    (dim ker N^i - dim ker N^(i-1)).
    """
    from .partitions import Partition, conjugate

    if not n_mat.is_square:
        raise ValueError("jordan_partition needs a square matrix")
    size = n_mat.nrows
    growth = []
    prev = 0
    power = Matrix.identity(size)
    for _ in range(size):
        power = power @ n_mat
        cur = kernel_dim(power)
        if cur == prev:
            break
        growth.append(cur - prev)
        prev = cur
    if prev != size:
        raise NonNilpotentMonodromy(size)
    return conjugate(Partition(growth))


class Subspace:
    """A linear subspace of Q^n with a canonical reduced-echelon basis.

    Two spans of the same space compare equal and hash equal.
    """

    __slots__ = ("ambient", "basis")

    def __init__(self, ambient, vectors):
        ambient = int(ambient)
        rows = [[Rational(x) for x in v] for v in vectors]
        if any(len(r) != ambient for r in rows):
            raise ValueError("vector length mismatch")
        if rows:
            reduced, pivots = _rref(rows)
            basis = tuple(tuple(reduced[i]) for i in range(len(pivots)))
        else:
            basis = ()
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def span(cls, ambient, vectors):
        return cls(ambient, vectors)

    @classmethod
    def zero(cls, ambient):
        return cls(ambient, [])

    @classmethod
    def full(cls, ambient):
        return cls(ambient, Matrix.identity(ambient).rows)

    @property
    def dim(self):
        return len(self.basis)

    def matrix(self):
        if not self.basis:
            raise ValueError("the zero subspace has no basis matrix")
        return Matrix.from_columns(self.basis, self.ambient)

    def _reduce(self, vector):
        v = [Rational(x) for x in vector]
        for row in self.basis:
            pivot = next(i for i, x in enumerate(row) if x != 0)
            if v[pivot] != 0:
                factor = v[pivot]
                v = [a - factor * b for a, b in zip(v, row)]
        return v

    def contains_vector(self, vector):
        return all(x == 0 for x in self._reduce(vector))

    def contains(self, other):
        if other.ambient != self.ambient:
            raise ValueError("ambient dimension mismatch")
        return all(self.contains_vector(v) for v in other.basis)

    def intersect(self, other):
        if other.ambient != self.ambient:
            raise ValueError("ambient dimension mismatch")
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient)
        stacked = Matrix.from_columns(self.basis + other.basis, self.ambient)
        vectors = []
        for combo in kernel_basis(stacked):
            vec = [ZERO] * self.ambient
            for coeff, col in zip(combo[: self.dim], self.basis):
                vec = [a + coeff * b for a, b in zip(vec, col)]
            vectors.append(vec)
        return Subspace(self.ambient, vectors)

    def is_stable_under(self, m):
        if m.ncols != self.ambient:
            raise ValueError("ambient dimension mismatch")
        return all(self.contains_vector((m @ Matrix.from_columns([v], self.ambient)).column(0))
                   for v in self.basis)

    def restrict(self, m):
        """Matrix of m on this subspace in its canonical basis."""
        if self.dim == 0:
            raise ValueError("cannot restrict to the zero subspace")
        b = self.matrix()
        x = solve_columns(b, m @ b)
        if x is None:
            raise ValueError("subspace is not stable under the given matrix")
        return x

    def sort_key(self):
        return (self.dim, self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim} of Q^{self.ambient})"
