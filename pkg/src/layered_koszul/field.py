"""Exact linear algebra over GF(p) and over the rationals.

Matrices are numpy arrays: ``int64`` residues for a prime field, ``object``
arrays of :class:`fractions.Fraction` for the rational field.  Linear maps
are stored as ``(target_dim, source_dim)`` matrices and may also be given as
``scipy.sparse`` matrices.  Subspaces are kept as row bases in reduced
row-echelon form, which makes equality of subspaces an entrywise comparison.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import scipy.sparse as sp

# float64 holds integers exactly up to 2**53; matmul chunks the inner
# dimension so partial sums of residue products stay below that.
_EXACT_FLOAT = 2**53
_MAX_MODULUS = 2**26
_BLOCK_ROWS = 64


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """The prime field GF(p), or the rationals when ``p`` is None."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None:
            p = int(p)
            if not is_prime(p):
                raise ValueError(f"modulus {p} is not prime")
            if p >= _MAX_MODULUS:
                raise ValueError(f"modulus {p} too large (must be < {_MAX_MODULUS})")
        self.p = p

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def dtype(self):
        return object if self.p is None else np.int64

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    def scalar(self, x):
        """Coerce an int or Fraction into the field."""
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def asarray(self, data, ndmin: int = 0) -> np.ndarray:
        if sp.issparse(data):
            data = data.toarray()
        if self.p is None:
            arr = np.array(data, dtype=object, ndmin=ndmin)
            flat = arr.reshape(-1)
            for i, x in enumerate(flat):
                if not isinstance(x, Fraction):
                    flat[i] = Fraction(x)
            return arr
        arr = np.asarray(data)
        if arr.dtype == object:
            arr = np.vectorize(self.scalar, otypes=[np.int64])(arr) if arr.size else arr.astype(np.int64)
        arr = np.array(arr, dtype=np.int64, ndmin=ndmin) % self.p
        return arr

    def zeros(self, shape) -> np.ndarray:
        if self.p is None:
            out = np.empty(shape, dtype=object)
            out.fill(Fraction(0))
            return out
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        one = self.scalar(1)
        for i in range(n):
            out[i, i] = one
        return out

    def inv(self, x):
        if self.p is None:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.p)

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        return arr if self.p is None else arr % self.p

    def matmul(self, a, b) -> np.ndarray:
        """Exact product ``a @ b``; either operand may be scipy-sparse."""
        if sp.issparse(a) or sp.issparse(b):
            if self.p is None:
                return self.asarray(_dense(a)).dot(self.asarray(_dense(b)))
            a = a.astype(np.int64) if sp.issparse(a) else np.asarray(a, dtype=np.int64)
            b = b.astype(np.int64) if sp.issparse(b) else np.asarray(b, dtype=np.int64)
            out = a @ b
            out = out.toarray() if sp.issparse(out) else np.asarray(out)
            return out % self.p
        if self.p is None:
            a, b = np.asarray(a, dtype=object), np.asarray(b, dtype=object)
            if a.shape[0] == 0 or b.shape[-1] == 0 or a.shape[-1] == 0:
                return self.zeros((a.shape[0], b.shape[-1]))
            return a.dot(b)
        return _matmul_mod(np.asarray(a), np.asarray(b), self.p)


def _dense(m):
    return m.toarray() if sp.issparse(m) else m


def _matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    m, k = a.shape
    n = b.shape[1]
    if m == 0 or n == 0 or k == 0:
        return np.zeros((m, n), dtype=np.int64)
    chunk = max(1, _EXACT_FLOAT // ((p - 1) ** 2 + 1))
    af = a.astype(np.float64)
    bf = b.astype(np.float64)
    out = np.zeros((m, n), dtype=np.float64)
    for s in range(0, k, chunk):
        out += af[:, s:s + chunk] @ bf[s:s + chunk]
        out = np.fmod(out, p)
    return out.astype(np.int64)


GF = Field
QQ = Field(None)
DEFAULT_MODULUS = 32003
DEFAULT_FIELD = Field(DEFAULT_MODULUS)


# ---------------------------------------------------------------------------
# row reduction


def _rref_small(x: np.ndarray, field: Field):
    """Plain Gauss-Jordan on a short matrix; returns (rows, pivot columns)."""
    live = np.flatnonzero((x != 0).any(axis=0))
    if live.size < x.shape[1]:
        # all-zero columns stay zero under row operations
        rows, piv = _rref_small(x[:, live], field)
        out = field.zeros((rows.shape[0], x.shape[1]))
        out[:, live] = rows
        return out, [int(live[c]) for c in piv]
    a = x.copy()
    m, n = a.shape
    p = field.p
    pivots: list[int] = []
    r = 0
    c = 0
    while r < m and c < n:
        nz = a[r:, c:].any(axis=0)
        step = int(nz.argmax())
        if not nz[step]:
            break
        c += step
        i = r + int((a[r:, c] != 0).argmax())
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = field.inv(a[r, c])
        if p is not None:
            a[r, c:] = (a[r, c:] * inv) % p
        else:
            a[r, c:] = a[r, c:] * inv
        rows = np.nonzero(a[:, c])[0]
        if rows.size > 1:
            rows = rows[rows != r]
            f = a[rows, c][:, None]
            upd = a[rows, c:] - f * a[r, c:]
            a[rows, c:] = upd % p if p is not None else upd
        pivots.append(c)
        r += 1
        c += 1
    return a[:r], pivots


def rref_with_pivots(m, field: Field = DEFAULT_FIELD):
    """Reduced row-echelon form with zero rows dropped, plus pivot columns."""
    a = field.asarray(m, ndmin=2)
    if a.size == 0:
        return field.zeros((0, a.shape[1])), ()
    if field.is_rational:
        rows, piv = _rref_small(a, field)
        return rows, tuple(piv)
    return _rref_blocked(a, field)


def _rref_blocked(a: np.ndarray, field: Field):
    p = field.p
    n = a.shape[1]
    basis = np.zeros((0, n), dtype=np.int64)
    pivots: list[int] = []
    for start in range(0, a.shape[0], _BLOCK_ROWS):
        x = a[start:start + _BLOCK_ROWS]
        if pivots:
            x = (x - _matmul_mod(x[:, pivots], basis, p)) % p
        xr, newp = _rref_small(x, field)
        if not newp:
            continue
        if basis.shape[0]:
            basis = (basis - _matmul_mod(basis[:, newp], xr, p)) % p
        basis = np.vstack([basis, xr])
        pivots.extend(newp)
        if len(pivots) == n:
            break
    order = np.argsort(pivots, kind="stable")
    return basis[order], tuple(int(pivots[i]) for i in order)


def rref(m, field: Field = DEFAULT_FIELD) -> np.ndarray:
    return rref_with_pivots(m, field)[0]


def rank(m, field: Field = DEFAULT_FIELD) -> int:
    return len(rref_with_pivots(m, field)[1])


def nullspace(m, field: Field = DEFAULT_FIELD) -> np.ndarray:
    """Rows spanning ``{x : m @ x == 0}`` (not echelonized)."""
    r, piv = rref_with_pivots(m, field)
    n = r.shape[1]
    pivset = set(piv)
    free = [c for c in range(n) if c not in pivset]
    out = field.zeros((len(free), n))
    one = field.scalar(1)
    for t, f in enumerate(free):
        out[t, f] = one
        if piv:
            col = -r[:, f]
            out[t, list(piv)] = field.reduce(col)
    return out


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """A subspace of ``field**ambient_dim`` held by its canonical RREF basis.

    Two instances compare equal exactly when they are the same subspace.
    """

    __slots__ = ("field", "ambient_dim", "basis", "pivots", "_key")

    def __init__(self, field: Field, ambient_dim: int, basis: np.ndarray, pivots):
        # trusted constructor: ``basis`` must already be in RREF
        self.field = field
        self.ambient_dim = int(ambient_dim)
        self.basis = basis
        self.pivots = tuple(pivots)
        self._key = None

    @classmethod
    def span(cls, rows, ambient_dim: int | None = None, field: Field = DEFAULT_FIELD):
        rows = field.asarray(rows, ndmin=2)
        if ambient_dim is None:
            ambient_dim = rows.shape[1]
        if rows.shape[0] == 0:
            return cls.zero(ambient_dim, field)
        if rows.shape[1] != ambient_dim:
            raise ValueError(f"rows have width {rows.shape[1]}, expected {ambient_dim}")
        basis, piv = rref_with_pivots(rows, field)
        return cls(field, ambient_dim, basis, piv)

    @classmethod
    def zero(cls, ambient_dim: int, field: Field = DEFAULT_FIELD):
        return cls(field, ambient_dim, field.zeros((0, ambient_dim)), ())

    @classmethod
    def full(cls, ambient_dim: int, field: Field = DEFAULT_FIELD):
        return cls(field, ambient_dim, field.eye(ambient_dim), range(ambient_dim))

    @classmethod
    def coordinate(cls, indices, ambient_dim: int, field: Field = DEFAULT_FIELD):
        """Span of the standard basis vectors at ``indices``."""
        idx = sorted(set(int(i) for i in indices))
        basis = field.zeros((len(idx), ambient_dim))
        one = field.scalar(1)
        for r, c in enumerate(idx):
            basis[r, c] = one
        return cls(field, ambient_dim, basis, idx)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def __len__(self):
        return self.dim

    def key(self):
        if self._key is None:
            if self.field.is_rational:
                body = tuple(map(tuple, self.basis.tolist()))
            else:
                body = self.basis.tobytes()
            self._key = (self.field.p, self.ambient_dim, self.pivots, body)
        return self._key

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, field={self.field!r})"

    def __add__(self, other):
        return subspace_sum(self, other)

    def __and__(self, other):
        return subspace_intersect(self, other)

    def __le__(self, other):
        return other.contains(self)

    def reduce(self, vectors) -> np.ndarray:
        """Remainders of ``vectors`` modulo this subspace (zero at pivots)."""
        x = self.field.asarray(vectors, ndmin=2)
        if not self.pivots:
            return x
        return self.field.reduce(x - self.field.matmul(x[:, list(self.pivots)], self.basis))

    def contains(self, item) -> bool:
        """Membership of a vector, a stack of row vectors, or a Subspace."""
        if isinstance(item, Subspace):
            _check_same(self, item)
            rows = item.basis
        else:
            rows = self.field.asarray(item, ndmin=2)
        if rows.shape[0] == 0:
            return True
        return not np.any(self.reduce(rows) != 0)

    def __contains__(self, item):
        return self.contains(item)


def _check_same(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(f"ambient dimension mismatch: {a.ambient_dim} vs {b.ambient_dim}")
    if a.field != b.field:
        raise ValueError(f"field mismatch: {a.field!r} vs {b.field!r}")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_same(a, b)
    if b.dim == 0 or a is b:
        return a
    if a.dim == 0:
        return b
    rest = a.reduce(b.basis)
    if not np.any(rest != 0):
        return a
    return Subspace.span(np.vstack([a.basis, rest]), a.ambient_dim, a.field)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection from the left kernel of the stacked bases."""
    _check_same(a, b)
    field = a.field
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim, field)
    if a is b:
        return a
    stacked = np.vstack([a.basis, b.basis])
    # (x, y) with x A + y B = 0  <=>  x A = -y B lies in both
    ker = nullspace(stacked.T, field)
    if ker.shape[0] == 0:
        return Subspace.zero(a.ambient_dim, field)
    return Subspace.span(field.matmul(ker[:, :a.dim], a.basis), a.ambient_dim, field)


def sum_and_intersection(a: Subspace, b: Subspace) -> tuple[Subspace, Subspace]:
    """``(a + b, a ∩ b)`` from one reduction of ``[[A, A], [B, 0]]``.

    Rows of the RREF with a nonzero left half give ``a + b``; the remaining
    rows carry ``a ∩ b`` in their right half.  Both come out canonical.
    """
    _check_same(a, b)
    field, d = a.field, a.ambient_dim
    if a.dim == 0 or b.dim == 0:
        return (b, a) if a.dim == 0 else (a, b)
    if a == b:
        return a, a
    if a.dim == d or b.dim == d:
        return (a, b) if a.dim == d else (b, a)
    top = np.hstack([a.basis, a.basis])
    bottom = np.hstack([b.basis, field.zeros(b.basis.shape)])
    r, piv = rref_with_pivots(np.vstack([top, bottom]), field)
    k = sum(1 for c in piv if c < d)
    join = Subspace(field, d, np.ascontiguousarray(r[:k, :d]), piv[:k])
    meet = Subspace(field, d, np.ascontiguousarray(r[k:, d:]), [c - d for c in piv[k:]])
    return join, meet


def _shape(m):
    return m.shape if hasattr(m, "shape") else np.asarray(m, dtype=object).reshape(len(m), -1).shape


def apply_map(m, s: Subspace) -> Subspace:
    """Image of ``s`` under the map with ``(target, source)`` matrix ``m``."""
    t, src = _shape(m)
    if src != s.ambient_dim:
        raise ValueError(f"map source dim {src} does not match subspace ambient {s.ambient_dim}")
    if s.dim == 0:
        return Subspace.zero(t, s.field)
    if sp.issparse(m):
        img = s.field.matmul(m, s.basis.T).T
    else:
        img = s.field.matmul(s.basis, s.field.asarray(m, ndmin=2).T)
    return Subspace.span(img, t, s.field)


def kernel(m, field: Field = DEFAULT_FIELD) -> Subspace:
    src = _shape(m)[1]
    if _shape(m)[0] == 0:
        return Subspace.full(src, field)
    return Subspace.span(nullspace(field.asarray(_dense(m), ndmin=2), field), src, field)


def preimage(m, s: Subspace) -> Subspace:
    """``{x : m x in s}``, the kernel of (quotient by s) after m."""
    t, src = _shape(m)
    if t != s.ambient_dim:
        raise ValueError(f"map target dim {t} does not match subspace ambient {s.ambient_dim}")
    field = s.field
    cols = field.asarray(_dense(m), ndmin=2).T  # images of source basis vectors
    rest = s.reduce(cols)
    pivset = set(s.pivots)
    keep = [c for c in range(t) if c not in pivset]
    q = rest[:, keep]
    if q.shape[1] == 0:
        return Subspace.full(src, field)
    return Subspace.span(nullspace(q.T, field), src, field)


def intersect_kernel(s: Subspace, m) -> Subspace:
    """``s ∩ ker m`` without forming ``ker m``: combinations of the basis of
    ``s`` that ``m`` kills."""
    t, src = _shape(m)
    if src != s.ambient_dim:
        raise ValueError(f"map source dim {src} does not match subspace ambient {s.ambient_dim}")
    field = s.field
    if s.dim == 0:
        return s
    if sp.issparse(m):
        images = field.matmul(m, s.basis.T).T
    else:
        images = field.matmul(s.basis, field.asarray(m, ndmin=2).T)
    coeffs = nullspace(images.T, field)
    if coeffs.shape[0] == 0:
        return Subspace.zero(src, field)
    return Subspace.span(field.matmul(coeffs, s.basis), src, field)
