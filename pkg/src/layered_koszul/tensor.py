"""Graded pieces of a tensor algebra and the structural maps between them.

Letters are integers ``0..n-1`` into an :class:`Alphabet` (the canonical
order of ``V^+``, or the edge set).  The length-``k`` component has the
words of length ``k`` as basis, indexed lexicographically, so the index of a
concatenation ``uv`` is ``index(u) * n**len(v) + index(v)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np
import scipy.sparse as sp

from .errors import AmbientCapExceeded
from .field import DEFAULT_FIELD, Field, Subspace
from .graph import LayeredGraph

DEFAULT_AMBIENT_CAP = 2 * 10**6

Word = tuple


@dataclass(frozen=True)
class Alphabet:
    labels: tuple[str, ...]
    levels: tuple[int, ...]

    @classmethod
    def vertices(cls, graph: LayeredGraph) -> "Alphabet":
        """``V^+`` in canonical order (descending level, then name)."""
        return cls(tuple(v.name for v in graph.positive), tuple(v.level for v in graph.positive))

    @classmethod
    def edges(cls, graph: LayeredGraph) -> "Alphabet":
        """Edges in canonical order; an edge's level is that of its tail."""
        es = graph.edges
        return cls(
            tuple(f"{e.tail}>{e.head}#{e.id}" for e in es),
            tuple(graph.level(e.tail) for e in es),
        )

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    def letter(self, label: str) -> int:
        return self.labels.index(label)

    def word(self, labels) -> Word:
        return tuple(self.letter(x) for x in labels)


def word_index(word: Word, n: int) -> int:
    i = 0
    for x in word:
        i = i * n + x
    return i


def index_word(i: int, n: int, k: int) -> Word:
    out = [0] * k
    for t in range(k - 1, -1, -1):
        i, out[t] = divmod(i, n)
    return tuple(out)


def weight(word: Word, alphabet: Alphabet) -> int:
    """Sum of the letters' levels."""
    return sum(alphabet.levels[x] for x in word)


def check_ambient(n: int, k: int, cap: int | None = DEFAULT_AMBIENT_CAP) -> int:
    dim = n**k
    if cap is not None and dim > cap:
        raise AmbientCapExceeded(
            f"instance too large: length-{k} component has {dim} coordinates (cap {cap})", cap
        )
    return dim


class GradedComponent:
    """The span of all length-``k`` words."""

    def __init__(self, alphabet: Alphabet, k: int, cap: int | None = DEFAULT_AMBIENT_CAP):
        self.alphabet = alphabet
        self.length = k
        self.dim = check_ambient(alphabet.size, k, cap)

    def index(self, word: Word) -> int:
        if len(word) != self.length:
            raise ValueError(f"word of length {len(word)} in length-{self.length} component")
        return word_index(word, self.alphabet.size)

    def word(self, i: int) -> Word:
        return index_word(i, self.alphabet.size, self.length)

    def words(self) -> Iterator[Word]:
        for i in range(self.dim):
            yield self.word(i)

    def weights(self) -> np.ndarray:
        lv = np.asarray(self.alphabet.levels, dtype=np.int64)
        n = self.alphabet.size
        out = np.zeros(self.dim, dtype=np.int64)
        for t in range(self.length):
            stride = n ** (self.length - 1 - t)
            out += lv[(np.arange(self.dim) // stride) % n]
        return out

    def level_profiles(self) -> np.ndarray:
        """Per coordinate, the sequence of letter levels packed into one int."""
        lv = np.asarray(self.alphabet.levels, dtype=np.int64)
        base = max(lv.max(initial=0) + 1, 2)
        n = self.alphabet.size
        out = np.zeros(self.dim, dtype=np.int64)
        for t in range(self.length):
            stride = n ** (self.length - 1 - t)
            out = out * base + lv[(np.arange(self.dim) // stride) % n]
        return out


def _fmt_coeff(c) -> tuple[str, str]:
    sign = "+" if c > 0 else "−"
    mag = abs(c)
    if isinstance(mag, Fraction) and mag.denominator == 1:
        mag = mag.numerator
    return sign, str(mag)


class TensorVector:
    """A homogeneous element of one length component, as ``{word: coeff}``.

    Coefficients are exact ints or Fractions; they are mapped into a finite
    field only when converted to a coordinate array.
    """

    __slots__ = ("alphabet", "length", "coeffs")

    def __init__(self, alphabet: Alphabet, length: int, coeffs=None):
        self.alphabet = alphabet
        self.length = length
        clean = {}
        for w, c in (coeffs or {}).items():
            w = tuple(w)
            if len(w) != length:
                raise ValueError(f"word {w} is not of length {length}")
            if c != 0:
                clean[w] = c
        self.coeffs = clean

    @classmethod
    def unit(cls, alphabet: Alphabet) -> "TensorVector":
        return cls(alphabet, 0, {(): 1})

    @classmethod
    def monomial(cls, alphabet: Alphabet, word: Word, coeff=1) -> "TensorVector":
        return cls(alphabet, len(word), {tuple(word): coeff})

    @classmethod
    def letters(cls, alphabet: Alphabet, coeffs: dict[int, int]) -> "TensorVector":
        return cls(alphabet, 1, {(x,): c for x, c in coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def _combine(self, other: "TensorVector", s: int) -> "TensorVector":
        if other.length != self.length:
            raise ValueError("cannot add vectors of different length")
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, 0) + s * c
        return TensorVector(self.alphabet, self.length, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "TensorVector":
        return TensorVector(self.alphabet, self.length, {w: c * x for w, x in self.coeffs.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, other):
        """Concatenation product in the tensor algebra."""
        if not isinstance(other, TensorVector):
            return self.scale(other)
        out: dict = {}
        for u, a in self.coeffs.items():
            for v, b in other.coeffs.items():
                out[u + v] = out.get(u + v, 0) + a * b
        return TensorVector(self.alphabet, self.length + other.length, out)

    def __eq__(self, other):
        if not isinstance(other, TensorVector):
            return NotImplemented
        return self.length == other.length and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.length, frozenset(self.coeffs.items())))

    def weights(self) -> dict[Word, int]:
        return {w: weight(w, self.alphabet) for w in self.coeffs}

    def leading_part(self) -> "TensorVector":
        """Terms of maximal weight (the associated-graded leading term)."""
        if not self.coeffs:
            return self
        ws = self.weights()
        top = max(ws.values())
        return TensorVector(self.alphabet, self.length, {w: c for w, c in self.coeffs.items() if ws[w] == top})

    def to_array(self, field: Field = DEFAULT_FIELD) -> np.ndarray:
        n = self.alphabet.size
        out = field.zeros(n**self.length)
        for w, c in self.coeffs.items():
            out[word_index(w, n)] = field.scalar(c)
        return out

    @classmethod
    def from_array(cls, alphabet: Alphabet, length: int, arr, field: Field = DEFAULT_FIELD) -> "TensorVector":
        """Read coordinates back; residues above p/2 are shown as negatives."""
        arr = np.asarray(arr)
        out = {}
        for i in np.flatnonzero(arr != 0):
            c = arr[i]
            if field.p is not None:
                c = int(c)
                c = c - field.p if c > field.p // 2 else c
            out[index_word(int(i), alphabet.size, length)] = c
        return cls(alphabet, length, out)

    def format(self) -> str:
        if not self.coeffs:
            return "0"
        n = self.alphabet.size
        parts = []
        for w in sorted(self.coeffs, key=lambda w: word_index(w, n)):
            sign, mag = _fmt_coeff(self.coeffs[w])
            parts.append(f"{sign}{mag}·[" + "|".join(self.alphabet.labels[x] for x in w) + "]")
        return " ".join(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"TensorVector({self.format()})"


# maps and products -----------------------------------------------------------


def f_map(n: int, k: int, position: int) -> sp.csr_matrix:
    """Matrix of ``I^position ⊗ f ⊗ I^(k-position-1)`` where ``f`` sends
    every letter to 1; shape ``(n**(k-1), n**k)``."""
    if not 0 <= position < k:
        raise ValueError(f"position {position} out of range for length {k}")
    src = np.arange(n**k)
    right = n ** (k - 1 - position)
    tgt = (src // (right * n)) * right + src % right
    return sp.csr_matrix((np.ones(src.size, dtype=np.int64), (tgt, src)), shape=(n ** (k - 1), n**k))


def g_map(n: int, length: int) -> sp.csr_matrix:
    """``f ⊗ I^(length-1)``: drop the first letter."""
    return f_map(n, length, 0)


def full_power(n: int, m: int, field: Field = DEFAULT_FIELD, cap: int | None = DEFAULT_AMBIENT_CAP) -> Subspace:
    return Subspace.full(check_ambient(n, m, cap), field)


def concat_subspaces(a: Subspace, b: Subspace, cap: int | None = DEFAULT_AMBIENT_CAP) -> Subspace:
    """Span of all concatenations ``x ⊗ y`` with ``x`` in ``a`` and ``y`` in ``b``.

    Kronecker products of RREF bases are again in RREF, so no reduction
    is needed.
    """
    if a.field != b.field:
        raise ValueError("field mismatch")
    field = a.field
    amb = a.ambient_dim * b.ambient_dim
    if cap is not None and amb > cap:
        raise AmbientCapExceeded(f"instance too large: product ambient {amb} (cap {cap})", cap)
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(amb, field)
    rows = a.basis[:, None, :, None] * b.basis[None, :, None, :]
    rows = field.reduce(rows.reshape(a.dim * b.dim, amb))
    piv = [pa * b.ambient_dim + pb for pa in a.pivots for pb in b.pivots]
    return Subspace(field, amb, rows, piv)


def power_sandwich(n: int, left: int, s: Subspace, right: int, cap: int | None = DEFAULT_AMBIENT_CAP) -> Subspace:
    """``V^left · s · V^right``."""
    out = s
    if left:
        out = concat_subspaces(full_power(n, left, s.field, cap), out, cap)
    if right:
        out = concat_subspaces(out, full_power(n, right, s.field, cap), cap)
    return out
