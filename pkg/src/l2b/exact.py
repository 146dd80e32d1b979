"""Exact rational scalars and sparse multilinear tensors.

The only scalar type anywhere in the kernel is `fractions.Fraction`
(always stored in lowest terms with positive denominator, so equality is
structural and every verification check is decidable).  Tensors are
immutable sparse maps from index tuples to nonzero scalars; two tensors
are equal iff their dimension tuples and entry maps are equal.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

Rational = Fraction


class DimensionMismatch(ValueError):
    """Axes paired in a tensor operation have unequal dimensions."""


class MalformedPermutation(ValueError):
    """A permutation argument is not a bijection of its index range."""


_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse "p" or "p/q" (q > 0) into a canonical Fraction."""
    if not isinstance(text, str) or not _RATIONAL_RE.match(text.strip()):
        raise ValueError(f"bad rational literal {text!r}: expected 'p' or 'p/q'")
    s = text.strip()
    if "/" in s and s.split("/")[1].lstrip("0") == "":
        raise ValueError(f"bad rational literal {text!r}: zero denominator")
    return Fraction(s)


def format_rational(q: Fraction) -> str:
    """Canonical string form: "p/q" for non-integers, plain "p" otherwise."""
    return str(Fraction(q))


def perm_parity(perm) -> int:
    """Sign (+1/-1) of a permutation given as a sequence of distinct ints."""
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def koszul_sign(degrees, permutation) -> int:
    """Sign picked up when reordering homogeneous elements by a permutation.

    `degrees[i]` is the total degree of the i-th element of the original
    word; `permutation[k]` is the original position of the element placed
    k-th in the reordered word.  Transposing elements of degrees p and q
    contributes (-1)**(p*q).
    """
    n = len(degrees)
    perm = list(permutation)
    if sorted(perm) != list(range(n)):
        raise MalformedPermutation(
            f"{permutation!r} is not a bijection of range({n})"
        )
    exponent = 0
    for k in range(n):
        for l in range(k + 1, n):
            if perm[k] > perm[l]:
                exponent += degrees[perm[k]] * degrees[perm[l]]
    return -1 if exponent % 2 else 1


@dataclass(frozen=True)
class SparseTensor:
    """Sparse exact tensor: dims plus a zero-free map index tuple -> Fraction."""

    dims: tuple[int, ...]
    entries: dict[tuple[int, ...], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if any(d < 0 for d in dims):
            raise ValueError(f"negative dimension in {dims}")
        clean: dict[tuple[int, ...], Fraction] = {}
        for idx, val in self.entries.items():
            idx = tuple(int(i) for i in idx)
            if len(idx) != len(dims):
                raise DimensionMismatch(
                    f"index {idx} has rank {len(idx)}, tensor has rank {len(dims)}"
                )
            for ax, (i, d) in enumerate(zip(idx, dims)):
                if not 0 <= i < d:
                    raise ValueError(
                        f"index {idx} out of bounds on axis {ax} (dim {d})"
                    )
            q = Fraction(val)
            if q:
                clean[idx] = q
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "entries", clean)

    @property
    def rank(self) -> int:
        return len(self.dims)

    @classmethod
    def zero(cls, dims) -> "SparseTensor":
        return cls(tuple(dims), {})

    def get(self, idx) -> Fraction:
        return self.entries.get(tuple(idx), Fraction(0))

    def is_zero(self) -> bool:
        return not self.entries

    def items_sorted(self):
        return sorted(self.entries.items())

    def add(self, other: "SparseTensor") -> "SparseTensor":
        if self.dims != other.dims:
            raise DimensionMismatch(f"{self.dims} vs {other.dims}")
        out = dict(self.entries)
        for idx, val in other.entries.items():
            out[idx] = out.get(idx, Fraction(0)) + val
        return SparseTensor(self.dims, out)

    def sub(self, other: "SparseTensor") -> "SparseTensor":
        return self.add(other.scale(Fraction(-1)))

    def scale(self, c) -> "SparseTensor":
        c = Fraction(c)
        return SparseTensor(self.dims, {i: c * v for i, v in self.entries.items()})


def contract(t1: SparseTensor, t2: SparseTensor, pairs) -> SparseTensor:
    """Contract paired axes of two tensors.

    `pairs` lists (axis of t1, axis of t2); paired axes must have equal
    dimensions.  Result axes are the free axes of t1 followed by the free
    axes of t2, in their original order.
    """
    pairs = [(int(a), int(b)) for a, b in pairs]
    a_axes = [a for a, _ in pairs]
    b_axes = [b for _, b in pairs]
    if len(set(a_axes)) != len(a_axes) or len(set(b_axes)) != len(b_axes):
        raise DimensionMismatch(f"repeated axis in contraction pairs {pairs}")
    for a, b in pairs:
        if not 0 <= a < t1.rank or not 0 <= b < t2.rank:
            raise DimensionMismatch(f"axis pair ({a},{b}) out of range")
        if t1.dims[a] != t2.dims[b]:
            raise DimensionMismatch(
                f"axis {a} of left operand (dim {t1.dims[a]}) vs "
                f"axis {b} of right operand (dim {t2.dims[b]})"
            )
    free1 = [ax for ax in range(t1.rank) if ax not in a_axes]
    free2 = [ax for ax in range(t2.rank) if ax not in b_axes]
    groups: dict[tuple[int, ...], list] = {}
    for idx2, v2 in t2.entries.items():
        key = tuple(idx2[pairs[k][1]] for k in range(len(pairs)))
        groups.setdefault(key, []).append(
            (tuple(idx2[ax] for ax in free2), v2)
        )
    out: dict[tuple[int, ...], Fraction] = {}
    for idx1, v1 in t1.entries.items():
        key = tuple(idx1[pairs[k][0]] for k in range(len(pairs)))
        f1 = tuple(idx1[ax] for ax in free1)
        for f2, v2 in groups.get(key, ()):
            full = f1 + f2
            out[full] = out.get(full, Fraction(0)) + v1 * v2
    dims = tuple(t1.dims[ax] for ax in free1) + tuple(t2.dims[ax] for ax in free2)
    return SparseTensor(dims, out)


def alternate(t: SparseTensor, axes) -> SparseTensor:
    """Full antisymmetrization over the listed axes, with 1/k! normalization."""
    axes = [int(a) for a in axes]
    if len(set(axes)) != len(axes):
        raise DimensionMismatch(f"repeated axis in {axes}")
    for a in axes:
        if not 0 <= a < t.rank:
            raise DimensionMismatch(f"axis {a} out of range for rank {t.rank}")
    dims = {t.dims[a] for a in axes}
    if len(dims) > 1:
        raise DimensionMismatch(
            f"alternated axes {axes} have unequal dimensions "
            f"{[t.dims[a] for a in axes]}"
        )
    k = len(axes)
    norm = Fraction(1, factorial(k))
    out: dict[tuple[int, ...], Fraction] = {}
    for idx, val in t.entries.items():
        for perm in itertools.permutations(range(k)):
            sign = perm_parity(perm)
            new_idx = list(idx)
            for pos, src in enumerate(perm):
                new_idx[axes[pos]] = idx[axes[src]]
            key = tuple(new_idx)
            out[key] = out.get(key, Fraction(0)) + sign * val * norm
    return SparseTensor(t.dims, out)


def permute_axes(t: SparseTensor, perm) -> SparseTensor:
    """Reindex axes: result axis k is source axis perm[k]."""
    perm = list(perm)
    if sorted(perm) != list(range(t.rank)):
        raise MalformedPermutation(f"{perm!r} is not a bijection of range({t.rank})")
    dims = tuple(t.dims[p] for p in perm)
    out = {}
    for idx, val in t.entries.items():
        out[tuple(idx[p] for p in perm)] = val
    return SparseTensor(dims, out)


# --- small exact matrices (tuples of row tuples) ---------------------------

Matrix = tuple


def matrix(rows) -> Matrix:
    """Coerce nested iterables into a rectangular tuple-of-tuples of Fractions."""
    rows = tuple(tuple(Fraction(x) for x in row) for row in rows)
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise DimensionMismatch(f"ragged matrix rows with widths {sorted(widths)}")
    return rows


def zero_matrix(nrows: int, ncols: int) -> Matrix:
    return tuple(tuple(Fraction(0) for _ in range(ncols)) for _ in range(nrows))


def identity_matrix(n: int) -> Matrix:
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n))
        for i in range(n)
    )


def mat_shape(m: Matrix, ncols_if_empty: int = 0) -> tuple[int, int]:
    if not m:
        return (0, ncols_if_empty)
    return (len(m), len(m[0]))


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c, a: Matrix) -> Matrix:
    c = Fraction(c)
    return tuple(tuple(c * x for x in row) for row in a)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return ()
    n, k = len(a), len(a[0])
    if k != len(b):
        raise DimensionMismatch(f"matrix shapes ({n},{k}) x ({len(b)},...)")
    if not b:
        # k == 0 and the column count of b is taken as 0 (the 0x0 case)
        return tuple(() for _ in a)
    m = len(b[0])
    return tuple(
        tuple(sum((a[i][t] * b[t][j] for t in range(k)), Fraction(0)) for j in range(m))
        for i in range(n)
    )


def mat_transpose(a: Matrix, ncols_if_empty: int = 0) -> Matrix:
    if not a:
        return tuple(() for _ in range(ncols_if_empty))
    return tuple(tuple(a[i][j] for i in range(len(a))) for j in range(len(a[0])))


def mat_is_zero(a: Matrix) -> bool:
    return all(all(x == 0 for x in row) for row in a)
