"""Lie algebras, representations and cobrackets by structure constants.

Index conventions:

* a bracket tensor stores ``(i, j, k) -> c`` meaning the coefficient of
  ``e_k`` in ``[e_i, e_j]`` is ``c`` (antisymmetric in ``i, j``, enforced
  at construction; the Jacobi identity is deliberately *not* a construction
  invariant -- it is what `verify_lie` checks, and invalid candidates must
  be representable for negative tests);
* a cobracket tensor stores ``(i, j, k) -> d`` meaning
  ``delta(e_i) = sum_{j<k} d * e_j ^ e_k`` (antisymmetric in ``j, k``).

The 1-cocycle convention is ``delta([x,y]) = x.delta(y) - y.delta(x)``
with ``x`` acting on wedge squares by the extended adjoint action
``x.(u^v) = [x,u]^v + u^[x,v]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .exact import (
    DimensionMismatch,
    Matrix,
    SparseTensor,
    format_rational,
    mat_mul,
    mat_sub,
    matrix,
    permute_axes,
    zero_matrix,
)

# --- verification reports ---------------------------------------------------


@dataclass(frozen=True)
class Witness:
    """Offending basis tuple with the two sides that failed to agree.

    ``at`` carries a rendered location (generator or monomial names) for
    checks whose failure site is not a bare index tuple.
    """

    indices: tuple[int, ...]
    lhs: str
    rhs: str
    at: str = ""


@dataclass(frozen=True)
class Check:
    cond: str
    passed: bool
    witness: Witness | None = None


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[Check, ...]
    metadata: tuple[tuple[str, str], ...] = ()

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, cond: str) -> Check:
        for c in self.checks:
            if c.cond == cond:
                return c
        raise KeyError(cond)

    def prefixed(self, prefix: str) -> "VerificationReport":
        return VerificationReport(
            tuple(Check(prefix + c.cond, c.passed, c.witness) for c in self.checks),
            self.metadata,
        )


def combine(*reports: VerificationReport) -> VerificationReport:
    checks = tuple(itertools.chain.from_iterable(r.checks for r in reports))
    metadata = tuple(itertools.chain.from_iterable(r.metadata for r in reports))
    return VerificationReport(checks, metadata)


def _vec_render(coeffs: dict[int, Fraction], labels) -> str:
    if not coeffs:
        return "0"
    parts = []
    for i in sorted(coeffs):
        parts.append(f"({format_rational(coeffs[i])})*{labels[i]}")
    return " + ".join(parts)


# --- core types --------------------------------------------------------------


@dataclass(frozen=True)
class LieAlgebra:
    labels: tuple[str, ...]
    bracket: SparseTensor  # (i, j, k) -> coefficient of e_k in [e_i, e_j]

    def __post_init__(self):
        labels = tuple(str(s) for s in self.labels)
        object.__setattr__(self, "labels", labels)
        n = len(labels)
        if self.bracket.dims != (n, n, n):
            raise DimensionMismatch(
                f"bracket dims {self.bracket.dims} do not match dimension {n}"
            )
        for (i, j, k), v in self.bracket.entries.items():
            if self.bracket.get((j, i, k)) != -v:
                raise ValueError(
                    f"bracket tensor not antisymmetric at {(i, j, k)}"
                )

    @property
    def dim(self) -> int:
        return len(self.labels)

    @classmethod
    def abelian(cls, labels) -> "LieAlgebra":
        labels = tuple(labels)
        n = len(labels)
        return cls(labels, SparseTensor.zero((n, n, n)))

    @classmethod
    def from_table(cls, labels, table) -> "LieAlgebra":
        """Build from ``{(i, j): {k: coeff}}`` for i < j; the mirror is filled in."""
        labels = tuple(labels)
        n = len(labels)
        entries: dict[tuple[int, int, int], Fraction] = {}
        for (i, j), row in table.items():
            if i == j:
                raise ValueError(f"diagonal bracket entry ({i},{i})")
            for k, c in row.items():
                c = Fraction(c)
                entries[(i, j, k)] = entries.get((i, j, k), Fraction(0)) + c
                entries[(j, i, k)] = entries.get((j, i, k), Fraction(0)) - c
        return cls(labels, SparseTensor((n, n, n), entries))

    def bracket_coeffs(self, i: int, j: int) -> dict[int, Fraction]:
        """Coefficients of [e_i, e_j] in the basis."""
        out = {}
        for (a, b, k), v in self.bracket.entries.items():
            if a == i and b == j:
                out[k] = v
        return out


@dataclass(frozen=True)
class Representation:
    algebra: LieAlgebra
    module_dim: int
    matrices: tuple[Matrix, ...]  # one m x m matrix per basis element

    def __post_init__(self):
        mats = tuple(matrix(m) for m in self.matrices)
        object.__setattr__(self, "matrices", mats)
        n, m = self.algebra.dim, self.module_dim
        if len(mats) != n:
            raise DimensionMismatch(f"{len(mats)} matrices for dimension {n}")
        for rho in mats:
            if len(rho) != m or any(len(row) != m for row in rho):
                raise DimensionMismatch(
                    f"matrix shape inconsistent with module dimension {m}"
                )


@dataclass(frozen=True)
class LieCobracket:
    dim: int
    tensor: SparseTensor  # (i, j, k) -> coefficient of e_j^e_k in delta(e_i)

    def __post_init__(self):
        n = self.dim
        if self.tensor.dims != (n, n, n):
            raise DimensionMismatch(
                f"cobracket dims {self.tensor.dims} do not match dimension {n}"
            )
        for (i, j, k), v in self.tensor.entries.items():
            if self.tensor.get((i, k, j)) != -v:
                raise ValueError(
                    f"cobracket tensor not antisymmetric at {(i, j, k)}"
                )

    @classmethod
    def zero(cls, n: int) -> "LieCobracket":
        return cls(n, SparseTensor.zero((n, n, n)))

    @classmethod
    def from_table(cls, n: int, table) -> "LieCobracket":
        """Build from ``{i: {(j, k): coeff}}`` for j < k; the mirror is filled in."""
        entries: dict[tuple[int, int, int], Fraction] = {}
        for i, row in table.items():
            for (j, k), c in row.items():
                if j == k:
                    raise ValueError(f"diagonal wedge entry ({j},{j})")
                c = Fraction(c)
                entries[(i, j, k)] = entries.get((i, j, k), Fraction(0)) + c
                entries[(i, k, j)] = entries.get((i, k, j), Fraction(0)) - c
        return cls(n, SparseTensor((n, n, n), entries))

    def image_of(self, i: int) -> dict[tuple[int, int], Fraction]:
        """delta(e_i) as a map (j, k) -> coeff with j < k."""
        out = {}
        for (a, j, k), v in self.tensor.entries.items():
            if a == i and j < k:
                out[(j, k)] = v
        return out


# --- wedge-square helpers (internal) -----------------------------------------


def _w2_add(acc: dict, key: tuple[int, int], val: Fraction):
    if val == 0:
        return
    j, k = key
    if j == k:
        return
    if j > k:
        j, k, val = k, j, -val
    acc[(j, k)] = acc.get((j, k), Fraction(0)) + val
    if acc[(j, k)] == 0:
        del acc[(j, k)]


def _ad2(g: LieAlgebra, x: int, w2: dict) -> dict:
    """Extended adjoint action of e_x on a wedge square: [x,u]^v + u^[x,v]."""
    out: dict = {}
    for (u, v), c in w2.items():
        for m, cm in g.bracket_coeffs(x, u).items():
            _w2_add(out, (m, v), c * cm)
        for m, cm in g.bracket_coeffs(x, v).items():
            _w2_add(out, (u, m), c * cm)
    return out


def _w2_render(w2: dict, labels) -> str:
    if not w2:
        return "0"
    parts = []
    for (j, k) in sorted(w2):
        parts.append(f"({format_rational(w2[(j, k)])})*{labels[j]}^{labels[k]}")
    return " + ".join(parts)


# --- operations ---------------------------------------------------------------


def verify_lie(g: LieAlgebra) -> VerificationReport:
    """Check the Jacobi identity on all basis triples.

    Fails with the lexicographically first witness (i, j, k, l) where the
    cyclic sum of structure-constant products is nonzero.
    """
    n = g.dim
    c = g.bracket.get
    witness = None
    for i, j, k in itertools.combinations(range(n), 3):
        for l in range(n):
            total = Fraction(0)
            for m in range(n):
                total += c((i, j, m)) * c((m, k, l))
                total += c((j, k, m)) * c((m, i, l))
                total += c((k, i, m)) * c((m, j, l))
            if total != 0 and witness is None:
                witness = Witness(
                    (i, j, k, l), format_rational(total), "0"
                )
    return VerificationReport((Check("jacobi", witness is None, witness),))


def verify_rep(r: Representation) -> VerificationReport:
    """Check that the matrices define a Lie-algebra representation.

    The underlying algebra must itself satisfy Jacobi; that prerequisite
    appears in the report as the ``lie.jacobi`` check.
    """
    g = r.algebra
    pre = verify_lie(g).prefixed("lie.")
    witness = None
    for i, j in itertools.combinations(range(g.dim), 2):
        lhs = zero_matrix(r.module_dim, r.module_dim)
        for k, ck in g.bracket_coeffs(i, j).items():
            lhs = tuple(
                tuple(x + ck * y for x, y in zip(row_l, row_r))
                for row_l, row_r in zip(lhs, r.matrices[k])
            )
        comm = mat_sub(
            mat_mul(r.matrices[i], r.matrices[j]),
            mat_mul(r.matrices[j], r.matrices[i]),
        )
        diff = mat_sub(lhs, comm)
        for a in range(r.module_dim):
            for b in range(r.module_dim):
                if diff[a][b] != 0 and witness is None:
                    witness = Witness(
                        (i, j, a, b),
                        format_rational(lhs[a][b]),
                        format_rational(comm[a][b]),
                    )
    rep_check = Check("representation", witness is None, witness)
    return combine(pre, VerificationReport((rep_check,)))


def adjoint_rep(g: LieAlgebra) -> Representation:
    """The adjoint representation: rho(e_i)[k][j] = coefficient of e_k in [e_i, e_j]."""
    n = g.dim
    mats = []
    for i in range(n):
        rho = [[Fraction(0)] * n for _ in range(n)]
        for (a, j, k), v in g.bracket.entries.items():
            if a == i:
                rho[k][j] = v
        mats.append(tuple(tuple(row) for row in rho))
    return Representation(g, n, tuple(mats))


def cobracket_to_dual_lie(d: LieCobracket, labels=None) -> LieAlgebra:
    """Transpose a cobracket into the Lie bracket it induces on the dual space."""
    if labels is None:
        labels = tuple(f"x{i}*" for i in range(d.dim))
    # bracket entry (j, k, i) on the dual is the cobracket entry (i, j, k)
    return LieAlgebra(tuple(labels), permute_axes(d.tensor, (1, 2, 0)))


def bracket_to_dual_cobracket(g: LieAlgebra) -> LieCobracket:
    """Transpose a Lie bracket into the cobracket it induces on the dual space."""
    return LieCobracket(g.dim, permute_axes(g.bracket, (2, 0, 1)))


def verify_cocycle(g: LieAlgebra, d: LieCobracket) -> VerificationReport:
    """Check the Lie-bialgebra compatibility of a bracket and a cobracket.

    Sub-checks: Jacobi for ``g`` (``lie.primal.*``), Jacobi for the dual
    bracket obtained by transposing ``d`` (``lie.dual.*``), and the
    1-cocycle identity ``delta([e_i,e_j]) = e_i.delta(e_j) - e_j.delta(e_i)``
    on all basis pairs (``cocycle``).
    """
    if g.dim != d.dim:
        raise DimensionMismatch(f"algebra dim {g.dim} vs cobracket dim {d.dim}")
    primal = verify_lie(g).prefixed("lie.primal.")
    dual = verify_lie(cobracket_to_dual_lie(d)).prefixed("lie.dual.")
    witness = None
    for i, j in itertools.combinations(range(g.dim), 2):
        lhs: dict = {}
        for m, cm in g.bracket_coeffs(i, j).items():
            for key, val in d.image_of(m).items():
                _w2_add(lhs, key, cm * val)
        rhs = _ad2(g, i, d.image_of(j))
        for key, val in _ad2(g, j, d.image_of(i)).items():
            _w2_add(rhs, key, -val)
        diff = dict(lhs)
        for key, val in rhs.items():
            _w2_add(diff, key, -val)
        if diff and witness is None:
            witness = Witness(
                (i, j), _w2_render(lhs, g.labels), _w2_render(rhs, g.labels)
            )
    cocycle = Check("cocycle", witness is None, witness)
    return combine(primal, dual, VerificationReport((cocycle,)))


def semidirect(
    g: LieAlgebra,
    r: Representation,
    core_bracket: LieAlgebra | None = None,
    module_labels=None,
) -> LieAlgebra:
    """Semidirect-sum bracket on g (+) V.

    ``[(x,u),(y,w)] = ([x,y], x.w - y.u + [u,w]_V)`` where the module
    bracket ``[.,.]_V`` is zero when ``core_bracket`` is absent.  Jacobi of
    the result is not asserted; callers use `verify_lie`.
    """
    if r.algebra != g:
        raise DimensionMismatch("representation is not over the given algebra")
    n, m = g.dim, r.module_dim
    if core_bracket is not None and core_bracket.dim != m:
        raise DimensionMismatch(
            f"core bracket dim {core_bracket.dim} vs module dim {m}"
        )
    if module_labels is None:
        if core_bracket is not None:
            module_labels = core_bracket.labels
        else:
            module_labels = tuple(f"v{a}" for a in range(m))
    total = n + m
    entries: dict[tuple[int, int, int], Fraction] = {}
    for (i, j, k), v in g.bracket.entries.items():
        entries[(i, j, k)] = v
    for i in range(n):
        rho = r.matrices[i]
        for a in range(m):
            for b in range(m):
                v = rho[b][a]
                if v:
                    entries[(i, n + a, n + b)] = v
                    entries[(n + a, i, n + b)] = -v
    if core_bracket is not None:
        for (a, b, k), v in core_bracket.bracket.entries.items():
            entries[(n + a, n + b, n + k)] = v
    return LieAlgebra(g.labels + tuple(module_labels), SparseTensor((total, total, total), entries))
