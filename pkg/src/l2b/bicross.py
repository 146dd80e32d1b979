"""Dual actions, matched pairs, and the three Lie 2-bialgebra verifiers.

A Lie 2-bialgebra candidate is a pair of crossed-module candidates on dual
2-vector spaces: ``cm1`` on ``[g1 -> g0]`` and ``cm2`` on ``[g0* -> g1*]``
(the structure map of ``cm2`` must be the transpose of ``cm1``'s, which is
checked at construction).  Validity has three independent
characterizations, implemented as three verifiers that must agree:

* ``verify_l2b_def``: the two semidirect totals form a Lie bialgebra
  (1-cocycle condition through the natural block pairing);
* ``verify_l2b_matched``: the side algebra and the dual core algebra form
  a matched pair with respect to the contragredient actions;
* ``verify_l2b_weil``: the total differential built from ``cm1`` is a
  derivation of the bidegree (-1,-1) bracket built from ``cm2``.

Disagreement between the verifiers is a kernel defect, never a property
of the instance; `cross_check` reports it as such.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import DimensionMismatch, SparseTensor, mat_transpose
from .liecore import (
    Check,
    LieAlgebra,
    LieCobracket,
    Representation,
    VerificationReport,
    combine,
    semidirect,
    verify_cocycle,
    verify_lie,
    verify_rep,
)
from .twoterm import CrossedModuleData, dual_two_vs, gamma_total, verify_cm
from .weil import (
    build_gerstenhaber,
    build_delta_h_from_cm,
    build_delta_v_from_cm,
    check_derivation_of_bracket,
    check_gerst_axioms,
    check_square_zero,
    check_zero_on_generators,
    derivation_sum,
    graded_commutator,
)


class DegenerateCoreError(ValueError):
    """Zero-dimensional core: not covered by the differential-bracket verifier.

    Such data is an ordinary Lie-(co)bracket candidate; route it through
    `liecore.verify_cocycle` instead.
    """


@dataclass(frozen=True)
class Lie2BialgebraData:
    cm1: CrossedModuleData  # on [g1 -> g0]
    cm2: CrossedModuleData  # on [g0* -> g1*]

    def __post_init__(self):
        t1, t2 = self.cm1.tvs, self.cm2.tvs
        if (t2.dim0, t2.dim1) != (t1.dim1, t1.dim0):
            raise DimensionMismatch(
                f"dual 2-vector space dims {(t2.dim0, t2.dim1)} do not mirror "
                f"{(t1.dim0, t1.dim1)}"
            )
        if t2.partial != mat_transpose(t1.partial, ncols_if_empty=t1.dim1):
            raise ValueError(
                "structure map of the dual crossed module is not the transpose"
            )

    @property
    def dim0(self) -> int:
        return self.cm1.dim0

    @property
    def dim1(self) -> int:
        return self.cm1.dim1


def abelian_dual_pair(cm1: CrossedModuleData) -> Lie2BialgebraData:
    """Pair a crossed-module candidate with the zero structure on the dual."""
    tvs2 = dual_two_vs(cm1.tvs)
    n0, n1 = cm1.dim0, cm1.dim1
    cm2 = CrossedModuleData(
        LieAlgebra.abelian(tvs2.labels0),
        tvs2,
        SparseTensor.zero((n1, n0, n0)),
    )
    return Lie2BialgebraData(cm1, cm2)


@dataclass(frozen=True)
class MatchedPairData:
    h: LieAlgebra
    k: LieAlgebra
    act_h_on_k: SparseTensor  # (i, j, k): coefficient of k_k in h_i > k_j
    act_k_on_h: SparseTensor  # (i, j, k): coefficient of h_k in k_i > h_j

    def __post_init__(self):
        nh, nk = self.h.dim, self.k.dim
        if self.act_h_on_k.dims != (nh, nk, nk):
            raise DimensionMismatch(
                f"act_h_on_k dims {self.act_h_on_k.dims}, expected {(nh, nk, nk)}"
            )
        if self.act_k_on_h.dims != (nk, nh, nh):
            raise DimensionMismatch(
                f"act_k_on_h dims {self.act_k_on_h.dims}, expected {(nk, nh, nh)}"
            )


def dual_action_side(cm1: CrossedModuleData) -> SparseTensor:
    """Contragredient action of the side algebra on the dual core.

    ``(x > xi)(c) = -xi(x . c)``: entry ``(i, j, k)`` of the result is
    minus entry ``(i, k, j)`` of the original action.
    """
    n0, n1 = cm1.dim0, cm1.dim1
    entries = {}
    for (i, j, k), v in cm1.action.entries.items():
        entries[(i, k, j)] = -v
    return SparseTensor((n0, n1, n1), entries)


def dual_action_core(cm2: CrossedModuleData) -> SparseTensor:
    """Contragredient action of the dual core algebra on the side.

    ``<alpha, xi > x> = -<xi . alpha, x>``: entry ``(i, j, k)`` of the
    result is minus entry ``(i, k, j)`` of the dual action.
    """
    n1, n0 = cm2.dim0, cm2.dim1
    entries = {}
    for (i, j, k), v in cm2.action.entries.items():
        entries[(i, k, j)] = -v
    return SparseTensor((n1, n0, n0), entries)


def bicrossed_sum(mp: MatchedPairData) -> LieAlgebra:
    """Bracket on h (+) k from the mutual actions.

    ``[(x,xi),(y,eta)] = ([x,y] + xi>y - eta>x, [xi,eta] + x>eta - y>xi)``;
    antisymmetric by construction, Jacobi not asserted.
    """
    nh, nk = mp.h.dim, mp.k.dim
    total = nh + nk
    entries: dict[tuple[int, int, int], Fraction] = {}

    def put(i, j, k, v):
        if v:
            entries[(i, j, k)] = entries.get((i, j, k), Fraction(0)) + v

    for (i, j, k), v in mp.h.bracket.entries.items():
        put(i, j, k, v)
    for (i, j, k), v in mp.k.bracket.entries.items():
        put(nh + i, nh + j, nh + k, v)
    # [x_i, k_a]: h-part -(k_a > x_i), k-part +(x_i > k_a)
    for (a, j, k), v in mp.act_k_on_h.entries.items():
        put(j, nh + a, k, -v)
        put(nh + a, j, k, v)
    for (i, b, k), v in mp.act_h_on_k.entries.items():
        put(i, nh + b, nh + k, v)
        put(nh + b, i, nh + k, -v)
    labels = mp.h.labels + mp.k.labels
    return LieAlgebra(labels, SparseTensor((total, total, total), entries))


def _rep_from_tensor(g: LieAlgebra, tensor: SparseTensor) -> Representation:
    m = tensor.dims[1]
    mats = []
    for i in range(g.dim):
        rho = [[Fraction(0)] * m for _ in range(m)]
        for (a, j, k), v in tensor.entries.items():
            if a == i:
                rho[k][j] = v
        mats.append(tuple(tuple(row) for row in rho))
    return Representation(g, m, tuple(mats))


def verify_matched_pair(mp: MatchedPairData) -> VerificationReport:
    """Both factors are Lie, both actions are representations, and the
    bicrossed-sum bracket satisfies Jacobi (the matched-pair criterion)."""
    rep_hk = verify_rep(_rep_from_tensor(mp.h, mp.act_h_on_k)).check("representation")
    rep_kh = verify_rep(_rep_from_tensor(mp.k, mp.act_k_on_h)).check("representation")
    return combine(
        verify_lie(mp.h).prefixed("h."),
        verify_lie(mp.k).prefixed("k."),
        VerificationReport(
            (
                Check("h_on_k.representation", rep_hk.passed, rep_hk.witness),
                Check("k_on_h.representation", rep_kh.passed, rep_kh.witness),
            )
        ),
        verify_lie(bicrossed_sum(mp)).prefixed("bicrossed."),
    )


def induced_cobracket(d: Lie2BialgebraData) -> LieCobracket:
    """Transport the semidirect total of cm2 to a cobracket on the total of cm1.

    The total of ``cm1`` has basis ``(e_0..e_{n0-1}, f_0..f_{n1-1})``; the
    total of ``cm2`` has basis ``(f*_0..f*_{n1-1}, e*_0..e*_{n0-1})``.  The
    natural pairing identifies the dual basis vector of ``u_r`` with the
    cm2-total basis vector at position ``n1 + r`` (r < n0) or ``r - n0``.
    """
    n0, n1 = d.dim0, d.dim1
    gamma2 = gamma_total(d.cm2)
    total = n0 + n1

    def sigma(r: int) -> int:
        return n1 + r if r < n0 else r - n0

    entries = {}
    for i in range(total):
        for j in range(total):
            for k in range(total):
                v = gamma2.bracket.get((sigma(j), sigma(k), sigma(i)))
                if v:
                    entries[(i, j, k)] = v
    return LieCobracket(total, SparseTensor((total, total, total), entries))


def verify_l2b_def(d: Lie2BialgebraData) -> VerificationReport:
    """Definition-style verifier: the two totals form a Lie bialgebra.

    When either crossed-module candidate fails its own checks the cocycle
    stage is skipped (the totals need not even be Lie algebras then)."""
    r1 = verify_cm(d.cm1).prefixed("cm1.")
    r2 = verify_cm(d.cm2).prefixed("cm2.")
    if not (r1.passed and r2.passed):
        return combine(
            r1,
            r2,
            VerificationReport(
                (),
                metadata=(
                    ("bialgebra", "skipped: crossed-module prerequisites failed"),
                ),
            ),
        )
    gamma = gamma_total(d.cm1)
    cobr = induced_cobracket(d)
    return combine(r1, r2, verify_cocycle(gamma, cobr).prefixed("bialgebra."))


def matched_pair_of(d: Lie2BialgebraData) -> MatchedPairData:
    """The matched-pair candidate (g0, g1*) with the contragredient actions."""
    return MatchedPairData(
        d.cm1.base,
        d.cm2.base,
        dual_action_side(d.cm1),
        dual_action_core(d.cm2),
    )


def verify_l2b_matched(d: Lie2BialgebraData) -> VerificationReport:
    """Matched-pair verifier: (g0, g1*) with the dual actions."""
    return combine(
        verify_cm(d.cm1).prefixed("cm1."),
        verify_cm(d.cm2).prefixed("cm2."),
        verify_matched_pair(matched_pair_of(d)).prefixed("mp."),
    )


def verify_l2b_weil(d: Lie2BialgebraData, degree_bound: int = 4) -> VerificationReport:
    """Differential-calculus verifier on the bigraded algebra of cm1's spaces.

    Checks that the two differentials built from ``cm1`` square to zero and
    commute, that the bracket table built from ``cm2`` satisfies the graded
    axioms, and that the total differential is a derivation of the bracket.
    """
    if d.dim1 == 0:
        raise DegenerateCoreError(
            "core dimension is 0: verify with liecore.verify_cocycle instead"
        )
    dh = build_delta_h_from_cm(d.cm1)
    dv = build_delta_v_from_cm(d.cm1)
    G = build_gerstenhaber(d.cm2)
    return combine(
        check_square_zero(dh).prefixed("delta_h."),
        check_square_zero(dv).prefixed("delta_v."),
        check_zero_on_generators(graded_commutator(dh, dv), "commute"),
        check_gerst_axioms(G, degree_bound).prefixed("gerst."),
        check_derivation_of_bracket(
            derivation_sum(dh, dv), G, degree_bound
        ).prefixed("derivation."),
    )


def cross_check(d: Lie2BialgebraData, degree_bound: int = 4) -> VerificationReport:
    """Run all applicable verifiers and compare their verdicts.

    The combined report carries an ``agreement`` metadata flag; any
    disagreement is a kernel defect (the characterizations are equivalent),
    so it is additionally surfaced as a failing ``agreement`` check.
    """
    rd = verify_l2b_def(d)
    rm = verify_l2b_matched(d)
    reports = [("def", rd), ("matched", rm)]
    notes = []
    if d.dim1 > 0:
        reports.append(("weil", verify_l2b_weil(d, degree_bound)))
    else:
        notes.append(("weil", "skipped: zero-dimensional core"))
    verdicts = {name: r.passed for name, r in reports}
    agreement = len(set(verdicts.values())) == 1
    notes.append(("agreement", "true" if agreement else "false"))
    if not agreement:
        notes.append(
            (
                "defect",
                "verifier disagreement is a kernel defect, not an instance property: "
                + ", ".join(f"{n}={'pass' if v else 'fail'}" for n, v in verdicts.items()),
            )
        )
    combined = combine(*(r.prefixed(f"{name}.") for name, r in reports))
    agreement_check = Check("agreement", agreement, None)
    return VerificationReport(
        combined.checks + (agreement_check,),
        metadata=combined.metadata + tuple(notes),
    )
