"""Structured text documents for kernel instances, plus report emission.

Documents are UTF-8 JSON, one instance per file: a ``kind``, named spaces
with dimensions and basis labels, and sparse tensor blocks given as lists
of ``[[indices...], "p/q"]`` pairs with 0-based indices and canonical
rational strings.  Missing blocks mean zero; unknown fields are rejected;
serialization is canonical (sorted entries, sorted keys), so identical
inputs always produce byte-identical output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .bicross import (
    Lie2BialgebraData,
    MatchedPairData,
    cross_check,
    verify_l2b_def,
    verify_l2b_matched,
    verify_l2b_weil,
    verify_matched_pair,
)
from .exact import Matrix, SparseTensor, format_rational, mat_transpose, parse_rational
from .liecore import (
    LieAlgebra,
    LieCobracket,
    VerificationReport,
    verify_cocycle,
    verify_lie,
)
from .twoterm import (
    CrossedModuleData,
    SpaceDescriptor,
    SplitDvb,
    TwoVectorSpace,
    WeakLie2Data,
    check_duality_identity,
    dual_two_vs,
    dvb_flip,
    dvb_horizontal_dual,
    dvb_vertical_dual,
    verify_cm,
)
from .weil import verify_weak_lie2


class DocumentError(ValueError):
    """Malformed document; carries the JSON path of the offending field."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class UnsupportedMethod(ValueError):
    """The requested verification method does not apply to this document kind."""


# block arity expressed through space names; "2matrix" marks matrix blocks
_SCHEMAS: dict[str, dict] = {
    "lie_algebra": {
        "spaces": ("g",),
        "blocks": {"bracket": ("g", "g", "g")},
    },
    "bialgebra": {
        "spaces": ("g",),
        "blocks": {"bracket": ("g", "g", "g"), "cobracket": ("g", "g", "g")},
    },
    "crossed_module": {
        "spaces": ("g0", "g1"),
        "blocks": {
            "bracket0": ("g0", "g0", "g0"),
            "partial": ("g0", "g1"),
            "action": ("g0", "g1", "g1"),
        },
    },
    "weak_lie2": {
        "spaces": ("g0", "g1"),
        "blocks": {
            "bracket0": ("g0", "g0", "g0"),
            "partial": ("g0", "g1"),
            "action": ("g0", "g1", "g1"),
            "jacobiator": ("g0", "g0", "g0", "g1"),
        },
    },
    "lie2_bialgebra": {
        "spaces": ("g0", "g1"),
        "blocks": {
            "bracket0": ("g0", "g0", "g0"),
            "partial": ("g0", "g1"),
            "action0": ("g0", "g1", "g1"),
            "dual_bracket": ("g1", "g1", "g1"),
            "dual_action": ("g1", "g0", "g0"),
        },
    },
    "matched_pair": {
        "spaces": ("h", "k"),
        "blocks": {
            "bracket_h": ("h", "h", "h"),
            "bracket_k": ("k", "k", "k"),
            "act_h_on_k": ("h", "k", "k"),
            "act_k_on_h": ("k", "h", "h"),
        },
    },
    "dvb": {"spaces": ("side_h", "side_v", "core"), "blocks": {}},
}

KINDS = tuple(_SCHEMAS)


@dataclass(frozen=True)
class SpaceDecl:
    dim: int
    labels: tuple[str, ...] = ()
    dual: bool = False  # only meaningful for dvb descriptors
    name: str = ""  # only meaningful for dvb descriptors


@dataclass(frozen=True)
class StructureDocument:
    kind: str
    name: str
    spaces: dict[str, SpaceDecl]
    blocks: dict[str, tuple[tuple[tuple[int, ...], Fraction], ...]] = field(
        default_factory=dict
    )

    def space(self, key: str) -> SpaceDecl:
        return self.spaces[key]

    def block_tensor(self, key: str) -> SparseTensor:
        axes = _SCHEMAS[self.kind]["blocks"][key]
        dims = tuple(self.spaces[s].dim for s in axes)
        return SparseTensor(dims, dict(self.blocks.get(key, ())))

    def block_matrix(self, key: str) -> Matrix:
        axes = _SCHEMAS[self.kind]["blocks"][key]
        nrows, ncols = (self.spaces[s].dim for s in axes)
        rows = [[Fraction(0)] * ncols for _ in range(nrows)]
        for idx, val in self.blocks.get(key, ()):
            rows[idx[0]][idx[1]] = val
        return tuple(tuple(r) for r in rows)


# --- parsing ------------------------------------------------------------------


def _expect(cond: bool, path: str, message: str):
    if not cond:
        raise DocumentError(path, message)


def parse_document(data: bytes) -> StructureDocument:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise DocumentError("", f"not UTF-8: {e}") from e
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError("", f"syntax error at line {e.lineno} column {e.colno}: {e.msg}") from e
    _expect(isinstance(obj, dict), "", "top level must be an object")
    unknown = set(obj) - {"kind", "name", "spaces", "blocks"}
    _expect(not unknown, sorted(unknown)[0] if unknown else "", "unknown field")
    kind = obj.get("kind")
    if kind not in KINDS:
        raise DocumentError("kind", f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    schema = _SCHEMAS[kind]
    name = obj.get("name", "")
    _expect(isinstance(name, str), "name", "must be a string")

    raw_spaces = obj.get("spaces", {})
    _expect(isinstance(raw_spaces, dict), "spaces", "must be an object")
    unknown = set(raw_spaces) - set(schema["spaces"])
    _expect(not unknown, f"spaces.{sorted(unknown)[0]}" if unknown else "", "unknown space")
    spaces: dict[str, SpaceDecl] = {}
    for key in schema["spaces"]:
        path = f"spaces.{key}"
        _expect(key in raw_spaces, path, "missing space")
        decl = raw_spaces[key]
        _expect(isinstance(decl, dict), path, "must be an object")
        allowed = {"name", "dim", "dual"} if kind == "dvb" else {"dim", "labels"}
        bad = set(decl) - allowed
        _expect(not bad, f"{path}.{sorted(bad)[0]}" if bad else "", "unknown field")
        dim = decl.get("dim")
        _expect(isinstance(dim, int) and dim >= 0, f"{path}.dim", "must be a non-negative integer")
        if kind == "dvb":
            sname = decl.get("name", key)
            dual = decl.get("dual", False)
            _expect(isinstance(sname, str), f"{path}.name", "must be a string")
            _expect(isinstance(dual, bool), f"{path}.dual", "must be a boolean")
            spaces[key] = SpaceDecl(dim, (), dual, sname)
        else:
            labels = decl.get("labels", [f"{key}_{i}" for i in range(dim)])
            _expect(
                isinstance(labels, list) and all(isinstance(s, str) for s in labels),
                f"{path}.labels",
                "must be a list of strings",
            )
            _expect(len(labels) == dim, f"{path}.labels", f"expected {dim} labels")
            spaces[key] = SpaceDecl(dim, tuple(labels))

    raw_blocks = obj.get("blocks", {})
    _expect(isinstance(raw_blocks, dict), "blocks", "must be an object")
    unknown = set(raw_blocks) - set(schema["blocks"])
    _expect(not unknown, f"blocks.{sorted(unknown)[0]}" if unknown else "", "unknown block")
    blocks: dict[str, tuple] = {}
    for key, axes in schema["blocks"].items():
        if key not in raw_blocks:
            blocks[key] = ()
            continue
        entries_raw = raw_blocks[key]
        path = f"blocks.{key}"
        _expect(isinstance(entries_raw, list), path, "must be a list of [indices, rational] pairs")
        dims = tuple(spaces[s].dim for s in axes)
        seen = set()
        entries = []
        for pos, item in enumerate(entries_raw):
            ipath = f"{path}[{pos}]"
            _expect(
                isinstance(item, list) and len(item) == 2,
                ipath,
                "must be a pair [indices, rational]",
            )
            idx_raw, val_raw = item
            _expect(
                isinstance(idx_raw, list) and all(isinstance(i, int) for i in idx_raw),
                ipath,
                "indices must be a list of integers",
            )
            _expect(
                len(idx_raw) == len(dims),
                ipath,
                f"expected {len(dims)} indices for block {key}",
            )
            for ax, (i, dlim) in enumerate(zip(idx_raw, dims)):
                _expect(
                    0 <= i < dlim,
                    ipath,
                    f"index {i} out of range on axis {ax} (space {axes[ax]}, dim {dlim})",
                )
            idx = tuple(idx_raw)
            _expect(idx not in seen, ipath, f"duplicate index {list(idx)}")
            seen.add(idx)
            try:
                val = parse_rational(val_raw)
            except (ValueError, TypeError) as e:
                raise DocumentError(ipath, str(e)) from e
            if val:
                entries.append((idx, val))
        blocks[key] = tuple(sorted(entries))
    return StructureDocument(kind, name, spaces, blocks)


def serialize_document(doc: StructureDocument) -> bytes:
    obj: dict = {"kind": doc.kind, "name": doc.name, "spaces": {}, "blocks": {}}
    for key in _SCHEMAS[doc.kind]["spaces"]:
        decl = doc.spaces[key]
        if doc.kind == "dvb":
            obj["spaces"][key] = {"name": decl.name, "dim": decl.dim, "dual": decl.dual}
        else:
            obj["spaces"][key] = {"dim": decl.dim, "labels": list(decl.labels)}
    for key in _SCHEMAS[doc.kind]["blocks"]:
        entries = sorted(doc.blocks.get(key, ()))
        obj["blocks"][key] = [
            [list(idx), format_rational(val)] for idx, val in entries
        ]
    return (json.dumps(obj, sort_keys=True, indent=2) + "\n").encode("utf-8")


# --- kernel object builders ----------------------------------------------------


def build_lie_algebra(doc: StructureDocument) -> LieAlgebra:
    return LieAlgebra(doc.space("g").labels, doc.block_tensor("bracket"))


def build_bialgebra(doc: StructureDocument) -> tuple[LieAlgebra, LieCobracket]:
    g = LieAlgebra(doc.space("g").labels, doc.block_tensor("bracket"))
    d = LieCobracket(doc.space("g").dim, doc.block_tensor("cobracket"))
    return g, d


def _tvs_of(doc: StructureDocument) -> TwoVectorSpace:
    return TwoVectorSpace(
        doc.space("g0").dim,
        doc.space("g1").dim,
        doc.block_matrix("partial"),
        doc.space("g0").labels,
        doc.space("g1").labels,
    )


def build_crossed_module(doc: StructureDocument) -> CrossedModuleData:
    base = LieAlgebra(doc.space("g0").labels, doc.block_tensor("bracket0"))
    return CrossedModuleData(base, _tvs_of(doc), doc.block_tensor("action"))


def build_weak_lie2(doc: StructureDocument) -> WeakLie2Data:
    return WeakLie2Data(
        doc.space("g0").dim,
        doc.space("g1").dim,
        doc.block_matrix("partial"),
        doc.block_tensor("bracket0"),
        doc.block_tensor("action"),
        doc.block_tensor("jacobiator"),
        doc.space("g0").labels,
        doc.space("g1").labels,
    )


def build_lie2_bialgebra(doc: StructureDocument) -> Lie2BialgebraData:
    base1 = LieAlgebra(doc.space("g0").labels, doc.block_tensor("bracket0"))
    tvs1 = _tvs_of(doc)
    cm1 = CrossedModuleData(base1, tvs1, doc.block_tensor("action0"))
    tvs2 = dual_two_vs(tvs1)
    base2 = LieAlgebra(tvs2.labels0, doc.block_tensor("dual_bracket"))
    cm2 = CrossedModuleData(base2, tvs2, doc.block_tensor("dual_action"))
    return Lie2BialgebraData(cm1, cm2)


def build_dvb(doc: StructureDocument) -> SplitDvb:
    def desc(key: str) -> SpaceDescriptor:
        decl = doc.space(key)
        return SpaceDescriptor(decl.name, decl.dim, decl.dual)

    return SplitDvb(desc("side_h"), desc("side_v"), desc("core"))


def build_matched_pair(doc: StructureDocument) -> MatchedPairData:
    h = LieAlgebra(doc.space("h").labels, doc.block_tensor("bracket_h"))
    k = LieAlgebra(doc.space("k").labels, doc.block_tensor("bracket_k"))
    return MatchedPairData(
        h, k, doc.block_tensor("act_h_on_k"), doc.block_tensor("act_k_on_h")
    )


# --- document constructors -------------------------------------------------------


def _tensor_block(t: SparseTensor) -> tuple:
    return tuple(sorted(t.entries.items()))


def _matrix_block(m: Matrix) -> tuple:
    out = []
    for i, row in enumerate(m):
        for j, v in enumerate(row):
            if v:
                out.append(((i, j), v))
    return tuple(out)


def doc_from_lie_algebra(g: LieAlgebra, name: str = "") -> StructureDocument:
    return StructureDocument(
        "lie_algebra",
        name,
        {"g": SpaceDecl(g.dim, g.labels)},
        {"bracket": _tensor_block(g.bracket)},
    )


def doc_from_bialgebra(g: LieAlgebra, d: LieCobracket, name: str = "") -> StructureDocument:
    return StructureDocument(
        "bialgebra",
        name,
        {"g": SpaceDecl(g.dim, g.labels)},
        {"bracket": _tensor_block(g.bracket), "cobracket": _tensor_block(d.tensor)},
    )


def doc_from_crossed_module(cm: CrossedModuleData, name: str = "") -> StructureDocument:
    return StructureDocument(
        "crossed_module",
        name,
        {
            "g0": SpaceDecl(cm.dim0, cm.base.labels),
            "g1": SpaceDecl(cm.dim1, cm.tvs.labels1),
        },
        {
            "bracket0": _tensor_block(cm.base.bracket),
            "partial": _matrix_block(cm.tvs.partial),
            "action": _tensor_block(cm.action),
        },
    )


def doc_from_weak_lie2(w: WeakLie2Data, name: str = "") -> StructureDocument:
    return StructureDocument(
        "weak_lie2",
        name,
        {
            "g0": SpaceDecl(w.dim0, w.labels0),
            "g1": SpaceDecl(w.dim1, w.labels1),
        },
        {
            "bracket0": _tensor_block(w.bracket0),
            "partial": _matrix_block(w.partial),
            "action": _tensor_block(w.action),
            "jacobiator": _tensor_block(w.jacobiator),
        },
    )


def doc_from_lie2_bialgebra(d: Lie2BialgebraData, name: str = "") -> StructureDocument:
    cm1 = d.cm1
    return StructureDocument(
        "lie2_bialgebra",
        name,
        {
            "g0": SpaceDecl(cm1.dim0, cm1.base.labels),
            "g1": SpaceDecl(cm1.dim1, cm1.tvs.labels1),
        },
        {
            "bracket0": _tensor_block(cm1.base.bracket),
            "partial": _matrix_block(cm1.tvs.partial),
            "action0": _tensor_block(cm1.action),
            "dual_bracket": _tensor_block(d.cm2.base.bracket),
            "dual_action": _tensor_block(d.cm2.action),
        },
    )


def doc_from_dvb(d: SplitDvb, name: str = "") -> StructureDocument:
    def decl(s: SpaceDescriptor) -> SpaceDecl:
        return SpaceDecl(s.dim, (), s.dualized, s.name)

    return StructureDocument(
        "dvb",
        name,
        {"side_h": decl(d.side_h), "side_v": decl(d.side_v), "core": decl(d.core)},
        {},
    )


def doc_from_matched_pair(mp: MatchedPairData, name: str = "") -> StructureDocument:
    return StructureDocument(
        "matched_pair",
        name,
        {
            "h": SpaceDecl(mp.h.dim, mp.h.labels),
            "k": SpaceDecl(mp.k.dim, mp.k.labels),
        },
        {
            "bracket_h": _tensor_block(mp.h.bracket),
            "bracket_k": _tensor_block(mp.k.bracket),
            "act_h_on_k": _tensor_block(mp.act_h_on_k),
            "act_k_on_h": _tensor_block(mp.act_k_on_h),
        },
    )


# --- dualization on documents -----------------------------------------------------


def dualize_document(doc: StructureDocument, which: str) -> StructureDocument:
    """Emit the dual document; applying the same dualization twice is the identity."""
    if which == "two_vs":
        if doc.kind == "lie2_bialgebra":
            d = build_lie2_bialgebra(doc)
            swapped = Lie2BialgebraData(d.cm2, d.cm1)
            return doc_from_lie2_bialgebra(swapped, doc.name)
        if doc.kind == "crossed_module":
            if doc.blocks.get("bracket0") or doc.blocks.get("action"):
                raise UnsupportedMethod(
                    "two_vs dualization of a crossed_module document requires zero "
                    "bracket and action (a bare 2-vector space); dualize the full "
                    "pair as a lie2_bialgebra document instead"
                )
            t = dual_two_vs(_tvs_of(doc))
            return StructureDocument(
                "crossed_module",
                doc.name,
                {
                    "g0": SpaceDecl(t.dim0, t.labels0),
                    "g1": SpaceDecl(t.dim1, t.labels1),
                },
                {"partial": _matrix_block(t.partial), "bracket0": (), "action": ()},
            )
        raise UnsupportedMethod(f"two_vs dualization does not apply to kind {doc.kind!r}")
    if which in ("dvb_vertical", "dvb_horizontal", "flip"):
        if doc.kind != "dvb":
            raise UnsupportedMethod(f"{which} dualization requires a dvb document")
        d = build_dvb(doc)
        op = {
            "dvb_vertical": dvb_vertical_dual,
            "dvb_horizontal": dvb_horizontal_dual,
            "flip": dvb_flip,
        }[which]
        return doc_from_dvb(op(d), doc.name)
    raise UnsupportedMethod(f"unknown dualization {which!r}")


# --- verifier dispatch --------------------------------------------------------------


METHODS = ("auto", "def", "matched", "weil", "all")


def run_verifier(
    doc: StructureDocument, method: str = "auto", degree_bound: int = 4
) -> VerificationReport:
    """Dispatch a document to the verifier selected by ``method``.

    ``auto`` picks the natural verifier for the kind (for Lie 2-bialgebra
    documents this is the three-way cross-check, same as ``all``); the
    named methods apply only to Lie 2-bialgebra documents.
    """
    if method not in METHODS:
        raise UnsupportedMethod(f"unknown method {method!r}")
    kind = doc.kind
    if method in ("def", "matched", "weil", "all") and kind != "lie2_bialgebra":
        raise UnsupportedMethod(f"method {method!r} does not apply to kind {kind!r}")
    if kind == "lie_algebra":
        return verify_lie(build_lie_algebra(doc))
    if kind == "bialgebra":
        return verify_cocycle(*build_bialgebra(doc))
    if kind == "crossed_module":
        return verify_cm(build_crossed_module(doc))
    if kind == "weak_lie2":
        return verify_weak_lie2(build_weak_lie2(doc))
    if kind == "dvb":
        return check_duality_identity(build_dvb(doc))
    if kind == "matched_pair":
        return verify_matched_pair(build_matched_pair(doc))
    d = build_lie2_bialgebra(doc)
    if method == "def":
        return verify_l2b_def(d)
    if method == "matched":
        return verify_l2b_matched(d)
    if method == "weil":
        return verify_l2b_weil(d, degree_bound)
    return cross_check(d, degree_bound)


# --- reports ---------------------------------------------------------------------


def report_document(
    doc: StructureDocument, method: str, report: VerificationReport
) -> dict:
    checks = []
    for c in report.checks:
        entry: dict = {"id": c.cond, "pass": c.passed}
        if c.witness is None:
            entry["witness"] = None
        else:
            entry["witness"] = {
                "indices": list(c.witness.indices),
                "lhs": c.witness.lhs,
                "rhs": c.witness.rhs,
                "at": c.witness.at,
            }
        checks.append(entry)
    meta = dict(report.metadata)
    out = {
        "instance": doc.name or f"unnamed:{doc.kind}",
        "kind": doc.kind,
        "method": method,
        "verdict": "pass" if report.passed else "fail",
        "checks": checks,
        "metadata": meta,
        "kernel_version": __version__,
    }
    if "agreement" in meta:
        out["agreement"] = meta["agreement"] == "true"
    return out


def serialize_report(
    doc: StructureDocument, method: str, report: VerificationReport
) -> bytes:
    obj = report_document(doc, method, report)
    return (json.dumps(obj, sort_keys=True, indent=2) + "\n").encode("utf-8")
