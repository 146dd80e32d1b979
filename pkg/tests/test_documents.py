import json

import pytest

from l2b import catalog
from l2b.documents import (
    DocumentError,
    UnsupportedMethod,
    build_crossed_module,
    build_lie2_bialgebra,
    dualize_document,
    parse_document,
    run_verifier,
    serialize_document,
    serialize_report,
)


def doc_bytes(name):
    return serialize_document(catalog.get(name).document)


def test_round_trip_identity_on_catalog():
    for entry in catalog.entries():
        data = serialize_document(entry.document)
        assert serialize_document(parse_document(data)) == data


def test_parse_rejects_out_of_range_index():
    obj = json.loads(doc_bytes("sl2"))
    obj["blocks"]["bracket"].append([[0, 0, 7], "1"])
    with pytest.raises(DocumentError) as err:
        parse_document(json.dumps(obj).encode())
    assert "blocks.bracket" in str(err.value)
    assert "out of range" in str(err.value)


def test_parse_rejects_bad_rational():
    obj = json.loads(doc_bytes("sl2"))
    obj["blocks"]["bracket"][0][1] = "1/0"
    with pytest.raises(DocumentError) as err:
        parse_document(json.dumps(obj).encode())
    assert "zero denominator" in str(err.value)


def test_parse_rejects_unknown_kind():
    with pytest.raises(DocumentError) as err:
        parse_document(b'{"kind": "sheaf", "spaces": {}, "blocks": {}}')
    assert "unknown kind" in str(err.value)


def test_parse_rejects_unknown_fields():
    obj = json.loads(doc_bytes("sl2"))
    obj["extra"] = 1
    with pytest.raises(DocumentError):
        parse_document(json.dumps(obj).encode())
    obj = json.loads(doc_bytes("sl2"))
    obj["blocks"]["cobracket"] = []
    with pytest.raises(DocumentError) as err:
        parse_document(json.dumps(obj).encode())
    assert "unknown block" in str(err.value)


def test_parse_rejects_duplicate_entries():
    obj = json.loads(doc_bytes("sl2"))
    obj["blocks"]["bracket"].append(obj["blocks"]["bracket"][0])
    with pytest.raises(DocumentError) as err:
        parse_document(json.dumps(obj).encode())
    assert "duplicate" in str(err.value)


def test_parse_syntax_error_carries_position():
    with pytest.raises(DocumentError) as err:
        parse_document(b'{"kind": ')
    assert "line" in str(err.value) and "column" in str(err.value)


def test_missing_blocks_mean_zero():
    data = b'{"kind": "crossed_module", "name": "bare", "spaces": {"g0": {"dim": 2}, "g1": {"dim": 1}}, "blocks": {"partial": [[[0, 0], "3"]]}}'
    doc = parse_document(data)
    cm = build_crossed_module(doc)
    assert cm.base.bracket.is_zero() and cm.action.is_zero()
    assert cm.tvs.partial[0][0] == 3


def test_dualize_two_vs_bare_crossed_module():
    data = b'{"kind": "crossed_module", "spaces": {"g0": {"dim": 2, "labels": ["x", "y"]}, "g1": {"dim": 2, "labels": ["u", "v"]}}, "blocks": {"partial": [[[0, 0], "1"], [[0, 1], "2"], [[1, 1], "3"]]}}'
    doc = parse_document(data)
    dual = dualize_document(doc, "two_vs")
    cm = build_crossed_module(dual)
    assert cm.tvs.partial == ((1, 0), (2, 3))
    assert dual.spaces["g0"].labels == ("u*", "v*")
    # involution on the serialized form
    assert serialize_document(dualize_document(dual, "two_vs")) == serialize_document(doc)


def test_dualize_two_vs_rejects_structured_crossed_module():
    doc = catalog.get("adjoint_sl2_cm").document
    with pytest.raises(UnsupportedMethod):
        dualize_document(doc, "two_vs")


def test_dualize_two_vs_lie2_bialgebra_involution():
    doc = catalog.get("trace_l2b").document
    dual = dualize_document(doc, "two_vs")
    assert build_lie2_bialgebra(dual).cm1.base.bracket == build_lie2_bialgebra(doc).cm2.base.bracket
    assert serialize_document(dualize_document(dual, "two_vs")) == serialize_document(doc)


def test_dualize_dvb_ops():
    doc = catalog.get("dvb_231").document
    vd = dualize_document(doc, "dvb_vertical")
    assert vd.spaces["side_h"].name == "C" and vd.spaces["side_h"].dual
    assert vd.spaces["core"].name == "A" and vd.spaces["core"].dual
    assert serialize_document(dualize_document(vd, "dvb_vertical")) == serialize_document(doc)
    fl = dualize_document(doc, "flip")
    assert (fl.spaces["side_h"].dim, fl.spaces["side_v"].dim) == (3, 2)


def test_dualize_kind_mismatch():
    with pytest.raises(UnsupportedMethod):
        dualize_document(catalog.get("sl2").document, "flip")
    with pytest.raises(UnsupportedMethod):
        dualize_document(catalog.get("sl2").document, "two_vs")


def test_run_verifier_unsupported_combos():
    with pytest.raises(UnsupportedMethod):
        run_verifier(catalog.get("dvb_231").document, "weil")
    with pytest.raises(UnsupportedMethod):
        run_verifier(catalog.get("sl2").document, "all")
    with pytest.raises(UnsupportedMethod):
        run_verifier(catalog.get("sl2").document, "bogus")


def test_run_verifier_dispatch_every_kind():
    for entry in catalog.entries():
        report = run_verifier(entry.document, "auto")
        assert report.passed == entry.valid, entry.name


def test_report_serialization_deterministic():
    doc = catalog.get("scaling_l2b").document
    r1 = serialize_report(doc, "all", run_verifier(doc, "all"))
    r2 = serialize_report(doc, "all", run_verifier(doc, "all"))
    assert r1 == r2
    obj = json.loads(r1)
    assert obj["verdict"] == "pass"
    assert obj["agreement"] is True
    assert obj["kernel_version"]
    assert obj["instance"] == "scaling_l2b"


def test_report_witnesses_have_both_sides():
    doc = catalog.get("sl2_bad_jacobi").document
    obj = json.loads(serialize_report(doc, "auto", run_verifier(doc, "auto")))
    failing = [c for c in obj["checks"] if not c["pass"]]
    assert failing and all(c["witness"]["lhs"] and c["witness"]["rhs"] for c in failing)
