import json

import pytest

import hopfinv


def test_values():
    s3 = hopfinv.Algebra("group:S3")
    assert hopfinv.invariant(s3, hopfinv.Diagram("L(3,1)")) == "3"
    assert hopfinv.invariant(s3, hopfinv.Diagram("builtin:S2xS1")) == "6"
    ext = hopfinv.Algebra("zoo:exterior:1")
    assert hopfinv.invariant(ext, hopfinv.Diagram("L(5,2)") + hopfinv.Diagram("L(3,1)")) == "15"


def test_uq_traces():
    uq = hopfinv.Algebra("uq_sl2:3")
    assert uq.dim == 18
    info = uq.info()
    assert info["balanced"] and not info["involutory"]
    assert hopfinv.invariant(uq, hopfinv.Diagram("RP3_left")) == info["trace_S"]
    assert hopfinv.invariant(uq, hopfinv.Diagram("RP3_right"), combed=True) == info["trace_S_inv"]
    assert hopfinv.invariant(uq, hopfinv.Diagram("S2xS1")) == "0"


def test_moves_and_json():
    d = hopfinv.Diagram("S3_genus0").move("stabilize")
    assert d == hopfinv.Diagram("S3_genus1")
    again = hopfinv.Diagram.from_json(d.to_json())
    assert again == d
    assert json.loads(d.to_json())["genus"] == 1
    assert "stabilize" in d.moves()


def test_oracles():
    d = hopfinv.Diagram("L(3,1)")
    assert hopfinv.hom_count(d, "S3") == 3
    assert hopfinv.h1_order(hopfinv.Diagram("S2xS1")) == "0"
    assert hopfinv.presentation(hopfinv.Diagram("L(5,1)")) == "<x0 | x0^5>"


def test_record_is_calibrated():
    assert hopfinv.calibrate() == hopfinv.record()


def test_errors():
    with pytest.raises(hopfinv.HopfinvError):
        hopfinv.Diagram("L(9,1)")
    with pytest.raises(hopfinv.HopfinvError):
        hopfinv.Diagram("L(3,1)").move("destabilize")
