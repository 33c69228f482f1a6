import math

import pytest

import gsttcm


def test_codeword_determinants():
    x = gsttcm.golden_codeword([1, 0, 0, 0, 0, 0, 0, 0])
    assert gsttcm.det_metric(x) == pytest.approx(0.2, abs=1e-12)
    assert gsttcm.min_det_subcode(0) == pytest.approx(0.2, abs=1e-9)
    assert gsttcm.min_det_subcode(2) == pytest.approx(0.8, abs=1e-9)


def test_partition_analysis():
    assert gsttcm.delta_p(2, 2) == pytest.approx(3.2)
    r = gsttcm.delta_s([[1], [0, 1]], 2, 2)
    assert r["value"] == pytest.approx(2.4)
    assert r["event_length"] == 2
    events = gsttcm.shortest_error_events([[1], [0, 1]], max_len=3)
    assert min(length for length, _ in events) == 2


def test_code_chain():
    g3 = gsttcm.code_generator(3)
    assert len(g3) == 2
    assert [1, 1, 1, 1, 1, 1, 1, 1] in g3


def test_gain_table():
    rows = gsttcm.gain_table()
    assert len(rows) == 8
    first = rows[0]
    assert first["gamma_p_db"] == pytest.approx(2.0, abs=0.05)
    assert first["gamma_s_db"] == pytest.approx(1.4, abs=0.05)


def test_sublattice_check():
    chk = gsttcm.sublattice_check()
    assert chk["d2_min"] == 4
    assert chk["abs_det"] == 16


def test_presets_and_simulation():
    names = gsttcm.preset_names()
    assert "example1-4state" in names
    assert "uncoded-5bpcu" in names
    records = gsttcm.run_preset(
        "example1-4state", snr_grid=[200.0], frames=5, frame_len=8, seed=7
    )
    assert len(records) == 1
    assert records[0]["frame_errors"] == 0
    assert records[0]["fer"] == 0.0


def test_snr_interpolation():
    snr = gsttcm.snr_at_target([(4.0, 1e-1), (6.0, 1e-3)], target=1e-2)
    assert snr == pytest.approx(5.0)
    assert math.isnan(gsttcm.snr_at_target([(4.0, 1e-1)], target=1e-2))


def test_roundtrip():
    assert gsttcm.roundtrip(2, 2, [[1], [0, 1]], eta=4, frame_len=15, seed=3)
    assert gsttcm.roundtrip(0, 3, [[0, 1], [0, 0, 1], [1, 0, 1]], eta=4, frame_len=10, seed=4)
