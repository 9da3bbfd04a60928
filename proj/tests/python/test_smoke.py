"""End-to-end smoke tests for the python bindings."""

import json

import pytest

logdiv = pytest.importorskip("logdiv")

MONOID_23 = {"kind": "monoid", "version": "1", "free_rank": 1, "generators": [[2], [3]]}
NAT = {"kind": "monoid", "version": "1", "free_rank": 1, "generators": [[1]]}
A2 = {"kind": "fan", "version": "1", "ambient_rank": 2, "max_cones": [[[0, 1], [1, 0]]]}
N2 = {"kind": "monoid", "version": "1", "free_rank": 2, "generators": [[1, 0], [0, 1]]}
CORNER = {"kind": "ideal", "version": "1", "monoid": N2, "generators": [[1, 0], [0, 1]]}
BAD_IDEAL = {"kind": "ideal", "version": "1", "monoid": NAT, "generators": [[1]]}
LINE = {"kind": "fan", "version": "1", "ambient_rank": 1, "max_cones": [[[1]]]}
P1 = {
    "kind": "space",
    "version": "1",
    "charts": [LINE, LINE],
    "overlaps": [{"i": 0, "j": 1, "cones": [[]], "transition": [[-1]]}],
}


def test_saturate_two_three():
    doc = logdiv.saturate(MONOID_23)
    assert doc["kind"] == "monoid"
    assert [1] in doc["generators"]


def test_hilbert_basis():
    assert logdiv.hilbert_basis(MONOID_23) == [[1]]


def test_corner_blowup_is_diagonal_star():
    res = logdiv.log_blowup(A2, CORNER)
    fine = res["subdivision"]["fine"]
    assert fine["max_cones"] == [[[0, 1], [1, 1]], [[1, 0], [1, 1]]]
    assert res["minimal_generator"] == [[1, 0], [0, 1]]


def test_star_subdivision_flag():
    sub = logdiv.star_subdivision(A2, [1, 1])
    assert sub["kind"] == "subdivision"
    assert len(sub["fine"]["max_cones"]) == 2


def test_projective_line_glues_to_three_orbits():
    res = logdiv.glue(P1)
    assert res["orbit_count"] == 3


def test_domain_error_carries_code():
    with pytest.raises(logdiv.LogdivError) as excinfo:
        logdiv.log_blowup(A2, BAD_IDEAL)
    assert excinfo.value.code == "SourceMismatch"


def test_canonical_json_idempotent():
    text = logdiv.canonical_json(MONOID_23)
    assert text.endswith("\n")
    assert logdiv.canonical_json(json.loads(text)) == text


def test_run_cli_stdin():
    code, out, _trace = logdiv.run_cli(["monoid", "hilbert", "-"], json.dumps(MONOID_23))
    assert code == 0
    assert json.loads(out)["hilbert_basis"] == [[1]]
