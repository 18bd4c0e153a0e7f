"""Diagram machinery: edge classification, subdiagram catalogue,
completions, the finite-volume criterion (both routes), cusp counting, and
DOT output."""

from fractions import Fraction

import pytest

from bianchi.coxeter import (
    VolumeTracker,
    build_diagram,
    classify_subdiagram,
    completions,
    count_cusps,
    cusp_pairs_at_vertex,
    edge_code,
    export_dot,
    finite_volume,
    gram_entry,
    ideal_vertex_directions,
    polyhedron_counts,
)
from bianchi.errors import NonCrystallographicAngle
from bianchi.qform import make_form, make_root
from bianchi.vinberg import initial_roots, run, Budget


def _diagram(m, vecs):
    form = make_form(m)
    return form, build_diagram(form, [make_root(form, v) for v in vecs])


def test_gram_entry_examples():
    form = make_form(5)
    e1, e2, e3, _e4 = initial_roots(form)
    e5 = make_root(form, (-1, 1, 0, 0))
    assert gram_entry(form, e1, e2).kind == "cusp"
    assert gram_entry(form, e2, e5) == gram_entry(form, e5, e2)
    assert gram_entry(form, e2, e5).kind == "angle"
    assert gram_entry(form, e2, e5).n == 3
    assert gram_entry(form, e1, e3).kind == "right_angle"


def test_divergent_witness():
    form = make_form(7)
    e4 = initial_roots(form)[3]
    e5 = make_root(form, (-1, 1, 0, 0))
    kind = gram_entry(form, e4, e5)
    assert kind.kind == "divergent"
    assert kind.sep_sq == Fraction(49, 28)  # strictly > 1


def test_edge_code_rejects_bad_angle():
    # q = 4*1/(2*4) = 1/2 is not a legal value
    with pytest.raises(NonCrystallographicAngle):
        edge_code(-1, 2, 4)
    with pytest.raises(ValueError):
        edge_code(1, 2, 2)


def test_initial_diagram_edges():
    for m in (5, 13, 26):
        form = make_form(m)
        d = build_diagram(form, initial_roots(form))
        kinds = {(i, j): d.edge(i, j).kind for i in range(4) for j in range(i + 1, 4)}
        assert kinds == {
            (0, 1): "cusp", (2, 3): "cusp",
            (0, 2): "right_angle", (0, 3): "right_angle",
            (1, 2): "right_angle", (1, 3): "right_angle",
        }


def test_single_root_diagram():
    form, d = _diagram(5, [(-1, 1, 0, 0)])
    assert len(d) == 1
    assert finite_volume(d).finite is False
    assert count_cusps(d) == 0


def test_classify_subdiagram_m33(terminated_runs):
    _form, _state, d = terminated_runs[33]
    c135 = classify_subdiagram(d, (0, 2, 4))
    assert (c135.kind, c135.components) == ("elliptic", ("A1", "A1", "A1"))
    c269 = classify_subdiagram(d, (1, 5, 8))
    assert (c269.kind, c269.components) == ("elliptic", ("B3",))
    c1234 = classify_subdiagram(d, (0, 1, 2, 3))
    assert (c1234.kind, c1234.components, c1234.rank) == ("parabolic", ("A~1", "A~1"), 2)


def test_classify_single_and_cusp_pair(terminated_runs):
    _form, _state, d = terminated_runs[33]
    for v in range(len(d)):
        cls = classify_subdiagram(d, (v,))
        assert (cls.kind, cls.components) == ("elliptic", ("A1",))
    cls = classify_subdiagram(d, (0, 1))
    assert (cls.kind, cls.components, cls.rank) == ("parabolic", ("A~1",), 1)


def test_completions_m33_sample(terminated_runs):
    _form, _state, d = terminated_runs[33]
    got = {
        (tuple(sorted(x + 1 for x in t)), cls.describe())
        for t, cls in completions(d, (0, 2))
    }
    assert got == {((2, 4), "2 x A~1"), ((5,), "3 x A1")}
    got = {
        (tuple(sorted(x + 1 for x in t)), cls.describe())
        for t, cls in completions(d, (1, 8))
    }
    assert got == {((6,), "B3"), ((8,), "B3")}


def test_finite_volume_m33(terminated_runs):
    _form, _state, d = terminated_runs[33]
    report = finite_volume(d)
    assert report.finite and not report.compact
    assert all(v == 2 for v in report.counts.values())
    assert len(report.counts) == 37  # one rank-2 elliptic subdiagram per edge


def test_finite_volume_initial_only():
    form = make_form(33)
    d = build_diagram(form, initial_roots(form))
    assert finite_volume(d).finite is False


def test_count_cusps(terminated_runs):
    _form, _state, d33 = terminated_runs[33]
    assert count_cusps(d33) == 2
    dirs = ideal_vertex_directions(d33)
    assert (1, 0, 0, 0) in dirs
    for m in (5, 13, 26):
        form = make_form(m)
        d = build_diagram(form, initial_roots(form))
        assert count_cusps(d) == 1
        assert ideal_vertex_directions(d) == [(1, 0, 0, 0)]


def test_cusp_pairs_at_vertex(terminated_runs):
    _form, _state, d33 = terminated_runs[33]
    # heavy edges at vertex 1 are 1-2 and 1-9 (matching the published diagram)
    assert cusp_pairs_at_vertex(d33, 0) == 2
    _form, _state, d5 = terminated_runs[5]
    assert cusp_pairs_at_vertex(d5, 0) == 1
    form, d = _diagram(5, [(-1, 1, 0, 0)])
    assert cusp_pairs_at_vertex(d, 0) == 0


def test_polyhedron_counts_m33(terminated_runs):
    _form, _state, d = terminated_runs[33]
    assert polyhedron_counts(d) == (24, 37, 15)


def test_tracker_matches_from_scratch():
    for m, budget in ((33, Budget()), (23, Budget(max_roots=40))):
        form = make_form(m)
        state = run(form, budget)
        for t in range(1, len(state.roots) + 1):
            d = build_diagram(form, state.roots[:t])
            tracker = VolumeTracker()
            for i in range(t):
                tracker.add_root([d.codes[i][j] for j in range(i)] + [0])
            scratch = finite_volume(d)
            assert tracker.finite_volume_now() == scratch.finite
            assert tracker.pair_counts == scratch.counts


def test_m5_edge_multiset(terminated_runs):
    _form, _state, d = terminated_runs[5]
    kinds = sorted(
        (d.edge(i, j).kind, d.edge(i, j).n or 0)
        for i in range(6)
        for j in range(i + 1, 6)
        if d.edge(i, j).kind != "right_angle"
    )
    assert kinds == [
        ("angle", 3), ("angle", 4),
        ("cusp", 0), ("cusp", 0),
        ("divergent", 0), ("divergent", 0),
    ]


def test_export_dot(terminated_runs):
    form = make_form(5)
    d = build_diagram(form, initial_roots(form)[:2])
    text = export_dot(d)
    assert text.count("--") == 1 and "style=bold" in text
    _form, _state, d33 = terminated_runs[33]
    text = export_dot(d33)
    assert text == export_dot(d33)  # deterministic
    assert text.count("v") >= 15
    filled = [line for line in text.splitlines() if "style=filled" in line]
    assert [f"v{i}" in line for i, line in zip((6, 7, 8, 10, 12, 13), filled)]
    assert 'label="6"' not in text  # no pi/6 angles in the m=33 domain
    _form, _state, d21 = terminated_runs[21]
    assert 'label="6"' in export_dot(d21)
