import io
import random

import numpy as np
import pytest

from catbound.graph import (GraphParseError, degree_of, dump_edge_list,
                            from_edge_pairs, load_edge_list)
from helpers import random_graph


def test_two_edge_path():
    g = load_edge_list(io.StringIO("a b\nb c"))
    assert g.vertex_count == 3
    assert g.directed_edge_count == 4
    by_label = {g.label_of(v): degree_of(g, v) for v in range(3)}
    assert by_label == {"a": 1, "b": 2, "c": 1}
    g.validate()


def test_duplicates_and_loops_dropped():
    g = load_edge_list(io.StringIO("a b\nb a\na a"))
    assert g.vertex_count == 2
    assert g.directed_edge_count == 2  # one undirected edge


def test_comment_lines_skipped():
    g = load_edge_list(io.StringIO("# comment\n1 2"))
    assert g.directed_edge_count == 2
    assert g.vertex_count == 2


def test_empty_input_gives_empty_graph():
    g = load_edge_list(io.StringIO(""))
    assert g.vertex_count == 0
    assert g.directed_edge_count == 0
    g.validate()


def test_loop_only_input_keeps_vertex():
    g = load_edge_list(io.StringIO("a a"))
    assert g.vertex_count == 1
    assert g.directed_edge_count == 0


def test_malformed_line_reports_line_number():
    with pytest.raises(GraphParseError) as err:
        load_edge_list(io.StringIO("a b\nx y z"))
    assert err.value.line_number == 2
    with pytest.raises(GraphParseError) as err:
        load_edge_list(io.StringIO("lonely"))
    assert err.value.line_number == 1


def test_bytes_and_path_sources(tmp_path):
    g1 = load_edge_list(b"0 1\n1 2\n")
    path = tmp_path / "g.txt"
    path.write_text("0 1\n1 2\n")
    g2 = load_edge_list(path)
    assert g1.directed_edge_count == g2.directed_edge_count == 4


def test_degree_of_examples_and_range_error():
    star = load_edge_list(io.StringIO("c a\nc b\nc d"))
    assert degree_of(star, 0) == 3  # 'c' interned first
    with pytest.raises(ValueError):
        degree_of(star, 4)
    with pytest.raises(ValueError):
        degree_of(star, -1)


def test_dump_reload_identity():
    rng = random.Random(2024)
    for _ in range(40):
        g = random_graph(rng)
        text = dump_edge_list(g)
        g2 = load_edge_list(io.StringIO(text))
        assert g2.vertex_count == g.vertex_count
        assert g2.directed_edge_count == g.directed_edge_count
        assert np.array_equal(g2.degrees, g.degrees)
        assert np.array_equal(g2.indptr, g.indptr)
        assert np.array_equal(g2.indices, g.indices)
        assert dump_edge_list(g2) == text


def test_invariants_on_random_inputs():
    rng = random.Random(7)
    for _ in range(60):
        nv = rng.randrange(2, 10)
        m = rng.randrange(0, 25)
        lines = []
        for _ in range(m):
            u, v = rng.randrange(nv), rng.randrange(nv)
            lines.append(f"{u} {v}")
            if rng.random() < 0.3:
                lines.append(f"{v} {u}")  # inject reversed duplicate
            if rng.random() < 0.2:
                lines.append(f"{u} {u}")  # inject loop
        g = load_edge_list(io.StringIO("\n".join(lines)))
        g.validate()
        assert int(g.degrees.sum()) == g.directed_edge_count


def test_from_edge_pairs_keeps_isolated_vertices():
    g = from_edge_pairs([(0, 1)], vertex_count=5)
    assert g.vertex_count == 5
    assert g.degrees.tolist() == [1, 1, 0, 0, 0]
