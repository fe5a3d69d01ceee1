import io
import random

import pytest

from catbound.bench import (BenchRow, CSV_HEADER, geometric_mean,
                            loglog_regress, read_csv, run_manifest,
                            run_methods, write_csv)
from catbound.graph import dump_edge_list, from_edge_pairs
from catbound.homcount import pattern_by_name
from helpers import random_graph

K3_HOST = from_edge_pairs([(0, 1), (1, 2), (0, 2)])


def make_row(shape="K3", true=6, star=60.0, bistar=50.0, vvv=40.0,
             nnn=30.0, www=20.0):
    st = star / true if true else None
    wt = www / true if true else None
    return BenchRow(shape, true, star, bistar, vvv, nnn, www, st, wt)


def test_run_methods_on_k3():
    rows = run_methods(K3_HOST, [pattern_by_name("K3"), pattern_by_name("path3")])
    by_shape = {r.shape: r for r in rows}
    assert by_shape["K3"].true == 6
    assert by_shape["path3"].true == 12  # sum of squared degrees
    for r in rows:
        bounds = r.bounds()
        assert all(b >= r.true * (1 - 1e-9) for b in bounds)
        for left, right in zip(bounds, bounds[1:]):
            assert right <= left * (1 + 1e-9)
        assert r.s_over_t == pytest.approx(r.star / r.true)
        assert r.w_over_t == pytest.approx(r.www / r.true)


def test_run_methods_budget_exhaustion_marks_row():
    host = random_graph(random.Random(4), max_vertices=10, max_edges=20)
    rows = run_methods(host, [pattern_by_name("path5")], budget=2)
    assert rows[0].true is None
    assert rows[0].s_over_t is None
    assert rows[0].star > 0


def test_geometric_mean_examples():
    a = make_row(star=10.0)
    b = make_row(star=1000.0)
    merged = geometric_mean([[a], [b]])
    assert merged[0].star == pytest.approx(100.0, rel=1e-12)
    single = geometric_mean([[a]])
    assert single[0].star == pytest.approx(a.star)
    assert single[0].true == pytest.approx(a.true)


def test_geometric_mean_skips_zero_and_missing_true():
    present = make_row(true=6)
    absent = make_row(true=0)
    merged = geometric_mean([[present], [absent]])
    assert merged[0].star == pytest.approx(present.star)  # only one contributes
    gone = geometric_mean([[absent], [make_row(true=None)]])
    assert gone == []


def test_geometric_mean_preserves_ordering_invariant():
    rows1 = [make_row(star=100.0, bistar=90.0, vvv=80.0, nnn=70.0, www=60.0)]
    rows2 = [make_row(star=10.0, bistar=9.0, vvv=8.0, nnn=7.0, www=6.0)]
    merged = geometric_mean([rows1, rows2])[0]
    b = merged.bounds()
    assert all(right <= left for left, right in zip(b, b[1:]))


def test_geometric_mean_shape_mismatch_rejected():
    with pytest.raises(ValueError):
        geometric_mean([[make_row("K3")], [make_row("path3")]])


def test_loglog_regress_exact_power_law():
    pts = [(x, x ** 0.5) for x in (2.0, 3.0, 5.0, 10.0, 100.0)]
    reg = loglog_regress(pts)
    assert reg.slope == pytest.approx(0.5, abs=1e-12)
    assert reg.r_squared == pytest.approx(1.0, abs=1e-12)
    assert reg.point_count == 5


def test_loglog_regress_identical_points_ray():
    pts = [(10.0, 100.0)] * 4
    reg = loglog_regress(pts)
    assert reg.slope == pytest.approx(2.0, abs=1e-12)
    assert reg.r_squared == pytest.approx(1.0)


def test_loglog_regress_with_intercept():
    pts = [(x, 7.0 * x ** 0.8) for x in (1.5, 2.0, 4.0, 9.0)]
    reg = loglog_regress(pts, through_origin=False)
    assert reg.slope == pytest.approx(0.8, abs=1e-9)
    assert reg.r_squared == pytest.approx(1.0, abs=1e-12)


def test_loglog_regress_errors():
    with pytest.raises(ValueError):
        loglog_regress([(1.0, 2.0)])
    with pytest.raises(ValueError):
        loglog_regress([(0.0, 2.0), (1.0, 1.0)])
    with pytest.raises(ValueError):
        loglog_regress([(1.0, 2.0), (1.0, 3.0)])  # all x = 1


def test_csv_round_trip():
    rows = [make_row(), make_row(shape="path3", true=0),
            BenchRow("K5", None, 1.5, 1.4, 1.3, 1.2, 1.1, None, None)]
    buf = io.StringIO()
    write_csv(rows, buf)
    text = buf.getvalue()
    assert text.splitlines()[0] == ",".join(CSV_HEADER)
    back = read_csv(io.StringIO(text))
    buf2 = io.StringIO()
    write_csv(back, buf2)
    assert buf2.getvalue() == text
    assert back[2].true is None
    assert back[1].true == 0


def test_csv_empty_rows_gives_header_only():
    buf = io.StringIO()
    write_csv([], buf)
    assert buf.getvalue().strip() == ",".join(CSV_HEADER)


def test_csv_single_row_is_two_lines():
    buf = io.StringIO()
    write_csv([make_row()], buf)
    assert len(buf.getvalue().strip().splitlines()) == 2


def test_csv_six_significant_digits():
    row = make_row(star=123456789.123)
    buf = io.StringIO()
    write_csv([row], buf)
    assert "1.23457e+08" in buf.getvalue()


def test_run_manifest_end_to_end(tmp_path):
    rng = random.Random(10)
    patterns = [pattern_by_name(n) for n in ("path3", "K3", "path4", "cycle4")]
    names = []
    for i in range(2):
        g = random_graph(rng, max_vertices=8, max_edges=14, min_edges=4)
        path = tmp_path / f"g{i}.txt"
        path.write_text(dump_edge_list(g))
        names.append(path.name)
    manifest = tmp_path / "manifest.txt"
    manifest.write_text("# two hosts\n" + "\n".join(names) + "\n")
    out = tmp_path / "out"
    result = run_manifest(manifest, out, patterns=patterns)
    assert (out / "g0.csv").exists() and (out / "g1.csv").exists()
    assert (out / "_average.csv").exists()
    avg = read_csv(out / "_average.csv")
    assert [r.shape for r in avg] == [r.shape for r in result.average]
    disk0 = read_csv(out / "g0.csv")
    assert [r.shape for r in disk0] == [p.name for p in patterns]


def test_run_manifest_single_dataset_average_is_identity(tmp_path):
    patterns = [pattern_by_name("path3"), pattern_by_name("K3")]
    path = tmp_path / "host.txt"
    path.write_text(dump_edge_list(K3_HOST))
    manifest = tmp_path / "m.txt"
    manifest.write_text("host.txt\n")
    out = tmp_path / "out"
    result = run_manifest(manifest, out, patterns=patterns)
    kept = [r for r in result.dataset_rows[0] if r.true and r.true >= 1]
    assert len(result.average) == len(kept)
    for avg_row, row in zip(result.average, kept):
        assert avg_row.star == pytest.approx(row.star, rel=1e-12)
        assert avg_row.www == pytest.approx(row.www, rel=1e-12)


def test_run_manifest_empty_rejected(tmp_path):
    manifest = tmp_path / "m.txt"
    manifest.write_text("# nothing\n")
    with pytest.raises(ValueError):
        run_manifest(manifest, tmp_path / "out")
