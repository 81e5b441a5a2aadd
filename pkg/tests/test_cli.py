import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from curvedefect import dump_cmap, load_cmap, torus_knot
from curvedefect.cli import run_capture
from curvedefect.planegraph import load_plane_graph


def run(argv, stdin=None):
    code, out = run_capture(argv, stdin)
    return code, out


def test_gen_torus_and_defect():
    code, text = run(["gen", "torus", "3", "4"])
    assert code == 0 and load_cmap(text).n == 8
    code, out = run(["defect", "-"], text)
    assert code == 0 and json.loads(out) == {"n": 8, "polyak": 8, "winding": 8}


def test_defect_report():
    code, out = run(["defect", "-", "--report"], dump_cmap(torus_knot(2, 3)))
    rep = json.loads(out)
    assert code == 0 and rep["polyak"] == 2 and set(rep["residuals"].values()) == {0}


def test_gen_graphs():
    code, text = run(["gen", "cylgrid", "2", "5"])
    g = load_plane_graph(text)
    assert code == 0 and (g.vertex_count, g.edge_count) == (10, 15)
    code, text = run(["gen", "grid", "3", "3"])
    assert code == 0 and load_plane_graph(text).vertex_count == 9


def test_gen_random_deterministic():
    assert run(["gen", "random", "9", "--seed", "4"]) == run(["gen", "random", "9", "--seed", "4"])


def test_gen_sum(tmp_path):
    a = tmp_path / "a.cmap"
    b = tmp_path / "b.cmap"
    a.write_text(dump_cmap(torus_knot(3, 4)))
    b.write_text(dump_cmap(torus_knot(4, 3)))
    code, text = run(["gen", "sum", str(a), str(b)])
    assert code == 0
    code, out = run(["defect", "-"], text)
    assert json.loads(out)["polyak"] == 6


def test_moves_listing():
    code, out = run(["moves", "-"], dump_cmap(torus_knot(2, 3)))
    rows = json.loads(out)
    assert code == 0 and len(rows) == 5
    assert all(r["predicted_delta"] in (-2, 0, 2) for r in rows)
    code, _ = run(["moves", "-", "--kinds", "9->9"], dump_cmap(torus_knot(2, 3)))
    assert code == 2


def test_reduce_with_trace(tmp_path):
    trace = tmp_path / "t.json"
    code, out = run(["reduce", "-", "--trace", str(trace)], dump_cmap(torus_knot(2, 3)))
    summary = json.loads(out)
    assert code == 0 and summary["moves"] == 2 and summary["final_n"] == 0
    steps = json.loads(trace.read_text())
    assert [s["kind"] for s in steps] == ["2->0", "1->0"]


def test_reduce_exact_medial():
    code, out = run(["reduce", "-", "--family", "medial", "--exact"], dump_cmap(torus_knot(2, 3)))
    assert code == 0 and json.loads(out)["moves"] == 3


def test_reduce_budget_failure():
    code, out = run(["reduce", "-", "--max-steps", "1"], dump_cmap(torus_knot(3, 4)))
    assert code == 1 and json.loads(out)["failed"]


def test_graph_commands():
    _, g = run(["gen", "cylgrid", "1", "3"])
    code, out = run(["ereduce", "-"], g)
    assert code == 0 and json.loads(out)["moves"] >= 1
    code, m = run(["medial", "-"], g)
    assert code == 0 and load_cmap(m).key() == torus_knot(2, 3).key()
    code, d = run(["dual", "-"], g)
    assert code == 0 and load_plane_graph(d).vertex_count == 2
    code, out = run(["bounds", "-"], g)
    assert code == 0 and json.loads(out)["lowerBound"] == 1


def test_casson_modes():
    text = dump_cmap(torus_knot(3, 4))
    code, out = run(["casson", "-"], text)
    res = json.loads(out)
    assert code == 0 and res["expected_c2_num"] * 8 == res["defect"] * res["expected_c2_den"]
    code, out = run(["casson", "-", "--samples", "2000", "--seed", "5"], text)
    res = json.loads(out)
    assert code == 0 and abs(res["mean"] - 1.0) < 5 * res["stderr"] + 1e-9
    code, _ = run(["casson", "-", "--samples", "0"], text)
    assert code == 2


def test_render(tmp_path):
    out = tmp_path / "t.svg"
    code, _ = run(["render", "-", "-o", str(out)], dump_cmap(torus_knot(2, 3)))
    assert code == 0
    root = ET.fromstring(out.read_text())
    assert root.tag.endswith("svg")


def test_table_torus():
    code, out = run(["table", "torus", "--pmax", "4", "--amax", "2"])
    lines = out.strip().split("\n")
    assert code == 0 and lines[0].split("\t")[0] == "family"
    assert all(line.endswith("True") for line in lines[1:])


def test_check_suite():
    code, out = run(["check", "--suite", "defect"])
    assert code == 0 and "checks passed" in out
    code, _ = run(["check", "--suite", "nope"])
    assert code == 2


@pytest.mark.parametrize(
    "argv,stdin,expected",
    [
        (["bogus"], None, 2),
        (["defect", "/nonexistent/file"], None, 2),
        (["defect", "-"], "cmap 1\nvertices 1\nv 0 0.0 0.2 0.1 0.3\n", 1),
        (["defect", "-"], "cmap 1\nvertices 2\nv 0 1.0 1.3 1.2 1.1\nv 1 0.0 0.3 0.2 0.1\n", 1),
        (["defect", "-"], "not a map\n", 1),
        (["gen", "torus", "x", "3"], None, 2),
    ],
)
def test_exit_codes(argv, stdin, expected):
    assert run(argv, stdin)[0] == expected


def test_error_names_invariant(capsys):
    run(["defect", "-"], "cmap 1\nvertices 2\nv 0 1.0 1.3 1.2 1.1\nv 1 0.0 0.3 0.2 0.1\n")
    assert "unicursal" in capsys.readouterr().err


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "curvedefect", "gen", "torus", "2", "3"], capture_output=True, text=True)
    assert out.returncode == 0 and load_cmap(out.stdout).n == 3
