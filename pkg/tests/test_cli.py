import json

import pytest

from aecolor.cli import (
    ExperimentConfig,
    generate_sparse,
    main,
    run_experiment,
    write_dot,
)
from aecolor.coloring import EdgeColoring, has_bichromatic_cycle, parse_coloring
from aecolor.graph import format_edge_list
from conftest import complete, cycle


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def write_graph(tmp_path, g, name="g.txt"):
    p = tmp_path / name
    p.write_text(format_edge_list(g))
    return str(p)


def test_chi_a_c5(tmp_path, capsys):
    path = write_graph(tmp_path, cycle(5))
    code, payload = run(capsys, ["chi-a", path])
    assert code == 0
    assert payload["chi_a"] == 3
    assert len(payload["coloring"]) == 5


def test_chi_a_max_k_exceeded(tmp_path, capsys):
    path = write_graph(tmp_path, complete(4))
    code, payload = run(capsys, ["chi-a", path, "--max-k", "4"])
    assert code == 1
    assert payload["chi_a"] is None


def test_chi_a_budget_exhaustion_exit_2(tmp_path, capsys):
    path = write_graph(tmp_path, complete(7))
    code, payload = run(capsys, ["chi-a", path, "--budget-nodes", "5"])
    assert code == 2
    assert payload["chi_a"] is None


def test_mad_k4(tmp_path, capsys):
    path = write_graph(tmp_path, complete(4))
    code, payload = run(capsys, ["mad", path])
    assert code == 0
    assert payload["mad"] == "3"
    assert payload["bounds"] == {"lt4": True, "lt3": False}


def test_check_valid(tmp_path, capsys):
    g = cycle(4)
    gp = write_graph(tmp_path, g)
    cp = tmp_path / "c.txt"
    cp.write_text("k 3\n0 1 1\n1 2 2\n2 3 1\n3 0 3\n")
    code, payload = run(capsys, ["check", gp, str(cp)])
    assert code == 0
    assert payload["valid"] and payload["total"]


def test_check_bichromatic_exit_1(tmp_path, capsys):
    g = cycle(4)
    gp = write_graph(tmp_path, g)
    cp = tmp_path / "c.txt"
    cp.write_text("k 2\n0 1 1\n1 2 2\n2 3 1\n3 0 2\n")
    code, payload = run(capsys, ["check", gp, str(cp)])
    assert code == 1
    assert payload["reason"] == "bichromatic-cycle"
    assert sorted(payload["colors"]) == [1, 2]


def test_check_improper_exit_1(tmp_path, capsys):
    gp = write_graph(tmp_path, cycle(4))
    cp = tmp_path / "c.txt"
    cp.write_text("k 3\n0 1 1\n1 2 1\n")
    code, payload = run(capsys, ["check", gp, str(cp)])
    assert code == 1
    assert payload["reason"] == "not-proper"


def test_malformed_graph_exit_2(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("p 3 1\ne 0 zero\n")
    code, payload = run(capsys, ["chi-a", str(p)])
    assert code == 2
    assert "line" in payload["error"]


def test_missing_file_exit_2(tmp_path, capsys):
    code, payload = run(capsys, ["mad", str(tmp_path / "nope.txt")])
    assert code == 2
    assert "error" in payload


def test_color_roundtrips_through_check(tmp_path, capsys):
    g = complete(4)
    gp = write_graph(tmp_path, g)
    out = tmp_path / "col.txt"
    code, payload = run(capsys, ["color", gp, "--k", "5", "--out", str(out)])
    assert code == 0
    assert payload["outcome"] in ("success", "fallback-success")
    c = parse_coloring(out.read_text(), g)
    assert has_bichromatic_cycle(g, c) is None
    code2, payload2 = run(capsys, ["check", gp, str(out)])
    assert code2 == 0 and payload2["valid"]


def test_color_auto_palette(tmp_path, capsys):
    gp = write_graph(tmp_path, cycle(6))
    code, payload = run(capsys, ["color", gp])
    assert code == 0
    assert payload["k"] == 3  # mad(C6) = 2 < 3 gives Delta + 1
    assert payload["guarantee"] == "mad<3"


def test_color_failure_exit_1(tmp_path, capsys):
    gp = write_graph(tmp_path, complete(4))
    code, payload = run(capsys, ["color", gp, "--k", "4", "--no-fallback"])
    assert code == 1
    assert payload["outcome"] == "failure"


def test_color_rejects_too_small_k(tmp_path, capsys):
    gp = write_graph(tmp_path, complete(4))
    code, payload = run(capsys, ["color", gp, "--k", "2"])
    assert code == 2
    assert "error" in payload


def test_lemmas_k4(tmp_path, capsys):
    gp = write_graph(tmp_path, complete(4))
    code, payload = run(capsys, ["lemmas", gp, "--k", "4"])
    assert code == 0
    assert all(p["holds"] for p in payload["predicates"])


def test_lemmas_violation_exit_1(tmp_path, capsys):
    gp = write_graph(tmp_path, cycle(6))
    code, payload = run(capsys, ["lemmas", gp, "--k", "3"])
    assert code == 1


def test_discharge_c6(tmp_path, capsys):
    gp = write_graph(tmp_path, cycle(6))
    code, payload = run(capsys, ["discharge", gp, "--rules", "mad3"])
    assert code == 0
    assert payload["total_initial"] == payload["total_final"] == "-6"
    assert payload["contradiction_report"]["total_initial_negative"]


def test_discharge_dense_notes_hypothesis(tmp_path, capsys):
    gp = write_graph(tmp_path, complete(5))
    code, payload = run(capsys, ["discharge", gp, "--rules", "mad4"])
    assert code == 0
    assert "note" in payload


def test_critical_sweep_cli(tmp_path, capsys):
    code, payload = run(capsys, ["critical-sweep", "--n-max", "4"])
    assert code == 0
    assert len(payload["critical"]) == 1
    assert payload["critical"][0]["k"] == 4


def test_dot_export(tmp_path):
    g = cycle(3)
    c = EdgeColoring(3, {0: 1, 1: 2})
    out = tmp_path / "g.dot"
    write_dot(g, c, str(out))
    text = out.read_text()
    assert text.startswith("graph G {")
    assert "color=red" in text and "style=dashed" in text


def test_generate_sparse_deterministic():
    a = generate_sparse(10, 15, seed=7)
    b = generate_sparse(10, 15, seed=7)
    assert a.edges == b.edges
    assert a.m == 15


def test_generate_sparse_rejects_too_many_edges():
    with pytest.raises(ValueError):
        generate_sparse(4, 7, seed=0)


def test_experiment_config_roundtrip(tmp_path):
    cfg = ExperimentConfig("theorem3", n=9, trials=4, seed=3, workers=2,
                           edge_factor=1.4)
    p = tmp_path / "exp.cfg"
    cfg.to_file(str(p))
    assert ExperimentConfig.from_file(str(p)) == cfg


def test_experiment_theorem3_small():
    summary = run_experiment(ExperimentConfig("theorem3", n=8, trials=6, seed=1))
    assert summary["violations"] == 0
    assert len(summary["records"]) == 6


def test_experiment_cli_exit_codes(capsys):
    code, payload = run(capsys, ["experiment", "colorer", "--n", "10",
                                 "--trials", "4", "--seed", "2"])
    assert code == 0
    assert payload["violations"] == 0


def test_experiment_workers_preserve_order():
    cfg1 = ExperimentConfig("theorem3", n=7, trials=4, seed=5, workers=1)
    cfg2 = ExperimentConfig("theorem3", n=7, trials=4, seed=5, workers=2)

    def strip_timing(records):
        return [{k: v for k, v in r.items() if k != "seconds"} for r in records]

    assert strip_timing(run_experiment(cfg1)["records"]) == \
        strip_timing(run_experiment(cfg2)["records"])
