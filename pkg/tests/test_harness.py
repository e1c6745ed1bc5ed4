import json

import pytest

from multicolor.adversary import hex_chain, path_family, random_instance
from multicolor.cli import main
from multicolor.graph import build_hexagonal, build_path
from multicolor.harness import (
    actions_from_dicts,
    actions_to_dicts,
    advice_bound,
    batch,
    instance_from_dict,
    instance_to_dict,
    load_instance,
    run,
    save_instance,
)
from multicolor.instance import CancelAction, ColorAction, Instance, Request


def hex_edge_21():
    g = build_hexagonal({"u": (0, 0), "v": (1, 0)})
    reqs = (Request("u", "color"), Request("v", "color"), Request("u", "color"))
    return Instance(g, reqs, name="hex_edge_21")


class TestSerialization:
    @pytest.mark.parametrize("make", [
        lambda: path_family(40)[2],
        lambda: hex_chain(2, (1, 0)),
        lambda: random_instance("bipartite", seed=3),
        lambda: hex_edge_21(),
    ])
    def test_round_trip(self, make):
        inst = make()
        back = instance_from_dict(instance_to_dict(inst))
        assert back.requests == inst.requests
        assert back.graph.kind == inst.graph.kind
        assert back.graph.edges == inst.graph.edges
        assert back.name == inst.name

    def test_file_round_trip(self, tmp_path):
        inst = random_instance("hexagonal", seed=5)
        path = tmp_path / "inst.json"
        save_instance(inst, str(path))
        back = load_instance(str(path))
        assert back.requests == inst.requests
        assert back.graph.cell_of == inst.graph.cell_of

    def test_cancel_request_format(self):
        g = build_path(1)
        inst = Instance(g, (Request("v1", "color"), Request("v1", "cancel", cancel_color=1)))
        d = instance_to_dict(inst)
        assert d["requests"][1] == {"node": "v1", "op": "cancel", "color": 1}
        assert instance_from_dict(d).requests == inst.requests

    def test_actions_round_trip(self):
        acts = [ColorAction(3), CancelAction(), CancelAction(recolor=(5, 2))]
        assert actions_from_dicts(actions_to_dicts(acts)) == acts


class TestRun:
    def test_path_family_greedy_opt(self):
        report = run(path_family(40)[2], "greedy_opt")
        assert report.max_color == 12
        assert report.opt_value == 12
        assert report.strict_ratio == 1.0
        assert report.valid

    def test_hex_edge_hex43(self):
        report = run(hex_edge_21(), "hex43")
        assert report.max_color == 4
        assert report.advice_bits_read == 5
        assert report.valid

    def test_empty_instance(self):
        inst = Instance(build_path(2), (), name="empty")
        report = run(inst, "greedy_opt")
        assert report.max_color == 0
        assert report.valid
        assert report.strict_ratio is None

    def test_budget_exceeded_reports_no_opt(self):
        inst = random_instance("hexagonal", seed=1, n_nodes=8, n_requests=20)
        report = run(inst, "hex43", max_nodes=2, max_requests=2)
        assert report.opt_value is None and report.strict_ratio is None
        assert report.valid

    def test_bits_read_within_declared_bound(self):
        for algo, inst in [
            ("greedy_opt", path_family(40)[0]),
            ("greedy_truncated", path_family(40)[3]),
            ("trivial", hex_edge_21()),
            ("fpa", hex_edge_21()),
            ("hex43", hex_edge_21()),
        ]:
            b = 2 if algo == "greedy_truncated" else None
            report = run(inst, algo, b=b)
            assert report.advice_bits_read <= advice_bound(inst, algo, b=b)


class TestBatch:
    def _manifest(self, tmp_path):
        save_instance(path_family(40)[2], str(tmp_path / "i2.json"))
        save_instance(hex_edge_21(), str(tmp_path / "hex.json"))
        return {
            "runs": [
                {"instance": "i2.json", "algo": "greedy_opt"},
                {"instance": "i2.json", "algo": "greedy_truncated", "b": 2},
                {"instance": "hex.json", "algo": "hex43"},
            ]
        }

    def test_rows_and_determinism(self, tmp_path):
        manifest = self._manifest(tmp_path)
        text1, ok1 = batch(manifest, base_dir=str(tmp_path))
        text2, ok2 = batch(manifest, base_dir=str(tmp_path))
        assert text1 == text2
        assert ok1 and ok2
        lines = text1.strip().split("\n")
        assert len(lines) == 4  # header + 3 rows
        assert lines[1].startswith("greedy_opt,path_family_n40_i2,12,")

    def test_error_row_continues(self, tmp_path):
        manifest = self._manifest(tmp_path)
        manifest["runs"].insert(1, {"instance": "missing.json", "algo": "fpa"})
        text, ok = batch(manifest, base_dir=str(tmp_path))
        lines = text.strip().split("\n")
        assert len(lines) == 5
        assert "error" in lines[2]
        assert not ok
        assert lines[4].startswith("hex43,")


class TestCli:
    def test_gen_opt_run_verify(self, tmp_path, capsys):
        inst_path = str(tmp_path / "inst.json")
        assert main(["gen", "random", "--kind", "bipartite", "--seed", "4",
                     "--out", inst_path]) == 0

        opt_path = str(tmp_path / "opt.json")
        assert main(["opt", inst_path, "--out", opt_path]) == 0
        opt_payload = json.loads(open(opt_path).read())
        assert opt_payload["opt"] >= 1

        run_path = str(tmp_path / "run.json")
        assert main(["run", inst_path, "--algo", "greedy_opt", "--out", run_path]) == 0
        report = json.loads(open(run_path).read())
        assert report["valid"] is True
        assert report["max_color"] == opt_payload["opt"]

        # verify the optimal witness replayed as a log
        inst = load_instance(inst_path)
        from multicolor.oracle import opt_exact
        from conftest import witness_actions

        acts = witness_actions(inst, opt_exact(inst).coloring)
        log_path = str(tmp_path / "log.json")
        with open(log_path, "w") as fh:
            json.dump({"actions": actions_to_dicts(acts)}, fh)
        assert main(["verify", inst_path, log_path, "--out",
                     str(tmp_path / "verdict.json")]) == 0

        # a corrupted log (color 0 is never legal) is rejected with exit code 1
        bad = actions_to_dicts(acts)
        bad[0] = {"op": "color", "color": 0}
        with open(log_path, "w") as fh:
            json.dump({"actions": bad}, fh)
        v2_path = str(tmp_path / "v2.json")
        assert main(["verify", inst_path, log_path, "--out", v2_path]) == 1
        assert json.loads(open(v2_path).read())["verdict"] == "violation"

    def test_batch_cli(self, tmp_path):
        inst_path = str(tmp_path / "i0.json")
        assert main(["gen", "path_family", "--n", "40", "--i", "0",
                     "--out", inst_path]) == 0
        manifest_path = str(tmp_path / "manifest.json")
        with open(manifest_path, "w") as fh:
            json.dump({"runs": [{"instance": "i0.json", "algo": "greedy_opt"}]}, fh)
        out_path = str(tmp_path / "report.csv")
        assert main(["batch", manifest_path, "--out", out_path]) == 0
        text = open(out_path).read()
        assert text.splitlines()[0].startswith("algorithm,")
        assert "greedy_opt" in text

    def test_run_csv_format(self, tmp_path, capsys):
        inst_path = str(tmp_path / "inst.json")
        main(["gen", "hex_chain", "--branch", "10", "--out", inst_path])
        assert main(["run", inst_path, "--algo", "fpa", "--format", "csv"]) == 0
        out = capsys.readouterr().out
        assert out.splitlines()[0].startswith("algorithm,")

    def test_error_exit_code(self, tmp_path, capsys):
        inst_path = str(tmp_path / "hex.json")
        main(["gen", "hex_chain", "--branch", "1", "--out", inst_path])
        # bipartite-only algorithm on a hexagonal instance -> domain error
        assert main(["run", inst_path, "--algo", "greedy_opt"]) == 2
