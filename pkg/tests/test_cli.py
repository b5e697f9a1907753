import csv
import json
from pathlib import Path

import numpy as np
import pytest

from magnetic_eigenmaps.cli import EXIT_NUMERIC, EXIT_PARSE, main
from magnetic_eigenmaps.exceptions import IndexOutOfRangeError, ParamOutOfRangeError
from magnetic_eigenmaps.pipeline import RunConfig, cmd_embed

DATA = Path(__file__).parent / "data"


def strip_header(svg):
    return "\n".join(line for line in svg.splitlines() if not line.startswith("<!-- magnetic-eigenmaps"))


def rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


@pytest.fixture
def cycle_file(tmp_path):
    p = tmp_path / "cycle.edges"
    p.write_text("0 1\n1 2\n2 0\n")
    return p


class TestEmbed:
    def test_flow_groups(self, tmp_path, capsys):
        out = tmp_path / "o"
        rc = main(["embed", "--generator", "flow_groups", "--g", "1/4", "--seed", "0", "--out", str(out)])
        assert rc == 0
        summary = json.loads(capsys.readouterr().out)
        assert set(summary) >= {"coords", "spectrum", "diagnostics", "embedding"}
        coords = rows(out / "coords.csv")
        assert len(coords) == 30
        assert list(coords[0]) == ["node_id", "phase_0", "phase_1", "modulus_0", "modulus_1"]
        ph = np.array([[float(r["phase_0"]), float(r["phase_1"])] for r in coords])
        assert np.all((ph >= 0) & (ph < 2 * np.pi))
        diag = json.loads((out / "diagnostics.json").read_text())
        assert 0 <= diag["cluster_scores"]["phase_0"] <= 1
        assert all(b["slack"] >= -1e-8 for b in diag["bounds"])
        assert (out / "embedding.svg").read_text().startswith("<!-- magnetic-eigenmaps")

    def test_cycle3_spectrum(self, tmp_path, cycle_file):
        out = tmp_path / "o"
        assert main(["embed", str(cycle_file), "--g", "1/3", "--out", str(out)]) == 0
        spec = rows(out / "spectrum.csv")
        assert list(spec[0]) == ["k", "lambda_g", "lambda_0"]
        assert abs(float(spec[0]["lambda_g"])) <= 1e-10
        assert abs(float(spec[0]["lambda_0"])) <= 1e-10

    def test_zero_charge_warns(self, tmp_path, cycle_file, capsys):
        out = tmp_path / "o"
        assert main(["embed", str(cycle_file), "--g", "0", "--out", str(out)]) == 0
        assert "warning: g = 0 carries no directional information" in capsys.readouterr().err
        phases = {r["phase_0"] for r in rows(out / "coords.csv")}
        assert len(phases) == 1

    def test_string_ids_preserved(self, tmp_path):
        p = tmp_path / "g.edges"
        p.write_text("alpha beta\nbeta gamma\ngamma alpha\n")
        assert main(["embed", str(p), "--out", str(tmp_path / "o"), "--k", "2"]) == 0
        assert [r["node_id"] for r in rows(tmp_path / "o" / "coords.csv")] == ["alpha", "beta", "gamma"]

    def test_power_solver_and_rotate(self, tmp_path):
        out = tmp_path / "o"
        argv = ["embed", "--generator", "erdos_renyi_digraph", "--param", "n=30", "--param", "p=0.2",
                "--solver", "power", "--axes", "0,2", "--k", "3", "--rotate", "0,1.5", "--out", str(out)]
        assert main(argv) == 0
        assert list(rows(out / "coords.csv")[0])[1:3] == ["phase_0", "phase_2"]

    def test_golden_svg(self, tmp_path):
        cmd_embed(RunConfig(generator="flow_groups", params={"size": 4}, g="1/3", k=2, out=str(tmp_path), seed=0))
        got = (tmp_path / "embedding.svg").read_text()
        assert strip_header(got) == strip_header((DATA / "golden_embedding.svg").read_text())

    def test_config_file(self, tmp_path):
        cfg = tmp_path / "run.yaml"
        cfg.write_text(f"generator: cluster_hubs\ng: 1/4\nk: 3\nout: {tmp_path / 'o'}\nseed: 2\n")
        assert main(["embed", "--config", str(cfg)]) == 0
        diag = json.loads((tmp_path / "o" / "diagnostics.json").read_text())
        assert diag["config"]["seed"] == 2 and diag["n"] == 32


class TestGMLPipeline:
    def test_labeled_gml(self, tmp_path):
        from magnetic_eigenmaps.generators import gen_flow_groups

        graph, labels = gen_flow_groups(groups=2, size=8, seed=3)
        lines = ['Creator "test"', "graph [", "  directed 1"]
        lines += [f'  node [ id {i + 1} label "n{i}" value {lab} ]' for i, lab in enumerate(labels)]
        lines.append('  node [ id 99 label "alone" value 0 ]')
        lines += [f"  edge [ source {i + 1} target {j + 1} ]" for i, j in graph.arcs().tolist()]
        lines.append("]")
        path = tmp_path / "net.gml"
        path.write_text("\n".join(lines) + "\n")
        out = tmp_path / "o"
        argv = ["embed", str(path), "--g", "1/4", "--k", "4", "--axes", "0,3", "--drop-isolated", "--out", str(out)]
        assert main(argv) == 0
        diag = json.loads((out / "diagnostics.json").read_text())
        assert diag["n"] == 16 and set(diag["cluster_scores"]) == {"phase_0", "phase_3"}
        assert "99" not in {r["node_id"] for r in rows(out / "coords.csv")}
        assert main(["embed", str(path), "--out", str(tmp_path / "p")]) == EXIT_PARSE


class TestOtherCommands:
    def test_generate(self, tmp_path):
        assert main(["generate", "--generator", "flow_groups", "--seed", "1", "--out", str(tmp_path)]) == 0
        assert len((tmp_path / "graph.edges").read_text().splitlines()) > 30
        assert len(rows(tmp_path / "labels.csv")) == 30

    def test_spectrum(self, tmp_path, cycle_file):
        assert main(["spectrum", str(cycle_file), "--g", "1/2", "--out", str(tmp_path)]) == 0
        vals = [float(r["lambda_g"]) for r in rows(tmp_path / "spectrum.csv")]
        np.testing.assert_allclose(vals, [0.5, 0.5, 2.0], atol=1e-12)

    def test_diagnose(self, tmp_path, cycle_file):
        assert main(["diagnose", str(cycle_file), "--g", "1/4", "--out", str(tmp_path)]) == 0
        diag = json.loads((tmp_path / "diagnostics.json").read_text())
        assert diag["potential"]["exists"] is False
        assert diag["epsilon"] == pytest.approx(np.sqrt(2))
        binary = next(b for b in diag["bounds"] if b["name"] == "betti_binary")
        assert binary["rhs"] == pytest.approx(1 / 3)

    def test_baseline_path(self, tmp_path):
        assert main(["baseline", "--generator", "path", "--param", "n=9", "--out", str(tmp_path)]) == 0
        phi1 = np.array([float(r["phi0_1"]) for r in rows(tmp_path / "diffusion.csv")])
        d = np.diff(phi1)
        assert np.all(d > 0) or np.all(d < 0)

    def test_baseline_bridge(self, tmp_path):
        p = tmp_path / "bridge.edges"
        clique = lambda nodes: "".join(f"{a} {b}\n" for a in nodes for b in nodes if a != b)
        p.write_text(clique(range(5)) + clique(range(5, 10)) + "4 5\n")
        assert main(["baseline", str(p), "--out", str(tmp_path / "o")]) == 0
        phi1 = np.array([float(r["phi0_1"]) for r in rows(tmp_path / "o" / "diffusion.csv")])
        signs = np.sign(phi1)
        assert len(set(signs[:5])) == 1 and len(set(signs[5:])) == 1 and signs[0] != signs[5]


class TestErrors:
    def test_self_loop(self, tmp_path):
        p = tmp_path / "l.edges"
        p.write_text("0 0\n")
        assert main(["embed", str(p), "--out", str(tmp_path)]) == EXIT_PARSE

    def test_bad_charge(self, cycle_file, tmp_path):
        assert main(["embed", str(cycle_file), "--g", "3/4", "--out", str(tmp_path)]) == EXIT_PARSE

    def test_missing_file(self, tmp_path):
        assert main(["embed", str(tmp_path / "nope.edges"), "--out", str(tmp_path)]) == EXIT_PARSE

    def test_numeric_failure(self, tmp_path):
        argv = ["spectrum", "--generator", "erdos_renyi_digraph", "--param", "n=40", "--solver", "power",
                "--max-iter", "1", "--out", str(tmp_path)]
        assert main(argv) == EXIT_NUMERIC

    def test_argparse_exit(self):
        with pytest.raises(SystemExit):
            main(["embed", "--solver", "magic"])


class TestRunConfig:
    def test_invariants(self):
        with pytest.raises(ParamOutOfRangeError):
            RunConfig(generator="cycle", k=1)
        with pytest.raises(IndexOutOfRangeError):
            RunConfig(generator="cycle", k=2, axes=(0, 2))
        with pytest.raises(ParamOutOfRangeError):
            RunConfig()
        with pytest.raises(ParamOutOfRangeError):
            RunConfig(input="a", generator="cycle")

    def test_as_dict(self):
        d = RunConfig(generator="cycle", g=0.4).as_dict()
        assert d["g"] == "2/5" and d["axes"] == [0, 1]
