import json

import numpy as np
import pytest

from simplexqp import QPProblem, verify_qp_kkt
from simplexqp.cli import bench_projection, generate_problem, main


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture
def identity_file(tmp_path):
    return write(tmp_path, "id.json", {"n": 2, "hessian": [[1, 0], [0, 1]], "linear": [0, 0],
                                        "start": [1, 0]})


def run(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr()


def test_solve_identity(capsys, identity_file):
    code, out = run(capsys, ["solve", identity_file])
    doc = json.loads(out.out)
    assert code == 0
    np.testing.assert_allclose(doc["alpha"], [0.5, 0.5], atol=1e-9)
    assert doc["config"]["epsilon"] == 1e-8
    assert "trace" not in doc


def test_solve_trace_and_out_file(capsys, identity_file, tmp_path):
    target = tmp_path / "sol.json"
    code, _ = run(capsys, ["solve", identity_file, "--trace", "--out", str(target)])
    doc = json.loads(target.read_text())
    assert code == 0 and isinstance(doc["trace"], list) and doc["trace"]
    assert {"iteration", "objective", "direction_used", "angle", "step",
            "working_set_size", "event"} <= set(doc["trace"][0])


def test_solve_rejects_bad_hessian(capsys, tmp_path):
    path = write(tmp_path, "bad.json", {"n": 2, "hessian": np.eye(3).tolist(), "linear": [0, 0]})
    code, out = run(capsys, ["solve", path])
    assert code == 1
    assert "hessian" in out.err


@pytest.mark.parametrize(
    "doc, field",
    [
        ({"n": 2, "hessian": [[1, 0], [0, 1]], "linear": [0, 0], "extra": 1}, "extra"),
        ({"n": 2, "hessian": [[1, 0], [0, 1]]}, "linear"),
        ({"n": 2, "hessian": [[1, 0], [0, 1]], "linear": [0, "x"]}, "linear"),
        ({"n": 2, "hessian": [[1, 0], [0, 1]], "linear": [0, 0], "start": [0.7, 0.7]}, "start"),
        ({"n": 0, "hessian": [], "linear": []}, "n"),
    ],
)
def test_solve_names_offending_field(capsys, tmp_path, doc, field):
    code, out = run(capsys, ["solve", write(tmp_path, "p.json", doc)])
    assert code == 1
    assert field in out.err


def test_solve_max_iter_exit_code(capsys, tmp_path):
    prob = generate_problem(8, "convex", 3)
    path = write(tmp_path, "p.json", {"n": 8, "hessian": prob.hessian.tolist(),
                                       "linear": prob.linear.tolist()})
    code, out = run(capsys, ["solve", path, "--max-iter", "1"])
    assert code == 2
    assert json.loads(out.out)["status"] == "max_iterations"


def test_reported_residual_round_trips(capsys, tmp_path):
    for seed in range(5):
        code, out = run(capsys, ["generate", "--n", "7", "--seed", str(seed)])
        path = write(tmp_path, f"g{seed}.json", json.loads(out.out))
        code, out = run(capsys, ["solve", path])
        doc = json.loads(out.out)
        prob_doc = json.loads(open(path).read())
        prob = QPProblem(prob_doc["hessian"], prob_doc["linear"])
        assert abs(verify_qp_kkt(prob, np.array(doc["alpha"])) - doc["kkt_residual"]) <= 1e-12


def test_batch_solve(capsys, tmp_path, identity_file):
    other = write(tmp_path, "two.json", {"n": 2, "hessian": [[1, 0], [0, 100]], "linear": [0, 0]})
    out_dir = tmp_path / "out"
    code, _ = run(capsys, ["solve", identity_file, other, "--jobs", "2", "--out-dir", str(out_dir)])
    assert code == 0
    assert sorted(p.name for p in out_dir.iterdir()) == ["id.solution.json", "two.solution.json"]


def test_project(capsys, tmp_path):
    code, out = run(capsys, ["project", write(tmp_path, "g.json", {"g": [3, 1, -1], "constrained": [0]})])
    doc = json.loads(out.out)
    assert code == 0
    assert doc["x"] == [0.0, 1.0, -1.0]
    assert doc["zero_set"] == [0] and doc["mu"] == [6.0, 0.0, 0.0]
    assert doc["kkt_residual"] <= 1e-10

    code, out = run(capsys, ["project", write(tmp_path, "h.json", {"g": [2, 0, -2], "constrained": []})])
    assert json.loads(out.out)["x"] == [2.0, 0.0, -2.0]

    code, out = run(capsys, ["project", write(tmp_path, "k.json", {"g": [2, 0, -2], "constrained": [5]})])
    assert code == 1 and "constrained" in out.err


def test_generate_is_deterministic(capsys):
    _, a = run(capsys, ["generate", "--n", "5", "--seed", "11", "--kind", "indefinite"])
    _, b = run(capsys, ["generate", "--n", "5", "--seed", "11", "--kind", "indefinite"])
    assert a.out == b.out
    _, c = run(capsys, ["generate", "--n", "5", "--seed", "12", "--kind", "indefinite"])
    assert a.out != c.out


def test_generated_convex_spectrum():
    for seed in range(20):
        H = generate_problem(10, "convex", seed).hessian
        assert np.linalg.eigvalsh(H).min() >= 1e-3 - 1e-9


def test_generated_indefinite_spectrum():
    negative = sum(np.linalg.eigvalsh(generate_problem(int(2 + s % 9), "indefinite", s).hessian).min() < 0
                   for s in range(100))
    assert negative >= 95


def test_oracle_subcommand(capsys, identity_file, tmp_path):
    code, out = run(capsys, ["oracle", identity_file])
    doc = json.loads(out.out)
    assert code == 0 and doc["status"] == "oracle"
    np.testing.assert_allclose(doc["alpha"], [0.5, 0.5])
    big = write(tmp_path, "big.json", {"n": 13, "hessian": np.eye(13).tolist(), "linear": [0] * 13})
    code, _ = run(capsys, ["oracle", big])
    assert code == 1


def test_bench_rows(capsys):
    code, out = run(capsys, ["bench", "--sizes", "1000,10000", "--reps", "3"])
    lines = out.out.strip().splitlines()
    assert code == 0 and lines[0] == "n,median_seconds"
    assert [int(l.split(",")[0]) for l in lines[1:]] == [1000, 10000]


def test_bench_helper_monotone():
    rows = bench_projection([10**3, 10**5], reps=3)
    assert rows[0][1] <= rows[1][1]


def test_usage_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve"])
    assert exc.value.code == 1
