import json

import pytest

from zforcing.cli import main


def exit_code(argv):
    try:
        return main(argv)
    except SystemExit as exc:
        return exc.code


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_derive_not_forcing(capsys, fig1_file):
    code, out, _ = run(capsys, "derive", fig1_file, 1)
    data = json.loads(out)
    assert code == 0
    assert data["derived"] == [1, 2, 3, 4] and data["zfs"] is False
    assert data["forces"] == [[1, 2], [2, 3], [3, 4]]


def test_derive_forcing_text(capsys, fig1_file):
    code, out, _ = run(capsys, "derive", fig1_file, 1, 5, "--format", "text")
    assert code == 0
    assert "forces: 1 -> 2, 2 -> 3, 3 -> 4, 5 -> 6" in out
    assert "zfs: true" in out


def test_derive_all_vertices(capsys, fig1_file):
    code, out, _ = run(capsys, "derive", fig1_file, *range(1, 7))
    assert json.loads(out)["zfs"] is True and json.loads(out)["forces"] == []


def test_gen_path_then_zfn(capsys, tmp_path):
    path = tmp_path / "p4.txt"
    assert run(capsys, "gen", "path", 4, "-o", path)[0] == 0
    code, out, _ = run(capsys, "zfn", path)
    assert code == 0 and json.loads(out)["zfn"] == 1


def test_gen_undirected_then_lift(capsys, tmp_path):
    path = tmp_path / "c5.txt"
    run(capsys, "gen", "cycle", 5, "--undirected", "-o", path)
    assert len(path.read_text().strip().splitlines()) == 2 + 5
    code, out, _ = run(capsys, "zfn", path, "--undirected")
    assert json.loads(out)["zfn"] == 2


def test_circulant_pair_scan(capsys, tmp_path):
    path = tmp_path / "circ.txt"
    run(capsys, "gen", "circulant", 10, "--offsets", "1,2,3", "-o", path)
    code, out, _ = run(capsys, "zfn", path, "--size", 2, "--format", "text")
    assert code == 0
    assert out.strip() == "no 2-subset is a ZFS"
    code, out, _ = run(capsys, "lmin", path, "--laplacian")
    assert json.loads(out)["lmin"] == 2


def test_check_uncontrollable(capsys, fig1_file):
    code, out, _ = run(capsys, "check", fig1_file, "--leaders", 1, "--samples", 200, "--seed", 7)
    data = json.loads(out)
    assert code == 0
    assert data["controllable"] is False
    assert data["witness"]["z"] == [0, 0, 0, 0, 1, 1]
    assert data["seed"] == 7


def test_check_controllable(capsys, fig1_file):
    code, out, _ = run(capsys, "check", fig1_file, "--leaders", 1, 5, "--samples", 50)
    data = json.loads(out)
    assert data["controllable"] is True
    assert data["certificate"]["forces"] == [[1, 2], [2, 3], [3, 4], [5, 6]]
    assert data["numeric_passes"] == 50


def test_check_same_sign_unknown_exits_2(capsys, tmp_path):
    path = tmp_path / "p4.txt"
    run(capsys, "gen", "path", 4, "-o", path)
    code, out, _ = run(capsys, "check", path, "--leaders", 2, "--subclass", "symsign+")
    assert code == 2
    assert json.loads(out)["controllable"] == "unknown"


def test_budget_exhaustion_exits_2(capsys, tmp_path):
    path = tmp_path / "k6.txt"
    run(capsys, "gen", "complete", 6, "-o", path)
    code, out, _ = run(capsys, "zfn", path, "--budget", 5)
    assert code == 2
    data = json.loads(out)
    assert data["status"] == "inconclusive" and data["lower_bound"] == 1


def test_lmin_graph_and_matrix(capsys, tmp_path, fig1_file):
    code, out, _ = run(capsys, "lmin", fig1_file)
    assert json.loads(out)["lmin"] == 2 and json.loads(out)["leaders"] == [1, 5]
    mat = tmp_path / "lap.json"
    mat.write_text(json.dumps({"n": 3, "rows": [[-1, 1, 0], [1, -2, 1], [0, 1, -1]]}))
    for extra in ([], ["--exact"]):
        code, out, _ = run(capsys, "lmin", "--matrix", mat, *extra)
        assert code == 0 and json.loads(out)["lmin"] == 1


def test_pathcover(capsys, tmp_path):
    path = tmp_path / "star.txt"
    path.write_text("1 2\n1 3\n1 4\n")
    code, out, _ = run(capsys, "pathcover", path)
    data = json.loads(out)
    assert data["paths"] == [[1, 2], [3], [4]]
    assert data["leaders"] == [1, 3, 4] and data["leaders_zfs"] is True


def test_random_gen_echoes_seed(capsys, monkeypatch):
    monkeypatch.setenv("ZFORCE_SEED", "42")
    code, out, _ = run(capsys, "gen", "random", 5, "--p", 0.5)
    assert "seed=42" in out.splitlines()[0]
    code, again, _ = run(capsys, "gen", "random", 5, "--p", 0.5, "--seed", 42)
    assert again == out


def test_json_output_is_byte_identical(capsys, fig1_file, tmp_path):
    outs = []
    for _ in range(2):
        run(capsys, "check", fig1_file, "--leaders", 1, 5, "--seed", 3, "-o", tmp_path / "v.json")
        outs.append((tmp_path / "v.json").read_bytes())
    assert outs[0] == outs[1]


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["check", "missing.txt", "--leaders", "1"],
        ["zfn"],
        ["check", "{fig}", "--leaders", "1", "--samples", "0"],
        ["check", "{fig}", "--leaders", "1", "--subclass", "sym"],
        ["derive", "{fig}", "9"],
        ["gen", "circulant", "10"],
    ],
)
def test_usage_errors_exit_1(capsys, fig1_file, argv):
    argv = [a.replace("{fig}", str(fig1_file)) for a in argv]
    assert exit_code(argv) == 1


def test_parse_error_names_line(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("1 2\n3 3\n")
    code, _, err = run(capsys, "zfn", path)
    assert code == 1 and "self-loop at line 2" in err

