import json
import subprocess
import sys

from segrechains.cli import main
from segrechains.corpus import corpus


def data_path(name):
    return str(dict(corpus())[name])


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_ok(capsys):
    code, out, _ = run_cli(capsys, "validate", data_path("heisenberg"))
    assert code == 0 and "valid manifold" in out


def test_validate_failure_exit_1(tmp_path, capsys):
    bad = tmp_path / "bad.mf"
    bad.write_text("m=1\nd=1\ntheta_bar_1 = i*w1*zeta1\n")
    code, out, _ = run_cli(capsys, "validate", str(bad))
    assert code == 1
    assert "INVALID" in out and "monomial" in out


def test_usage_error_exit_2(capsys):
    code, _, err = run_cli(capsys, "validate", "no_such_file.mf")
    assert code == 2
    bad_dir_code, _, _ = run_cli(capsys, "checkall", "/nonexistent_dir_xyz")
    assert bad_dir_code == 2


def test_minimality_command(capsys):
    code, out, _ = run_cli(
        capsys, "minimality", data_path("ex7_8"), "--format", "machine"
    )
    assert code == 0
    report = json.loads(out)
    assert report["results"]["minimal"] is True
    assert report["results"]["mu"] == 3


def test_multitype_and_ranks(capsys):
    code, out, _ = run_cli(
        capsys, "multitype", data_path("c3_tube"), "--format", "machine"
    )
    report = json.loads(out)
    assert report["results"]["multitype"] == [1, 1, 1, 1]
    code, out, _ = run_cli(
        capsys, "ranks", data_path("c3_tube"), "--format", "machine"
    )
    assert json.loads(out)["results"]["r"][:4] == [1, 2, 3, 4]


def test_chains_command_emits_components(capsys):
    code, out, _ = run_cli(
        capsys, "chains", data_path("ex7_8"), "--kmax", "2", "--format", "machine"
    )
    report = json.loads(out)
    chains = report["results"]["chains"]
    assert chains[1]["components"]["xi1"] == "-i*u1_1^2*u2_1^2"


def test_witness_command(capsys):
    code, out, _ = run_cli(
        capsys, "witness", data_path("ex7_8"), "--format", "machine"
    )
    report = json.loads(out)
    assert report["results"]["returns_to_basepoint"] is True
    assert report["results"]["chain_length"] == 5


def test_hormander_and_levi(capsys):
    code, out, _ = run_cli(
        capsys, "hormander", data_path("ex8_6"), "--format", "machine"
    )
    report = json.loads(out)
    assert [lvl[:2] for lvl in report["results"]["ladder"]] == [[2, 1], [3, 1], [4, 2]]
    code, out, _ = run_cli(capsys, "levi", data_path("heisenberg"), "--format", "machine")
    report = json.loads(out)
    assert report["results"]["levi_type"] == 1
    assert report["results"]["holomorphically_nondegenerate"] is True


def test_e1det_command(capsys):
    code, out, _ = run_cli(
        capsys, "e1det", data_path("quadric_elliptic"), "--format", "machine"
    )
    report = json.loads(out)
    assert report["results"]["nonzero"] is True
    assert report["results"]["determinant"] == "zeta1*zeta2"


def test_orbit_command_on_system_and_manifold(capsys):
    code, out, _ = run_cli(
        capsys, "orbit", data_path("orbit_heisenberg_like"), "--format", "machine"
    )
    report = json.loads(out)
    assert code == 0
    assert report["results"]["orbit_dim"] == 3
    assert report["results"]["certified"] is True
    code, out, _ = run_cli(
        capsys, "orbit", data_path("heisenberg"), "--format", "machine"
    )
    report = json.loads(out)
    assert report["results"]["orbit_dim"] == 3
    assert report["results"]["multitype_conjugate_start"] == report["results"]["multitype"]


def test_base_generic_and_numeric(capsys):
    code, out, _ = run_cli(
        capsys, "ranks", data_path("ex8_10"), "--base", "generic",
        "--format", "machine",
    )
    assert json.loads(out)["results"]["e"][0] == 2
    # a valid numeric basepoint of the Heisenberg quadric: z = xi + i w zeta
    code, out, _ = run_cli(
        capsys, "minimality", data_path("heisenberg"),
        "--base", "1,i,1,0", "--format", "machine",
    )
    assert code == 0
    assert json.loads(out)["results"]["minimal"] is True
    # an off-manifold numeric basepoint is a verdict failure (exit 1)
    code, _, err = run_cli(
        capsys, "minimality", data_path("heisenberg"), "--base", "1,5,1,0",
    )
    assert code == 1


def test_corpus_command(capsys):
    code, out, _ = run_cli(capsys, "corpus", "--format", "machine")
    names = [e["name"] for e in json.loads(out)["results"]["manifests"]]
    assert "ex7_8" in names and len(names) >= 10


def test_machine_reports_byte_identical():
    cmd = [
        sys.executable, "-m", "segrechains.cli",
        "multitype", data_path("ex7_8"), "--format", "machine",
    ]
    a = subprocess.run(cmd, capture_output=True, text=True)
    b = subprocess.run(cmd, capture_output=True, text=True)
    assert a.returncode == 0 and a.stdout == b.stdout


def test_checkall_bundled(capsys):
    code, out, _ = run_cli(capsys, "checkall", "--format", "machine")
    report = json.loads(out)
    assert code == 0
    assert report["results"]["failures"] == 0
    assert len(report["results"]["items"]) > 40


def test_checkall_detects_failure(tmp_path, capsys):
    (tmp_path / "wrong.mf").write_text("m=1\nd=1\ntheta_bar_1 = w1*zeta1\n")
    (tmp_path / "wrong.expected.json").write_text(json.dumps({"minimal": False}))
    code, out, _ = run_cli(capsys, "checkall", str(tmp_path))
    assert code == 1 and "FAIL" in out
