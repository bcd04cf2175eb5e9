import json

from unimod import cli
from unimod.errors import InvariantViolation
from unimod.session import load_session


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gb_and_nf(capsys):
    code, out, _ = run(capsys, "gb", "x^2-y,y^3", "--vars", "x,y")
    assert code == 0 and out.splitlines() == ["x^2 - y", "y^3"]
    code, out, _ = run(capsys, "nf", "x0^2+x1^2+x2^2", "--ring", "S3")
    assert code == 0 and out.strip() == "-x3^2 + 1"


def test_nf_with_relations(capsys):
    code, out, _ = run(capsys, "nf", "x^3", "--vars", "x", "--relations", "x^2-x")
    assert code == 0 and out.strip() == "x"


def test_parse_error_is_a_usage_error(capsys):
    code, _, err = run(capsys, "nf", "x0 +* x1", "--ring", "S3")
    assert code == 2 and "4" in err


def test_unknown_ring_and_bad_flags(capsys):
    assert run(capsys, "nf", "x", "--ring", "NOPE")[0] == 2
    assert run(capsys, "nf", "x", "--ring", "S3", "--vars", "x")[0] == 2
    assert run(capsys, "no-such-command")[0] == 2


def test_unimodularity_verdicts(capsys):
    code, out, _ = run(capsys, "check-unimodular", "x0,x1,x2,x3", "--ring", "S3")
    assert code == 0 and "cofactor" in out
    assert run(capsys, "check-unimodular", "x0,x1", "--ring", "S3")[0] == 1


def test_quaternion_and_orbits(capsys):
    assert run(capsys, "symplectic-check", "quaternion", "--ring", "S3")[0] == 0
    assert run(capsys, "symplectic-check", "2,0;0,1", "--ring", "S3")[0] == 1
    code, _, _ = run(capsys, "orbit-verify", "--vars", "x", "--row", "1+x,x,0,0", "--target", "1,0,0,0",
                     "--kind", "e", "--ops", "2,1,-1;1,2,-x")
    assert code == 0
    code, _, _ = run(capsys, "orbit-verify", "--ring", "S3", "--row", "1,0,0,0", "--target", "x0,x1,x2,x3",
                     "--matrix", "quaternion")
    assert code == 0


def test_qv_commands(capsys):
    code, out, _ = run(capsys, "construct-qv", "x0,x1,x2,x3", "--ring", "S3")
    assert code == 0 and "trace_n_minus_2: ok" in out
    code, out, _ = run(capsys, "symplectic-class", "x0,x1,x2,x3", "--ring", "S3")
    assert code == 0 and out.splitlines()[0] == "(x0, x1, x2, x3)"
    assert run(capsys, "construct-qv", "1,0,0", "--ring", "Q")[0] == 2
    assert run(capsys, "isometry-verify", "--row", "1,2,3,4", "--ring", "Q")[0] == 0


def test_transition_and_residues(capsys):
    code, out, _ = run(capsys, "transition", "--ring", "B3", "--from", "x0^2+1,x0*x1+x2", "--to", "x1,x2")
    assert code == 0 and "det T = -x0*x3 - x1" in out
    code, out, _ = run(capsys, "square-check", "--ring", "B3", "--prime", "x2+x3,x0^2+1,x0*x1+x2",
                       "--unit=-1/2", "--kind", "complex", "--constant", "s:s^2-2", "--witness", "x0,s")
    assert code == 0
    code, out, _ = run(capsys, "residue", "--ring", "B3_x2px3", "--prime", "x2", "--unit", "x1*x3",
                       "--at", "x1,x2", "--target", "x2,x1")
    assert code == 0 and "<x3> Kos(x2, x1)" in out


def test_cycle_commands(capsys):
    code, out, _ = run(capsys, "cycle-diff", "--cycle", "b3-generator", "--witness", "1-x0,s")
    assert code == 0 and "zero" in out
    code, out, _ = run(capsys, "cycle-diff", "--cycle", "b3-generator")
    assert code == 1 and "unresolved" in out
    code, out, _ = run(capsys, "cycle-transport", "--cycle", "b3-generator", "--hom", "phi")
    assert code == 0 and "Kos(-x2 + 1)" in out


def test_json_output(capsys):
    code, out, _ = run(capsys, "verify-paper", "--scenario", "b3-identity", "--json")
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_verify_paper(capsys):
    code, out, _ = run(capsys, "verify-paper", "--scenario", "all")
    assert code == 0 and "FAIL" not in out
    assert run(capsys, "verify-paper", "--scenario", "nope")[0] == 2


def test_session_persistence(capsys, tmp_path):
    path = str(tmp_path / "s.json")
    code, _, _ = run(capsys, "check-unimodular", "x0,x1,x2,x3", "--ring", "S3", "--session", path,
                     "--save", "v")
    assert code == 0
    assert "v" in load_session(path).rows
    code, out, _ = run(capsys, "symplectic-class", "v", "--ring", "S3", "--session", path)
    assert code == 0 and out.splitlines()[0] == "(x0, x1, x2, x3)"


def test_internal_errors_exit_3(capsys, monkeypatch):
    def boom(name):
        raise InvariantViolation("broken")

    monkeypatch.setattr(cli, "run_scenario", boom)
    code, _, err = run(capsys, "verify-paper")
    assert code == 3 and "broken" in err
