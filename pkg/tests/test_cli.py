import json

import pytest
from hypothesis import given, settings, strategies as st

from seventerm import cli, oracle
from seventerm.fixtures import FIXTURES, fixture
from seventerm.problem import ProblemError, emit, from_dict, parse_problem, parse_text, to_dict
from seventerm.report import run

NON_ASSOC = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]


def c2_problem(**over):
    data = {"group": {"order": 2, "table": [[0, 1], [1, 0]]}, "normal_subgroup": [0],
            "module": {"invariants": [3], "action": [[[1]], [[2]]]}}
    data.update(over)
    return data


def test_parse_fixture_name():
    spec = parse_problem("fix-a")
    assert spec.group_name == "C4" and spec.normal_subgroup == (0, 2)
    assert spec.invariants == (2,) and spec.options.name == "fix-a"


def test_non_associative_table_names_triple():
    data = c2_problem(group={"order": 5, "table": NON_ASSOC},
                      module={"invariants": [2]})
    with pytest.raises(ProblemError) as e:
        from_dict(data)
    assert e.value.path == "group.table"
    a, b, c = e.value.witness
    t = NON_ASSOC
    assert t[t[a][b]][c] != t[a][t[b][c]]
    assert str((a, b, c)) in str(e.value)


def test_non_invertible_action_names_element():
    data = c2_problem(module={"invariants": [4], "action": [[[1]], [[2]]]})
    with pytest.raises(ProblemError) as e:
        from_dict(data)
    assert e.value.path == "module.action[1]"


def test_action_must_be_homomorphism():
    # the identity acts by -1, so g -> action(g) is not a homomorphism
    data = c2_problem(module={"invariants": [3], "action": [[[2]], [[2]]]})
    with pytest.raises(ProblemError):
        from_dict(data)


@pytest.mark.parametrize("data,path", [
    ({"normal_subgroup": [0]}, "group"),
    (c2_problem(normal_subgroup=[0, 5]), "normal_subgroup[1]"),
    (c2_problem(module={"invariants": [1]}), "module.invariants[0]"),
    (c2_problem(module={"invariants": [2, 3]}), "module.invariants[1]"),
    (c2_problem(options={"degree_max": 4}), "options.degree_max"),
    (c2_problem(options={"checks": "some"}), "options.checks"),
    (c2_problem(extra=1), "extra"),
])
def test_validation_paths(data, path):
    with pytest.raises(ProblemError) as e:
        from_dict(data)
    assert e.value.path == path


def test_malformed_json():
    with pytest.raises(ProblemError, match="malformed JSON"):
        parse_text("{")


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_emit_parse_roundtrip(name):
    spec = fixture(name)
    assert parse_text(emit(spec)) == spec


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["C2", "C4", "V4", "S3"]), st.sampled_from([2, 3, 4]),
       st.integers(0, 100), st.sampled_from(["all", "exactness", "coincidence"]))
def test_roundtrip_generated(group, m, seed, checks):
    data = {"group": {"builtin": group}, "normal_subgroup": [0],
            "module": {"invariants": [m]}, "options": {"seed": seed, "checks": checks}}
    spec = from_dict(data)
    assert parse_text(emit(spec)) == spec
    assert to_dict(parse_text(emit(spec))) == to_dict(spec)


def test_report_is_byte_stable():
    a = run(fixture("fix-c")).to_json()
    b = run(fixture("fix-c")).to_json()
    assert a == b
    assert "timing_seconds" not in json.loads(a)


def test_run_degenerate_n_whole():
    r = run(fixture("deg-n-whole"))
    assert r.status == "pass"
    d = r.to_dict()
    assert d["groups"]["H^1(Q,M^N)"]["order"] == 1 and d["groups"]["H^2(Q,M^N)"]["order"] == 1


def test_cli_run_pass(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert cli.main(["run", "--input", "fix-a", "--report", str(out)]) == 0
    assert json.loads(out.read_text())["status"] == "pass"
    assert "fix-a: PASS" in capsys.readouterr().out


def test_cli_run_problem_file(tmp_path):
    p = tmp_path / "p.json"
    p.write_text(json.dumps(c2_problem()))
    assert cli.main(["run", "--input", str(p), "--checks", "exactness"]) == 0


def test_cli_exit_code_input_error(tmp_path, capsys):
    assert cli.main(["run", "--input", "no-such-thing"]) == 2
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(c2_problem(group={"order": 5, "table": NON_ASSOC},
                                       module={"invariants": [2]})))
    assert cli.main(["run", "--input", str(p)]) == 2
    assert "group.table" in capsys.readouterr().err


def test_cli_exit_code_failure(monkeypatch, tmp_path):
    real = oracle.transgression_vs_d2

    def broken(ctx, mutate=None):
        def bump(vec, cochains):
            vec = list(vec)
            vec[0] += 1
            return vec
        return real(ctx, mutate=bump)

    monkeypatch.setattr(oracle, "transgression_vs_d2", broken)
    out = tmp_path / "r.json"
    assert cli.main(["run", "--input", "fix-a", "--checks", "coincidence",
                     "--report", str(out)]) == 1
    rep = json.loads(out.read_text())
    assert rep["status"] == "fail"
    bad = [v for v in rep["verdicts"]["spectral coincidence"] if v["status"] == "fail"]
    assert bad and bad[0]["witness"]


def test_cli_list_fixtures(capsys):
    assert cli.main(["list-fixtures"]) == 0
    out = capsys.readouterr().out
    assert all(name in out for name in ("fix-a", "fix-b", "fix-c", "fix-d", "fix-e"))


def test_cli_oracle(capsys):
    assert cli.main(["oracle", "--input", "fix-a", "--p", "0", "--q", "1"]) == 0
    out = capsys.readouterr().out
    assert "E_2^{0,1} = Z/2" in out and "d_2" in out
    assert cli.main(["oracle", "--input", "fix-a", "--p", "2", "--q", "2"]) == 2


def test_cli_show(capsys):
    assert cli.main(["show", "--input", "fix-b"]) == 0
    assert parse_text(capsys.readouterr().out) == fixture("fix-b")
