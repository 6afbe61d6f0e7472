"""
fcrystal CLI 테스트

목표:
- 하위 명령의 JSON 출력과 종료 코드 (0 성공, 1 부정, 2 잘못된 입력, 3 예산)
- FCRYSTAL_* 환경변수와 전역 플래그가 SearchConfig 로 들어가는지
"""
import json

import app.cli as cli
import app.crystal.chains as chains_module
from app.algebra.coweight import Coweight
from app.crystal.newton import NewtonPoint
from app.models.reports import NewtonReport
from app.services.command_service import CommandResult


def _run(capsys, *argv) -> tuple[int, dict]:
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_newton_of_standard_form(capsys):
    code, payload = _run(capsys, "newton", "--nu", "1/2,1/2")
    assert code == 0
    assert payload["nu"] == ["1/2", "1/2"]
    assert payload["certified"] is True
    assert payload["polygon"][-1] == [2, "1"]


def test_newton_of_builtin_example(capsys):
    code, payload = _run(capsys, "newton", "--example", "b", "--a", "1")
    assert code == 0
    assert payload["nu"] == ["3/2", "3/2", "1"]


def test_construct_output_feeds_hodge(capsys, tmp_path):
    path = tmp_path / "witness.json"
    code = cli.main(["--output", str(path), "construct", "--nu", "1/2,1/2", "--mu", "1,0"])
    assert code == 0
    witness = json.loads(path.read_text(encoding="utf-8"))
    assert witness["mu"] == ["1", "0"]
    assert "transcript" not in witness

    code, payload = _run(capsys, "hodge", "--input", f"@{path}")
    assert code == 0
    assert payload["mu"] == ["1", "0"]


def test_transcript_flag_keeps_notes(capsys):
    code, payload = _run(capsys, "--transcript", "construct", "--nu", "1/2,1/2", "--mu", "1,0")
    assert code == 0
    assert isinstance(payload["transcript"], list)


def test_mazur_violation_exits_with_one(capsys):
    code, payload = _run(capsys, "construct", "--nu", "2,0", "--mu", "1,1")
    assert code == 1
    assert payload["error"] == "mazur-violation"
    assert payload["detail"]["mu"] == ["1", "1"]


def test_b_g_mu_membership(capsys):
    code, payload = _run(capsys, "mazur", "--nu", "1,1", "--mu", "2,0")
    assert code == 0 and payload["verdict"] is True
    code, payload = _run(capsys, "mazur", "--nu", "2,0", "--mu", "1,1")
    assert code == 1 and payload["verdict"] is False


def test_malformed_json_exits_with_two(capsys):
    code, payload = _run(capsys, "hodge", "--input", "{bad")
    assert code == 2
    assert payload["error"] == "invalid-input"
    assert payload["detail"]["line"] == 1


def test_negative_window_is_invalid_input(capsys):
    code, payload = _run(capsys, "--window", "-1", "newton", "--nu", "0,0")
    assert code == 2
    assert payload["error"] == "invalid-input"


def test_adm_with_comparison(capsys):
    code, payload = _run(capsys, "adm", "--mu", "1,0", "--type", "0,1", "--compare")
    assert code == 0
    assert payload["count"] == 3
    assert payload["adm_equals_perm"] is True
    assert payload["adm_equals_realised"] is True
    assert all("lambda" in x for x in payload["elements"])


def test_incidence_solve_and_check(capsys):
    diagram = {
        "base": {"p": 2, "m": 2},
        "f": 1,
        "m": 2,
        "maps": [{"phi": [[0, 1], [0, 0]], "sigma": 1, "psi": [[0, 1], [0, 0]], "tau": -1}],
    }
    code, payload = _run(capsys, "incidence", "--input", json.dumps(diagram))
    assert code == 0
    assert payload["lines"] == [[[1, 0], [0, 0]]]

    code, payload = _run(capsys, "incidence", "--check", "--input", json.dumps({**diagram, "lines": [[1, 0]]}))
    assert code == 0 and payload["valid"] is True
    code, payload = _run(capsys, "incidence", "--check", "--input", json.dumps({**diagram, "lines": [[0, 1]]}))
    assert code == 1 and payload["failing_index"] == 0


def test_chain_build_then_check(capsys, tmp_path):
    path = tmp_path / "chain.json"
    code = cli.main(["--output", str(path), "chain-build", "--nu", "1/2,1/2", "--r", "1", "--type", "0,1"])
    assert code == 0
    code, payload = _run(capsys, "chain-check", "--input", f"@{path}")
    assert code == 0
    assert payload["member"] is True
    assert payload["type"] == [0, 1]


def test_empty_chain_exits_with_one(capsys):
    code, payload = _run(capsys, "chain-build", "--nu", "2,0", "--r", "1", "--type", "0")
    assert code == 1
    assert payload["empty"] is True


def test_env_and_flags_reach_search_config(capsys, monkeypatch):
    seen = {}

    class _ServiceStub:
        def __init__(self, cfg, prime, base_degree, transcript):
            seen.update(cfg=cfg, prime=prime)

        def newton(self, **_kwargs):
            return CommandResult(NewtonReport(nu=["0"], certified=False, method="fekete"), 3)

    monkeypatch.setenv("FCRYSTAL_WINDOW", "1")
    monkeypatch.setenv("FCRYSTAL_SEED", "7")
    monkeypatch.setattr(cli, "CommandService", _ServiceStub)

    code, payload = _run(capsys, "--field-cap", "2", "--prime", "3", "newton", "--nu", "0")
    assert code == 3
    assert payload["certified"] is False
    assert seen["cfg"].window == 1
    assert seen["cfg"].seed == 7
    assert seen["cfg"].field_cap == 2
    assert seen["prime"] == 3


def test_gsp_chain_build_boundary(capsys):
    code, payload = _run(capsys, "--prime", "3", "chain-build", "--group", "gsp", "--nu", "1,1,1,1", "--r", "4", "--type", "0")
    assert code == 0
    assert payload["chain"]["type"] == [0]
    # ν_1 = 3/2 > 1 은 r = 2n 에서 불가능
    code, payload = _run(capsys, "--prime", "3", "chain-build", "--group", "gsp", "--nu", "3/2,3/2,1/2,1/2", "--r", "4", "--type", "0")
    assert code == 1
    assert payload["reason"].startswith("Mazur violation")


def test_uncertified_newton_point_exits_with_three(capsys, monkeypatch):
    guess = NewtonPoint(Coweight.of([2, 0]), certified=False, method="fekete")
    monkeypatch.setattr(chains_module, "newton_point", lambda *_args, **_kw: guess)
    code, payload = _run(capsys, "chain-build", "--nu", "2,0", "--r", "1", "--type", "0")
    assert code == 3
    assert payload["error"] == "newton-uncertified"
    assert payload["detail"]["nu"] == ["2", "0"]
