import asyncio
import json

import pytest

import main
from core.size_guard import SizeGuard, set_default_guard
from reporting import ReportVisualizer
from tasks import EXIT_ERROR, EXIT_OK


@pytest.fixture(autouse=True)
def isolated_env(monkeypatch, tmp_path):
    for name in ("MP_DEFAULT_MODULUS", "MP_MAX_GROUP_ORDER", "MP_MAX_CELLS", "MP_H3_MAX_ORDER"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("MP_REPORTS_DIR", str(tmp_path / "reports"))
    monkeypatch.setenv("LOG_LEVEL", "WARNING")
    yield
    set_default_guard(SizeGuard())


def run_cli(capsys, *argv):
    code = asyncio.run(main.run(list(argv)))
    return code, capsys.readouterr().out


def run_structured(capsys, *argv):
    code, out = run_cli(capsys, *argv, "--format", "structured")
    return code, out, json.loads(out)


def test_kac_verify_text_report(capsys, fixtures_dir):
    code, out = run_cli(capsys, "kac-verify", str(fixtures_dir / "s3_factorization.txt"))
    assert code == EXIT_OK
    assert "KAC-VERIFY REPORT" in out
    assert "❌ ERRORS" not in out


def test_kac_verify_structured(capsys, fixtures_dir):
    code, _, data = run_structured(capsys, "kac-verify", str(fixtures_dir / "s3_factorization.txt"))
    assert code == EXIT_OK
    assert data["exit_code"] == EXIT_OK
    assert data["results"]["all_exact"] is True
    assert all(verdict["exact"] for verdict in data["results"]["verdicts"])
    assert data["flags"]["modulus"] == 6
    assert "timestamp" not in data and "total_duration" not in data
    assert all("duration_seconds" not in step for step in data["steps_taken"])


def test_structured_output_is_reproducible(capsys, fixtures_dir):
    path = str(fixtures_dir / "trivial_c2.txt")
    _, first = run_cli(capsys, "mp-cohomology", path, "--format", "structured")
    _, second = run_cli(capsys, "mp-cohomology", path, "--format", "structured")
    assert first == second
    report = ReportVisualizer.from_structured(first)
    assert ReportVisualizer.to_structured(report) == first.rstrip("\n")


def test_mp_cohomology_of_the_trivial_pair(capsys, fixtures_dir):
    code, _, data = run_structured(capsys, "mp-cohomology", str(fixtures_dir / "trivial_c2.txt"))
    assert code == EXIT_OK
    assert data["results"]["cohomology"]["1"]["invariant_factors"] == [2]
    assert "pi_sequence" not in data["results"]


def test_pi_sequence_is_reported_from_degree_two(capsys, fixtures_dir):
    code, _, data = run_structured(capsys, "mp-cohomology", str(fixtures_dir / "s3_factorization.txt"))
    assert code == EXIT_OK
    assert data["results"]["pi_sequence"]["is_exact"] is True


def test_group_cohomology_with_stabilization(capsys, fixtures_dir):
    code, _, data = run_structured(capsys, "group-cohomology", str(fixtures_dir / "trivial_c2.txt"))
    assert code == EXIT_OK
    results = data["results"]
    assert [results["cohomology"][n]["invariant_factors"] for n in ("1", "2")] == [[2], [2]]
    assert results["stable_at_2m"] == {"1": True, "2": False}


def test_bidegree_table(capsys, fixtures_dir):
    code, _, data = run_structured(capsys, "bidegree", str(fixtures_dir / "c2_on_c3.txt"))
    assert code == EXIT_OK
    assert sorted(data["results"]["bidegrees"]) == ["1,1", "1,2", "2,1"]
    assert all(entry["isomorphic"] for entry in data["results"]["bidegrees"].values())


def test_method6_from_a_document(capsys, fixtures_dir):
    code, _, data = run_structured(capsys, "method6", str(fixtures_dir / "triangle.txt"))
    assert code == EXIT_OK
    assert data["results"]["invariant_dims"] == [1, 1, 0]
    assert data["results"]["configuration"] == "triangle"


def test_method6_falls_back_to_built_in_configurations(capsys, fixtures_dir):
    code, _, data = run_structured(capsys, "method6", str(fixtures_dir / "trivial_c2.txt"), "--target", "swap_plane")
    assert code == EXIT_OK
    assert data["results"]["invariant_dims"] == [1, 0, 0]


def test_ez_verify(capsys, fixtures_dir):
    code, _, data = run_structured(capsys, "ez-verify", str(fixtures_dir / "trivial_c2.txt"))
    assert code == EXIT_OK
    assert data["results"]["verified"] is True


def test_validate_accepts_explicit_actions(capsys, fixtures_dir):
    code, _, data = run_structured(capsys, "validate", str(fixtures_dir / "explicit_actions.txt"))
    assert code == EXIT_OK
    assert data["results"]["pairs"]["inverted"]["bismash_order"] == 8


def test_corrupted_group_exits_with_a_witness(capsys, fixtures_dir):
    code, _, data = run_structured(capsys, "validate", str(fixtures_dir / "corrupted_group.txt"))
    assert code == EXIT_ERROR
    assert data["errors"] == [{
        "code": "not_associative",
        "message": data["errors"][0]["message"],
        "witness": [1, 1, 2],
    }]


def test_parse_errors_exit_with_a_location(capsys, fixtures_dir):
    code, _, data = run_structured(capsys, "validate", str(fixtures_dir / "unterminated_block.txt"))
    assert code == EXIT_ERROR
    assert data["errors"][0]["code"] == "parse_error"
    assert data["errors"][0]["witness"] == {"line": 6, "column": 1}


def test_flags_override_the_task_line(capsys, fixtures_dir):
    _, _, data = run_structured(capsys, "mp-cohomology", str(fixtures_dir / "trivial_c2.txt"), "--modulus", "4")
    assert data["flags"]["modulus"] == 4


def test_unknown_target(capsys, fixtures_dir):
    code, _, data = run_structured(capsys, "mp-cohomology", str(fixtures_dir / "trivial_c2.txt"), "--target", "nope")
    assert code == EXIT_ERROR
    assert data["errors"][0]["code"] == "validation_error"


def test_size_guard_and_force(capsys, fixtures_dir, monkeypatch):
    monkeypatch.setenv("MP_MAX_GROUP_ORDER", "4")
    path = str(fixtures_dir / "s3_factorization.txt")
    code, _, data = run_structured(capsys, "kac-verify", path)
    assert code == EXIT_ERROR
    assert data["errors"][0]["code"] == "size_guard_exceeded"
    code, _, _ = run_structured(capsys, "kac-verify", path, "--force")
    assert code == EXIT_OK


def test_save_writes_both_reports(capsys, fixtures_dir, tmp_path):
    code, _ = run_cli(capsys, "validate", str(fixtures_dir / "trivial_c2.txt"), "--save")
    assert code == EXIT_OK
    saved = sorted(path.suffix for path in (tmp_path / "reports").iterdir())
    assert saved == [".json", ".txt"]


def test_malformed_action_table_exits_with_a_location(capsys, tmp_path):
    path = tmp_path / "short_row.txt"
    path.write_text("group C2 cyclic 2\ngroup C3 cyclic 3\npair P semidirect T=C2 N=C3\n0 1\n0 2 1\nend\n")
    code, _, data = run_structured(capsys, "validate", str(path))
    assert code == EXIT_ERROR
    assert data["errors"][0]["code"] == "parse_error"
    assert data["errors"][0]["witness"] == {"line": 4, "column": 1}
