"""Command-line verbs, exit statuses, determinism and the JSON sidecar.

Exit statuses: 0 no violations, 1 violations, 2 usage or input-format errors.
"""

import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from floerkit.cli import VERBS, run

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def cli(*argv):
    buf = io.StringIO()
    code = run([str(a) for a in argv], stdout=buf)
    return code, buf.getvalue()


def fx(name):
    return FIXTURES / name


# ---------------------------------------------------------------- verbs

def test_homology_of_genus_two_fixture():
    code, out = cli("homology", fx("genus2_handleswap_complex.json"))
    assert code == 0
    assert "free rank 4, torsion none" in out


def test_homology_with_truncation():
    code, out = cli("homology", "lens3", "--truncation", "2")
    assert code == 0 and "U^2:" in out


def test_validate_d2_violation():
    code, out = cli("validate", fx("d2_violation.json"))
    assert code == 1
    assert "[d_squared]" in out and "from x to w" in out


@pytest.mark.parametrize("target", ["lens3", "double_stabilizer", "fixture_graph.json", "s3_functor.json",
                                    "cone_identity_wiggle2.json"])
def test_validate_ok(target):
    path = fx(target) if target.endswith(".json") else target
    code, out = cli("validate", path)
    assert code == 0, out


def test_cone_identity_is_acyclic():
    code, out = cli("cone", fx("cone_identity_wiggle2.json"))
    assert code == 0 and "hat: free rank 0, torsion none" in out


@pytest.mark.parametrize("name", ["s3+", "s3-", "wiggle-diag", "wiggle2-swap", "lens2-swap", "lens2-rotation"])
def test_involutive(name):
    code, out = cli("involutive", fx(f"involutive_{name}.json"))
    assert code == 0
    assert "order up to sign and homotopy:" in out and "Cone(1 - iota):" in out


def test_graph_rectangles():
    code, out = cli("graph-rectangles", fx("fixture_graph.json"))
    assert code == 0
    assert "counts: type 1: 4, type 2: 2, type 3: 4, type 4: 1, type 5: 2" in out


def test_graph_handleswap():
    code, out = cli("graph-handleswap", fx("fixture_graph.json"))
    assert code == 0 and "e=a12 f=b23 g=g_hs" in out and "handleswaps: 1" in out


def test_invariant_check_up_to_sign():
    code, out = cli("invariant-check", fx("strong_functor.json"), "--mode", "up-to-sign")
    assert code == 0
    for axiom in ("functoriality", "commutativity", "continuity", "handleswap"):
        assert f"{axiom}: pass" in out


def test_invariant_check_projective_strict_and_sign():
    code, out = cli("invariant-check", fx("projective_functor.json"))
    assert code == 1 and "handleswap: FAIL" in out and "[axiom4]" in out
    code, out = cli("invariant-check", fx("projective_functor.json"), "--mode", "sign")
    assert code == 0


def test_paths_in_graph():
    code, out = cli("paths", fx("handleswap_triangle.json"), "--from", "H1", "--to", "H3", "--max-len", "2")
    assert code == 0
    assert out.splitlines()[1:4] == ["g_r", "e -> f", "simple paths: 2"]


def test_paths_for_functors():
    code, out = cli("paths", fx("strong_functor.json"), "--max-len", "6")
    assert code == 0 and "simple paths compared: 1401" in out
    code, out = cli("paths", fx("mutated_functor.json"), "--max-len", "4")
    assert code == 1 and "[paths]" in out
    code, out = cli("paths", fx("mutated_functor.json"), "--from", "V1", "--to", "V3", "--max-len", "3")
    assert code == 1


def test_system_validate():
    code, out = cli("system-validate", fx("s3_functor.json"))
    assert code == 0 and "transitive system (sign-homotopy)" in out
    code, out = cli("system-validate", fx("strong_functor.json"), "--from", "V1")
    assert code == 0


# --------------------------------------------------------- exit status 2

@pytest.mark.parametrize("argv", [
    ["homology", "missing.json"],
    ["validate", "not_a_catalog_name"],
    ["paths", "FIXTURE:handleswap_triangle.json"],
    ["paths", "FIXTURE:handleswap_triangle.json", "--from", "H1", "--to", "nowhere"],
    ["cone", "FIXTURE:genus2_handleswap_complex.json"],
    ["involutive", "FIXTURE:fixture_graph.json"],
])
def test_input_errors_exit_2(argv, capsys):
    argv = [str(fx(a[8:])) if a.startswith("FIXTURE:") else a for a in argv]
    code, _ = cli(*argv)
    assert code == 2
    assert "floerkit:" in capsys.readouterr().err


def test_malformed_json_exit_2(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{")
    assert cli("validate", p)[0] == 2


@pytest.mark.parametrize("argv", [[], ["frobnicate", "x"], ["homology"], ["paths", "x", "--max-len", "many"],
                                  ["validate", "lens2", "--mode", "loose"]])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as exc:
        cli(*argv)
    assert exc.value.code == 2


def test_bad_numeric_flags():
    assert cli("validate", "lens2", "--bound", "-1")[0] == 2
    assert cli("homology", "lens2", "--truncation", "0")[0] == 2
    assert cli("paths", fx("strong_functor.json"), "--max-len", "0")[0] == 2


# ----------------------------------------------------- determinism, sidecar

@pytest.mark.parametrize("argv", [
    ["graph-rectangles", "FIXTURE:fixture_graph.json"],
    ["invariant-check", "FIXTURE:mutated_functor.json"],
    ["involutive", "FIXTURE:involutive_wiggle2-swap.json"],
    ["paths", "FIXTURE:projective_functor.json", "--max-len", "3"],
])
def test_reports_are_byte_identical(argv):
    argv = [str(fx(a[8:])) if a.startswith("FIXTURE:") else a for a in argv]
    assert cli(*argv) == cli(*argv)


def test_out_writes_report_and_sidecar(tmp_path):
    out = tmp_path / "report.txt"
    code, text = cli("invariant-check", fx("projective_functor.json"), "--out", out)
    assert code == 1
    assert out.read_text() == text
    side = json.loads(Path(str(out) + ".json").read_text())
    assert side["verb"] == "invariant-check" and side["ok"] is False
    assert [f["kind"] for f in side["findings"]] == ["axiom4"]


def test_every_verb_is_exercised():
    assert set(VERBS) == {"validate", "homology", "cone", "involutive", "graph-rectangles", "graph-handleswap",
                          "invariant-check", "paths", "system-validate"}


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "floerkit.cli", "homology", str(fx("genus2_handleswap_complex.json"))],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "free rank 4, torsion none" in res.stdout
