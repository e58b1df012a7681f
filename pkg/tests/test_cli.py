from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from cmcubics.cli import run


def cli(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def records(text):
    return [dict(line.split(": ", 1) for line in block.splitlines() if ": " in line)
            for block in text.strip().split("\n\n")]


def test_tangent_prints_sixteen(data_dir):
    code, out = cli("tangent", str(data_dir / "z2zx_zy_x3.ideal"))
    assert code == 0
    assert records(out)[0]["dimension"] == "16"


@pytest.mark.parametrize("field, expected", [("q", "15"), ("fp:2", "15"), ("fp:3", "15")])
def test_tangent_field_flag(data_dir, field, expected):
    code, out = cli("--field", field, "tangent", str(data_dir / "z2zx_zy_xw2.ideal"))
    assert code == 0 and records(out)[0]["dimension"] == expected
    # the flag is accepted after the subcommand too
    code2, out2 = cli("tangent", str(data_dir / "z2zx_zy_xw2.ideal"), "--field", field)
    assert out2 == out


def test_tangent_basis_and_unsaturated_input(data_dir, capsys):
    code, out = cli("tangent", "--basis", str(data_dir / "degenerate_cubic.ideal"))
    assert code == 0
    assert len([ln for ln in out.splitlines() if ln.startswith("  (")]) == 12
    code, _ = cli("tangent", str(data_dir / "cubic_with_limit_point.ideal"))
    assert code == 2
    assert "not saturated" in capsys.readouterr().err


def test_gb_json(data_dir):
    code, out = cli("--json", "gb", str(data_dir / "degenerate_cubic.ideal"))
    rec = json.loads(out)
    assert code == 0
    assert rec["basis"] == ["x^2 - y*u", "x*u", "u^2"]
    code, out = cli("gb", "--order", "lex", str(data_dir / "degenerate_cubic.ideal"))
    assert code == 0 and "order: lex" in out


def test_member_exit_codes(data_dir):
    path = str(data_dir / "degenerate_cubic.ideal")
    assert cli("member", path, "x^3")[0] == 0
    code, out = cli("member", path, "x*y")
    assert code == 1 and "member: False" in out


def test_hilbert(data_dir):
    code, out = cli("hilbert", str(data_dir / "degenerate_cubic.ideal"))
    assert code == 0
    assert "polynomial: 3t+1" in out
    code, out = cli("--json", "hilbert", "--depth", "4", str(data_dir / "degenerate_cubic.ideal"))
    # the table depth is a minimum; it always extends past the series numerator
    assert json.loads(out)["function_table"][:5] == [[0, 1], [1, 4], [2, 7], [3, 10], [4, 13]]


def test_fitting(data_dir):
    code, out = cli("--json", "fitting", str(data_dir / "nonflat_chart.matrix"))
    rec = json.loads(out)
    assert code == 0 and rec["index"] == 0 and len(rec["groebner_basis"]) == 8
    code, out = cli("fitting", "--index", "2", str(data_dir / "fitting_flat.matrix"))
    assert code == 0 and "generators: (1)" in out


def test_liftcheck(data_dir):
    code, out = cli("liftcheck", str(data_dir / "embedded_point_lift.setup"))
    assert code == 0
    rec = records(out)[0]
    assert rec["residue"] == ("[x^2*b12*c16, 0, x*b12*c13 + y*b12*c14 + z*b12*c15, x^2*b12*c14]")
    assert rec["zero_mod_obstruction"] == "True"
    code, out = cli("--json", "liftcheck", str(data_dir / "stable_sheaf_lift.setup"))
    assert code == 0 and json.loads(out)["zero_mod_obstruction"] is True


def test_liftcheck_failure_exit_code(tmp_path):
    p = tmp_path / "bad.setup"
    p.write_text("ring F0 vars x,y,e; vector x + e*y, y; matrix 2 x 1: y, -x; deformation e;")
    code, out = cli("liftcheck", str(p))
    assert code == 1 and "zero_mod_obstruction: False" in out


def test_saturate_and_quotient(data_dir):
    code, out = cli("saturate", str(data_dir / "cubic_with_limit_point.ideal"))
    assert code == 0 and "saturated_input: False" in out and "  z\n" in out
    code, out = cli("quotient", str(data_dir / "nonflat_fitting.ideal"), "--by", "t")
    assert code == 0 and "strictly_larger: True" in out and "x^2*t - y*z" in out


def test_verify_nonflat_prints_witness():
    code, out = cli("verify", "nonflat-5t-1")
    assert code == 0
    assert "status: pass" in out
    assert "yz - tx^2" in out and "x^2*t - y*z" in out


def test_verify_json_record():
    code, out = cli("--json", "verify", "ft-obstruction", "--field", "fp:2")
    rec = json.loads(out.strip().splitlines()[0])
    assert code == 0
    assert rec["check"] == "ft-obstruction" and rec["field"] == "fp:2" and rec["status"] == "pass"


def test_unknown_check_lists_catalog(capsys):
    code, _ = cli("verify", "no-such-check")
    err = capsys.readouterr().err
    assert code == 2
    assert "roundtrip-sc" in err and "nonflat-5t-1" in err


def test_parse_error_reports_position(tmp_path, capsys):
    p = tmp_path / "bad.ideal"
    p.write_text("ring F0 vars x,y;\nideal x +* y;\n")
    code, _ = cli("gb", str(p))
    assert code == 2
    assert "parse error: 2:" in capsys.readouterr().err


def test_usage_errors(tmp_path, capsys):
    assert cli("gb", str(tmp_path / "missing.ideal"))[0] == 2
    p = tmp_path / "noideal.ideal"
    p.write_text("ring F0 vars x;")
    assert cli("gb", str(p))[0] == 2
    assert cli("--field", "fp:4", "list")[0] == 2
    assert cli()[0] == 2
    capsys.readouterr()


def test_output_is_deterministic():
    a = cli("--json", "verify", "fitting-image-random", "--seed", "3")[1]
    b = cli("--json", "verify", "fitting-image-random", "--seed", "3")[1]
    strip = [{k: v for k, v in json.loads(line).items() if k != "elapsed"} for line in (a.strip(), b.strip())]
    assert strip[0] == strip[1]


def test_list():
    code, out = cli("--json", "list")
    ids = [json.loads(line)["check"] for line in out.strip().splitlines()]
    assert code == 0
    for cid in ("ps-obstruction", "ft-obstruction", "fitting-image-planar", "roundtrip-sc",
                "nonflat-5t-1", "tangent-12-15-16", "pn-planar-fitting"):
        assert cid in ids


def test_module_entry_point(data_dir):
    proc = subprocess.run([sys.executable, "-m", "cmcubics", "tangent", str(data_dir / "z2zx_zy_x3.ideal")],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "dimension: 16" in proc.stdout
