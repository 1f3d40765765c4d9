"""Integration tests for the ``toa`` command line."""

import dataclasses
import json

import pytest

from toa_correspondence.cli import main
from toa_correspondence.physics import transforms

pytestmark = pytest.mark.usefixtures("reset_singletons")

HARMONIC = "1/2*mu*omega^2*q^2"


def run(capsys, *args: str) -> tuple[int, str, str]:
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestLocalCommand:
    """Tests for ``toa local``."""

    def test_linear_table_row(self, capsys):
        code, out, _ = run(
            capsys, "local", "-V", "lambda*q", "-K", "3", "--negate", "--format", "md"
        )
        assert code == 0
        assert "| 0 | 1/1 | mu*q/p |" in out
        assert "| 1 | -1/2 | mu^2*lambda*q^2/p^3 |" in out
        assert "| 2 | 1/2 | mu^3*lambda^2*q^3/p^5 |" in out
        assert "| 3 | -5/8 | mu^4*lambda^3*q^4/p^7 |" in out

    def test_constant_term_exit_code(self, capsys):
        code, out, err = run(capsys, "local", "-V", "q^0")
        assert code == 2
        assert out == ""
        assert "error:" in err

    def test_json_is_deterministic(self, capsys):
        _, first, _ = run(capsys, "local", "-V", "lambda*q^4", "-K", "4")
        _, second, _ = run(capsys, "local", "-V", "lambda*q^4", "-K", "4")
        assert first == second
        assert json.loads(first)["order"] == 4

    def test_csv(self, capsys):
        code, out, _ = run(capsys, "local", "--potential", "lambda*q", "-K", "1", "--format", "csv")
        assert code == 0
        assert out.splitlines()[0] == "coeff,mu,hbar,q,x,pinv,sym_lambda"


class TestKernelCommand:
    """Tests for ``toa kernel``."""

    def test_harmonic_table_rows(self, capsys):
        code, out, _ = run(capsys, "kernel", "-V", HARMONIC, "-N", "6", "--format", "md")
        assert code == 0
        assert "| 1 | 0 | 1/4 | u |" in out
        assert "| 3 | 2 | 1/96 | mu^2*hbar^-2*omega^2*u^3*v^2 |" in out
        assert "| 7 | 6 | 1/1290240 |" in out

    def test_odd_order_exit_code(self, capsys):
        code, out, _ = run(capsys, "kernel", "-V", "lambda*q", "-N", "3")
        assert code == 2
        assert out == ""

    def test_qq_form(self, capsys):
        code, out, _ = run(capsys, "kernel", "-V", "lambda*q", "-N", "2", "--qq", "--format", "md")
        assert code == 0
        assert "(q, q′) form" in out

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "kernel.json"
        code, out, _ = run(capsys, "kernel", "-V", "lambda*q^4", "-N", "4", "--output", str(target))
        assert code == 0
        assert out == ""
        data = json.loads(target.read_text())
        assert data["boundary"]["ok"] is True
        assert not list(tmp_path.glob(".kernel.json.*"))


class TestCompareCommand:
    """Tests for ``toa compare``."""

    def test_quartic(self, capsys):
        code, out, _ = run(capsys, "compare", "-V", "lambda*q^4", "-N", "8")
        assert code == 0
        data = json.loads(out)
        assert data["system_class"] == "hbar_corrected"
        assert data["correction_orders"][0] == 2

    def test_linear_md(self, capsys):
        code, out, _ = run(capsys, "compare", "-V", "lambda*q", "-N", "8", "--format", "md")
        assert code == 0
        assert "- system class: exact" in out

    def test_inconsistent_report_exit_code(self, capsys, monkeypatch):
        real = transforms.verify_correspondence

        def broken(potential, order, ambiguity=0):
            return dataclasses.replace(real(potential, order, ambiguity), classical_match=False)

        monkeypatch.setattr(
            "toa_correspondence.services.pipeline_service.verify_correspondence", broken
        )
        code, _, err = run(capsys, "compare", "-V", "lambda*q", "-N", "4")
        assert code == 3
        assert "error:" in err

    def test_bad_ambiguity(self, capsys):
        code, _, _ = run(capsys, "compare", "-V", "lambda*q", "--ambiguity", "half")
        assert code == 2


class TestTransformAndWeylCommands:
    """Tests for ``toa transform`` and ``toa weyl``."""

    def test_transform_md(self, capsys):
        code, out, _ = run(capsys, "transform", "-V", "lambda*q^4", "-N", "4", "--format", "md")
        assert code == 0
        assert "| -2/1 | mu^2*hbar^2*lambda*q^3/p^5 |" in out

    def test_weyl_json(self, capsys):
        code, out, _ = run(capsys, "weyl", "-V", "lambda*q^4", "-K", "2")
        assert code == 0
        assert json.loads(out)["inverse_matches"] is True


class TestNumericCommand:
    """Tests for ``toa numeric``."""

    def test_harmonic_point(self, capsys):
        code, out, _ = run(
            capsys, "numeric", "-V", HARMONIC, "--q", "-1", "--p", "2", "-K", "20"
        )
        assert code == 0
        (row,) = json.loads(out)
        assert row["abs_error"] < 1e-9

    def test_quartic_point(self, capsys):
        code, out, _ = run(
            capsys, "numeric", "-V", "lambda*q^4", "--q", "-0.5", "--p", "2", "-K", "15"
        )
        assert code == 0
        assert json.loads(out)[0]["abs_error"] < 1e-6

    def test_slow_particle_flagged(self, capsys):
        code, out, _ = run(capsys, "numeric", "-V", "lambda*q^4", "--q", "-1", "--p", "0.01")
        assert code == 0
        assert json.loads(out)[0]["in_region"] is False

    def test_sweep_csv_is_reproducible(self, capsys):
        args = ("numeric", "-V", HARMONIC, "--sweep", "5", "--seed", "9", "--format", "csv")
        code, first, _ = run(capsys, *args)
        _, second, _ = run(capsys, *args)
        assert code == 0
        assert first == second
        lines = first.splitlines()
        assert lines[0].startswith("q,p,K,series_value")
        assert len(lines) == 6

    def test_missing_point(self, capsys):
        code, _, _ = run(capsys, "numeric", "-V", HARMONIC)
        assert code == 2


class TestTablesCommand:
    """Tests for ``toa tables``."""

    def test_table_one(self, capsys):
        code, out, _ = run(capsys, "tables", "--which", "1", "-K", "4")
        assert code == 0
        assert "λq⁴" in out

    def test_table_two(self, capsys):
        code, out, _ = run(capsys, "tables", "--which", "2", "-N", "6")
        assert code == 0
        assert "Δ_{0,n}" in out

    def test_unknown_table(self, capsys):
        code, out, _ = run(capsys, "tables", "--which", "3")
        assert code == 2
        assert out == ""

    def test_order_above_maximum(self, capsys, monkeypatch):
        monkeypatch.setenv("TOA_MAX_ORDER", "4")
        code, out, _ = run(capsys, "tables", "--which", "2", "-N", "6")
        assert code == 2
        assert out == ""
