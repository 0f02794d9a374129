import json
import subprocess
import sys
from fractions import Fraction

import pytest

from nabla_radius.cli import main
from nabla_radius.corpus import (
    exponential_module,
    exponential_two_var_module,
    power_module,
    trivial_module,
)
from nabla_radius.descriptor import (
    ModuleDescriptor,
    parse_module_descriptor,
    save_module_descriptor,
)
from nabla_radius.laurent import LaurentPoly
from nabla_radius.connection import ConnectionModule, PolyMatrix


@pytest.fixture
def dwork_path(tmp_path):
    path = tmp_path / "dwork.json"
    save_module_descriptor(
        ModuleDescriptor(module=exponential_module(3), label="dwork-p3"), str(path)
    )
    return str(path)


@pytest.fixture
def two_var_path(tmp_path):
    path = tmp_path / "twovar.json"
    save_module_descriptor(
        ModuleDescriptor(module=exponential_two_var_module(3), label="exp-two-var"),
        str(path),
    )
    return str(path)


@pytest.fixture
def trivial_path(tmp_path):
    path = tmp_path / "trivial.json"
    save_module_descriptor(ModuleDescriptor(module=trivial_module(3, 1, 0, 1)), str(path))
    return str(path)


@pytest.fixture
def curved_path(tmp_path):
    # N1 = [t2], N2 = [0] is not integrable.
    p = 3
    t2 = LaurentPoly.variable(p, 2, 0, 1)
    module = ConnectionModule(
        prime=p, nvars_annulus=2, nvars_disc=0, rank=1,
        matrices=(PolyMatrix([[t2]]), PolyMatrix([[LaurentPoly.zero(p, 2, 0)]])),
    )
    path = tmp_path / "curved.json"
    save_module_descriptor(ModuleDescriptor(module=module), str(path))
    return str(path)


@pytest.fixture
def poly_path(tmp_path):
    path = tmp_path / "poly.json"
    path.write_text(
        json.dumps(
            {"prime": 2, "label": "p-plus-t",
             "terms": [{"exps": [0], "coeff": "2"}, {"exps": [1], "coeff": "1"}]}
        ),
        encoding="utf-8",
    )
    return str(path)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, argv):
    code, out, err = run(capsys, argv)
    return code, json.loads(out), err


class TestValidate:
    def test_ok(self, capsys, dwork_path):
        code, doc, _ = run_json(capsys, ["validate", dwork_path])
        assert code == 0
        assert doc["schema"] == "nabla-radius/1"
        assert doc["status"] == "ok"
        assert doc["label"] == "dwork-p3"
        assert len(doc["descriptor_sha256"]) == 64

    def test_non_integrable(self, capsys, curved_path):
        code, doc, _ = run_json(capsys, ["validate", curved_path])
        assert code == 2
        assert doc["status"] == "non-integrable"
        assert doc["violation"]["i"] == 0 and doc["violation"]["j"] == 1

    def test_schema_error(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"prime": 4}', encoding="utf-8")
        code, doc, _ = run_json(capsys, ["validate", str(bad)])
        assert code == 1
        assert doc["status"] == "schema-error"

    def test_missing_file(self, capsys, tmp_path):
        code, doc, _ = run_json(capsys, ["validate", str(tmp_path / "nope.json")])
        assert code == 1
        assert doc["status"] == "schema-error"


class TestIr:
    def test_report(self, capsys, dwork_path):
        code, doc, _ = run_json(capsys, ["ir", dwork_path, "--depth", "16"])
        assert code == 0
        assert doc["command"] == "ir"
        assert doc["ir_exponent"] == "1/2"
        assert doc["exact"] is False
        assert doc["parameters"]["depth"] == 16
        assert doc["directions"][0]["window_start"] == 12

    def test_radius_broadcast_and_exit_codes(self, capsys, two_var_path):
        code, doc, _ = run_json(
            capsys, ["ir", two_var_path, "--depth", "16", "--radius", "1/3"]
        )
        assert code == 0
        assert doc["parameters"]["radius"] == ["1/3", "1/3"]
        code, _, err = run(
            capsys,
            ["ir", two_var_path, "--depth", "16", "--radius", "1/3", "--radius",
             "1/2", "--radius", "1"],
        )
        assert code == 1 and "radius" in err

    def test_center_radius_rejected(self, capsys, dwork_path):
        code, _, err = run(capsys, ["ir", dwork_path, "--depth", "16",
                                    "--radius", "center"])
        assert code == 1
        assert "positive" in err

    def test_non_integrable_exit(self, capsys, curved_path):
        code, _, err = run(capsys, ["ir", curved_path, "--depth", "16"])
        assert code == 2

    def test_bad_fraction(self, capsys, dwork_path):
        code, _, err = run(capsys, ["ir", dwork_path, "--window", "huge"])
        assert code == 1


class TestOc:
    def test_negative(self, capsys, dwork_path):
        code, doc, _ = run_json(capsys, ["oc", dwork_path, "--depth", "16"])
        assert code == 3
        assert doc["verdict"] == "NOT_OVERCONVERGENT_EVIDENCE"
        assert doc["witness_direction"] == 0
        assert doc["radius_report"]["ir_exponent"] == "1/2"

    def test_positive(self, capsys, trivial_path):
        code, doc, _ = run_json(capsys, ["oc", trivial_path, "--depth", "8"])
        assert code == 0
        assert doc["verdict"] == "OVERCONVERGENT_EVIDENCE"

    def test_inconclusive(self, capsys, tmp_path):
        path = tmp_path / "kummer.json"
        save_module_descriptor(
            ModuleDescriptor(module=power_module(3, Fraction(1, 2))), str(path)
        )
        code, doc, _ = run_json(capsys, ["oc", str(path), "--depth", "16"])
        assert code == 4
        assert doc["verdict"] == "INCONCLUSIVE"


class TestTaylor:
    def test_fail(self, capsys, dwork_path):
        code, doc, _ = run_json(
            capsys, ["taylor", dwork_path, "--eta", "1/4", "--depth", "12"]
        )
        assert code == 3
        assert doc["outcome"] == "fail"
        assert doc["witness"] is not None

    def test_pass(self, capsys, dwork_path):
        code, doc, _ = run_json(
            capsys, ["taylor", dwork_path, "--eta", "1", "--depth", "12"]
        )
        assert code == 0
        assert doc["outcome"] == "pass"
        assert doc["eta_exponent"] == "1"

    def test_lambda_flag(self, capsys, tmp_path):
        path = tmp_path / "kummer.json"
        save_module_descriptor(
            ModuleDescriptor(module=power_module(3, Fraction(1, 2))), str(path)
        )
        code, doc, _ = run_json(
            capsys,
            ["taylor", str(path), "--eta", "1/4", "--lambda", "1/8", "--depth", "24"],
        )
        assert code == 0
        assert doc["outcome"] == "pass"
        assert doc["lambda_exponent"] == "1/8"

    def test_eta_required(self, capsys, dwork_path):
        code = main(["taylor", dwork_path])
        assert code == 1


class TestSpecialize:
    def test_produces_descriptor(self, capsys, two_var_path):
        code, doc, _ = run_json(
            capsys, ["specialize", two_var_path, "--direction", "0", "--point", "2"]
        )
        assert code == 0
        curve = parse_module_descriptor(doc["module"])
        assert curve.module.nvars_annulus == 1
        assert curve.module.nvars_disc == 0
        assert curve.label == "exp-two-var-curve-t0"

    def test_non_unit_point(self, capsys, two_var_path):
        code, _, err = run(
            capsys, ["specialize", two_var_path, "--direction", "0", "--point", "3"]
        )
        assert code == 1 and "unit" in err

    def test_wrong_coordinate_count(self, capsys, two_var_path):
        code, _, err = run(
            capsys, ["specialize", two_var_path, "--direction", "0", "--point", "2,2"]
        )
        assert code == 1


class TestCutcheck:
    def test_witness_found(self, capsys, two_var_path):
        code, doc, _ = run_json(
            capsys, ["cutcheck", two_var_path, "--depth", "24", "--trials", "5",
                     "--seed", "0"]
        )
        assert code == 3
        assert doc["verdict"]["verdict"] == "NOT_OVERCONVERGENT_EVIDENCE"
        w = doc["witness"]
        assert w is not None
        assert w["ir_curve_exponent"] == w["ir_full_exponent"] == "1/2"

    def test_positive_short_circuit(self, capsys, trivial_path):
        code, doc, _ = run_json(
            capsys, ["cutcheck", trivial_path, "--depth", "8", "--trials", "3",
                     "--seed", "0"]
        )
        assert code == 0
        assert doc["witness"] is None

    def test_byte_identical_reruns(self, capsys, two_var_path):
        argv = ["cutcheck", two_var_path, "--depth", "24", "--trials", "5",
                "--seed", "11"]
        _, out1, _ = run(capsys, argv)
        _, out2, _ = run(capsys, argv)
        assert out1 == out2


class TestTechlemma:
    def test_certificate(self, capsys, poly_path):
        code, doc, _ = run_json(
            capsys, ["techlemma", poly_path, "--alpha", "2", "--beta", "1/2"]
        )
        assert code == 0
        assert doc["label"] == "p-plus-t"
        assert doc["dominant"] == {"A": [], "B": [1], "n0": 1}
        assert doc["certificate"]["interval"] == {
            "alpha_exponent": "3/4", "beta_exponent": "1/2"
        }
        assert doc["certificate"]["margin"] == "1/4"
        assert doc["unit_check"]["ok"] is True
        assert len(doc["unit_check"]["samples"]) == 20

    def test_degenerate_tie(self, capsys, tmp_path):
        path = tmp_path / "tie.json"
        path.write_text(
            json.dumps({"prime": 2,
                        "terms": [{"exps": [-1], "coeff": "2"},
                                  {"exps": [0], "coeff": "1"}]}),
            encoding="utf-8",
        )
        code, _, err = run(capsys, ["techlemma", str(path), "--alpha", "1",
                                    "--beta", "1"])
        assert code == 1 and "dominance" in err

    def test_bad_poly_file(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"prime": 2}', encoding="utf-8")
        code, _, err = run(capsys, ["techlemma", str(path), "--alpha", "1",
                                    "--beta", "1/2"])
        assert code == 1


class TestCorpus:
    def test_list(self, capsys):
        code, doc, _ = run_json(capsys, ["corpus"])
        assert code == 0
        labels = [e["label"] for e in doc["entries"]]
        assert "exp-disc-p3" in labels and "power-half-p3" in labels

    def test_dump_round_trips(self, capsys):
        code, doc, _ = run_json(capsys, ["corpus", "--dump", "exp-two-var-p3"])
        assert code == 0
        parsed = parse_module_descriptor(doc)
        assert parsed.module.nvars_annulus == 2

    def test_unknown_label(self, capsys):
        code, _, err = run(capsys, ["corpus", "--dump", "nope"])
        assert code == 1 and "unknown" in err


class TestHarness:
    def test_unknown_subcommand(self, capsys):
        assert main(["frobnicate"]) == 1

    def test_no_args_shows_usage(self, capsys):
        assert main([]) == 1

    def test_module_entry_point(self, dwork_path):
        proc = subprocess.run(
            [sys.executable, "-m", "nabla_radius", "oc", dwork_path, "--depth", "16"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 3
        assert json.loads(proc.stdout)["verdict"] == "NOT_OVERCONVERGENT_EVIDENCE"

    def test_reports_end_with_newline(self, capsys, dwork_path):
        _, out, _ = run(capsys, ["validate", dwork_path])
        assert out.endswith("}\n")
