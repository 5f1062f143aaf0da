import json
import subprocess
import sys

import pytest

from symideal.cli import run
from symideal.core import GF, QQ, parse_polynomial


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def as_json(out):
    return json.loads(out)


class TestFamily:
    def test_h2_gf2(self, capsys):
        code, out, _ = call(capsys, "family", "h", "--rows", "2", "--k", "2", "--ring", "gf", "--p", "2")
        assert code == 0 and out.strip() == "x[1,1]*x[1,2]+x[2,1]*x[2,2]"

    def test_det_cycle_tilde(self, capsys):
        assert call(capsys, "family", "det", "--cols", "1,2")[1].strip() == "-x[2,1]*x[1,2]+x[1,1]*x[2,2]"
        code, out, _ = call(capsys, "family", "cycle", "--k", "3", "--ring", "gf", "--p", "2", "--out", "json")
        assert code == 0 and parse_polynomial(as_json(out)["poly"], GF(2), 2)
        code, out, _ = call(capsys, "family", "tilde", "--rows", "2", "--template", "t[1]+t[2]")
        assert code == 0 and parse_polynomial(out.strip(), QQ, 2) == \
            parse_polynomial("x[1,1]+x[1,2]", QQ, 2) * parse_polynomial("x[2,1]+x[2,2]", QQ, 2)

    def test_missing_option(self, capsys):
        code, _, err = call(capsys, "family", "h")
        assert code == 1 and "--k" in err

    def test_gf_needs_prime(self, capsys):
        assert call(capsys, "family", "h", "--k", "1", "--ring", "gf", "--p", "4")[0] == 1


class TestActionsAndMorphisms:
    def test_row(self, capsys):
        assert call(capsys, "act", "row", "x[1,1]", "--perm", "[2,1]")[1].strip() == "x[2,1]"

    def test_col(self, capsys):
        out = call(capsys, "act", "col", "x[1,1]*x[1,2]+x[2,1]*x[2,2]", "--sigma", "{1->3,2->1}")[1]
        assert parse_polynomial(out.strip(), QQ, 2) == parse_polynomial("x[1,3]*x[1,1]+x[2,3]*x[2,1]", QQ, 2)

    def test_symmetrize(self, capsys):
        code, out, _ = call(capsys, "symmetrize", "x[1,1]")
        assert code == 0 and out.strip() == "1/2*x[1,1]+1/2*x[2,1]"

    def test_symmetrize_obstruction(self, capsys):
        code, out, err = call(capsys, "symmetrize", "--rows", "2", "--ring", "gf", "--p", "2", "x[1,1]")
        assert code == 2 and "characteristic obstruction: p <= n" in err and out == ""

    def test_morphs(self, capsys):
        assert call(capsys, "morph", "psi-row", "x[3,1]+x[1,1]", "--rows", "3", "--to", "2")[1].strip() == "x[1,1]"
        assert call(capsys, "morph", "mu", "3*x[1,1]+2*x[2,1]", "--p", "2")[1].strip() == "x[1,1]"
        assert call(capsys, "morph", "lift", "2*x[1,1]", "--p", "3")[1].strip() == "2*x[1,1]"
        assert call(capsys, "morph", "eta", "x[1,1]*x[1,2]+x[2,1]*x[2,2]")[1].strip() == "2*t[1]*t[2]"
        assert call(capsys, "morph", "psi-kl", "x[1,2]", "--kl", "1,2")[1].strip() == "x[1,1]*x[1,2]"

    def test_parse_error(self, capsys):
        code, _, err = call(capsys, "act", "row", "x[1,", "--perm", "[2,1]")
        assert code == 1 and "usage error" in err

    def test_precondition_error(self, capsys):
        assert call(capsys, "morph", "psi-kl", "x[1,2]", "--kl", "2,2")[0] == 2


class TestMembership:
    def test_member_mg_not_member(self, capsys):
        code, out, _ = call(capsys, "member-mg", "x[1,1]*x[1,2]+x[2,1]*x[2,2]", "--ring", "gf", "--p", "2",
                            "--gen", "x[1,1]+x[2,1]", "--out", "json")
        assert code == 0 and as_json(out)["verdict"] == "not_member"

    def test_member_with_certificate(self, capsys, tmp_path):
        cert = tmp_path / "cert.json"
        code, out, _ = call(capsys, "member", "x[1,1]*x[1,2]", "--rows", "1", "--gen", "x[1,1]",
                            "--width", "2", "--deg", "2", "--out", "json", "--cert-out", str(cert))
        doc = as_json(out)
        assert code == 0 and doc["verdict"] == "member" and doc["oracle"] == "groebner"
        for term in doc["certificate"]["terms"]:
            parse_polynomial(term["cofactor"], QQ, 1)
        code, out, _ = call(capsys, "verify-cert", str(cert), "--out", "json")
        assert code == 0 and as_json(out) == {"valid": True, "diagnostic": "ok"}

    def test_tampered_certificate(self, capsys, tmp_path):
        cert = tmp_path / "cert.json"
        call(capsys, "member-mg", "x[1,1]*x[1,2]", "--rows", "1", "--gen", "x[1,1]", "--cert-out", str(cert))
        doc = json.loads(cert.read_text())
        doc["terms"][0]["cofactor"] = "2*" + doc["terms"][0]["cofactor"]
        cert.write_text(json.dumps(doc))
        code, out, _ = call(capsys, "verify-cert", str(cert))
        assert code == 0 and out.startswith("invalid: identity mismatch")

    def test_missing_file(self, capsys, tmp_path):
        assert call(capsys, "verify-cert", str(tmp_path / "nope.json"))[0] == 1

    def test_undecided(self, capsys):
        code, out, _ = call(capsys, "member", "1", "--gen", "x[1,1]+x[2,1]", "--out", "json")
        assert code == 0 and as_json(out)["verdict"] == "undecided"


class TestDrivers:
    def test_verify_hk(self, capsys):
        code, out, _ = call(capsys, "verify-hk", "--rows", "2", "--p", "2", "--k", "3", "--out", "json")
        doc = as_json(out)
        assert code == 0 and doc["verdict"] == "not_member" and doc["theorem"] == "7"
        assert doc["runtime_ms"] is None

    def test_verify_hk_wrong_regime(self, capsys):
        assert call(capsys, "verify-hk", "--rows", "2", "--p", "3", "--k", "2")[0] == 2

    def test_verify_eta_file(self, capsys, tmp_path):
        path = tmp_path / "cand.json"
        path.write_text(json.dumps({"target": "x[1,1]*x[1,2]+x[2,1]*x[2,2]",
                                    "terms": [{"sigma": "{}", "gen": 0, "cofactor": "x[1,2]+x[2,2]"}]}))
        code, out, _ = call(capsys, "verify-eta", str(path), "--k", "2", "--p", "2", "--out", "json")
        doc = as_json(out)
        assert code == 0 and doc["verdict"] == "ResidualNonzero" and doc["valuations"] == [2]
        code, out, _ = call(capsys, "verify-eta", str(path), "--k", "2", "--p", "2", "--synthetic", "--out", "json")
        doc = as_json(out)
        assert doc["verdict"] == "ContradictionEstablished" and doc["lhs_valuation"] == 1
        parse_polynomial(doc["residual_mod_p"], GF(2), 2)

    def test_verify_eta_random(self, capsys):
        code, out, _ = call(capsys, "verify-eta", "--random", "--k", "3", "--p", "3", "--seed", "5", "--out", "json")
        assert code == 0 and as_json(out)["lhs_valuation"] == 1

    def test_verify_orbits(self, capsys):
        code, out, _ = call(capsys, "verify-orbits", "--p", "2", "--width", "2", "--out", "json")
        doc = as_json(out)
        assert code == 0 and doc["verdict"] == "pass" and doc["monomials"] == 8

    def test_verify_vl(self, capsys):
        code, out, _ = call(capsys, "verify-vl", "--k", "4", "--out", "json")
        assert code == 0 and as_json(out)["verdict"] == "not_member"

    def test_scan(self, capsys):
        code, out, _ = call(capsys, "scan", "--family", "h", "--kmin", "2", "--kmax", "4",
                            "--ring", "gf", "--p", "2", "--out", "json")
        assert code == 0 and [e["verdict"] for e in as_json(out)["entries"]] == ["not_member"] * 3

    def test_unknown_command(self, capsys):
        assert call(capsys, "frobnicate")[0] == 1

    @pytest.mark.parametrize("argv", [
        ["verify-eta", "--random", "--k", "3", "--p", "2", "--seed", "9", "--out", "json"],
        ["scan", "--kmin", "1", "--kmax", "5", "--out", "json"],
        ["member", "x[1,1]*x[1,2]", "--rows", "1", "--gen", "x[1,1]", "--out", "json"],
    ])
    def test_byte_identical(self, capsys, argv):
        first = call(capsys, *argv)
        assert first == call(capsys, *argv)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "symideal", "family", "h", "--k", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "x[1,1]*x[1,2]+x[2,1]*x[2,2]"
