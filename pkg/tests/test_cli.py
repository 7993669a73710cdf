import json

import pytest

from twistorp1.cli import CONVENTION_HASH, dispatch


def run(capsys, *argv):
    code = dispatch(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, "--json", *argv)
    return code, (json.loads(out) if out.strip() else None), err


class TestBasics:
    def test_version(self, capsys):
        with pytest.raises(SystemExit) as exc:
            dispatch(["--version"])
        assert exc.value.code == 0
        out = capsys.readouterr().out
        assert CONVENTION_HASH in out

    def test_unknown_command(self, capsys):
        code, _, err = run(capsys, "frobnicate")
        assert code == 2

    def test_missing_required(self, capsys):
        code, _, _ = run(capsys, "hilbert", "-1")
        assert code == 2


class TestHilbert:
    def test_symbol(self, capsys):
        code, data, _ = run_json(capsys, "hilbert", "-1", "-1", "--place", "2")
        assert code == 0
        assert data["symbol"] == -1
        assert data["class"] == "Division"

    def test_split(self, capsys):
        code, data, _ = run_json(capsys, "hilbert", "2", "7", "--place", "7")
        assert code == 0 and data["symbol"] == 1

    def test_zero_is_domain_error(self, capsys):
        code, _, err = run(capsys, "hilbert", "0", "1", "--place", "3")
        assert code == 3 and "domain error" in err

    def test_bad_place(self, capsys):
        code, _, _ = run(capsys, "hilbert", "1", "1", "--place", "4")
        assert code in (2, 3)

    def test_flags_after_subcommand(self, capsys):
        code, data, _ = run(capsys, "hilbert", "-1", "-1", "--place", "inf", "--json")
        assert code == 0
        assert json.loads(data)["symbol"] == -1


class TestReciprocity:
    def test_product_is_one(self, capsys):
        code, data, _ = run_json(capsys, "reciprocity", "6", "-10")
        assert code == 0
        assert data["product"] == 1
        prod = 1
        for s in data["symbols"].values():
            prod *= s
        assert prod == 1


class TestConic:
    def test_split_point(self, capsys):
        code, data, _ = run_json(capsys, "conic", "1", "1", "--place", "3")
        assert code == 0 and data["point"] is not None

    def test_division_none(self, capsys):
        code, data, _ = run_json(capsys, "conic", "-1", "-1", "--place", "2")
        assert code == 0 and data["point"] is None

    def test_extension_point(self, capsys):
        code, data, _ = run_json(
            capsys, "conic", "3", "2", "--place", "3", "--ext", "2"
        )
        assert code == 0 and data["point"] is not None


class TestQuat:
    def test_mul(self, capsys):
        code, data, _ = run_json(
            capsys, "quat", "mul", "--a", "-1", "--b", "-1",
            "--x", "0,1,0,0", "--y", "0,0,1,0",
        )
        assert code == 0
        assert data["product"] == ["0", "0", "0", "1"]

    def test_norm(self, capsys):
        code, data, _ = run_json(
            capsys, "quat", "norm", "--a", "-1", "--b", "-1", "--x", "1,2,3,4"
        )
        assert code == 0 and data["norm"] == "30"

    def test_zero_divisor_local(self, capsys):
        code, data, _ = run_json(
            capsys, "quat", "zero-divisor", "--a", "-1", "--b", "-1", "--field", "Qp:5"
        )
        assert code == 0 and data["zero_divisor"] is not None

    def test_degenerate_algebra(self, capsys):
        code, _, _ = run(capsys, "quat", "norm", "--a", "0", "--b", "1", "--x", "1,0,0,0")
        assert code == 3


class TestQform:
    def test_hasse(self, capsys):
        code, data, _ = run_json(
            capsys, "qform", "--diag", "1,1,1", "--op", "hasse", "--place", "inf"
        )
        assert code == 0
        assert data["hasse"] == 1 and data["signature"] == [3, 0]

    def test_witt(self, capsys):
        code, data, _ = run_json(
            capsys, "qform", "--diag", "1,-1,3", "--op", "witt", "--place", "5"
        )
        assert code == 0
        assert data["hyperbolic_planes"] == 1

    def test_missing_place(self, capsys):
        code, _, _ = run(capsys, "qform", "--diag", "1,1", "--op", "hasse")
        assert code == 2


class TestClifford:
    def test_table_entry(self, capsys):
        code, data, _ = run_json(capsys, "clifford", "0", "2")
        assert code == 0
        assert data["type"] == "M1(H)"
        assert data["complexified"] == "M2(C)"

    def test_large_signature(self, capsys):
        # the classification is symbolic, so big signatures still work
        code, data, _ = run_json(capsys, "clifford", "9", "9")
        assert code == 0 and data["type"] == "M512(R)"


class TestTwistor:
    def test_rho_tw(self, capsys):
        code, data, _ = run_json(capsys, "twistor", "rho-tw", "1,0,0,0")
        assert code == 0 and data["image"] == ["0", "1", "0", "0"]

    def test_pi(self, capsys):
        code, data, _ = run_json(capsys, "twistor", "pi", "1,2,3,4")
        assert code == 0 and data["q2"] == ["3", "4"]

    def test_fiber(self, capsys):
        code, data, _ = run_json(capsys, "twistor", "fiber", "1,1;1,0")
        assert code == 0 and data["real_line"] is True

    def test_degree(self, capsys):
        code, data, _ = run_json(capsys, "twistor", "degree", "plus")
        assert code == 0 and data["degree"] == 1

    def test_bad_coords(self, capsys):
        code, _, _ = run(capsys, "twistor", "pi", "1,2,3")
        assert code == 3


class TestHodge:
    def test_to_twistor_file(self, capsys, tmp_path):
        doc = {
            "n": 2,
            "w": 1,
            "filtration": {"1": [["1", "i"]]},
        }
        f = tmp_path / "h.json"
        f.write_text(json.dumps(doc))
        code, data, _ = run_json(capsys, "hodge", "to-twistor", str(f))
        assert code == 0
        assert data["rank"] == 2 and data["degree"] == 1
        assert data["hodge_numbers"] == {"1,0": 1, "0,1": 1}

    def test_round_trip(self, capsys):
        code, data, _ = run_json(
            capsys, "hodge", "round-trip", "--n", "2", "--w", "1", "--trials", "5"
        )
        assert code == 0 and data["failures"] == 0

    def test_impure_file(self, capsys, tmp_path):
        doc = {"n": 2, "w": 1, "filtration": {"1": [["1", "0"]]}}
        f = tmp_path / "bad.json"
        f.write_text(json.dumps(doc))
        code, _, err = run(capsys, "hodge", "to-twistor", str(f))
        assert code == 3


class TestWeil:
    def test_gauss(self, capsys):
        code, data, _ = run_json(capsys, "weil", "gauss", "5")
        assert code == 0
        re, im = data["sum"]
        assert abs(re - 5**0.5) < 1e-9 and abs(im) < 1e-9

    def test_cocycle(self, capsys):
        code, data, _ = run_json(
            capsys, "weil", "cocycle", "5", "--g", "0,1,4,0", "--h", "0,1,4,0"
        )
        assert code == 0
        assert abs(data["modulus"] - 1) < 1e-6

    def test_maslov_signature(self, capsys):
        code, data, _ = run_json(
            capsys, "weil", "maslov", "--lines", "1,0;0,1;1,1", "--field", "R"
        )
        assert code == 0 and data["signature"] in (-1, 1)

    def test_maslov_local(self, capsys):
        code, data, _ = run_json(
            capsys, "weil", "maslov", "--lines", "1,0;0,1;1,1", "--field", "Qp:3"
        )
        assert code == 0 and data["dim"] == 3

    def test_bad_prime(self, capsys):
        code, _, _ = run(capsys, "weil", "gauss", "4")
        assert code == 3


class TestVerifyQuick:
    def test_verify_json(self, capsys):
        code, data, _ = run_json(capsys, "verify", "--quick")
        assert code == 0
        assert data["all_passed"] is True
        assert len(data["criteria"]) == 11
