"""End-to-end tests of the command-line interface."""

import json

from click.testing import CliRunner

from adicspec.cli import main


def run(*args):
    return CliRunner().invoke(main, list(args))


class TestSpv:
    def test_z_table(self):
        res = run("spv", "--ring", "Z", "--bound", "5")
        assert res.exit_code == 0
        assert res.output.splitlines()[0] == "7 points"
        assert "|.|_05 | trivial | (5) | {|.|_05}" in res.output
        assert "|.|_5 <- |.|_0" in res.output
        assert "|.|_05 <- |.|_5" in res.output

    def test_q(self):
        res = run("spv", "--ring", "Q", "--bound", "5")
        assert res.exit_code == 0
        assert res.output.splitlines()[0] == "4 points"

    def test_finite_field(self):
        res = run("spv", "--ring", "F7", "--bound", "10")
        assert res.exit_code == 0
        assert res.output.splitlines()[0] == "1 points"

    def test_structured(self):
        res = run("spv", "--ring", "Z", "--bound", "3", "--format", "structured")
        data = json.loads(res.output)
        assert len(data["points"]) == 5
        by_label = {row["point"]: row for row in data["points"]}
        assert by_label["|.|_2"]["closure"] == ["|.|_02", "|.|_2"]

    def test_unknown_ring(self):
        res = run("spv", "--ring", "R")
        assert res.exit_code == 2

    def test_nonprime_field_rejected(self):
        res = run("spv", "--ring", "F4")
        assert res.exit_code == 2


class TestEval:
    def test_gauss(self):
        res = run("eval", "--point", "ball:0,1", "--poly", "5*T+1", "-p", "5")
        assert res.exit_code == 0
        assert res.output.strip() == "1"

    def test_classical(self):
        res = run("eval", "--point", "classical:5", "--poly", "T", "-p", "5")
        assert res.output.strip() == "1/5"

    def test_structured(self):
        res = run("eval", "--point", "ball:0,1/2", "--poly", "T", "-p", "2",
                  "--format", "structured")
        data = json.loads(res.output)
        assert data["value"] == "1/2"
        assert data["point"] == "ball:0,1/2"

    def test_parse_error_exit_2(self):
        res = run("eval", "--point", "ball:0,1", "--poly", "T+", "-p", "5")
        assert res.exit_code == 2
        assert "error[" in res.stderr

    def test_bad_point_exit_2(self):
        res = run("eval", "--point", "ball:0,2", "--poly", "T", "-p", "5")
        assert res.exit_code == 2

    def test_nonprime_rejected(self):
        res = run("eval", "--point", "ball:0,1", "--poly", "T", "-p", "6")
        assert res.exit_code == 2


class TestClassify:
    def test_point(self):
        res = run("classify", "--point", "ball:0,1/3", "-p", "5")
        assert res.output.strip() == "type 3"

    def test_tree(self):
        res = run("classify", "--tree", "-p", "2")
        assert res.exit_code == 0
        assert "gauss point" in res.output
        assert "(type 1)" in res.output and "(type 2)" in res.output

    def test_requires_point_or_tree(self):
        res = run("classify")
        assert res.exit_code == 2


class TestMember:
    def test_true(self):
        res = run("member", "--point", "ball:0,1", "--subset", "R(1;T)",
                  "-p", "5")
        assert res.output.strip() == "true"

    def test_false(self):
        res = run("member", "--point", "classical:0", "--subset", "R(1;T)",
                  "-p", "5")
        assert res.output.strip() == "false"

    def test_structured(self):
        res = run("member", "--point", "classical:0", "--subset", "R(T;1)",
                  "-p", "5", "--format", "structured")
        data = json.loads(res.output)
        assert data["member"] is True

    def test_malformed_subset_domain_error(self):
        res = run("member", "--point", "ball:0,1", "--subset", "R(T;T^2)",
                  "-p", "5")
        assert res.exit_code == 1
        assert "error[" in res.stderr


class TestSpecializes:
    def test_valuations(self):
        res = run("specializes", "trivial:5", "padic:5", "--ring", "Z")
        assert res.output.strip() == "true"
        res = run("specializes", "padic:5", "padic:7", "--ring", "Z")
        assert res.output.strip() == "false"

    def test_points(self):
        res = run("specializes", "below:0,1", "ball:0,1", "-p", "5")
        assert res.output.strip() == "true"

    def test_mixed_literals_rejected(self):
        res = run("specializes", "ball:0,1", "padic:5", "--ring", "Z")
        assert res.exit_code == 1


class TestCover:
    def test_laurent(self):
        res = run("cover", "T", "-p", "5")
        assert res.exit_code == 0
        assert "laurent cover, 2 members" in res.output
        assert "R(T;1)" in res.output and "R(1;T)" in res.output

    def test_laurent_needs_one_generator(self):
        res = run("cover", "T", "T-1", "-p", "5")
        assert res.exit_code == 2

    def test_rational(self):
        res = run("cover", "T", "T-1", "--kind", "rational", "-p", "5")
        assert res.exit_code == 0
        assert "rational cover, 2 members" in res.output

    def test_rational_not_unit_ideal(self):
        res = run("cover", "T", "--kind", "rational", "-p", "5")
        assert res.exit_code == 1


class TestCechLaurent:
    def test_exact(self):
        res = run("cech-laurent", "--f", "T", "-N", "8", "-p", "5")
        assert res.exit_code == 0
        assert "exact: true" in res.output

    def test_structured(self):
        res = run("cech-laurent", "--f", "T^2-5", "-N", "10", "-p", "5",
                  "--format", "structured")
        data = json.loads(res.output)
        assert data["exact"] is True
        assert data["lambda_rank"] == 21

    def test_zero_series_domain_error(self):
        res = run("cech-laurent", "--f", "0", "-p", "5")
        assert res.exit_code == 1


class TestGroup:
    def test_mul(self):
        res = run("group", "mul", "1/2", "1/3", "--group", "posq")
        assert res.output.strip() == "1/6"

    def test_inv_lex(self):
        res = run("group", "inv", "(1,-2)", "--group", "lex:2")
        assert res.output.strip() == "(-1,2)"

    def test_pow(self):
        res = run("group", "pow", "1/2", "3", "--group", "posq")
        assert res.output.strip() == "1/8"

    def test_cmp(self):
        # (1,1) and (1/2,0) both fold to real part 1/2; the extra g factor
        # makes the first strictly smaller in the below-model
        res = run("group", "cmp", "1*g^1@1/2<", "1/2*g^0@1/2<",
                  "--group", "below:1/2")
        assert res.output.strip() == "<"

    def test_height(self):
        assert run("group", "height", "--group", "posq").output.strip() == "1"
        assert run("group", "height", "--group", "lex:3").output.strip() == "3"

    def test_subgroups(self):
        res = run("group", "subgroups", "--group", "below:1/2")
        assert res.exit_code == 0
        assert len(res.output.strip().splitlines()) == 3

    def test_bad_literal(self):
        res = run("group", "height", "--group", "wat")
        assert res.exit_code == 2

    def test_wrong_arity(self):
        res = run("group", "mul", "1", "--group", "posq")
        assert res.exit_code == 2


class TestRetract:
    def test_padic_fixed(self):
        res = run("retract", "--valuation", "padic:5", "--ideal", "(5)",
                  "--ring", "Z")
        assert res.output.strip() == "padic:5"

    def test_other_prime(self):
        res = run("retract", "--valuation", "padic:5", "--ideal", "(7)",
                  "--ring", "Z")
        assert res.output.strip() == "trivial:5"

    def test_structured(self):
        res = run("retract", "--valuation", "trivial:0", "--ideal", "(5)",
                  "--ring", "Z", "--format", "structured")
        data = json.loads(res.output)
        assert data["retract"] == "trivial:0"


class TestDeterminism:
    def test_repeated_runs_identical(self):
        a = run("spv", "--ring", "Z", "--bound", "10").output
        b = run("spv", "--ring", "Z", "--bound", "10").output
        assert a == b
