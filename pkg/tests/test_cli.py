import json
import random

import pytest

from opalg.cli import (
    ParseError,
    format_polynomial,
    load_ruleset,
    main,
    parse_polynomial,
    parse_word,
)
from opalg.coeff import Scalar
from opalg.poly import OpPolynomial
from opalg.rewrite import RuleValidationError
from opalg.sampling import random_polynomial
from opalg.terms import OP_D, OP_P, Word

from schema_check import validate as validate_schema


def test_parse_examples():
    f = parse_polynomial("d(x)*d(y)")
    assert len(f) == 1
    word, c = f.leading()
    assert c.is_one()
    assert word == Word.letter("x").apply(OP_D) * Word.letter("y").apply(OP_D)

    g = parse_polynomial("(L^-1)*d(x*y)")
    word, c = g.leading()
    assert c == Scalar.lam(-1)
    assert word == (Word.letter("x") * Word.letter("y")).apply(OP_D)


def test_parse_unit_and_numbers():
    assert parse_polynomial("1").leading()[0].is_unit()
    assert parse_polynomial("3/2").leading()[1] == Scalar.from_rational(3, 2)
    assert parse_polynomial("x - x").is_zero()


def test_parse_linear_operator_argument():
    f = parse_polynomial("d(x + y)")
    assert f == parse_polynomial("d(x) + d(y)")


def test_parse_scalar_expressions():
    assert parse_polynomial("(L + 1)/(L)").leading()[1] == (
        Scalar.lam(1) + Scalar.from_rational(1)
    ) * Scalar.lam(-1)
    assert parse_polynomial("L^2*x").leading()[1] == Scalar.lam(2)


def test_parse_errors():
    for bad in ("d(x", "q(x)", "x/(y)", "2//3", "d(x))", "p(x)^-1", ""):
        with pytest.raises(ParseError):
            parse_polynomial(bad)


def test_parse_word_rejects_sums():
    with pytest.raises(ParseError):
        parse_word("x + y")


def test_format_round_trip_random():
    rng = random.Random(71)
    for _ in range(200):
        f = random_polynomial(rng, 7, ("x", "y"), (OP_D, OP_P))
        text = format_polynomial(f)
        again = parse_polynomial(text)
        assert again == f
        assert format_polynomial(again) == text


def test_format_idempotent_on_reparse():
    for s in ("d(x)*d(y)", "(L^-1)*d(x)*y - 2*p(x*y)", "1 - x"):
        once = format_polynomial(parse_polynomial(s))
        assert format_polynomial(parse_polynomial(once)) == once


def test_format_general_scalar_round_trip():
    c = (Scalar.lam(1) + Scalar.from_rational(1)) / (
        Scalar.lam(2) - Scalar.from_rational(2)
    )
    f = OpPolynomial(((Word.letter("x"), c), (Word.unit(), -(c * c))))
    assert parse_polynomial(format_polynomial(f)) == f


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_nf(capsys):
    code, out, _ = _run(capsys, ["nf", "--theory", "drb", "d(p(x))"])
    assert code == 0 and out.strip() == "x"


def test_cli_nf_specialized(capsys):
    code, out, _ = _run(capsys, ["nf", "--theory", "d", "--lambda", "2", "d(d(x))"])
    assert code == 0 and out.strip() == "-1/2*d(x)"


def test_cli_nf_trace_json(capsys):
    code, out, _ = _run(capsys, ["nf", "--theory", "drb", "--json", "d(p(x))*y"])
    assert code == 0
    payload = json.loads(out)
    validate_schema("nf_result", payload)
    assert payload["normal_form"] == "y*x"
    assert payload["steps"][0]["rule"] == "d_after_p"


def test_cli_cmp(capsys):
    code, out, _ = _run(capsys, ["cmp", "p(x)", "d(x)"])
    assert code == 0 and out.strip() == "< (lex(operator))"
    code, out, _ = _run(capsys, ["cmp", "x*y", "x*y"])
    assert code == 0 and out.strip() == "= (equal)"


def test_cli_verify_pass_and_json(capsys):
    code, out, _ = _run(
        capsys,
        ["verify", "--theory", "rb", "--depth", "1", "--cofactors", "1", "--json"],
    )
    assert code == 0
    payload = json.loads(out)
    validate_schema("verify_report", payload)
    assert payload["pass"] is True
    assert payload["theory"] == "rb"


def test_cli_verify_failure_exit_code(capsys):
    code, out, _ = _run(
        capsys, ["verify", "--theory", "d", "--depth", "1", "--cofactors", "1"]
    )
    assert code == 1
    assert "NON-TRIVIAL" in out and out.strip().endswith("FAIL")


def test_cli_irr(capsys):
    code, out, _ = _run(
        capsys, ["irr", "--theory", "drb", "--size", "2", "--generators", "x", "--json"]
    )
    assert code == 0
    payload = json.loads(out)
    validate_schema("irr_result", payload)
    assert payload["count"] == 11
    assert "d(p(x))" not in payload["words"]


def test_cli_compose(capsys):
    code, out, _ = _run(
        capsys,
        ["compose", "--theory", "rb", "--left", "p_rota_baxter", "--right", "p_quasi_idem"],
    )
    assert code == 0
    assert "including" in out
    code, out, _ = _run(
        capsys,
        ["compose", "--theory", "rb", "--left", "p_rota_baxter", "--right", "p_quasi_idem", "--json"],
    )
    assert code == 0
    validate_schema("compose_reports", json.loads(out))


def test_cli_hurwitz_check(capsys):
    code, out, _ = _run(
        capsys, ["hurwitz-check", "--lambda", "3/2", "--samples", "15", "--json"]
    )
    assert code == 0
    payload = json.loads(out)
    validate_schema("hurwitz_check", payload)
    assert payload["pass"] is True
    assert payload["checks"]["rota_baxter"] is True


def test_cli_model_eval(capsys):
    code, out, _ = _run(
        capsys,
        ["model-eval", "--model", "degenerate", "--lambda", "2", "--assign", "x=3", "d(p(x)) - x"],
    )
    assert code == 0 and out.strip() == "0"


def test_cli_usage_error_exit_2(capsys):
    code, _, err = _run(capsys, ["nf", "--theory", "drb", "d(x"])
    assert code == 2 and "error" in err


def test_cli_step_limit_exit_3(capsys):
    code, _, err = _run(
        capsys,
        ["nf", "--theory", "rb", "--step-limit", "1", "p(x)*p(y)*p(x*y)"],
    )
    assert code == 3 and "limit" in err


def test_cli_deterministic_output(capsys):
    argv = ["verify", "--theory", "rb", "--depth", "1", "--cofactors", "1", "--json"]
    _, out1, _ = _run(capsys, argv)
    _, out2, _ = _run(capsys, argv)
    assert out1 == out2


RULESET = {
    "operators": [{"name": "d", "rank": 1}, {"name": "p", "rank": 0}],
    "generators": ["x", "y"],
    "rules": [
        {
            "name": "collapse",
            "variables": ["u"],
            "polynomial": "d(p(u)) - u",
        }
    ],
}


def test_ruleset_file_round_trip(tmp_path, capsys):
    path = tmp_path / "theory.json"
    path.write_text(json.dumps(RULESET))
    theory = load_ruleset(path)
    assert [r.name for r in theory.rules] == ["collapse"]
    code, out, _ = _run(capsys, ["nf", "--theory", str(path), "d(p(x*y))"])
    assert code == 0 and out.strip() == "y*x"


def test_ruleset_file_validation_errors(tmp_path):
    bad = dict(RULESET)
    bad["rules"] = [
        {"name": "nonmonic", "variables": ["u"], "polynomial": "2*d(p(u)) - u"}
    ]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    with pytest.raises(RuleValidationError):
        load_ruleset(path)


def test_ruleset_missing_key(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text(json.dumps({"rules": []}))
    code, _, err = _run(capsys, ["nf", "--theory", str(path), "x"])
    assert code == 2 and "error" in err
