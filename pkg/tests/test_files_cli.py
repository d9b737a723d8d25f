import io
import json

import pytest

from uncreg import fixtures
from uncreg.cli import main
from uncreg.errors import ValidationError
from uncreg.files import (
    FitRecord,
    ParseError,
    dataset_from_json,
    dataset_to_json,
    parse_dataset,
    parse_fit,
    write_dataset,
)
from uncreg.regress import Dataset, Observation
from uncreg.udist import Linear, Normal, Point

LIN56 = '{"dist":"linear","a":5,"b":6}'


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def all_fixture_datasets():
    yield fixtures.table1()
    for j in (1, 2, 3):
        yield fixtures.table2(j)
    yield Dataset(2, (Observation(Normal(0, 1), (Point(7), Linear(-1, 2))), Observation(Point(1), (Point(0), Point(3)))))


@pytest.mark.parametrize("data", list(all_fixture_datasets()))
def test_dataset_round_trip(tmp_path, data):
    path = tmp_path / "d.json"
    write_dataset(data, path)
    assert parse_dataset(path) == data


def test_table1_file_has_fifteen_observations(table1_file):
    data = parse_dataset(table1_file)
    assert data.n == 15 and data.p == 1


def test_malformed_json_reports_location(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"predictors": 1,\n "observations": [}', encoding="utf-8")
    with pytest.raises(ParseError, match="line 2 column"):
        parse_dataset(path)


def test_missing_file(tmp_path):
    with pytest.raises(ValidationError, match="cannot read"):
        parse_dataset(tmp_path / "absent.json")


def test_inverted_linear_literal_names_observation_and_field():
    doc = dataset_to_json(fixtures.table1())
    doc["observations"][4]["x"][0] = {"dist": "linear", "a": 3, "b": 2}
    with pytest.raises(ValidationError, match=r"observation 4: field 'x\[0\]'"):
        dataset_from_json(doc)


def test_point_literal_accepted():
    doc = {"predictors": 1, "observations": [{"y": {"dist": "point", "c": 7}, "x": [{"dist": "point", "c": 1}]}]}
    assert dataset_from_json(doc).observations[0].y == Point(7)


@pytest.mark.parametrize(
    "doc, fragment",
    [
        ([], "JSON object"),
        ({"predictors": -1, "observations": []}, "predictors"),
        ({"predictors": 1, "observations": []}, "no observations"),
        ({"predictors": 1, "observations": [{"y": {"dist": "point", "c": 1}}]}, "observation 0"),
        ({"predictors": 2, "observations": [{"y": {"dist": "point", "c": 1}, "x": [{"dist": "point", "c": 1}]}]}, "field 'x'"),
        ({"predictors": 0, "observations": [{"y": {"dist": "normal", "e": 0, "sigma": 0}, "x": []}]}, "field 'y'"),
    ],
)
def test_dataset_validation_errors(doc, fragment):
    with pytest.raises(ValidationError, match=fragment):
        dataset_from_json(doc)


def test_csv_import(tmp_path):
    path = tmp_path / "d.csv"
    path.write_text("y_a,y_b,x1_a,x1_b\n2,3,0,1\n23,24,7,8\n\n", encoding="utf-8")
    data = parse_dataset(path)
    assert data == Dataset.from_pairs([(Linear(2, 3), Linear(0, 1)), (Linear(23, 24), Linear(7, 8))])


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("a,b\n1,2\n", "header"),
        ("y_a,y_b,x2_a,x2_b\n1,2,3,4\n", "expected header"),
        ("y_a,y_b,x1_a,x1_b\n1,2,3\n", "line 2"),
        ("y_a,y_b,x1_a,x1_b\n1,2,3,x\n", "line 2"),
        ("y_a,y_b,x1_a,x1_b\n2,1,3,4\n", "observation 0: field 'y'"),
        ("", "empty"),
    ],
)
def test_csv_errors(tmp_path, text, fragment):
    path = tmp_path / "d.csv"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(ValidationError, match=fragment):
        parse_dataset(path)


def _record():
    return FitRecord(
        model="linear", predictors=1, loss="lad", beta=(2.25, 2.94), objective_value=17.5, converged=True,
        e_hat=0.0, sigma2_hat=2.0, quadrature={"scheme": "composite-midpoint", "nodes": 2001, "panels": None},
        optimizer={"starts": 16}, seed=42,
    )


def test_fit_record_round_trip():
    rec = _record()
    assert FitRecord.from_json(json.loads(rec.dumps())) == rec


@pytest.mark.parametrize(
    "mutate, fragment",
    [
        (lambda d: d.pop("beta"), "missing"),
        (lambda d: d.update(extra=1), "unknown"),
        (lambda d: d.update(beta=["a"]), "beta"),
    ],
)
def test_fit_record_validation(mutate, fragment):
    doc = _record().to_json()
    mutate(doc)
    with pytest.raises(ValidationError, match=fragment):
        FitRecord.from_json(doc)


def test_cli_fit_writes_fit_file(table1_file, tmp_path):
    out = tmp_path / "fit.json"
    code, text, _ = run("fit", "--data", table1_file, "--out", out)
    assert code == 0
    assert "beta1" in text and "converged: yes" in text
    rec = parse_fit(out)
    assert rec.model == "linear" and rec.loss == "lad" and rec.seed == 42


def test_cli_fit_to_stdout(table1_file):
    code, text, _ = run("fit", "--data", table1_file, "--loss", "ls", "--starts", "4")
    assert code == 0
    doc = json.loads(text[text.index("{"):])
    assert doc["loss"] == "ls" and doc["optimizer"]["starts"] == 4


def test_cli_fit_is_byte_identical_across_runs(table1_file, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run("fit", "--data", table1_file, "--seed", "7", "--out", a)[0] == 0
    assert run("fit", "--data", table1_file, "--seed", "7", "--out", b)[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_cli_fit_non_convergence_exit_code(table1_file, tmp_path):
    out = tmp_path / "fit.json"
    code, text, _ = run("fit", "--data", table1_file, "--max-iters", "2", "--starts", "2", "--out", out)
    assert code == 3
    assert parse_fit(out).converged is False


def test_cli_fit_empty_dataset(tmp_path):
    path = tmp_path / "empty.json"
    path.write_text('{"predictors": 1, "observations": []}', encoding="utf-8")
    code, _, err = run("fit", "--data", path)
    assert code == 2 and "no observations" in err


def test_cli_fit_bad_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{", encoding="utf-8")
    code, _, err = run("fit", "--data", path)
    assert code == 2 and "line 1" in err


def test_cli_fit_model_predictor_mismatch(tmp_path):
    data = Dataset(2, (Observation(Linear(0, 1), (Linear(0, 1), Linear(0, 1))),))
    path = tmp_path / "d.json"
    write_dataset(data, path)
    code, _, err = run("fit", "--data", path, "--model", "mm")
    assert code == 2 and "one predictor" in err


def test_cli_fit_nonlinear_models(tmp_path):
    data = Dataset.from_pairs([(Linear(x + 0.0, x + 1.0), Linear(x + 1.0, x + 2.0)) for x in range(6)])
    path = tmp_path / "d.json"
    write_dataset(data, path)
    for model in ("mm", "gompertz"):
        code, text, _ = run("fit", "--data", path, "--model", model, "--starts", "4", "--quad-nodes", "501")
        assert code in (0, 3), text
        assert json.loads(text[text.index("{"):])["model"] in ("michaelis_menten", "gompertz")


def test_cli_usage_errors(table1_file):
    assert run("fit", "--data", table1_file, "--loss", "huber")[0] == 2
    assert run("fit", "--data", table1_file, "--init-box", "1,2")[0] == 2
    assert run()[0] == 2


def test_cli_init_box_and_gauss(table1_file):
    code, text, _ = run(
        "fit", "--data", table1_file, "--init-box", "0:5,0:5", "--starts", "4",
        "--quad-scheme", "gauss", "--quad-nodes", "2000", "--quad-panels", "250",
    )
    assert code == 0
    doc = json.loads(text[text.index("{"):])
    assert doc["optimizer"]["init_box"] == [[0.0, 5.0], [0.0, 5.0]]
    assert doc["quadrature"] == {"scheme": "gauss-legendre-composite", "nodes": 2000, "panels": 250}


@pytest.fixture
def fit_file(table1_file, tmp_path):
    out = tmp_path / "fit.json"
    assert run("fit", "--data", table1_file, "--out", out)[0] == 0
    return out


def test_cli_predict(fit_file, tmp_path):
    out = tmp_path / "pred.json"
    code, text, _ = run("predict", "--fit", fit_file, "--x", LIN56, "--level", "0.9", "--out", out)
    assert code == 0 and "interval" in text
    doc = json.loads(out.read_text())
    assert doc["interval"] == [doc["mu"] - doc["b"], doc["mu"] + doc["b"]]
    rec = parse_fit(fit_file)
    assert doc["err_dist"] == {"dist": "normal", "e": rec.e_hat, "sigma": rec.sigma2_hat**0.5}


def test_cli_predict_point_inputs(fit_file):
    rec = parse_fit(fit_file)
    err = json.dumps({"dist": "point", "c": rec.e_hat})
    code, text, _ = run("predict", "--fit", fit_file, "--x", '{"dist":"point","c":2}', "--err-dist", err, "--level", "0.95")
    assert code == 0
    doc = json.loads(text[text.index("{"):])
    assert doc["b"] == 0.0
    assert doc["mu"] == pytest.approx(rec.beta[0] + 2 * rec.beta[1] + rec.e_hat, abs=1e-12)


@pytest.mark.parametrize("level", ["1.0", "0", "-1", "abc"])
def test_cli_predict_bad_level(fit_file, level):
    assert run("predict", "--fit", fit_file, "--x", LIN56, "--level", level)[0] == 2


def test_cli_predict_bad_literal(fit_file):
    assert run("predict", "--fit", fit_file, "--x", '{"dist":"linear","a":6,"b":5}')[0] == 2
    assert run("predict", "--fit", fit_file, "--x", "{")[0] == 2


def test_cli_predict_wrong_predictor_count(fit_file):
    code, _, err = run("predict", "--fit", fit_file, "--x", LIN56, "--x", LIN56)
    assert code == 2 and "predictor" in err


def test_cli_predict_unreachable_level(fit_file):
    code, _, err = run(
        "predict", "--fit", fit_file, "--x", LIN56, "--err-dist", '{"dist":"normal","e":0,"sigma":1e18}',
        "--level", "0.999999",
    )
    assert code == 2 and "not reached" in err


def test_cli_bench_paper(tmp_path):
    out = tmp_path / "bench.json"
    code, text, _ = run("bench-paper", "--out", out)
    assert code == 0
    doc = json.loads(out.read_text())
    cases = {c["case"] for c in doc["cells"]}
    assert {"table1", "table3/model1", "table4/model2-drop2,9", "table4/model3-drop3,10", "table4/model3-drop3,9"} <= cases
    assert doc["fit_failures"] == 0
    assert "cells differ" in text


def test_cli_bench_paper_marks_unconverged_fits():
    code, text, _ = run("bench-paper", "--max-iters", "2", "--starts", "1")
    assert code == 3
    assert "not converged" in text
