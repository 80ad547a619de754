import json
from fractions import Fraction

import pytest

from src.algebra.errors import InvalidInputError
from src.apolarity.cubics import seeded_cubic
from src.binary.sylvester import Z0, Z1
from src.cli.codecs import (
    decode_curve,
    decode_point,
    decode_polynomial,
    encode_curve,
    encode_point,
    encode_polynomial,
    load_json,
)
import src.cli.main as cli_main
from src.cli.main import run
from src.cli.reports import report_payload, timed, write_report
from src.curves.curve import RationalCurve, rnc
from src.loci.hypotheses import verify_ii1
from src.models.json_models import parse_rational


def write_json(path, payload):
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


def test_parse_rational_is_canonical():
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert parse_rational("0/1") == 0
    for bad in ("3/6", "3", "1/-2", "0/5", "-0/1", "1/0", " 1/2"):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_polynomial_codec():
    f = seeded_cubic(2)
    data = encode_polynomial(f.body)
    assert data["vars"] == 3
    assert decode_polynomial(data) == f.body
    with pytest.raises(InvalidInputError):
        decode_polynomial({"vars": 2, "terms": [{"exps": [1, 0], "coeff": "2/4"}]})
    with pytest.raises(InvalidInputError):
        decode_polynomial({"vars": 2, "terms": [{"exps": [1, 0], "coeff": "1/1"},
                                                {"exps": [1, 0], "coeff": "2/1"}]})
    with pytest.raises(InvalidInputError):
        decode_polynomial({"vars": 2, "terms": [{"exps": [1, 0, 0], "coeff": "1/1"}]})


def test_point_codec():
    assert decode_point(["1/1", "0/1", "0/1", "0/1"]) == [1, 0, 0, 0]
    assert encode_point([Fraction(1, 2), 0, -3]) == ["1/2", "0/1", "-3/1"]
    with pytest.raises(InvalidInputError):
        decode_point(["0/1", "0/1"])
    with pytest.raises(InvalidInputError):
        decode_point([1, 0])


def test_curve_codec():
    data = encode_curve(rnc(3))
    assert decode_curve(data) == rnc(3)
    data["degree"] = 4
    with pytest.raises(InvalidInputError):
        decode_curve(data)


def test_load_json_reports_byte_offsets():
    with pytest.raises(InvalidInputError, match="byte offset 11"):
        load_json(b'{"vars": 2,,}')
    with pytest.raises(InvalidInputError, match="byte offset 1"):
        load_json(b"[\xff]")


def test_malformed_json_exits_invalid(tmp_path, capsys):
    path = tmp_path / "form.json"
    path.write_bytes(b'{"vars": 2,,}')
    assert run(["rank-binary", "--form", str(path)]) == 2
    assert "byte offset 11" in capsys.readouterr().err


def test_unknown_command_exits_invalid():
    assert run(["rank-quartic"]) == 2


def test_rank_binary(tmp_path, capsys):
    path = write_json(tmp_path / "form.json", {"vars": 2, "terms": [{"exps": [3, 0], "coeff": "1/1"}]})
    assert run(["rank-binary", "--form", str(path)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["rank"] == 1
    assert out["certificate"]["kind"] == "decomposition"


def test_rank_cubic(tmp_path, capsys):
    path = write_json(tmp_path / "cubic.json", {"vars": 3, "terms": [
        {"exps": [3, 0, 0], "coeff": "1/1"}, {"exps": [0, 3, 0], "coeff": "1/1"}, {"exps": [0, 0, 3], "coeff": "1/1"},
    ]})
    assert run(["rank-cubic", "--form", str(path)]) == 0
    assert json.loads(capsys.readouterr().out) == {"rank": 3}


def test_rank_curve_point(tmp_path, capsys):
    curve = write_json(tmp_path / "curve.json", encode_curve(rnc(3)))
    point = write_json(tmp_path / "point.json", ["0/1", "1/1", "0/1", "0/1"])
    assert run(["rank-curve-point", "--curve", str(curve), "--point", str(point)]) == 0
    assert json.loads(capsys.readouterr().out)["rank"] == 3


def test_rank_curve_point_wrong_length(tmp_path):
    curve = write_json(tmp_path / "curve.json", encode_curve(rnc(3)))
    point = write_json(tmp_path / "point.json", ["1/1", "0/1"])
    assert run(["rank-curve-point", "--curve", str(curve), "--point", str(point)]) == 2


def test_verify_ii1(capsys):
    assert run(["verify", "ii1", "--d", "9", "--g", "1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["status"] == "verified"
    assert out["version"]
    assert run(["verify", "ii1", "--d", "4", "--g", "1"]) == 1


def test_verify_rejects_bad_rational():
    assert run(["verify", "ii0", "--d", "5", "--a2", "2/4", "--a3", "1"]) == 2


def test_write_report(tmp_path):
    out = tmp_path / "reports" / "suite.json"
    payload = write_report(out, [verify_ii1(9, 1), verify_ii1(4, 1)])
    written = json.loads(out.read_text(encoding="utf-8"))
    assert written == payload
    assert [r["status"] for r in written["reports"]] == ["verified", "refuted"]


@pytest.mark.slow
def test_report_command(tmp_path, capsys):
    out = tmp_path / "suite.json"
    code = run(["report", "--out", str(out)])
    assert code in (0, 3)
    written = json.loads(out.read_text(encoding="utf-8"))
    assert written["reports"][0]["claim"] == "quartic-ledger"
    assert json.loads(capsys.readouterr().out)["out"] == str(out)


def test_timings_stay_out_of_payload_by_default():
    report = timed(verify_ii1, 9, 1)
    assert report.timings["seconds"] >= 0
    assert "timings" not in report_payload(report)


def test_curve_in_a_hyperplane_is_rejected():
    data = encode_curve(RationalCurve.from_exprs([Z0 ** 3, Z1 ** 3, Z0 ** 3 + Z1 ** 3]))
    with pytest.raises(InvalidInputError, match="hyperplane"):
        decode_curve(data)


def test_unexpected_failure_exits_internal(tmp_path, monkeypatch, capsys):
    def broken(form, seed=None):
        raise RuntimeError("pivot lost")

    monkeypatch.setattr(cli_main, "sylvester_rank", broken)
    path = write_json(tmp_path / "form.json", {"vars": 2, "terms": [{"exps": [3, 0], "coeff": "1/1"}]})
    assert run(["rank-binary", "--form", str(path)]) == 4
    assert "pivot lost" in capsys.readouterr().err
