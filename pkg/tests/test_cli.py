import io
import json

import pytest

from veronese import DocumentError
from veronese.cli import parse_document, run

EXAMPLE = {"ring": {"blocks": [5]}, "veronese": [
    {"support": [1, 2, 3], "power": 1}, {"support": [1, 4, 5], "power": 1}, {"support": [2, 3, 5], "power": 1}]}
NOT_POLY = {"ring": {"blocks": [5]}, "veronese": [
    {"support": [1, 2, 3], "power": 2}, {"support": [2, 3, 5], "power": 2}]}
GENERAL = {"ring": {"blocks": [4]}, "veronese": [
    {"support": [1, 2, 3], "power": 2}, {"support": [2, 3, 4], "power": 1}]}
FAT = {"ring": {"blocks": [2, 2]}, "fatpoints": {"mults": [2, 1]}}
COMPLEX = {"ring": {"blocks": [6]}, "complex": {"nonfaces": [[1, 4, 5], [1, 2, 6], [1, 3, 5]]}}
CI = {"ring": {"blocks": [4]}, "generators": ["x1*x3", [0, 1, 0, 1]]}


def call(tmp_path, doc, *argv):
    path = tmp_path / "doc.json"
    path.write_text(json.dumps(doc))
    out, err = io.StringIO(), io.StringIO()
    code = run([argv[0], str(path), *argv[1:]], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def call_json(tmp_path, doc, *argv):
    code, out, err = call(tmp_path, doc, *argv, "--json")
    return code, json.loads(out) if out else None, err


class TestDocuments:
    def test_parse_veronese(self):
        doc = parse_document(json.dumps(EXAMPLE))
        assert doc.kind == "veronese" and doc.ring.n == 5
        assert len(doc.ideal().gens) == 7

    def test_parse_fatpoints(self):
        doc = parse_document(FAT)
        assert doc.ring.blocks == (2, 2) and doc.payload == (2, 1)

    @pytest.mark.parametrize("doc", [EXAMPLE, FAT, COMPLEX, CI, GENERAL,
                                     {"ring": {"blocks": [2], "names": ["a", "b"]}, "generators": ["a*b^2"]}])
    def test_round_trip(self, doc):
        parsed = parse_document(doc)
        assert parse_document(parsed.dumps()) == parsed

    @pytest.mark.parametrize("doc, field", [
        ({"ring": {"blocks": [3]}, "veronese": [{"support": [0], "power": 1}]}, "veronese[0].support[0]"),
        ({"ring": {"blocks": [3]}, "veronese": [{"support": [1], "power": 0}]}, "veronese[0].power"),
        ({"ring": {"blocks": [3]}, "generators": [[1, 2]]}, "generators[0]"),
        ({"ring": {"blocks": [3]}, "generators": ["y1"]}, "generators[0]"),
        ({"ring": {"blocks": [0]}, "generators": []}, "ring.blocks"),
        ({"ring": {"blocks": [2, 2]}, "fatpoints": {"mults": [1, 1, 1]}}, "fatpoints.mults"),
        ({"ring": {"blocks": [3]}, "complex": {"nonfaces": [[1], [1, 2]]}}, "complex.nonfaces"),
    ])
    def test_validation_names_the_field(self, doc, field):
        with pytest.raises(DocumentError) as exc:
            parse_document(doc)
        assert exc.value.field == field

    def test_payload_count(self):
        with pytest.raises(DocumentError):
            parse_document({"ring": {"blocks": [2]}})
        with pytest.raises(DocumentError):
            parse_document({"ring": {"blocks": [2]}, "generators": [], "fatpoints": {"mults": [1]}})

    def test_json_errors_report_position(self):
        with pytest.raises(DocumentError, match="line 2"):
            parse_document('{"ring":\n  {"blocks": [2],}}')


class TestCommands:
    def test_cwl(self, tmp_path):
        code, data, _ = call_json(tmp_path, EXAMPLE, "cwl")
        assert code == 0 and data["verdict"] is True
        code, data, _ = call_json(tmp_path, CI, "cwl")
        assert code == 1 and data["failing_degree"] == 2

    def test_polymatroidal_degree(self, tmp_path):
        code, data, _ = call_json(tmp_path, NOT_POLY, "polymatroidal", "--degree", "3")
        assert code == 1
        witness = data["components"][0]["witness"]
        assert witness["i"] in (2, 3) and witness["rejected"]

    def test_polymatroidal_all(self, tmp_path):
        covering = {"ring": {"blocks": [4]}, "veronese": [
            {"support": [1, 2, 3], "power": 2}, {"support": [2, 3, 4], "power": 1}, {"support": [1, 3, 4], "power": 1}]}
        code, data, _ = call_json(tmp_path, covering, "polymatroidal", "--all")
        assert code == 0 and data["components"][0]["degree"] == 2
        assert all(c["verdict"] for c in data["components"])

    def test_formula_and_oracle_agree(self, tmp_path):
        for doc in (GENERAL, FAT, {"ring": {"blocks": [3]}, "veronese": [{"support": [1, 2], "power": 3}]}):
            _, formula, _ = call_json(tmp_path, doc, "betti", "--formula")
            _, oracle, _ = call_json(tmp_path, doc, "betti", "--oracle")
            assert formula["table"] == oracle["table"]
            assert (formula["source"], oracle["source"]) == ("formula", "oracle")

    def test_formula_not_available(self, tmp_path):
        code, _, err = call(tmp_path, EXAMPLE, "betti", "--formula")
        assert code == 2 and "no closed form" in err

    def test_fine_and_block_tables(self, tmp_path):
        _, data, _ = call_json(tmp_path, CI, "betti", "--grading", "fine")
        assert data["table"]["entries"][-1] == [1, [1, 1, 1, 1], 1]
        _, data, _ = call_json(tmp_path, FAT, "betti", "--grading", "block")
        assert data["table"]["grading"] == "block"

    def test_field_flag_and_environment(self, tmp_path, monkeypatch):
        code, data, _ = call_json(tmp_path, CI, "betti", "--field", "0")
        assert code == 0
        monkeypatch.setenv("VERONESE_FIELD", "2")
        assert call_json(tmp_path, CI, "betti")[1] == data
        monkeypatch.setenv("VERONESE_FIELD", "9")
        assert call(tmp_path, CI, "betti")[0] == 2
        assert call(tmp_path, CI, "betti", "--field", "4")[0] == 2

    def test_linear_quotients(self, tmp_path):
        code, data, _ = call_json(tmp_path, EXAMPLE, "linear-quotients")
        assert code == 0 and data["status"] == "found" and len(data["order"]) == 7
        code, data, _ = call_json(tmp_path, CI, "linear-quotients")
        assert code == 1 and data["status"] == "none"

    def test_split(self, tmp_path):
        code, data, _ = call_json(tmp_path, GENERAL, "split")
        assert code == 0 and data["case"] == "general" and data["V"] == ["x1^2*x4"]
        assert call(tmp_path, EXAMPLE, "split")[0] == 2

    def test_dual_seqcm_mult_bound_hilbert(self, tmp_path):
        _, data, _ = call_json(tmp_path, COMPLEX, "dual")
        assert data["generators"][0] == "x1"
        assert call_json(tmp_path, COMPLEX, "seqcm")[1]["verdict"] is True
        code, data, _ = call_json(tmp_path, CI, "mult-bound")
        assert code == 0 and (data["e"], data["bound"]) == (4, "4/1")
        _, data, _ = call_json(tmp_path, CI, "hilbert")
        assert data == {"command": "hilbert", "numerator": [1, 0, -2, 0, 1], "codim": 2, "multiplicity": 4}

    def test_text_output_and_build(self, tmp_path):
        code, out, _ = call(tmp_path, CI, "build")
        assert code == 0 and out.split() == ["x1*x3", "x2*x4"]
        code, out, _ = call(tmp_path, GENERAL, "betti")
        assert out.splitlines()[1].split() == ["2:", "5", "6", "2"]

    def test_output_is_deterministic(self, tmp_path):
        runs = {call(tmp_path, GENERAL, "betti", "--json")[1] for _ in range(3)}
        assert len(runs) == 1

    def test_errors(self, tmp_path):
        out, err = io.StringIO(), io.StringIO()
        assert run(["cwl", str(tmp_path / "missing.json")], stdout=out, stderr=err) == 2
        assert run(["frobnicate", "x"], stdout=out, stderr=err) == 2
        bad = {"ring": {"blocks": [3]}, "veronese": [{"support": [0], "power": 1}]}
        code, _, err_text = call(tmp_path, bad, "build")
        assert code == 2 and "index 0" in err_text

    def test_stdin(self, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(CI)))
        out = io.StringIO()
        assert run(["build", "-"], stdout=out, stderr=io.StringIO()) == 0
        assert out.getvalue().split() == ["x1*x3", "x2*x4"]
