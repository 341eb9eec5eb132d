import io
from pathlib import Path

import pytest

from veronese import betti_table
from veronese.cli import UsageError, formula_table, parse_document, run

DOCUMENTS = sorted((Path(__file__).parent / "documents").glob("*.json"))


@pytest.mark.parametrize("path", DOCUMENTS, ids=lambda p: p.stem)
def test_round_trip(path):
    doc = parse_document(path)
    assert parse_document(doc.dumps()) == doc


@pytest.mark.parametrize("path", DOCUMENTS, ids=lambda p: p.stem)
def test_formula_agrees_with_oracle_when_applicable(path):
    doc = parse_document(path)
    try:
        closed = formula_table(doc)
    except UsageError:
        pytest.skip("no closed form for this document")
    assert closed == betti_table(doc.ideal())


@pytest.mark.parametrize("path", DOCUMENTS, ids=lambda p: p.stem)
def test_json_report_is_byte_stable(path):
    outputs = set()
    for _ in range(2):
        out = io.StringIO()
        run(["betti", "--json", str(path)], stdout=out, stderr=io.StringIO())
        outputs.add(out.getvalue())
    assert len(outputs) == 1


def test_some_documents_have_closed_forms():
    def applicable(p):
        try:
            formula_table(parse_document(p))
            return True
        except UsageError:
            return False

    assert sum(map(applicable, DOCUMENTS)) >= 6
