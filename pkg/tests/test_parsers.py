import pytest

from snark_toolkit.exceptions import FormatError, NotCubicError, SnarkToolkitError
from snark_toolkit.multipole.builders import k4, petersen, theta
from snark_toolkit.multipole.core import Dipole, Multipole
from snark_toolkit.multipole.isomorphism import are_isomorphic
from snark_toolkit.parsers.base import load_dipole, load_graph, load_plan
from snark_toolkit.parsers.graph6 import Graph6Parser, parse_graph6, validate_graph6, write_graph6
from snark_toolkit.parsers.multipole_doc import parse_multipole, write_multipole
from snark_toolkit.parsers.results import ResultDocumentParser, read_result, write_result
from snark_toolkit.superposition.construction import SuperpositionPlan, basic_plan, build_d_ps
from snark_toolkit.types import CheckResult, ResultDocument

PETERSEN_G6 = "IheA@GUAo"
K5_G6 = "D~{"


# ============================================================================
# graph6
# ============================================================================

def test_parse_petersen_graph6():
    g = parse_graph6(PETERSEN_G6)
    assert g.num_vertices == 10
    assert g.num_edges == 15
    assert g.is_cubic
    assert are_isomorphic(g.to_multipole(), petersen())
    assert write_graph6(g) == PETERSEN_G6
    assert write_graph6(g.to_multipole()) == PETERSEN_G6


def test_graph6_header_and_k4():
    g = parse_graph6(">>graph6<<C~")
    assert are_isomorphic(g.to_multipole(), k4())


def test_non_cubic_graph6_parses_and_fails_downstream(tmp_path):
    k5 = parse_graph6(K5_G6)
    assert (k5.num_vertices, k5.num_edges) == (5, 10)
    assert k5.degrees == (4,) * 5
    assert not k5.is_cubic
    assert write_graph6(k5) == K5_G6
    with pytest.raises(NotCubicError) as excinfo:
        k5.to_multipole()
    assert excinfo.value.details["degree"] == 4

    path = tmp_path / "mixed.g6"
    path.write_text(f"{K5_G6}\n{PETERSEN_G6}\n", encoding="utf-8")
    assert [g.is_cubic for g in Graph6Parser().read_file(path)] == [False, True]
    with pytest.raises(NotCubicError):
        load_graph(str(path))


def test_graph6_errors_carry_offsets():
    with pytest.raises(FormatError) as excinfo:
        validate_graph6(PETERSEN_G6[:7])
    assert excinfo.value.offset == 7

    with pytest.raises(FormatError) as excinfo:
        validate_graph6("I heA@GUA")
    assert excinfo.value.offset == 1

    with pytest.raises(FormatError):
        validate_graph6(PETERSEN_G6 + "?")
    with pytest.raises(FormatError):
        validate_graph6("")


def test_graph6_file_reports_line(tmp_path):
    path = tmp_path / "census.g6"
    path.write_text(f"{PETERSEN_G6}\nC~\nIheA\n", encoding="utf-8")
    with pytest.raises(FormatError) as excinfo:
        Graph6Parser().read_file(path)
    assert excinfo.value.line == 3

    path.write_text(f"{PETERSEN_G6}\n\nC~\n", encoding="utf-8")
    graphs = Graph6Parser().read_file(path)
    assert [g.num_vertices for g in graphs] == [10, 4]


def test_graph6_rejects_multigraphs():
    with pytest.raises(FormatError):
        write_graph6(theta())


# ============================================================================
# 多极子文档
# ============================================================================

def test_dipole_document_round_trip():
    d = build_d_ps()
    text = write_multipole(d)
    assert text.splitlines()[1] == "dipole in out"
    parsed = parse_multipole(text)
    assert isinstance(parsed, Dipole)
    assert parsed == d


def test_plan_document_round_trip():
    plan = basic_plan(theta())
    parsed = parse_multipole(write_multipole(plan))
    assert isinstance(parsed, SuperpositionPlan)
    assert parsed == plan
    assert parsed.expected_vertices() == 82


def test_document_with_comments():
    text = "# claw\nmultipole 1 3\nv 0\ne v0 d:c:0\ne v0 d:c:1\n\ne d:c:2 v0\n"
    m = parse_multipole(text)
    assert isinstance(m, Multipole)
    assert m.dangling_labels == ("c:0", "c:1", "c:2")


@pytest.mark.parametrize("text", [
    "",
    "multipole 1 3\nv 0\ne v0 d:c:0\ne v0 d:c:0\ne v0 d:c:1\n",
    "multipole 2 3\nv 1\nv 0\ne v0 v1\ne v0 v1\ne v0 v1\n",
    "multipole 2 3\nv 0\nv 1\ne v0 v1\ne v0 v1\ne v0 x1\n",
    "multipole 2 3\nv 0\nv 1\ne v0 v1\ne v0 v1\n",
    "multipole 1 3\ndipole a b\nv 0\ne v0 d:a:0\ne v0 d:a:1\ne v0 d:b:0\n",
    "multipole 1 3\ndipole a b\nv 0\ne v0 d:a:0\ne v0 d:b:0\ne v0 d:c:0\n",
    "multipole 2 3\nv 0\nv 1\ne v0 v1\ne v0 v1\ne v0 v1\nextra\n",
])
def test_malformed_documents(text):
    with pytest.raises(FormatError):
        parse_multipole(text)


def test_loaders(tmp_path):
    assert are_isomorphic(load_graph("petersen"), petersen())
    assert load_dipole("d_ps") == build_d_ps()
    assert load_plan("basic:theta").expected_vertices() == 82

    path = tmp_path / "d.mp"
    path.write_text(write_multipole(build_d_ps()), encoding="utf-8")
    assert load_dipole(str(path)) == build_d_ps()
    with pytest.raises(FormatError):
        load_graph(str(path))

    with pytest.raises(SnarkToolkitError):
        load_graph("no-such-graph")
    with pytest.raises(FileNotFoundError):
        load_dipole("no-such-dipole")


# ============================================================================
# 结果文档
# ============================================================================

def test_result_document_round_trip(tmp_path):
    document = ResultDocument(
        command="pmi",
        graph="petersen",
        verdict="exact",
        value="5",
        checks=[CheckResult(name="cover", passed=True, duration=0.5)],
        timing={"total_seconds": 1.25},
    )
    path = write_result(document, str(tmp_path / "out" / "r.json"))
    loaded = read_result(path)
    assert loaded == document
    assert loaded.canonical_json() == document.canonical_json()
    assert "duration" not in loaded.canonical_json()
    assert "timing" not in loaded.canonical_json()


def test_result_document_errors():
    parser = ResultDocumentParser()
    with pytest.raises(FormatError) as excinfo:
        parser.parse("{not json")
    assert excinfo.value.offset == 1
    with pytest.raises(FormatError):
        parser.parse('{"command": "pmi"}')
