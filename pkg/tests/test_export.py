import ast
import json
from pathlib import Path

import pytest

import tmkit
from tmkit.core.exceptions import DeserializationError
from tmkit.core.types import ModelDocument
from tmkit.export import document_to_dict, from_json, to_dot_behavior, to_dot_static, to_json, trace_to_dict
from tmkit.parser import parse, round_trip
from tmkit.simulation import simulate
from tests.conftest import CORPUS
from tests.generate_data import generate_document

EMPTY_JSON = (
    '{"actions":[],"behaviors":[],"events":[],"flows":[],"part_links":[],'
    '"thimacs":[],"tmkit_version":1,"triggers":[]}'
)


def deserialization_error(payload) -> DeserializationError:
    text = payload if isinstance(payload, (str, bytes)) else json.dumps(payload)
    with pytest.raises(DeserializationError) as excinfo:
        from_json(text)
    return excinfo.value


def small_document() -> dict:
    return document_to_dict(parse("thimac A { machine { create; process; } }\nflow create.A -> process.A;"))


def test_empty_document_json():
    assert to_json(ModelDocument()) == EMPTY_JSON
    assert from_json(EMPTY_JSON) == ModelDocument()


def test_json_is_canonical(car):
    text = to_json(car)
    assert "\n" not in text
    payload = json.loads(text)
    assert list(payload) == sorted(payload)
    assert [a["id"] for a in payload["actions"]] == sorted(a["id"] for a in payload["actions"])
    assert to_json(from_json(text)) == text


@pytest.mark.parametrize("name", CORPUS)
def test_corpus_json_round_trip(corpus, name):
    doc = corpus[name]
    assert from_json(to_json(doc)) == doc


def test_json_round_trip_of_random_documents(rng):
    for _ in range(500):
        doc = generate_document(rng)
        text = to_json(doc)
        assert from_json(text) == doc
        assert from_json(text.encode("utf-8")) == doc


def test_trace_round_trip(corpus):
    for name in ("car", "vehicle", "polygon_style"):
        doc = corpus[name]
        for behavior in doc.behaviors:
            trace = simulate(doc.static, doc.events, behavior)
            again = from_json(to_json(trace))
            assert again == trace
            assert trace_to_dict(again)["final_locations"] == trace_to_dict(trace)["final_locations"]


@pytest.mark.parametrize("text", ['{"thimacs": [', "{}x", b"\xff{}", ""])
def test_unreadable_input_is_malformed(text):
    assert deserialization_error(text).code == "MALFORMED_JSON"


def test_package_imports_only_declared_dependencies():
    imported = set()
    for path in Path(tmkit.__file__).parent.rglob("*.py"):
        for node in ast.walk(ast.parse(path.read_text(encoding="utf-8"))):
            if isinstance(node, ast.Import):
                imported.update(alias.name.split(".")[0] for alias in node.names)
            elif isinstance(node, ast.ImportFrom) and node.level == 0 and node.module:
                imported.add(node.module.split(".")[0])
    assert {"lark", "networkx", "pydantic", "rfc8785", "click", "pandas"} <= imported
    assert not imported & {"numpy", "pydantic_core"}


def test_top_level_must_be_an_object():
    err = deserialization_error("[]")
    assert (err.code, err.path) == ("SCHEMA_VIOLATION", "")


def test_missing_array_is_reported_at_its_key():
    payload = small_document()
    del payload["flows"]
    err = deserialization_error(payload)
    assert (err.code, err.path) == ("SCHEMA_VIOLATION", "/flows")


def test_unknown_key_is_rejected():
    payload = small_document()
    payload["extras"] = []
    assert deserialization_error(payload).path == "/extras"


def test_wrong_version_is_rejected():
    payload = small_document()
    payload["tmkit_version"] = 2
    assert deserialization_error(payload).path == "/tmkit_version"


def test_wrong_type_points_at_the_field():
    payload = small_document()
    payload["thimacs"][0]["declared_oo"] = "yes"
    assert deserialization_error(payload).path == "/thimacs/0/declared_oo"
    payload = small_document()
    payload["actions"][1]["kind"] = "destroy"
    assert deserialization_error(payload).path == "/actions/1/kind"


def test_dangling_owner_points_at_the_action():
    payload = small_document()
    payload["actions"][1]["owner"] = "Ghost"
    err = deserialization_error(payload)
    assert err.code == "SCHEMA_VIOLATION"
    assert err.path == "/actions/1"
    assert "DANGLING_REFERENCE" in str(err)


def test_event_with_unknown_action():
    payload = small_document()
    payload["events"] = [{"id": "E", "name": "E", "action_ids": ["create.A", "create.B"], "time_label": ""}]
    assert deserialization_error(payload).path == "/events/0/action_ids/1"


def test_behavior_edge_outside_its_events():
    payload = small_document()
    payload["events"] = [{"id": "E", "name": "E", "action_ids": ["create.A"], "time_label": ""}]
    payload["behaviors"] = [{"id": "b", "event_ids": ["E"], "edges": [["E", "F"]]}]
    assert deserialization_error(payload).path == "/behaviors/0/edges/0"


def test_trace_with_bad_token_id(corpus):
    doc = corpus["vehicle"]
    payload = trace_to_dict(simulate(doc.static, doc.events, doc.behavior("dispatch")))
    payload["tokens"][0]["id"] = "1"
    assert deserialization_error(payload).path == "/tokens/0/id"


def test_static_dot_of_car(car):
    text = to_dot_static(car.static).text
    assert text.startswith("digraph tm {\n")
    assert text.endswith("}\n")
    assert text.count("subgraph ") == 4
    assert text.count("[style=dashed]") == 6
    assert text.count(" -> ") == 19 + 6
    assert '"cluster_Car.Engine"' in text
    assert text.index('"cluster_Car"') < text.index('"cluster_Car.Engine"')


def test_static_dot_draws_shared_links(corpus):
    text = to_dot_static(corpus["polygon_style"].static).text
    assert text.count("dir=none") == 2
    assert '"anchor:PolygonInstance" -> "anchor:Style"' in text


def test_static_dot_survives_a_round_trip(corpus):
    for doc in corpus.values():
        assert to_dot_static(doc.static).text == to_dot_static(parse(round_trip(doc)).static).text


def test_behavior_dot(car):
    text = str(to_dot_behavior(car.behavior("drive")))
    assert text.splitlines()[0] == 'digraph "drive" {'
    assert text.count(" -> ") == 7
    assert sum(1 for line in text.splitlines() if line.strip().startswith('"E') and "->" not in line) == 8


def test_empty_model_dot():
    assert to_dot_static(ModelDocument().static).text == "digraph tm {\n  compound=true;\n}\n"
