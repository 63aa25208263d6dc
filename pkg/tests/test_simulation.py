from dataclasses import replace
from itertools import permutations

import pytest

from tmkit.core.diagnostics import Code, Severity
from tmkit.core.exceptions import (
    CyclicBehaviorError,
    CyclicEventError,
    StarvedFlowError,
    UnknownEventError,
)
from tmkit.core.model import build_model
from tmkit.core.types import Action, ActionKind, BehavioralModel, Event, Flow, Mode, Thimac, Trigger
from tmkit.events import derive_dependencies
from tmkit.export import to_json
from tmkit.monitoring import conservation_check
from tmkit.simulation import (
    FiringCause,
    Simulator,
    TokenOrigin,
    Trace,
    linearize,
    simulate,
    validate_chronology,
)
from tests.generate_data import generate_acyclic_model, generate_behavior, generate_model, generate_partition

CAR_EVENTS = tuple(f"E{i}" for i in range(1, 9))


def chain(name: str, event_ids) -> BehavioralModel:
    ids = tuple(event_ids)
    return BehavioralModel(name, ids, tuple(zip(ids, ids[1:])))


def one_machine(*actions: Action, flows=()):
    return build_model(thimacs=[Thimac("A", "A")], actions=actions, flows=flows)


# chronology


def test_car_chronology_is_consistent(car):
    deps = derive_dependencies(car.static, car.events)
    assert validate_chronology(car.behavior("drive"), deps) == []


def test_reversed_chain_violates_dependencies(car):
    deps = derive_dependencies(car.static, car.events)
    found = validate_chronology(chain("back", reversed(CAR_EVENTS)), deps)
    assert found
    assert {d.code for d in found} == {Code.DEP_VIOLATION}
    assert "E1->E2" in {d.subject for d in found}


def test_single_event_behavior(car):
    deps = derive_dependencies(car.static, car.events[:1])
    assert validate_chronology(BehavioralModel("one", ("E1",)), deps) == []


def test_cycle_is_reported_and_cannot_be_linearized(car):
    deps = derive_dependencies(car.static, car.events)
    loop = BehavioralModel("loop", ("E7", "E8"), (("E7", "E8"), ("E8", "E7")))
    found = validate_chronology(loop, deps)
    assert [(d.severity, d.code, d.subject) for d in found] == [(Severity.WARNING, Code.CYCLIC_BEHAVIOR, "loop")]
    with pytest.raises(CyclicBehaviorError):
        linearize(loop)


def test_unknown_event_in_chronology(car):
    deps = derive_dependencies(car.static, car.events)
    with pytest.raises(UnknownEventError):
        validate_chronology(BehavioralModel("b", ("E1", "E42")), deps)


def test_linearize_car(car):
    assert linearize(car.behavior("drive")) == list(CAR_EVENTS)


def test_linearize_breaks_ties_by_declaration_order():
    assert linearize(BehavioralModel("b", ("Ea", "Eb", "Ec"))) == ["Ea", "Eb", "Ec"]
    assert linearize(BehavioralModel("b", ("Ec", "Ea", "Eb"), (("Eb", "Ec"),))) == ["Ea", "Eb", "Ec"]


def test_linearize_returns_one_of_the_topological_orders(rng):
    for _ in range(300):
        n = int(rng.integers(1, 7))
        behavior = generate_behavior(rng, [f"E{i}" for i in range(n)])
        orders = {
            p for p in permutations(behavior.event_ids)
            if all(p.index(a) < p.index(b) for a, b in behavior.edges)
        }
        assert tuple(linearize(behavior)) in orders


def test_chronology_accepts_exactly_the_linear_extensions(rng):
    checked = 0
    while checked < 40:
        model = generate_model(rng, max_actions=10)
        events = generate_partition(rng, model, max_events=6)
        deps = derive_dependencies(model, events)
        if not deps.edges:
            continue
        checked += 1
        for order in permutations(deps.nodes):
            extension = all(order.index(a) < order.index(b) for a, b in deps.edges)
            found = validate_chronology(chain("p", order), deps)
            violated = any(d.code is Code.DEP_VIOLATION for d in found)
            assert violated is not extension


# simulation


def test_car_drive_trace(car):
    trace = simulate(car.static, car.events, car.behavior("drive"))
    assert trace.events_fired == CAR_EVENTS
    assert len(trace.firings) == 29
    assert trace.minted(TokenOrigin.EXTERNAL) == 3
    assert trace.minted(TokenOrigin.CREATED) == 4
    assert trace.minted(TokenOrigin.TRIGGERED) == 0
    assert trace.exits == ()
    assert trace.final_locations[7] == "process.Car:movement"
    assert trace.final_locations[1] == "process.Car.Engine:start_signal"
    tokens = {t.id: t for t in trace.tokens}
    assert tokens[7].birth_action == "create.Car:movement"
    assert tokens[7].history == ("process.Car:movement",)
    assert [r.format() for r in trace.firings[:3]] == [
        "fire E1 transfer.Car:start_request consumed=[] emitted=[1] via=supply",
        "fire E1 transfer.Car:start_request consumed=[] emitted=[]",
        "fire E1 receive.Car:start_request consumed=[1] emitted=[]",
    ]
    assert conservation_check(trace).passed


def test_trigger_into_create_enables_the_creation(car):
    trace = simulate(car.static, car.events, car.behavior("drive"))
    e2 = [r for r in trace.firings if r.event == "E2"]
    assert [(r.action, r.cause, r.consumed, r.emitted) for r in e2] == [
        ("process.Car.Engine:start_signal", FiringCause.FIRE, (1,), ()),
        ("create.Car.Engine:running", FiringCause.FIRE, (), (2,)),
    ]


def test_car_is_starved_in_strict_mode(car):
    with pytest.raises(StarvedFlowError) as excinfo:
        simulate(car.static, car.events, car.behavior("drive"), Mode.STRICT)
    assert (excinfo.value.subject, excinfo.value.event_id) == ("transfer.Car:start_request", "E1")


def test_vehicle_parts_exit_through_transfer(corpus):
    doc = corpus["vehicle"]
    trace = simulate(doc.static, doc.events, doc.behavior("dispatch"))
    assert trace.events_fired == ("E1", "E2", "E3", "E4")
    assert trace.exits == (2, 3, 4)
    assert trace.final_locations == {1: "process.Vehicle:order"}
    exits = [r for r in trace.firings if r.exited]
    assert [r.action for r in exits] == ["transfer.Vehicle.Air", "transfer.Vehicle.Land", "transfer.Vehicle.Water"]
    assert all(r.kind is ActionKind.TRANSFER for r in exits)


def test_fill_polygon_mints_a_triggered_token(corpus):
    doc = corpus["polygon_style"]
    trace = simulate(doc.static, doc.events, doc.behavior("fillPolygon"))
    origins = {t.id: t.origin for t in trace.tokens}
    assert origins == {1: TokenOrigin.EXTERNAL, 2: TokenOrigin.TRIGGERED, 3: TokenOrigin.CREATED}
    (triggered,) = [r for r in trace.firings if r.cause is FiringCause.TRIGGER]
    assert (triggered.event, triggered.action) == ("P2", "process.PolygonInstance.Point:value")
    assert trace.final_locations[3] == "process.Polygons:set"


def test_add_course_ends_in_the_degree_program(corpus):
    doc = corpus["degree_course"]
    trace = simulate(doc.static, doc.events, doc.behavior("addCourse"))
    assert trace.events_fired == tuple(f"D{i}" for i in range(1, 10))
    last = trace.firings[-1]
    assert (last.event, last.action, last.consumed) == ("D9", "process.DegreeProgram:updated", (8,))
    lookup = next(r for r in trace.firings if r.action == "process.AddCourse.A:lookup")
    assert lookup.consumed == (2, 3)
    assert trace.minted(TokenOrigin.EXTERNAL) == 2
    assert trace.minted(TokenOrigin.CREATED) == 6


def test_assembly_waits_for_all_parts(corpus):
    doc = corpus["assembly"]
    trace = simulate(doc.static, doc.events, doc.behavior("assemble"))
    assert trace.events_fired == ("A1", "A2", "A3", "A4", "A5")
    assert trace.exits == (4,)
    assert conservation_check(trace).passed


def test_delete_polygon_creates_a_new_set(corpus):
    doc = corpus["polygon_style"]
    trace = simulate(doc.static, doc.events, doc.behavior("deletePolygon"))
    assert trace.events_fired == ("D1", "D2", "D3", "D4")
    assert len(trace.firings) == 16
    origins = {t.id: t.origin for t in trace.tokens}
    assert origins == {1: TokenOrigin.EXTERNAL, 2: TokenOrigin.CREATED, 3: TokenOrigin.CREATED}
    assert trace.final_locations == {
        1: "process.Polygons:record",
        2: "create.PolygonInstance.Point:points",
        3: "create.Polygons:set",
    }
    request = next(t for t in trace.tokens if t.id == 1)
    assert request.history == ("process.PolygonInstance.Point:delete_signal", "process.Polygons:record")
    assert conservation_check(trace).passed


def test_car_construction_fills_every_attribute(corpus):
    doc = corpus["car_data"]
    deps = derive_dependencies(doc.static, doc.events)
    assert validate_chronology(doc.behavior("construct"), deps) == []
    trace = simulate(doc.static, doc.events, doc.behavior("construct"))
    assert trace.events_fired == ("C1", "C2", "C3", "C4", "C5")
    assert len(trace.firings) == 25
    assert trace.minted(TokenOrigin.EXTERNAL) == 1
    assert trace.minted(TokenOrigin.CREATED) == 4
    assert trace.exits == (5,)
    assert trace.final_locations == {
        1: "process.Car:tuple",
        2: "process.Car.Engine:serial_number",
        3: "process.Car.Transmission:transmission_type",
        4: "process.Car.FuelSystem:fuel_type",
    }
    (built,) = [r for r in trace.firings if r.action == "create.Car:object"]
    assert (built.event, built.emitted) == ("C5", (5,))
    assert conservation_check(trace).passed


def test_single_create():
    model = one_machine(Action("create.A", ActionKind.CREATE, "A"))
    trace = simulate(model, [Event("E", {"create.A"})], BehavioralModel("b", ("E",)))
    assert len(trace.firings) == 1
    assert [t.origin for t in trace.tokens] == [TokenOrigin.CREATED]


def test_create_without_enabled_trigger_mints_nothing(car):
    events = [Event("E7", {"create.Car:movement"})]
    trace = simulate(car.static, events, BehavioralModel("b", ("E7",)))
    assert trace.tokens == ()
    assert trace.firings[0].emitted == ()


def test_starved_flow_from_a_creation_is_supplied_at_its_target():
    model = one_machine(
        Action("create.A", ActionKind.CREATE, "A"),
        Action("process.A", ActionKind.PROCESS, "A"),
        flows=[Flow("create.A", "process.A")],
    )
    trace = simulate(model, [Event("E", {"process.A"})], BehavioralModel("b", ("E",)))
    (token,) = trace.tokens
    assert (token.origin, token.birth_action, token.history) == (TokenOrigin.EXTERNAL, "process.A", ("process.A",))
    assert [r.cause for r in trace.firings] == [FiringCause.SUPPLY, FiringCause.FIRE]


def test_empty_source_inside_the_event_is_skipped():
    model = build_model(
        thimacs=[Thimac("A", "A"), Thimac("B", "B")],
        actions=[
            Action("process.B", ActionKind.PROCESS, "B"),
            Action("create.A", ActionKind.CREATE, "A"),
            Action("process.A", ActionKind.PROCESS, "A"),
        ],
        flows=[Flow("create.A", "process.A")],
        triggers=[Trigger("process.B", "create.A")],
    )
    events = [Event("E", frozenset({"create.A", "process.A"}))]
    behavior = BehavioralModel("b", ("E",))
    trace = simulate(model, events, behavior)
    assert trace.tokens == ()
    assert [(r.action, r.consumed, r.emitted) for r in trace.firings] == [
        ("create.A", (), ()),
        ("process.A", (), ()),
    ]
    with pytest.raises(StarvedFlowError) as excinfo:
        simulate(model, events, behavior, Mode.STRICT)
    assert excinfo.value.subject == "create.A->process.A"


def relay_and_signal(a_first: bool):
    relay = [
        Action("receive.A", ActionKind.RECEIVE, "A"),
        Action("release.A", ActionKind.RELEASE, "A"),
    ]
    signal = [Action("process.B:sig", ActionKind.PROCESS, "B", "sig")]
    thimacs = [Thimac("A", "A"), Thimac("B", "B")]
    return build_model(
        thimacs=thimacs if a_first else thimacs[::-1],
        actions=relay + signal if a_first else signal + relay,
        flows=[Flow("receive.A", "release.A")],
        triggers=[Trigger("receive.A", "process.B:sig")],
    )


def test_trigger_outcome_does_not_depend_on_declaration_order():
    a_first, b_first = relay_and_signal(True), relay_and_signal(False)
    assert a_first == b_first
    events = [Event("E", {"receive.A", "release.A", "process.B:sig"})]
    behavior = BehavioralModel("b", ("E",))
    traces = [simulate(model, events, behavior) for model in (a_first, b_first)]
    for trace in traces:
        assert trace.minted(TokenOrigin.TRIGGERED) == 1
    first, second = traces
    assert sorted(r.format() for r in first.firings) == sorted(r.format() for r in second.firings)
    assert first.tokens == second.tokens
    assert first.final_locations == second.final_locations == {1: "release.A", 2: "process.B:sig"}


def test_trigger_reaches_across_events():
    events = [Event("E1", {"receive.A", "release.A"}), Event("E2", {"process.B:sig"})]
    for model in (relay_and_signal(True), relay_and_signal(False)):
        trace = simulate(model, events, chain("b", ["E1", "E2"]))
        (triggered,) = [r for r in trace.firings if r.cause is FiringCause.TRIGGER]
        assert (triggered.event, triggered.action, triggered.emitted) == ("E2", "process.B:sig", (2,))
        assert conservation_check(trace).passed


def test_trigger_needs_its_source_to_have_held_a_token():
    events = [Event("E1", {"release.A"}), Event("E2", {"process.B:sig"})]
    trace = simulate(relay_and_signal(True), events, chain("b", ["E1", "E2"]))
    assert trace.minted(TokenOrigin.TRIGGERED) == 0


def test_reversed_declarations_give_the_same_car_trace(car):
    static = car.static
    reversed_model = build_model(
        thimacs=static.thimacs[::-1],
        part_links=static.part_links[::-1],
        actions=static.actions[::-1],
        flows=static.flows[::-1],
        triggers=static.triggers[::-1],
    )
    behavior = car.behavior("drive")
    assert simulate(reversed_model, car.events, behavior) == simulate(static, car.events, behavior)


def test_cyclic_event():
    model = one_machine(
        Action("receive.A", ActionKind.RECEIVE, "A"),
        Action("process.A", ActionKind.PROCESS, "A"),
        flows=[Flow("receive.A", "process.A"), Flow("process.A", "receive.A")],
    )
    with pytest.raises(CyclicEventError) as excinfo:
        simulate(model, [Event("E", {"receive.A", "process.A"})], BehavioralModel("b", ("E",)))
    assert excinfo.value.code == "CYCLIC_EVENT"


def test_unknown_event_in_behavior(car):
    with pytest.raises(UnknownEventError):
        simulate(car.static, car.events, BehavioralModel("b", ("E1", "E99")))


def test_simulation_is_deterministic(corpus):
    for doc in corpus.values():
        for behavior in doc.behaviors:
            first = Simulator(doc.static).run(doc.events, behavior)
            second = Simulator(doc.static).run(doc.events, behavior)
            assert to_json(first) == to_json(second)


def test_corpus_traces_conserve_tokens(corpus):
    for doc in corpus.values():
        for behavior in doc.behaviors:
            report = conservation_check(simulate(doc.static, doc.events, behavior))
            assert report.passed, behavior.id


# conservation


def test_empty_trace_passes():
    report = conservation_check(Trace())
    assert report.passed
    assert (report.process_firings, report.exits, report.minted, report.resident) == (0, 0, 0, 0)


def test_corrupted_trace_fails_mint_accounting(corpus):
    doc = corpus["vehicle"]
    trace = simulate(doc.static, doc.events, doc.behavior("dispatch"))
    corrupted = replace(trace, final_locations={**trace.final_locations, 2: "transfer.Vehicle.Air"})
    report = conservation_check(corrupted)
    assert not report.mint_accounting
    assert not report.passed
    frame = report.to_frame()
    assert frame.set_index("check").loc["mint_accounting", "passed"] == "FAIL"


def test_exit_from_a_non_transfer_fails():
    model = one_machine(Action("create.A", ActionKind.CREATE, "A"))
    trace = simulate(model, [Event("E", {"create.A"})], BehavioralModel("b", ("E",)))
    record = replace(trace.firings[0], exited=(1,))
    report = conservation_check(replace(trace, firings=(record,), exits=(1,), final_locations={}))
    assert not report.exits_via_transfer


def test_random_traces_conserve_tokens(rng):
    for _ in range(1000):
        model = generate_acyclic_model(rng, max_actions=10)
        events = generate_partition(rng, model)
        behavior = generate_behavior(rng, [e.id for e in events])
        trace = simulate(model, events, behavior)

        report = conservation_check(trace)
        assert report.passed

        tally = {origin: 0 for origin in TokenOrigin}
        for r in trace.firings:
            if r.cause is FiringCause.SUPPLY:
                tally[TokenOrigin.EXTERNAL] += len(r.emitted)
            elif r.cause is FiringCause.TRIGGER:
                tally[TokenOrigin.TRIGGERED] += len(r.emitted)
            elif r.kind is ActionKind.CREATE:
                tally[TokenOrigin.CREATED] += len(r.emitted)
            else:
                assert r.emitted == ()
        assert all(trace.minted(origin) == n for origin, n in tally.items())
        assert len(trace.final_locations) + len(trace.exits) == len(trace.tokens)

        for token in trace.tokens:
            born_at_create = model.action_index[token.birth_action].kind is ActionKind.CREATE
            assert (token.origin is TokenOrigin.CREATED) == born_at_create


def test_strict_runs_never_supply(rng):
    for _ in range(300):
        model = generate_acyclic_model(rng, max_actions=8)
        events = generate_partition(rng, model)
        behavior = generate_behavior(rng, [e.id for e in events])
        try:
            trace = simulate(model, events, behavior, Mode.STRICT)
        except StarvedFlowError:
            continue
        assert all(r.cause is not FiringCause.SUPPLY for r in trace.firings)
