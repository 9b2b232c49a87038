"""
Test cases for event declarations and their checks against the system
"""

import pytest
from pydantic import ValidationError

from src.abstraction.events import EventSpec, validate_event_spec
from src.errors import errors_only


def _spec(*producers: dict, events: list[str] | None = None) -> EventSpec:
    return EventSpec.model_validate({"events": events or ["e1", "e2"], "producers": list(producers)})


T3 = {"task": "t3", "segment": "s5", "emits": [{"event": "e1", "lb": 2, "rb": 4}]}
T1 = {"task": "t1", "segment": "s1", "emits": [{"event": "e2", "lb": 2, "rb": 3}]}


def test_bundled_specs_validate(rts, events1, events2, events3):
    """Test that the three example declarations are accepted as they are"""
    assert validate_event_spec(rts, events1) == []
    assert validate_event_spec(rts, events2) == []
    # t2 has three jobs: informative warning only
    found = validate_event_spec(rts, events3)
    assert errors_only(found) == []
    assert len(found) == 1


def test_producers_are_ordered_by_segment(rts, events3):
    assert [p.segment for p in events3.producers_of(rts.task("t2"))] == ["s2", "s4"]
    assert events3.producing_tasks() == ["t3", "t2"]
    assert events3.emitted() == {"e1", "e2", "e4"}


def test_negative_bounds_fail_the_schema():
    with pytest.raises(ValidationError):
        _spec({"task": "t3", "segment": "s5", "emits": [{"event": "e1", "lb": -1, "rb": 4}]})
    with pytest.raises(ValidationError):
        _spec({"task": "t3", "segment": "s5", "emits": []})


def test_cross_references_are_checked(rts):
    """Test unknown tasks, segments and events with their pointers"""
    unknown_segment = {"task": "t3", "segment": "s9", "emits": [{"event": "e1", "lb": 0, "rb": 1}]}
    assert [d.path for d in validate_event_spec(rts, _spec(unknown_segment, T1))] == ["/producers/0/segment"]

    unknown_task = {"task": "t9", "segment": "s5", "emits": [{"event": "e1", "lb": 0, "rb": 1}]}
    assert [d.path for d in validate_event_spec(rts, _spec(T1, unknown_task))] == ["/producers/1/task"]

    undeclared = {"task": "t3", "segment": "s5", "emits": [{"event": "e7", "lb": 0, "rb": 1}]}
    assert [d.path for d in validate_event_spec(rts, _spec(undeclared, T1))] == ["/producers/0/emits/0/event"]


def test_windows_must_fit_and_be_ordered(rts):
    too_late = {"task": "t3", "segment": "s5", "emits": [{"event": "e1", "lb": 2, "rb": 5}]}
    assert [d.path for d in validate_event_spec(rts, _spec(too_late, T1))] == ["/producers/0/emits/0/rb"]

    unordered = {
        "task": "t3",
        "segment": "s5",
        "emits": [{"event": "e1", "lb": 2, "rb": 4}, {"event": "e3", "lb": 0, "rb": 1}],
    }
    found = validate_event_spec(rts, _spec(unordered, T1, events=["e1", "e2", "e3"]))
    assert [d.path for d in found] == ["/producers/0/emits/1"]


def test_producers_must_sit_on_distinct_cores(rts):
    same_core = {"task": "t4", "segment": "s6", "emits": [{"event": "e2", "lb": 0, "rb": 1}]}
    messages = [d.message for d in validate_event_spec(rts, _spec(T3, same_core))]
    assert any("same core c2" in m for m in messages)
    assert any("at least two cores" in m for m in messages)


def test_segments_of_one_job_cannot_both_produce(rts):
    s2 = {"task": "t2", "segment": "s2", "emits": [{"event": "e2", "lb": 0, "rb": 1}]}
    s3 = {"task": "t2", "segment": "s3", "emits": [{"event": "e1", "lb": 0, "rb": 1}]}
    found = validate_event_spec(rts, _spec(s2, s3, T3, events=["e1", "e2"]))
    assert any("share a job" in d.message for d in errors_only(found))


def test_eventless_job_is_an_error_unless_forced(rts):
    """Test that a job of the producing task without any event aborts, and force downgrades it"""
    only_s2 = {"task": "t2", "segment": "s2", "emits": [{"event": "e2", "lb": 0, "rb": 3}]}
    spec = _spec(T3, only_s2)
    strict = errors_only(validate_event_spec(rts, spec))
    assert len(strict) == 2
    assert all("produces no event" in d.message for d in strict)
    assert errors_only(validate_event_spec(rts, spec, force=True)) == []
