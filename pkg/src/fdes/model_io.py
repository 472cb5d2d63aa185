"""JSON document schemas: models, languages, attribute maps, supervisors.

All degrees serialize as exact decimal strings (or "p/q" when no finite
decimal exists) and parse back to identical rationals, so documents
round-trip bit-exactly.  Every document carries `schema_version: "1"`.
"""

from __future__ import annotations

import json
from typing import Dict, Optional, Tuple

from .algebra import Semantics, format_degree, parse_degree
from .automaton import FuzzyAutomaton, string_from_text
from .errors import ParseError, ShapeError
from .language import FiniteSupportFuzzyLanguage
from .supervisory import (
    EventAttributes,
    ExplicitSupervisor,
    Supervisor,
    SynthesizedSupervisor,
)

SCHEMA_VERSION = "1"


def load_document(path: str) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except FileNotFoundError:
        raise ParseError(f"{path}: no such file") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top level must be an object")
    return doc


def save_document(doc: dict, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def detect_kind(doc: dict) -> str:
    kind = doc.get("kind")
    if kind:
        return kind
    if "states" in doc:
        return "model"
    if "degrees" in doc:
        return "language"
    if "mode" in doc:
        return "supervisor"
    if "uncontrollability" in doc:
        return "attributes"
    raise ParseError("cannot tell what kind of document this is (no recognizable fields)")


def _field(doc: dict, name: str, where: str):
    if name not in doc:
        raise ParseError(f"{where}: missing field {name!r}")
    return doc[name]


# ---------------------------------------------------------------------------
# models


def parse_model_doc(doc: dict, where: str = "model") -> Tuple[FuzzyAutomaton, Optional[EventAttributes]]:
    states = _field(doc, "states", where)
    if not isinstance(states, list) or not states:
        raise ParseError(f"{where}: 'states' must be a non-empty list of names")
    n = len(states)
    semantics = Semantics(_field(doc, "semantics", where))
    initial = _field(doc, "initial", where)
    if len(initial) != n:
        raise ShapeError(f"{where}: initial has {len(initial)} entries for {n} states")
    events_doc = _field(doc, "events", where)
    if not isinstance(events_doc, dict):
        raise ParseError(f"{where}: 'events' must be an object of name → grid")
    events: Dict[str, list] = {}
    for name, grid in events_doc.items():
        if len(grid) != n or any(len(row) != n for row in grid):
            raise ShapeError(f"{where}: event {name!r} grid is not {n}×{n}")
        events[name] = grid
    marked = doc.get("marked", [])
    for i, v in enumerate(marked):
        if len(v) != n:
            raise ShapeError(f"{where}: marked[{i}] has {len(v)} entries for {n} states")
    g = FuzzyAutomaton(
        state_labels=tuple(states),
        events=events,
        initial=initial,
        marked=tuple(tuple(v) for v in marked),
        semantics=semantics,
    )
    attrs = None
    if "uncontrollability" in doc:
        attrs = EventAttributes({e: d for e, d in doc["uncontrollability"].items()})
        attrs.require_alphabet(g.alphabet)
    return g, attrs


def parse_model(path: str) -> Tuple[FuzzyAutomaton, Optional[EventAttributes]]:
    return parse_model_doc(load_document(path), where=path)


def model_to_doc(g: FuzzyAutomaton, attrs: Optional[EventAttributes] = None) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "model",
        "semantics": g.semantics.value,
        "states": list(g.state_labels),
        "initial": [format_degree(d) for d in g.initial],
        "events": {
            name: [[format_degree(d) for d in row] for row in m]
            for name, m in g.events.items()
        },
    }
    if g.marked:
        doc["marked"] = [[format_degree(d) for d in v] for v in g.marked]
    if attrs is not None:
        doc["uncontrollability"] = {
            e: format_degree(d) for e, d in attrs.uncontrollability.items()
        }
    return doc


# ---------------------------------------------------------------------------
# languages


def parse_language_doc(doc: dict, where: str = "language") -> FiniteSupportFuzzyLanguage:
    alphabet = _field(doc, "alphabet", where)
    degrees = _field(doc, "degrees", where)
    if not isinstance(degrees, dict):
        raise ParseError(f"{where}: 'degrees' must map strings to degrees")
    return FiniteSupportFuzzyLanguage(
        tuple(alphabet),
        {string_from_text(text): parse_degree(d) for text, d in degrees.items()},
    )


def parse_language(path: str) -> FiniteSupportFuzzyLanguage:
    return parse_language_doc(load_document(path), where=path)


def language_to_doc(l: FiniteSupportFuzzyLanguage) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "language",
        "alphabet": list(l.alphabet),
        "degrees": {
            " ".join(s): format_degree(d)
            for s, d in sorted(l.degrees.items(), key=lambda kv: (len(kv[0]), kv[0]))
        },
    }


# ---------------------------------------------------------------------------
# attribute maps


def parse_attributes_doc(doc: dict, where: str = "attributes") -> EventAttributes:
    return EventAttributes(dict(_field(doc, "uncontrollability", where)))


def parse_attributes(path: str) -> EventAttributes:
    return parse_attributes_doc(load_document(path), where=path)


def attributes_to_doc(attrs: EventAttributes) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "attributes",
        "uncontrollability": {e: format_degree(d) for e, d in attrs.uncontrollability.items()},
    }


# ---------------------------------------------------------------------------
# supervisors


def supervisor_to_doc(sup: Supervisor) -> dict:
    if isinstance(sup, SynthesizedSupervisor):
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "supervisor",
            "mode": "synthesized",
            "check_passed": sup.check_passed,
            "plant": model_to_doc(sup.plant),
            "attributes": attributes_to_doc(sup.attrs),
            "spec_automaton": model_to_doc(sup.spec_automaton) if sup.spec_automaton else None,
            "spec_language": language_to_doc(sup.spec_language) if sup.spec_language else None,
            "enablement_rows": [
                {
                    "s": " ".join(s),
                    "degrees": {e: format_degree(d) for e, d in row.items()},
                }
                for s, row in sup.rows()
            ],
        }
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "supervisor",
        "mode": "explicit",
        "alphabet": list(sup.alphabet),
        "default": format_degree(sup.default),
        "table": {
            " ".join(s): {e: format_degree(d) for e, d in row.items()}
            for s, row in sorted(sup.table.items(), key=lambda kv: (len(kv[0]), kv[0]))
        },
    }


def parse_supervisor_doc(doc: dict, where: str = "supervisor") -> Supervisor:
    mode = _field(doc, "mode", where)
    if mode == "synthesized":
        plant, _ = parse_model_doc(_field(doc, "plant", where), where=f"{where}.plant")
        attrs = parse_attributes_doc(_field(doc, "attributes", where), where=f"{where}.attributes")
        spec_a = doc.get("spec_automaton")
        spec_l = doc.get("spec_language")
        return SynthesizedSupervisor(
            plant,
            attrs,
            spec_automaton=parse_model_doc(spec_a, where=f"{where}.spec_automaton")[0] if spec_a else None,
            spec_language=parse_language_doc(spec_l, where=f"{where}.spec_language") if spec_l else None,
            check_passed=doc.get("check_passed"),
        )
    if mode == "explicit":
        return ExplicitSupervisor(
            alphabet=tuple(_field(doc, "alphabet", where)),
            table={
                string_from_text(text): dict(row)
                for text, row in _field(doc, "table", where).items()
            },
            default=doc.get("default", "0"),
        )
    raise ParseError(f"{where}: unknown supervisor mode {mode!r}")


def parse_supervisor(path: str) -> Supervisor:
    return parse_supervisor_doc(load_document(path), where=path)
