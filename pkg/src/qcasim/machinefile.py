"""Canonical JSON serialization of machine definitions.

A machine file fixes one ordering so that load followed by dump is
byte-identical: object keys sort lexicographically, transition keys are the
composite "state|symbol[|status]" (plus "|outcome" in the classical table),
and operation elements sort by outcome label then matrix text.  Rationals are
serialized as "num/den" strings with integers kept bare.
"""

from __future__ import annotations

import json
from typing import Any

from .exact import format_rat, parse_rat
from .machine import (
    ClassicalAction,
    KINDS,
    MOVE_LEFT,
    MOVE_RIGHT,
    MOVE_STAY,
    MachineSpec,
)
from .superop import Superoperator

_MOVES = (MOVE_LEFT, MOVE_STAY, MOVE_RIGHT)
_ROLE_INITIAL = "initial"
_ROLE_ACCEPT = "accept"
_ROLE_REJECT = "reject"
_ROLE_NORMAL = "normal"


class MachineFileError(ValueError):
    """The machine file is structurally invalid."""


def _join_key(parts: tuple[str, ...]) -> str:
    for part in parts:
        if "|" in part:
            raise MachineFileError(f"name {part!r} may not contain '|'")
    return "|".join(parts)


def _q_key(key: tuple[str, str, str | None]) -> str:
    state, symbol, theta = key
    parts = (state, symbol) if theta is None else (state, symbol, theta)
    return _join_key(parts)


def _matrix_to_json(matrix) -> list[list[str]]:
    return [[format_rat(x) for x in row] for row in matrix]


def _matrix_from_json(rows: list[list[str]]):
    return tuple(tuple(parse_rat(str(x)) for x in row) for row in rows)


def dumps_spec(spec: MachineSpec) -> str:
    """Serialize a machine to its canonical JSON text (ends with a newline)."""
    states: dict[str, str] = {}
    for s in spec.states:
        if s == spec.initial_state:
            states[s] = _ROLE_INITIAL
        elif s == spec.accept_state:
            states[s] = _ROLE_ACCEPT
        elif s == spec.reject_state:
            states[s] = _ROLE_REJECT
        else:
            states[s] = _ROLE_NORMAL
    delta_q: dict[str, Any] = {}
    for key, op in spec.delta_q.items():
        elements = [
            {"matrix": _matrix_to_json(matrix), "outcome": label}
            for label, matrix in op.elements
        ]
        elements.sort(key=lambda e: (e["outcome"], e["matrix"]))
        delta_q[_q_key(key)] = elements
    delta_c: dict[str, Any] = {}
    for (state, symbol, theta, outcome), action in spec.delta_c.items():
        key = _join_key(
            (state, symbol, outcome) if theta is None else (state, symbol, theta, outcome)
        )
        delta_c[key] = {
            "counter": action.counter_delta,
            "move": action.move,
            "next": action.next_state,
            "restart": action.restart,
        }
    doc = {
        "alphabet": sorted(spec.alphabet),
        "delta_c": delta_c,
        "delta_q": delta_q,
        "initial_quantum": spec.quantum_basis[spec.initial_basis] if spec.uses_quantum else None,
        "kind": spec.kind,
        "name": spec.name,
        "quantum_basis": list(spec.quantum_basis),
        "states": states,
    }
    return json.dumps(doc, ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def loads_spec(text: str) -> MachineSpec:
    """Parse a machine file; structural problems raise MachineFileError."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MachineFileError(f"not valid JSON: {exc}") from exc
    try:
        kind = doc["kind"]
        if kind not in KINDS:
            raise MachineFileError(f"unknown machine kind {kind!r}")
        uses_counter = kind in ("deterministic-counter", "two-way-qcca")
        uses_quantum = kind != "deterministic-counter"
        states_doc = doc["states"]
        initial = accept = reject = None
        for name, role in states_doc.items():
            if role == _ROLE_INITIAL:
                initial = name
            elif role == _ROLE_ACCEPT:
                accept = name
            elif role == _ROLE_REJECT:
                reject = name
            elif role != _ROLE_NORMAL:
                raise MachineFileError(f"unknown state role {role!r}")
        if initial is None or accept is None or reject is None:
            raise MachineFileError("states must include initial, accept and reject roles")
        basis = tuple(doc.get("quantum_basis") or ())
        initial_quantum = doc.get("initial_quantum")
        if uses_quantum:
            if initial_quantum not in basis:
                raise MachineFileError("initial_quantum must name a basis state")
            initial_basis = basis.index(initial_quantum)
        else:
            initial_basis = 0
        n_q = 3 if uses_counter else 2
        delta_q = {}
        for key_text, elements in doc["delta_q"].items():
            parts = tuple(key_text.split("|"))
            if len(parts) != n_q:
                raise MachineFileError(f"delta_q key {key_text!r} has {len(parts)} parts, expected {n_q}")
            key = parts if uses_counter else (*parts, None)
            ops = tuple(
                (str(e["outcome"]), _matrix_from_json(e["matrix"])) for e in elements
            )
            delta_q[key] = Superoperator(ops)
        delta_c = {}
        for key_text, action in doc["delta_c"].items():
            parts = tuple(key_text.split("|"))
            if len(parts) != n_q + 1:
                raise MachineFileError(f"delta_c key {key_text!r} has {len(parts)} parts, expected {n_q + 1}")
            key = parts if uses_counter else (parts[0], parts[1], None, parts[2])
            move = action["move"]
            if move not in _MOVES:
                raise MachineFileError(f"unknown move {move!r}")
            delta = int(action["counter"])
            if delta not in (-1, 0, 1):
                raise MachineFileError(f"counter update {delta} outside -1..1")
            delta_c[key] = ClassicalAction(
                next_state=action["next"],
                move=move,
                counter_delta=delta,
                restart=bool(action["restart"]),
            )
        return MachineSpec(
            name=str(doc["name"]),
            kind=kind,
            alphabet=tuple(sorted(doc["alphabet"])),
            states=tuple(states_doc),
            initial_state=initial,
            accept_state=accept,
            reject_state=reject,
            quantum_basis=basis,
            initial_basis=initial_basis,
            delta_q=delta_q,
            delta_c=delta_c,
        )
    except KeyError as exc:
        raise MachineFileError(f"missing field {exc}") from exc


def save_spec(spec: MachineSpec, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_spec(spec))


def load_spec(path: str) -> MachineSpec:
    with open(path, encoding="utf-8") as fh:
        return loads_spec(fh.read())
