"""Fuzzy finite automata under max-min or max-product semantics.

An automaton packages an initial possibility vector, one transition matrix
per event, an optional list of marked fuzzy states, and a semantics tag.
Event declaration order is significant: it drives every deterministic
enumeration downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Sequence, Tuple

from . import algebra
from .algebra import Semantics, ZERO, ONE
from .errors import (
    AlphabetMismatch,
    DimensionError,
    NotCrisp,
    SemanticsMismatch,
    UnknownEvent,
)

EventString = Tuple[str, ...]

EPSILON: EventString = ()


def string_from_text(text: str) -> EventString:
    """Parse a space-separated event string; '' (or 'eps') means ε."""
    text = text.strip()
    if text in ("", "eps", "ε"):
        return ()
    return tuple(text.split())


def string_to_text(s: Sequence[str]) -> str:
    return " ".join(s) if s else "ε"


@dataclass
class FuzzyAutomaton:
    state_labels: Tuple[str, ...]
    events: Dict[str, tuple]  # event name -> n×n matrix, declaration order
    initial: tuple
    marked: Tuple[tuple, ...] = ()
    semantics: Semantics = Semantics.MAX_MIN

    def __post_init__(self):
        self.state_labels = tuple(str(l) for l in self.state_labels)
        n = len(self.state_labels)
        if n == 0:
            raise DimensionError("an automaton needs at least one state")
        self.initial = algebra.as_vector(self.initial)
        if len(self.initial) != n:
            raise DimensionError(f"initial vector has dim {len(self.initial)}, expected {n}")
        frozen = {}
        for name, m in self.events.items():
            m = algebra.as_matrix(m)
            if len(m) != n:
                raise DimensionError(f"event {name!r} is {len(m)}×{len(m)}, expected {n}×{n}")
            frozen[str(name)] = m
        self.events = frozen
        marked = []
        for v in self.marked:
            v = algebra.as_vector(v)
            if len(v) != n:
                raise DimensionError(f"marked vector has dim {len(v)}, expected {n}")
            marked.append(v)
        self.marked = tuple(marked)
        self.semantics = Semantics(self.semantics)

    @property
    def dim(self) -> int:
        return len(self.state_labels)

    @property
    def alphabet(self) -> Tuple[str, ...]:
        return tuple(self.events)

    def matrix(self, e: str) -> tuple:
        try:
            return self.events[e]
        except KeyError:
            raise UnknownEvent(f"event {e!r} not declared (alphabet: {list(self.events)})") from None

    def is_crisp(self) -> bool:
        values = set(self.initial)
        for m in self.events.values():
            for row in m:
                values.update(row)
        for v in self.marked:
            values.update(v)
        return values <= {ZERO, ONE}


def step(g: FuzzyAutomaton, q: Sequence, e: str) -> tuple:
    """One transition: q̃ ⊙ σ̃ (or ∘ under max-product)."""
    return algebra.apply_event(q, g.matrix(e), g.semantics)


def run(g: FuzzyAutomaton, s: Iterable[str]) -> tuple:
    """Fold the string through the transition matrices from the initial state."""
    q = g.initial
    for e in s:
        q = step(g, q, e)
    return q


def generated_degree(g: FuzzyAutomaton, s: Iterable[str]):
    """L_G̃(s): the degree to which the string is physically possible."""
    return algebra.max_element(run(g, s))


def marked_degree(g: FuzzyAutomaton, s: Iterable[str]):
    """L_G̃,m(s): the degree to which the string is recognized (sup over
    marked fuzzy states); 0 when no state is marked."""
    v = run(g, s)
    if not g.marked:
        return ZERO
    return max(algebra.inner_sup(v, q, g.semantics) for q in g.marked)


def parallel_compose(g1: FuzzyAutomaton, g2: FuzzyAutomaton) -> FuzzyAutomaton:
    """Synchronous composition on the tensor state space.

    Shared events advance both components (σ̃1 ⊗ σ̃2); private events carry
    an identity block for the idle component.  The result applies its own
    semantics tag when stepped.
    """
    if g1.semantics is not g2.semantics:
        raise SemanticsMismatch(f"cannot compose {g1.semantics.value} with {g2.semantics.value}")
    i1 = algebra.identity(g1.dim)
    i2 = algebra.identity(g2.dim)
    events: Dict[str, tuple] = {}
    for name in list(g1.events) + [e for e in g2.events if e not in g1.events]:
        in1, in2 = name in g1.events, name in g2.events
        if in1 and in2:
            events[name] = algebra.tensor_matrices(g1.events[name], g2.events[name])
        elif in1:
            events[name] = algebra.tensor_matrices(g1.events[name], i2)
        else:
            events[name] = algebra.tensor_matrices(i1, g2.events[name])
    return FuzzyAutomaton(
        state_labels=tuple(f"{a},{b}" for a in g1.state_labels for b in g2.state_labels),
        events=events,
        initial=algebra.tensor_vectors(g1.initial, g2.initial),
        marked=tuple(
            algebra.tensor_vectors(m1, m2) for m1 in g1.marked for m2 in g2.marked
        ),
        semantics=g1.semantics,
    )


def crisp_parallel_reference(g1: FuzzyAutomaton, g2: FuzzyAutomaton) -> FuzzyAutomaton:
    """Textbook synchronous product of two crisp automata, built from pair
    transitions rather than tensor algebra; used as an oracle."""
    for g in (g1, g2):
        if not g.is_crisp():
            raise NotCrisp("crisp_parallel_reference needs {0,1} degrees")
    n1, n2 = g1.dim, g2.dim

    def pair(i, j):
        return i * n2 + j

    events: Dict[str, tuple] = {}
    for name in list(g1.events) + [e for e in g2.events if e not in g1.events]:
        grid = [[ZERO] * (n1 * n2) for _ in range(n1 * n2)]
        for i in range(n1):
            for j in range(n2):
                for ii in range(n1):
                    for jj in range(n2):
                        if name in g1.events and name in g2.events:
                            ok = g1.events[name][i][ii] == ONE and g2.events[name][j][jj] == ONE
                        elif name in g1.events:
                            ok = g1.events[name][i][ii] == ONE and j == jj
                        else:
                            ok = i == ii and g2.events[name][j][jj] == ONE
                        if ok:
                            grid[pair(i, j)][pair(ii, jj)] = ONE
        events[name] = tuple(tuple(row) for row in grid)

    initial = tuple(
        ONE if g1.initial[i] == ONE and g2.initial[j] == ONE else ZERO
        for i in range(n1)
        for j in range(n2)
    )
    marked = tuple(
        tuple(
            ONE if m1[i] == ONE and m2[j] == ONE else ZERO
            for i in range(n1)
            for j in range(n2)
        )
        for m1 in g1.marked
        for m2 in g2.marked
    )
    return FuzzyAutomaton(
        state_labels=tuple(f"{a},{b}" for a in g1.state_labels for b in g2.state_labels),
        events=events,
        initial=initial,
        marked=marked,
        semantics=g1.semantics,
    )


def require_same_alphabet(g: FuzzyAutomaton, h: FuzzyAutomaton) -> None:
    if set(g.events) != set(h.events):
        raise AlphabetMismatch(
            f"alphabets differ: {sorted(g.events)} vs {sorted(h.events)}"
        )
