"""Labelled transition system over light global types and their trace languages.

Transitions, relative to a declaration table ``D``::

    call l            --tau-->  D[l]
    rec t . L         --tick--> (terminated)     recursion never unfolds
    r1->r2: l() . L   --tau-->  L                single unit branch is silent
    end               --tick--> (terminated)
    r1->r2: {l_j(S_j).L_j}  --r1->r2:l_j(S_j)-->  L_j   otherwise

The language of ``L`` is the set of visible sequences reachable with tau
steps absorbed, a tick closing a sequence.  It always holds the empty
sequence and is prefix-closed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Optional, Union

from .core import (
    EMPTY,
    Call,
    Code,
    Diagnostic,
    End,
    LightType,
    Rec,
    Sort,
    SltError,
    Var,
)


@dataclass(frozen=True, order=True)
class Comm:
    sender: str
    receiver: str
    label: str
    sort: Sort

    def __str__(self):
        payload = "" if self.sort is Sort.UNIT else self.sort.value
        return f"{self.sender}->{self.receiver}:{self.label}({payload})"


@dataclass(frozen=True)
class Tick:
    def __str__(self):
        return "tick"


@dataclass(frozen=True)
class Tau:
    def __str__(self):
        return "tau"


TICK = Tick()
TAU = Tau()

Action = Union[Comm, Tick, Tau]


class _Terminated:
    def __repr__(self):
        return "TERMINATED"


TERMINATED = _Terminated()


def step(t: LightType, decls: Mapping = EMPTY) -> frozenset:
    """One-step transitions of ``t`` as ``(action, successor)`` pairs."""
    if isinstance(t, Call):
        if t.target not in decls:
            raise SltError(Diagnostic(Code.UNBOUND_CALL, f"call to undeclared {t.target}"))
        return frozenset({(TAU, decls[t.target])})
    if isinstance(t, (Rec, End)):
        return frozenset({(TICK, TERMINATED)})
    if isinstance(t, Var):
        return frozenset()
    if t.is_singleton_unit:
        return frozenset({(TAU, t.branches[0].cont)})
    return frozenset(
        (Comm(t.sender, t.receiver, b.label, b.sort), b.cont) for b in t.branches
    )


@dataclass(frozen=True, order=True)
class Trace:
    visible: tuple[Comm, ...] = ()
    terminated: bool = False

    def render(self) -> str:
        parts = [str(a) for a in self.visible]
        if self.terminated:
            parts.append("tick")
        return " ".join(parts) if parts else "<eps>"

    def __str__(self):
        return self.render()


EPSILON = Trace()


@dataclass(frozen=True)
class TraceLanguage:
    traces: frozenset[Trace]

    def __contains__(self, trace) -> bool:
        return trace in self.traces

    def __iter__(self) -> Iterator[Trace]:
        return iter(self.traces)

    def __len__(self) -> int:
        return len(self.traces)

    def lines(self) -> list[str]:
        return sorted(t.render() for t in self.traces)

    def is_prefix_closed(self) -> bool:
        if EPSILON not in self.traces:
            return False
        for t in self.traces:
            # a terminated trace's own visible part counts as a proper prefix
            upto = len(t.visible) + (1 if t.terminated else 0)
            if any(Trace(t.visible[:k]) not in self.traces for k in range(upto)):
                return False
        return True


def traces(t: LightType, decls: Mapping = EMPTY) -> TraceLanguage:
    """The finite language of ``t`` relative to ``decls``.

    Needs an acyclic call graph; a call cycle raises ``SltError(CYCLIC_CALLS)``
    rather than looping.
    """
    memo: dict = {}
    active: set = set()

    def lang(node) -> frozenset:
        if node in memo:
            return memo[node]
        if node in active:
            raise SltError(Diagnostic(Code.CYCLIC_CALLS, "silent cycle through calls"))
        active.add(node)
        out = {((), False)}
        for action, succ in step(node, decls):
            if isinstance(action, Tau):
                out |= lang(succ)
            elif isinstance(action, Tick):
                out.add(((), True))
            else:
                out.update(((action,) + vis, term) for vis, term in lang(succ))
        active.discard(node)
        memo[node] = frozenset(out)
        return memo[node]

    return TraceLanguage(frozenset(Trace(v, term) for v, term in lang(t)))


def reachable_states(t: LightType, decls: Mapping = EMPTY) -> set:
    """Every state reachable from ``t`` by any transitions (terminated excluded)."""
    seen, todo = {t}, [t]
    while todo:
        for _, succ in step(todo.pop(), decls):
            if succ is not TERMINATED and succ not in seen:
                seen.add(succ)
                todo.append(succ)
    return seen


@dataclass(frozen=True)
class LangComparison:
    equal: bool
    witness: Optional[Trace] = None
    only_in: Optional[int] = None  # 1 or 2: which side the witness belongs to

    def __bool__(self):
        return self.equal


def lang_eq(t1: LightType, d1: Mapping, t2: LightType, d2: Mapping) -> LangComparison:
    """Compare two trace languages; on inequality pick the shortest witness."""
    a, b = traces(t1, d1).traces, traces(t2, d2).traces
    if a == b:
        return LangComparison(True)
    diff = [(x, 1) for x in a - b] + [(x, 2) for x in b - a]
    witness, side = min(diff, key=lambda p: (len(p[0].visible), p[0].terminated, p[0].render()))
    return LangComparison(False, witness, side)
