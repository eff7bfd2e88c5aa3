"""Scribble-style rendering of a main type and its declarations.

Each type becomes one ``protocol`` block.  A single-branch interaction is a
message statement, a multi-branch one a ``choice at <sender>`` with one
``or`` block per branch, and ``call l`` becomes
``run protocol l(role ...) at <r>`` where ``<r>`` sends the first message of
``l``.  Payload variables are named ``x1, x2, ...`` per protocol, since types
carry no value names.

The ``rec t { ... }`` / ``continue t;`` rendering for recursion is
experimental.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .core import (
    EMPTY,
    Branch,
    Branching,
    Call,
    Code,
    Diagnostic,
    End,
    LightType,
    Rec,
    SltError,
    Sort,
    Var,
    role_order,
)

INDENT = "  "


@dataclass(frozen=True)
class ProtocolDoc:
    name: str
    roles: tuple[str, ...]
    body: tuple[str, ...]  # statement lines, already indented one level

    def render(self) -> str:
        header = f"protocol {self.name}({', '.join('role ' + r for r in self.roles)})"
        if not self.body:
            return header + " { }\n"
        return header + " {\n" + "".join(line + "\n" for line in self.body) + "}\n"


def first_sender(t: LightType, decls: Mapping, _seen: frozenset = frozenset()) -> Optional[str]:
    """Sender of the first interaction ``t`` performs, following rec and calls."""
    if isinstance(t, Branching):
        return t.sender
    if isinstance(t, Rec):
        return first_sender(t.body, decls, _seen)
    if isinstance(t, Call) and t.target in decls and t.target not in _seen:
        return first_sender(decls[t.target], decls, _seen | {t.target})
    return None


class _Emitter:
    def __init__(self, decls: Mapping):
        self.decls = decls
        self.counter = 0

    def message(self, sender: str, receiver: str, b: Branch) -> str:
        if b.sort is Sort.UNIT:
            payload = ""
        else:
            self.counter += 1
            payload = f"{b.sort.value} x{self.counter}"
        return f"{b.label}({payload}) from {sender} to {receiver};"

    def stmts(self, t: LightType, depth: int) -> list[str]:
        pad = INDENT * depth
        if isinstance(t, End):
            return []
        if isinstance(t, Var):
            return [f"{pad}continue {t.name};"]
        if isinstance(t, Rec):
            return [f"{pad}rec {t.var} {{", *self.stmts(t.body, depth + 1), f"{pad}}}"]
        if isinstance(t, Call):
            if t.target not in self.decls:
                raise SltError(Diagnostic(Code.UNBOUND_CALL, f"call to undeclared {t.target}"))
            body = self.decls[t.target]
            roles = ", ".join("role " + r for r in role_order(body))
            at = first_sender(body, self.decls)
            suffix = f" at {at}" if at else ""
            return [f"{pad}run protocol {t.target}({roles}){suffix};"]
        if len(t.branches) == 1:
            b = t.branches[0]
            return [pad + self.message(t.sender, t.receiver, b), *self.stmts(b.cont, depth)]
        lines = [f"{pad}choice at {t.sender} {{"]
        for i, b in enumerate(t.branches):
            if i:
                lines.append(f"{pad}}} or {{")
            lines.append(INDENT * (depth + 1) + self.message(t.sender, t.receiver, b))
            lines.extend(self.stmts(b.cont, depth + 1))
        lines.append(f"{pad}}}")
        return lines


def emit_one(name: str, t: LightType, decls: Mapping = EMPTY) -> ProtocolDoc:
    return ProtocolDoc(name, role_order(t), tuple(_Emitter(decls).stmts(t, 1)))


def emit(main_name: str, main: LightType, decls: Mapping = EMPTY) -> list[ProtocolDoc]:
    """One protocol for ``main`` followed by one per declaration, in table order."""
    docs = [emit_one(main_name, main, decls)]
    docs.extend(emit_one(name, body, decls) for name, body in decls.items())
    return docs


def render_document(docs: list[ProtocolDoc]) -> str:
    return "\n".join(d.render() for d in docs)
