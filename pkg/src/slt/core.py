"""Abstract syntax of light global types, declaration tables and well-formedness.

A light global type is an immutable tree built from five node kinds::

    Branching  r1 -> r2 : { l_j(S_j) . L_j }     (non-empty, labels distinct)
    Rec        rec t . L
    Var        t
    End        end
    Call       call name

Global types are the closed, call-free fragment.  Declarations bind names to
light global types and are kept in insertion order.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Optional, Union

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

Pos = Optional[tuple[int, int]]


class Code(str, Enum):
    """Diagnostic codes.  The set is closed; the CLI and tests rely on it."""

    LEX_ERROR = "LEX_ERROR"
    PARSE_ERROR = "PARSE_ERROR"
    ENCODING_ERROR = "ENCODING_ERROR"
    MISSING_MAIN = "MISSING_MAIN"
    DUP_MAIN = "DUP_MAIN"
    DUP_DECL = "DUP_DECL"
    EMPTY_BRANCHES = "EMPTY_BRANCHES"
    SELF_MSG = "SELF_MSG"
    DUP_LABEL = "DUP_LABEL"
    BAD_NAME = "BAD_NAME"
    UNGUARDED_REC = "UNGUARDED_REC"
    FREE_VAR = "FREE_VAR"
    UNBOUND_CALL = "UNBOUND_CALL"
    CYCLIC_CALLS = "CYCLIC_CALLS"
    SITE_STALE = "SITE_STALE"
    LANG_MISMATCH = "LANG_MISMATCH"
    IO_ERROR = "IO_ERROR"


@dataclass(frozen=True)
class Diagnostic:
    code: Code
    message: str
    severity: str = "error"
    line: Optional[int] = None
    col: Optional[int] = None
    path: Optional[str] = None

    def format(self, filename: str = "<input>") -> str:
        where = filename
        if self.line is not None:
            where += f":{self.line}:{self.col}"
        msg = self.message
        if self.path and self.line is None:
            msg += f" (at {self.path})"
        return f"{where}: {self.severity} {self.code.value}: {msg}"


class SltError(Exception):
    """Raised by operations whose failure is a single diagnostic."""

    def __init__(self, diagnostic: Diagnostic):
        super().__init__(diagnostic.message)
        self.diagnostic = diagnostic

    @property
    def code(self) -> Code:
        return self.diagnostic.code


class MalformedType(ValueError):
    """A node violates a construction-time invariant."""

    def __init__(self, code: Code, message: str):
        super().__init__(message)
        self.code = code


def check_ident(kind: str, name: str) -> str:
    if not isinstance(name, str) or not IDENT_RE.match(name):
        raise MalformedType(Code.BAD_NAME, f"invalid {kind} name {name!r}")
    return name


class Sort(str, Enum):
    UNIT = "unit"
    NAT = "nat"
    STR = "str"
    BOOL = "bool"

    @classmethod
    def from_text(cls, text: str) -> "Sort":
        if text == "int":
            return cls.NAT
        return cls(text)

    def __str__(self) -> str:
        return self.value


# --------------------------------------------------------------------------
# Nodes.  ``pos`` is the (line, column) a parser found the node at; it takes
# no part in equality or hashing.


@dataclass(frozen=True)
class End:
    pos: Pos = field(default=None, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Var:
    name: str
    pos: Pos = field(default=None, compare=False, repr=False, kw_only=True)

    def __post_init__(self):
        check_ident("recursion variable", self.name)


@dataclass(frozen=True)
class Call:
    target: str
    pos: Pos = field(default=None, compare=False, repr=False, kw_only=True)

    def __post_init__(self):
        check_ident("declaration", self.target)


@dataclass(frozen=True)
class Rec:
    var: str
    body: "LightType"
    pos: Pos = field(default=None, compare=False, repr=False, kw_only=True)

    def __post_init__(self):
        check_ident("recursion variable", self.var)


@dataclass(frozen=True)
class Branch:
    label: str
    sort: Sort
    cont: "LightType"

    def __post_init__(self):
        check_ident("label", self.label)
        if not isinstance(self.sort, Sort):
            object.__setattr__(self, "sort", Sort.from_text(self.sort))


@dataclass(frozen=True)
class Branching:
    sender: str
    receiver: str
    branches: tuple[Branch, ...]
    pos: Pos = field(default=None, compare=False, repr=False, kw_only=True)

    def __post_init__(self):
        check_ident("role", self.sender)
        check_ident("role", self.receiver)
        branches = tuple(self.branches)
        object.__setattr__(self, "branches", branches)
        if not branches:
            raise MalformedType(Code.EMPTY_BRANCHES, "branching with no branches")
        if self.sender == self.receiver:
            raise MalformedType(Code.SELF_MSG, f"role {self.sender} sends to itself")
        seen = set()
        for b in branches:
            if b.label in seen:
                raise MalformedType(Code.DUP_LABEL, f"label {b.label} offered twice")
            seen.add(b.label)

    @property
    def is_singleton_unit(self) -> bool:
        """One branch carrying a unit payload: the shape a redundant interaction has."""
        return len(self.branches) == 1 and self.branches[0].sort is Sort.UNIT

    def branch(self, label: str) -> Optional[Branch]:
        for b in self.branches:
            if b.label == label:
                return b
        return None


LightType = Union[Branching, Rec, Var, End, Call]


def msg(sender: str, receiver: str, label: str, sort="unit", cont: LightType = None) -> Branching:
    """Shorthand for a single-branch interaction, defaulting to ``l() . end``."""
    return Branching(sender, receiver, (Branch(label, sort, End() if cont is None else cont),))


def choice(sender: str, receiver: str, *branches: tuple) -> Branching:
    return Branching(sender, receiver, tuple(Branch(*b) for b in branches))


def show(t: LightType) -> str:
    """Compact one-line rendering, for messages and reprs."""
    if isinstance(t, End):
        return "end"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Call):
        return f"call {t.target}"
    if isinstance(t, Rec):
        return f"rec {t.var}.{show(t.body)}"
    parts = [
        f"{b.label}({'' if b.sort is Sort.UNIT else b.sort}).{show(b.cont)}" for b in t.branches
    ]
    inner = parts[0] if len(parts) == 1 else "{" + ", ".join(parts) + "}"
    return f"{t.sender}->{t.receiver}:{inner}"


def subterms(t: LightType) -> Iterator[LightType]:
    yield t
    if isinstance(t, Branching):
        for b in t.branches:
            yield from subterms(b.cont)
    elif isinstance(t, Rec):
        yield from subterms(t.body)


def calls_in(t: LightType) -> list[Call]:
    return [s for s in subterms(t) if isinstance(s, Call)]


def size(t: LightType) -> int:
    return sum(1 for _ in subterms(t))


# --------------------------------------------------------------------------
# Declarations


class Declarations(Mapping):
    """Ordered, immutable table of ``name = light type`` bindings."""

    __slots__ = ("_entries", "_index")

    def __init__(self, entries: Iterable[tuple[str, LightType]] = ()):
        if isinstance(entries, Mapping):
            entries = entries.items()
        self._entries = tuple((check_ident("declaration", n), t) for n, t in entries)
        self._index = {}
        for n, t in self._entries:
            if n in self._index:
                raise MalformedType(Code.DUP_DECL, f"declaration {n} bound twice")
            self._index[n] = t

    def __getitem__(self, name: str) -> LightType:
        return self._index[name]

    def __iter__(self) -> Iterator[str]:
        return (n for n, _ in self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other):
        if isinstance(other, Declarations):
            return self._entries == other._entries
        return NotImplemented

    def __hash__(self):
        return hash(self._entries)

    def __repr__(self):
        inner = ", ".join(f"{n}={show(t)}" for n, t in self._entries)
        return f"Declarations({inner})"

    @property
    def entries(self) -> tuple[tuple[str, LightType], ...]:
        return self._entries

    def union(self, other: "Declarations") -> "Declarations":
        """Disjoint union; identical re-bindings are tolerated, conflicting ones are not."""
        extra = []
        for n, t in other.items():
            if n in self._index:
                if self._index[n] != t:
                    raise MalformedType(Code.DUP_DECL, f"declaration {n} bound twice")
                continue
            extra.append((n, t))
        if not extra:
            return self
        return Declarations(self._entries + tuple(extra))

    def replace(self, name: str, body: LightType) -> "Declarations":
        if name not in self._index:
            raise KeyError(name)
        return Declarations((n, body if n == name else t) for n, t in self._entries)

    def without(self, names: Iterable[str]) -> "Declarations":
        drop = set(names)
        return Declarations((n, t) for n, t in self._entries if n not in drop)


EMPTY = Declarations()


class Program(NamedTuple):
    main: LightType
    decls: Declarations = EMPTY


# --------------------------------------------------------------------------
# Well-formedness


def _diag(code: Code, message: str, node, path: str) -> Diagnostic:
    pos = getattr(node, "pos", None)
    line, col = pos if pos else (None, None)
    return Diagnostic(code, message, line=line, col=col, path=path)


def _check_type(t: LightType, owner: str, decls: Mapping, out: list) -> None:
    # env maps each bound recursion variable to whether a branching has been
    # crossed since its (innermost) binder
    def walk(node, env: dict, path: tuple):
        where = owner + ":" + "/".join(path)
        if isinstance(node, Branching):
            if not node.branches:
                out.append(_diag(Code.EMPTY_BRANCHES, "branching with no branches", node, where))
            if node.sender == node.receiver:
                out.append(_diag(Code.SELF_MSG, f"role {node.sender} sends to itself", node, where))
            labels = [b.label for b in node.branches]
            for dup in sorted({x for x in labels if labels.count(x) > 1}):
                out.append(_diag(Code.DUP_LABEL, f"label {dup} offered twice", node, where))
            guarded = {v: True for v in env}
            for b in node.branches:
                walk(b.cont, guarded, path + (b.label,))
        elif isinstance(node, Rec):
            walk(node.body, {**env, node.var: False}, path + (f"rec {node.var}",))
        elif isinstance(node, Var):
            if node.name not in env:
                out.append(_diag(Code.FREE_VAR, f"recursion variable {node.name} is not bound", node, where))
            elif not env[node.name]:
                out.append(_diag(Code.UNGUARDED_REC, f"recursion variable {node.name} is not guarded", node, where))
        elif isinstance(node, Call):
            if node.target not in decls:
                out.append(_diag(Code.UNBOUND_CALL, f"call to undeclared {node.target}", node, where))

    walk(t, {}, ())


def well_formed(main: LightType, decls: Declarations = EMPTY) -> list[Diagnostic]:
    """Every invariant violation in ``main`` and ``decls``, in a deterministic order.

    Node checks run over ``main`` first and then each declaration in table
    order; call-graph cycles are reported last, once per back edge found by a
    depth-first search that starts from the declarations in table order.
    """
    out: list[Diagnostic] = []
    _check_type(main, "main", decls, out)
    for name, body in decls.items():
        _check_type(body, name, decls, out)

    edges: dict[str, list[Call]] = {}
    for name, body in decls.items():
        targets, seen = [], set()
        for c in calls_in(body):
            if c.target in decls and c.target not in seen:
                seen.add(c.target)
                targets.append(c)
        edges[name] = targets

    WHITE, GREY, BLACK = 0, 1, 2
    colour = {n: WHITE for n in decls}
    stack: list[str] = []

    def visit(n: str):
        colour[n] = GREY
        stack.append(n)
        for c in edges[n]:
            if colour[c.target] == GREY:
                cycle = stack[stack.index(c.target):] + [c.target]
                out.append(_diag(Code.CYCLIC_CALLS, "call cycle " + " -> ".join(cycle), c, n))
            elif colour[c.target] == WHITE:
                visit(c.target)
        stack.pop()
        colour[n] = BLACK

    for n in decls:
        if colour[n] == WHITE:
            visit(n)
    return out


def is_global(t: LightType) -> bool:
    """True iff ``t`` contains no call and no free recursion variable."""

    def closed(node, bound: frozenset) -> bool:
        if isinstance(node, Call):
            return False
        if isinstance(node, Var):
            return node.name in bound
        if isinstance(node, Rec):
            return closed(node.body, bound | {node.var})
        if isinstance(node, Branching):
            return all(closed(b.cont, bound) for b in node.branches)
        return True

    return closed(t, frozenset())


def _unbound(target: str) -> SltError:
    return SltError(Diagnostic(Code.UNBOUND_CALL, f"call to undeclared {target}"))


def role_order(t: LightType) -> tuple[str, ...]:
    """Roles of ``t`` itself (calls not followed) in first-occurrence order."""
    seen: dict[str, None] = {}
    for s in subterms(t):
        if isinstance(s, Branching):
            seen.setdefault(s.sender)
            seen.setdefault(s.receiver)
    return tuple(seen)


def roles_of(t: LightType, decls: Mapping = EMPTY, transitive: bool = True) -> frozenset[str]:
    """Roles occurring in ``t`` and, when ``transitive``, in every declaration it reaches."""
    roles: set[str] = set()
    todo, done = [t], set()
    while todo:
        node = todo.pop()
        for s in subterms(node):
            if isinstance(s, Branching):
                roles.update((s.sender, s.receiver))
            elif isinstance(s, Call) and transitive and s.target not in done:
                if s.target not in decls:
                    raise _unbound(s.target)
                done.add(s.target)
                todo.append(decls[s.target])
    return frozenset(roles)


def reachable_decls(main: LightType, decls: Mapping) -> list[str]:
    """Declaration names reachable from ``main`` through calls, in discovery order."""
    order: list[str] = []
    todo = [main]
    while todo:
        for c in calls_in(todo.pop(0)):
            if c.target not in order and c.target in decls:
                order.append(c.target)
                todo.append(decls[c.target])
    return order


def rename_calls(t: LightType, mapping: Mapping[str, str]) -> LightType:
    if isinstance(t, Call):
        return Call(mapping.get(t.target, t.target))
    if isinstance(t, Rec):
        return Rec(t.var, rename_calls(t.body, mapping))
    if isinstance(t, Branching):
        return Branching(
            t.sender,
            t.receiver,
            tuple(Branch(b.label, b.sort, rename_calls(b.cont, mapping)) for b in t.branches),
        )
    return t


def shape_key(t: LightType, env: tuple = ()):
    """Hashable key equal for trees that differ only in recursion-variable names
    and branch order."""
    if isinstance(t, End):
        return ("end",)
    if isinstance(t, Call):
        return ("call", t.target)
    if isinstance(t, Var):
        for depth, v in enumerate(reversed(env)):
            if v == t.name:
                return ("var", depth)
        return ("free", t.name)
    if isinstance(t, Rec):
        return ("rec", shape_key(t.body, env + (t.var,)))
    return (
        "bra",
        t.sender,
        t.receiver,
        tuple(sorted((b.label, b.sort.value, shape_key(b.cont, env)) for b in t.branches)),
    )


def _binder_depth(env: tuple, name: str) -> Optional[int]:
    # innermost binder wins under shadowing
    for depth, v in enumerate(reversed(env)):
        if v == name:
            return depth
    return None


def alpha_eq_decls(
    main1: LightType, decls1: Mapping, main2: LightType, decls2: Mapping
) -> bool:
    """Structural equality of two programs up to renaming of reachable
    declarations and of recursion variables.  Branches match by label."""
    fwd: dict[str, str] = {}
    bwd: dict[str, str] = {}
    pending: list[tuple[str, str]] = []

    def link(a: str, b: str) -> bool:
        if a in fwd or b in bwd:
            return fwd.get(a) == b and bwd.get(b) == a
        fwd[a], bwd[b] = b, a
        pending.append((a, b))
        return True

    def eq(x, y, env1: tuple, env2: tuple) -> bool:
        if type(x) is not type(y):
            return False
        if isinstance(x, End):
            return True
        if isinstance(x, Var):
            i, j = _binder_depth(env1, x.name), _binder_depth(env2, y.name)
            if i is None and j is None:
                return x.name == y.name
            return i == j
        if isinstance(x, Call):
            return link(x.target, y.target)
        if isinstance(x, Rec):
            return eq(x.body, y.body, env1 + (x.var,), env2 + (y.var,))
        if (x.sender, x.receiver) != (y.sender, y.receiver):
            return False
        if {b.label for b in x.branches} != {b.label for b in y.branches}:
            return False
        for bx in x.branches:
            by = y.branch(bx.label)
            if bx.sort is not by.sort or not eq(bx.cont, by.cont, env1, env2):
                return False
        return True

    if not eq(main1, main2, (), ()):
        return False
    while pending:
        a, b = pending.pop(0)
        in1, in2 = a in decls1, b in decls2
        if in1 != in2:
            return False
        if in1 and not eq(decls1[a], decls2[b], (), ()):
            return False
        if not in1 and a != b:
            return False
    return True
