"""Text format (``.lgt``) for light global types and declaration files.

Grammar::

    file    ::= ("let" name "=" type ";")* "main" "=" type ";"
    type    ::= "end" | var | "rec" var "." type | "call" name
              | role "->" role ":" branch
              | role "->" role ":" "{" branch ("," branch)* "}"
    branch  ::= label "(" sort? ")" "." type
    sort    ::= "unit" | "nat" | "str" | "bool"     ("int" reads as nat)

``//`` starts a line comment.  The words ``let main end rec call`` are
reserved and cannot be used as names.
"""

from __future__ import annotations

import re
from typing import Optional, Union

from .core import (
    Branch,
    Branching,
    Call,
    Code,
    Declarations,
    Diagnostic,
    End,
    LightType,
    MalformedType,
    Program,
    Rec,
    Sort,
    Var,
)

RESERVED = frozenset({"let", "main", "end", "rec", "call"})
SORT_WORDS = frozenset({"unit", "nat", "str", "bool", "int"})

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\n\f\v]+)"
    r"|(?P<comment>//[^\n]*)"
    r"|(?P<arrow>->)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<punct>[:{}(),.;=])"
)


class ParseError(Exception):
    def __init__(self, diagnostics: list[Diagnostic]):
        super().__init__("; ".join(d.message for d in diagnostics))
        self.diagnostics = diagnostics


class _Stop(Exception):
    def __init__(self, diagnostic: Diagnostic):
        self.diagnostic = diagnostic


def _err(code: Code, message: str, line: int, col: int) -> _Stop:
    return _Stop(Diagnostic(code, message, line=line, col=col))


def tokenize(text: str) -> list[tuple[str, str, int, int]]:
    """``(kind, text, line, col)`` tuples ending with an ``eof`` token."""
    tokens = []
    i, line, line_start = 0, 1, 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        col = i - line_start + 1
        if not m:
            raise _err(Code.LEX_ERROR, f"unexpected character {text[i]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind in ("ident", "arrow", "punct"):
            tokens.append((kind if kind != "punct" else value, value, line, col))
        nl = value.count("\n")
        if nl:
            line += nl
            line_start = m.start() + value.rindex("\n") + 1
        i = m.end()
    col = i - line_start + 1
    tokens.append(("eof", "", line, col))
    return tokens


def _describe(tok) -> str:
    return "end of input" if tok[0] == "eof" else repr(tok[1])


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    def peek(self, k: int = 0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def advance(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, what: Optional[str] = None):
        tok = self.peek()
        if tok[0] != kind:
            raise _err(Code.PARSE_ERROR, f"expected {what or repr(kind)}, found {_describe(tok)}", tok[2], tok[3])
        return self.advance()

    def word(self, word: str):
        tok = self.peek()
        if tok[0] != "ident" or tok[1] != word:
            raise _err(Code.PARSE_ERROR, f"expected {word!r}, found {_describe(tok)}", tok[2], tok[3])
        return self.advance()

    def name(self, kind: str) -> str:
        tok = self.expect("ident", kind)
        if tok[1] in RESERVED:
            raise _err(Code.PARSE_ERROR, f"reserved word {tok[1]!r} used as {kind}", tok[2], tok[3])
        return tok[1]

    # -- grammar ----------------------------------------------------------

    def file(self) -> Program:
        entries: list[tuple[str, LightType]] = []
        seen: set[str] = set()
        main = None
        while self.peek()[0] != "eof":
            tok = self.peek()
            if tok[0] == "ident" and tok[1] == "let":
                if main is not None:
                    raise _err(Code.PARSE_ERROR, "declarations must precede main", tok[2], tok[3])
                self.advance()
                name_tok = self.peek()
                name = self.name("declaration name")
                if name in seen:
                    raise _err(Code.DUP_DECL, f"declaration {name} bound twice", name_tok[2], name_tok[3])
                seen.add(name)
                self.expect("=")
                entries.append((name, self.type_()))
                self.expect(";")
            elif tok[0] == "ident" and tok[1] == "main":
                if main is not None:
                    raise _err(Code.DUP_MAIN, "more than one main entry", tok[2], tok[3])
                self.advance()
                self.expect("=")
                main = self.type_()
                self.expect(";")
            else:
                raise _err(Code.PARSE_ERROR, f"expected 'let' or 'main', found {_describe(tok)}", tok[2], tok[3])
        if main is None:
            tok = self.peek()
            raise _err(Code.MISSING_MAIN, "no main entry", tok[2], tok[3])
        return Program(main, Declarations(entries))

    def type_(self) -> LightType:
        tok = self.peek()
        pos = (tok[2], tok[3])
        if tok[0] != "ident":
            raise _err(Code.PARSE_ERROR, f"expected a type, found {_describe(tok)}", *pos)
        if self.peek(1)[0] == "arrow":
            return self.branching()
        if tok[1] == "end":
            self.advance()
            return End(pos=pos)
        if tok[1] == "rec":
            self.advance()
            var = self.name("recursion variable")
            self.expect(".")
            return Rec(var, self.type_(), pos=pos)
        if tok[1] == "call":
            self.advance()
            return Call(self.name("declaration name"), pos=pos)
        return Var(self.name("recursion variable"), pos=pos)

    def branching(self) -> Branching:
        tok = self.peek()
        sender = self.name("role")
        self.expect("arrow", "'->'")
        receiver = self.name("role")
        self.expect(":")
        if self.peek()[0] == "{":
            self.advance()
            if self.peek()[0] == "}":
                t = self.peek()
                raise _err(Code.EMPTY_BRANCHES, "branching with no branches", t[2], t[3])
            branches = [self.branch()]
            while self.peek()[0] == ",":
                self.advance()
                branches.append(self.branch())
            self.expect("}")
        else:
            branches = [self.branch()]
        try:
            return Branching(sender, receiver, tuple(branches), pos=(tok[2], tok[3]))
        except MalformedType as e:
            raise _err(e.code, str(e), tok[2], tok[3]) from None

    def branch(self) -> Branch:
        label = self.name("label")
        self.expect("(")
        sort = Sort.UNIT
        tok = self.peek()
        if tok[0] == "ident":
            if tok[1] not in SORT_WORDS:
                raise _err(Code.PARSE_ERROR, f"unknown sort {tok[1]!r}", tok[2], tok[3])
            sort = Sort.from_text(self.advance()[1])
        self.expect(")")
        self.expect(".")
        return Branch(label, sort, self.type_())


def parse(text: Union[str, bytes]) -> Program:
    """Parse a whole ``.lgt`` file into ``(main, decls)``.

    Raises :class:`ParseError` carrying positioned diagnostics.  Semantic
    checks (guardedness, bound calls, cycles) are left to ``well_formed``.
    """
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError([Diagnostic(Code.ENCODING_ERROR, f"input is not UTF-8 ({e.reason})")]) from None
    try:
        return _Parser(text).file()
    except _Stop as stop:
        raise ParseError([stop.diagnostic]) from None
    except RecursionError:
        raise ParseError([Diagnostic(Code.PARSE_ERROR, "type nested too deeply")]) from None


def parse_type(text: str) -> LightType:
    """Parse a bare type expression (no ``main =`` wrapper)."""
    try:
        p = _Parser(text)
        t = p.type_()
        p.expect("eof", "end of input")
        return t
    except _Stop as stop:
        raise ParseError([stop.diagnostic]) from None
    except RecursionError:
        raise ParseError([Diagnostic(Code.PARSE_ERROR, "type nested too deeply")]) from None


# --------------------------------------------------------------------------
# Printing


def _sort_text(sort: Sort) -> str:
    return "" if sort is Sort.UNIT else sort.value


def format_type(t: LightType, indent: int = 0) -> str:
    pad = "  "
    if isinstance(t, End):
        return "end"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Call):
        return f"call {t.target}"
    if isinstance(t, Rec):
        return f"rec {t.var} . {format_type(t.body, indent)}"
    head = f"{t.sender} -> {t.receiver} : "
    if len(t.branches) == 1:
        return head + _format_branch(t.branches[0], indent)
    inner = ",\n".join(pad * (indent + 1) + _format_branch(b, indent + 1) for b in t.branches)
    return head + "{\n" + inner + "\n" + pad * indent + "}"


def _format_branch(b: Branch, indent: int) -> str:
    return f"{b.label}({_sort_text(b.sort)}) . {format_type(b.cont, indent)}"


def print_program(main: LightType, decls: Declarations = Declarations()) -> str:
    """Canonical text: declarations in table order, then ``main``.

    Single-branch interactions chain on one line; a multi-branch
    interaction opens a brace and puts each branch on its own line, two
    spaces deeper than the line that opened it.
    """
    out = [f"let {name} = {format_type(body)};\n" for name, body in decls.items()]
    out.append(f"main = {format_type(main)};\n")
    return "".join(out)
