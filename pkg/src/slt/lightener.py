"""Removing redundant interactions by splitting a type into call-linked pieces.

``descend(t, r)`` cuts every branch of ``t`` at the first interaction
received by ``r``: a redundant one is dropped, any other becomes a call to a
freshly named declaration holding it.  ``eliminate(t, site)`` walks the
context path of a redundant site; at the first branching where the site's
receiver already takes part it simply drops the site, otherwise it descends
into the sibling branches so that the receiver learns of every other choice
through a separate session.  ``lighten_fully`` repeats ``eliminate`` until no
site is left anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .core import (
    EMPTY,
    Branch,
    Branching,
    Call,
    Declarations,
    LightType,
    Program,
    check_ident,
    rename_calls,
    shape_key,
)
from .redundancy import RedundantSite, find_redundant, node_at, site_matches, stale

DEFAULT_PREFIX = "L"


@dataclass
class FreshNamer:
    """Issues ``<prefix><n>`` names with increasing ``n``, skipping ``taken``."""

    prefix: str = DEFAULT_PREFIX
    counter: int = 0
    taken: set = field(default_factory=set)
    issued: list = field(default_factory=list)

    def __post_init__(self):
        check_ident("declaration prefix", self.prefix)

    def fresh(self) -> str:
        while True:
            self.counter += 1
            name = f"{self.prefix}{self.counter}"
            if name not in self.taken:
                self.taken.add(name)
                self.issued.append(name)
                return name

    def fork(self) -> "FreshNamer":
        return FreshNamer(self.prefix, self.counter, set(self.taken), list(self.issued))


@dataclass(frozen=True)
class LighteningResult:
    result: LightType
    new_decls: Declarations = EMPTY


def descend(t: LightType, role: str, namer: FreshNamer) -> LighteningResult:
    if not isinstance(t, Branching):
        # end, variables, calls and rec are left alone
        return LighteningResult(t)
    if t.receiver == role:
        if t.is_singleton_unit:
            return LighteningResult(t.branches[0].cont)
        name = namer.fresh()
        return LighteningResult(Call(name), Declarations([(name, t)]))
    branches, decls = [], EMPTY
    for b in t.branches:
        sub = descend(b.cont, role, namer)
        branches.append(Branch(b.label, b.sort, sub.result))
        decls = decls.union(sub.new_decls)
    return LighteningResult(Branching(t.sender, t.receiver, tuple(branches)), decls)


def _drop_site(t: LightType, site: RedundantSite, path: tuple) -> LightType:
    if not path:
        if not site_matches(t, site):
            raise stale(f"no {site.label}() from {site.sender} to {site.receiver} here")
        return t.branches[0].cont
    b = t.branch(path[0])
    return Branching(
        t.sender,
        t.receiver,
        tuple(
            Branch(x.label, x.sort, _drop_site(x.cont, site, path[1:]) if x is b else x.cont)
            for x in t.branches
        ),
    )


def eliminate(t: LightType, site: RedundantSite, namer: FreshNamer) -> LighteningResult:
    """Remove the redundant interaction ``site`` from ``t``.

    Raises ``SltError(SITE_STALE)`` when the site's path does not address a
    matching interaction in ``t``.
    """
    if not site_matches(node_at(t, site.path), site):
        raise stale(f"{site} does not address a redundant interaction")

    def go(node: Branching, path: tuple) -> LighteningResult:
        if not path:
            return LighteningResult(node.branches[0].cont)
        if site.receiver in (node.sender, node.receiver):
            return LighteningResult(_drop_site(node, site, path))
        branches, decls = [], EMPTY
        for b in node.branches:
            if b.label == path[0]:
                sub = go(b.cont, path[1:])
            else:
                sub = descend(b.cont, site.receiver, namer)
            branches.append(Branch(b.label, b.sort, sub.result))
            decls = decls.union(sub.new_decls)
        return LighteningResult(Branching(node.sender, node.receiver, tuple(branches)), decls)

    return go(t, site.path)


# --------------------------------------------------------------------------
# Driver


def all_sites(main: LightType, decls: Declarations) -> Iterator[tuple[str, RedundantSite]]:
    """``(owner, site)`` pairs; owner is ``None`` for main, else a declaration name."""
    for s in find_redundant(main):
        yield None, s
    for name, body in decls.items():
        for s in find_redundant(body):
            yield name, s


def count_sites(main: LightType, decls: Declarations) -> int:
    return sum(1 for _ in all_sites(main, decls))


def apply_site(
    main: LightType, decls: Declarations, owner, site: RedundantSite, namer: FreshNamer
) -> Program:
    """Eliminate one site of ``main`` (owner ``None``) or of a declaration body."""
    if owner is None:
        res = eliminate(main, site, namer)
        main = res.result
    else:
        res = eliminate(decls[owner], site, namer)
        decls = decls.replace(owner, res.result)
    return Program(main, decls.union(res.new_decls))


def lighten_fully(
    main: LightType,
    decls: Declarations = EMPTY,
    prefix: str = DEFAULT_PREFIX,
    dedup: bool = False,
) -> Program:
    """Eliminate redundant interactions until none is left.

    Always takes the first site in traversal order, main before the
    declarations, and appends the fresh declarations to the table.
    """
    namer = FreshNamer(prefix, taken=set(decls))
    before = count_sites(main, decls)
    while before:
        owner, site = next(all_sites(main, decls))
        main, decls = apply_site(main, decls, owner, site, namer)
        after = count_sites(main, decls)
        if after >= before:
            raise RuntimeError(f"site count did not drop ({before} -> {after}) eliminating {site}")
        before = after
    if dedup:
        main, decls = share_duplicates(main, decls, namer.issued)
    return Program(main, decls)


def share_duplicates(main: LightType, decls: Declarations, candidates: Iterable[str]) -> Program:
    """Fold each candidate declaration into an earlier one with the same body.

    Bodies compare up to recursion-variable renaming and branch order; merging
    can make further bodies equal, so this runs to a fixpoint.
    """
    candidates = set(candidates)
    changed = True
    while changed:
        changed = False
        first_of: dict = {}
        for name, body in decls.items():
            key = shape_key(body)
            if key in first_of and name in candidates:
                keep = first_of[key]
                mapping = {name: keep}
                main = rename_calls(main, mapping)
                decls = Declarations(
                    (n, rename_calls(b, mapping)) for n, b in decls.items() if n != name
                )
                changed = True
                break
            first_of.setdefault(key, name)
    return Program(main, decls)


def lighten_all_orders(
    main: LightType, decls: Declarations = EMPTY, prefix: str = DEFAULT_PREFIX, limit: int = 10_000
) -> list[tuple[tuple, Program]]:
    """Every result reachable by eliminating sites in any order.

    Returns ``(order, program)`` pairs, ``order`` being the sequence of
    ``(owner, rendered site)`` choices made.  Stops after ``limit`` results.
    """
    results: list[tuple[tuple, Program]] = []

    def explore(prog: Program, namer: FreshNamer, order: tuple):
        if len(results) >= limit:
            return
        choices = list(all_sites(*prog))
        if not choices:
            results.append((order, prog))
            return
        for owner, site in choices:
            forked = namer.fork()
            nxt = apply_site(prog.main, prog.decls, owner, site, forked)
            explore(nxt, forked, order + ((owner, str(site)),))

    explore(Program(main, decls), FreshNamer(prefix, taken=set(decls)), ())
    return results
