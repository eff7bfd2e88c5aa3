"""Locating redundant interactions.

An interaction ``r1 -> r2 : l() . L`` is redundant when it offers a single
unit-payload label and sits in a context reachable from the root through
branch continuations only: never under ``rec``, never behind ``call``.

A context path is the tuple of labels chosen at each branching on the way
down; its text form is ``label1/label2/...`` and ``<root>`` for the empty path.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Branching, Code, Diagnostic, LightType, SltError

ContextPath = tuple[str, ...]

ROOT_TEXT = "<root>"


def render_path(path: ContextPath) -> str:
    return "/".join(path) if path else ROOT_TEXT


def parse_path(text: str) -> ContextPath:
    text = text.strip()
    if text in ("", "/", ROOT_TEXT):
        return ()
    return tuple(text.strip("/").split("/"))


@dataclass(frozen=True)
class RedundantSite:
    path: ContextPath
    sender: str
    receiver: str
    label: str
    continuation: LightType

    def __str__(self):
        return f"{self.sender}->{self.receiver}:{self.label}() at {render_path(self.path)}"


def node_at(t: LightType, path: ContextPath) -> LightType:
    """Follow ``path`` from ``t``; raises ``SltError(SITE_STALE)`` when it leaves the tree."""
    node = t
    for i, label in enumerate(path):
        b = node.branch(label) if isinstance(node, Branching) else None
        if b is None:
            raise stale(f"path {render_path(path)} breaks at step {i + 1} ({label})")
        node = b.cont
    return node


def stale(message: str) -> SltError:
    return SltError(Diagnostic(Code.SITE_STALE, message))


def site_matches(node: LightType, site: RedundantSite) -> bool:
    return (
        isinstance(node, Branching)
        and node.is_singleton_unit
        and node.sender == site.sender
        and node.receiver == site.receiver
        and node.branches[0].label == site.label
        and node.branches[0].cont == site.continuation
    )


def find_redundant(t: LightType) -> list[RedundantSite]:
    """All redundant sites of ``t`` in depth-first, branch-order (pre-order) order."""
    sites: list[RedundantSite] = []

    def walk(node: LightType, path: ContextPath):
        if not isinstance(node, Branching):
            return
        if node.is_singleton_unit:
            b = node.branches[0]
            sites.append(RedundantSite(path, node.sender, node.receiver, b.label, b.cont))
        for b in node.branches:
            walk(b.cont, path + (b.label,))

    walk(t, ())
    return sites


def site_at(t: LightType, path: ContextPath) -> RedundantSite:
    """The redundant site addressed by ``path``, or ``SltError(SITE_STALE)``."""
    node = node_at(t, path)
    if not (isinstance(node, Branching) and node.is_singleton_unit):
        raise stale(f"no redundant interaction at {render_path(path)}")
    b = node.branches[0]
    return RedundantSite(path, node.sender, node.receiver, b.label, b.cont)
