"""Random well-formed (light) global types for property tests and sweeps."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .core import (
    Branch,
    Branching,
    Call,
    Declarations,
    End,
    LightType,
    Program,
    Rec,
    Sort,
    Var,
)

SORTS = (Sort.UNIT, Sort.NAT, Sort.STR, Sort.BOOL)


@dataclass(frozen=True)
class GenConfig:
    max_depth: int = 6
    n_roles: int = 4
    max_branches: int = 3
    max_recs: int = 2
    # chance that a branching is a single unit-payload message
    p_redundant: float = 0.35
    p_rec: float = 0.08
    p_stop: float = 0.12
    p_call: float = 0.15

    @property
    def roles(self) -> tuple[str, ...]:
        return tuple("abcd"[: self.n_roles]) if self.n_roles <= 4 else tuple(f"r{i}" for i in range(self.n_roles))


class _Gen:
    def __init__(self, rng: random.Random, cfg: GenConfig, callable_names: tuple = ()):
        self.rng = rng
        self.cfg = cfg
        self.recs_left = cfg.max_recs
        self.callable = callable_names
        self.var_counter = 0

    def leaf(self, guarded: list) -> LightType:
        r = self.rng.random()
        if guarded and r < 0.3:
            return Var(self.rng.choice(guarded))
        if self.callable and r < 0.55:
            return Call(self.rng.choice(self.callable))
        return End()

    def type_(self, depth: int, bound: dict) -> LightType:
        guarded = [v for v, g in bound.items() if g]
        if depth <= 0:
            return self.leaf(guarded)
        r = self.rng.random()
        if r < self.cfg.p_stop:
            return self.leaf(guarded)
        r -= self.cfg.p_stop
        if self.callable and r < self.cfg.p_call:
            return Call(self.rng.choice(self.callable))
        if self.callable:
            r -= self.cfg.p_call
        if self.recs_left and r < self.cfg.p_rec:
            self.recs_left -= 1
            self.var_counter += 1
            var = f"t{self.var_counter}"
            return Rec(var, self.type_(depth - 1, {**bound, var: False}))
        return self.branching(depth, bound)

    def branching(self, depth: int, bound: dict) -> Branching:
        rng = self.rng
        sender, receiver = rng.sample(self.cfg.roles, 2)
        inner = {v: True for v in bound}
        if rng.random() < self.cfg.p_redundant:
            label = f"l{rng.randrange(6)}"
            return Branching(sender, receiver, (Branch(label, Sort.UNIT, self.type_(depth - 1, inner)),))
        k = rng.randint(1, self.cfg.max_branches)
        labels = rng.sample(range(6), k)
        branches = tuple(
            Branch(f"l{n}", rng.choice(SORTS), self.type_(depth - 1, inner)) for n in labels
        )
        return Branching(sender, receiver, branches)


def random_global(rng: random.Random, cfg: Optional[GenConfig] = None) -> LightType:
    """A closed, call-free, guarded type within the bounds of ``cfg``."""
    cfg = cfg or GenConfig()
    return _Gen(rng, cfg).type_(cfg.max_depth, {})


def random_program(rng: random.Random, cfg: Optional[GenConfig] = None, max_decls: int = 3) -> Program:
    """A main type plus an acyclic table of declarations.

    Declaration ``d<i>`` only calls ``d<j>`` with ``j > i``, so the call
    graph is acyclic by construction; main may call any of them.
    """
    cfg = cfg or GenConfig()
    n = rng.randint(0, max_decls)
    names = [f"d{i}" for i in range(n)]
    entries = []
    for i in reversed(range(n)):
        body = _Gen(rng, cfg, tuple(names[i + 1:])).type_(max(cfg.max_depth - 2, 1), {})
        entries.append((names[i], body))
    entries.reverse()
    main = _Gen(rng, cfg, tuple(names)).type_(cfg.max_depth, {})
    return Program(main, Declarations(entries))


def corpus(seed: int, n: int, cfg: Optional[GenConfig] = None) -> list[LightType]:
    rng = random.Random(seed)
    return [random_global(rng, cfg) for _ in range(n)]
