"""Request sequences, the evolving per-node color sets f(v), validity
checking, and demand / peak-load statistics.

Colors are positive integers starting at 1.  A cancellation names the node
and the color to remove; the optional recolor directive moves one other
color of the same node (Algorithm-2 style 0-recoloring).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import MalformedInstanceError, MalformedLogError
from .graph import Graph, maximal_cliques, clique_weight


@dataclass(frozen=True)
class Request:
    node: str
    op: str  # "color" | "cancel"
    cancel_color: int | None = None

    def __post_init__(self):
        if self.op not in ("color", "cancel"):
            raise MalformedInstanceError(f"unknown op {self.op!r}")
        if self.op == "cancel" and (self.cancel_color is None or self.cancel_color < 1):
            raise MalformedInstanceError("cancel request needs a color >= 1")


@dataclass(frozen=True)
class Instance:
    graph: Graph
    requests: tuple[Request, ...]
    name: str = "instance"

    def __post_init__(self):
        node_set = set(self.graph.nodes)
        for r in self.requests:
            if r.node not in node_set:
                raise MalformedInstanceError(f"request to unknown node {r.node!r}")

    @property
    def n(self) -> int:
        return len(self.requests)

    def has_cancellations(self) -> bool:
        return any(r.op == "cancel" for r in self.requests)


@dataclass(frozen=True)
class ColorAction:
    color: int


@dataclass(frozen=True)
class CancelAction:
    # recolor = (old_color, new_color) at the cancelled node, or None
    recolor: tuple[int, int] | None = None


@dataclass(frozen=True)
class Violation:
    step: int
    kind: str  # "edge-conflict" | "node-duplicate" | "bad-cancel" | "invalid-color"
    node: str
    color: int | None = None
    other_node: str | None = None


@dataclass(frozen=True)
class ColoringState:
    graph: Graph
    f: dict = field(default_factory=dict)  # node -> frozenset of live colors
    step: int = 0

    def colors_at(self, v) -> frozenset:
        return self.f.get(v, frozenset())

    def max_color(self) -> int:
        return max((max(s) for s in self.f.values() if s), default=0)


def _check_assignable(state: ColoringState, v: str, color: int, step: int):
    """Return a Violation if giving color to v is illegal, else None."""
    if color < 1:
        return Violation(step=step, kind="invalid-color", node=v, color=color)
    if color in state.colors_at(v):
        return Violation(step=step, kind="node-duplicate", node=v, color=color)
    for u in state.graph.neighbors(v):
        if color in state.colors_at(u):
            return Violation(step=step, kind="edge-conflict", node=v, color=color, other_node=u)
    return None


def apply_step(state: ColoringState, request: Request, action):
    """Advance the state by one served request.

    Returns the new ColoringState, or a Violation if the action is illegal.
    The input state is never mutated.
    """
    step = state.step + 1
    v = request.node
    live = set(state.colors_at(v))

    if request.op == "color":
        if not isinstance(action, ColorAction):
            return Violation(step=step, kind="invalid-color", node=v)
        bad = _check_assignable(state, v, action.color, step)
        if bad is not None:
            return bad
        live.add(action.color)
    else:
        if not isinstance(action, CancelAction):
            return Violation(step=step, kind="bad-cancel", node=v, color=request.cancel_color)
        c = request.cancel_color
        if c not in live:
            return Violation(step=step, kind="bad-cancel", node=v, color=c)
        live.discard(c)
        if action.recolor is not None:
            old, new = action.recolor
            if old not in live:
                return Violation(step=step, kind="bad-cancel", node=v, color=old)
            live.discard(old)
            interim = replace(state, f={**state.f, v: frozenset(live)}, step=step)
            bad = _check_assignable(interim, v, new, step)
            if bad is not None:
                return bad
            live.add(new)

    new_f = dict(state.f)
    new_f[v] = frozenset(live)
    return replace(state, f=new_f, step=step)


def validate_full(instance: Instance, actions):
    """Replay all requests through apply_step.

    Returns None if the whole log is legal, otherwise the first Violation.
    Raises MalformedLogError if the log length does not match.
    """
    if len(actions) != instance.n:
        raise MalformedLogError(
            f"log has {len(actions)} actions for {instance.n} requests"
        )
    state = ColoringState(graph=instance.graph)
    for request, action in zip(instance.requests, actions):
        state = apply_step(state, request, action)
        if isinstance(state, Violation):
            return state
    return None


def demand(instance: Instance) -> dict:
    """n_v: color requests per node.  Cancellations never decrement it."""
    counts = {v: 0 for v in instance.graph.nodes}
    for r in instance.requests:
        if r.op == "color":
            counts[r.node] += 1
    return counts


def peak_clique_load(instance: Instance) -> int:
    """Maximum over time and maximal cliques of the live request count."""
    cliques = maximal_cliques(instance.graph)
    live = {v: 0 for v in instance.graph.nodes}
    peak = 0
    for i, r in enumerate(instance.requests):
        if r.op == "color":
            live[r.node] += 1
        else:
            if live[r.node] == 0:
                raise MalformedInstanceError(
                    f"step {i + 1}: cancellation at {r.node!r} with no live request"
                )
            live[r.node] -= 1
        load = max((sum(live[v] for v in c) for c in cliques), default=0)
        peak = max(peak, load)
    return peak


def demand_clique_weight(instance: Instance) -> int:
    """clique_weight of the instance's total demand (ignores cancellations)."""
    return clique_weight(instance.graph, demand(instance))
