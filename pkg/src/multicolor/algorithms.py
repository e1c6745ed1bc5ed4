"""The online players.  Each is a deterministic function of the graph, the
request prefix seen so far, and the advice bits read so far; all return one
action per request (a ColorAction, or a CancelAction for cancellations).
"""

from __future__ import annotations

from .advice import AdviceTape, dec
from .errors import AdviceError, CapacityExceededError, DomainError
from .graph import Graph
from .instance import CancelAction, ColorAction, Request

BORROW_FROM = {"R": "G", "G": "B", "B": "R"}

# class -> residue of its interleaved private colors (mod 3)
_CLASS_RESIDUE = {"R": 1, "G": 2, "B": 0}


def _require_kind(graph: Graph, kinds, algo):
    if graph.kind not in kinds:
        raise DomainError(f"{algo} needs a {'/'.join(kinds)} graph, got {graph.kind}")


def _greedy_color(graph, f, v, m):
    """One GreedyOptAdvice step: bottom-up for L nodes, top-down for U."""
    live = f[v]
    if graph.partition[v] == "U":
        color = m if not live else min(live) - 1
    else:
        color = max(live, default=0) + 1
    if color < 1 or color > m:
        raise CapacityExceededError(
            f"node {v!r} needs color {color} outside 1..{m}; advice value too small"
        )
    return color


def greedy_opt(graph: Graph, tape: AdviceTape, requests) -> list:
    """Strictly 1-competitive bipartite player; advice is enc(Opt)."""
    _require_kind(graph, ("path", "bipartite"), "greedy_opt")
    m = dec(tape)
    f = {v: set() for v in graph.nodes}
    out = []
    for r in requests:
        if r.op != "color":
            raise DomainError("greedy_opt does not handle cancellations")
        color = _greedy_color(graph, f, r.node, m)
        f[r.node].add(color)
        out.append(ColorAction(color))
    return out


def greedy_truncated(graph: Graph, tape: AdviceTape, requests, b: int) -> list:
    """Reads the b high-order bits of Opt and enc(a); reconstructs
    m = 2^a * Opt_b + 2^a - 1 (or m = Opt exactly when a = 0) and plays
    greedy_opt with that m."""
    _require_kind(graph, ("path", "bipartite"), "greedy_truncated")
    if b < 1:
        raise DomainError(f"b must be >= 1, got {b}")
    raw = tape.read_fixed(b)
    a = dec(tape)
    m = raw if a == 0 else (raw << a) + (1 << a) - 1
    f = {v: set() for v in graph.nodes}
    out = []
    for r in requests:
        if r.op != "color":
            raise DomainError("greedy_truncated does not handle cancellations")
        color = _greedy_color(graph, f, r.node, m)
        f[r.node].add(color)
        out.append(ColorAction(color))
    return out


def greedy_cancel(graph: Graph, tape: AdviceTape, requests) -> list:
    """GreedyOptAdvice extended with 0-recoloring for cancellations.

    Invariant after every step: an L node with k live colors holds exactly
    {1..k}, a U node holds exactly {m-k+1..m}.  A cancellation recolors at
    most one request (the one holding the node's extreme color).
    """
    _require_kind(graph, ("path", "bipartite"), "greedy_cancel")
    m = dec(tape)
    f = {v: set() for v in graph.nodes}
    out = []
    for r in requests:
        v = r.node
        if r.op == "color":
            color = _greedy_color(graph, f, v, m)
            f[v].add(color)
            out.append(ColorAction(color))
            continue
        c = r.cancel_color
        if c not in f[v]:
            raise DomainError(f"cancel of absent color {c} at {v!r}")
        extreme = min(f[v]) if graph.partition[v] == "U" else max(f[v])
        if c == extreme:
            out.append(CancelAction())
        else:
            # the request holding the extreme color takes the freed color
            out.append(CancelAction(recolor=(extreme, c)))
        f[v].discard(extreme)
    return out


def trivial(graph: Graph, tape: AdviceTape, requests) -> list:
    """Reads w = ceil(log2(Opt+1)) once, then w bits per request naming the
    color directly."""
    w = dec(tape)
    out = []
    for r in requests:
        if r.op != "color":
            raise DomainError("trivial does not handle cancellations")
        out.append(ColorAction(tape.read_fixed(w) + 1))
    return out


def _private_palette(residue: int, size: int) -> list[int]:
    """First `size` colors of the residue-interleaved class palette.
    Residue 1 -> 1,4,7,...; residue 2 -> 2,5,8,...; residue 0 -> 3,6,9,..."""
    start = residue if residue != 0 else 3
    return [start + 3 * i for i in range(size)]


def fpa(graph: Graph, tape: AdviceTape, requests, strict_safety: bool = False) -> list:
    """Fixed preference allocation with advice c = ceil(omega/2).

    Private palettes: R = 1..c, G = c+1..2c, B = 2c+1..3c.  Overflow borrows
    top-down from the next class.  The candidate set excludes only the node's
    own colors, as the pseudocode states; strict_safety additionally excludes
    neighbors' colors (and must never change the output on valid advice).
    """
    _require_kind(graph, ("hexagonal",), "fpa")
    c = dec(tape)
    base = {"R": 0, "G": c, "B": 2 * c}
    palette = {cls: set(range(base[cls] + 1, base[cls] + c + 1)) for cls in base}
    f = {v: set() for v in graph.nodes}
    out = []
    for r in requests:
        v = r.node
        if r.op != "color":
            raise DomainError("fpa does not handle cancellations")
        excluded = set(f[v])
        if strict_safety:
            for u in graph.neighbors(v):
                excluded |= f[u]
        if len(f[v]) < c:
            candidates = palette[graph.class_of[v]] - excluded
            if not candidates:
                raise CapacityExceededError(f"no private color left at {v!r}")
            color = min(candidates)
        else:
            candidates = palette[BORROW_FROM[graph.class_of[v]]] - excluded
            if not candidates:
                raise CapacityExceededError(f"no borrowable color left at {v!r}")
            color = max(candidates)
        f[v].add(color)
        out.append(ColorAction(color))
    return out


def hex43(graph: Graph, tape: AdviceTape, requests) -> list:
    """4/3-competitive hexagonal player driven by the phase bit stream.

    Phase 1 uses interleaved private palettes that grow on demand; the first
    stop bit anywhere freezes the palette size at q.  Phase 2 borrows the
    highest borrow-class color free at the node and all its neighbors.
    Phase 3 colors within [3q+1, 4q+1], top-down or bottom-up per the
    partition bit.
    """
    _require_kind(graph, ("hexagonal",), "hex43")
    size = 0          # current private palette size (per class)
    frozen = False    # set once any node leaves phase 1
    phase = {v: 1 for v in graph.nodes}
    p3min = {}
    p3max = {}
    upper = {}
    f = {v: set() for v in graph.nodes}
    out = []

    for r in requests:
        v = r.node
        if r.op != "color":
            raise DomainError("hex43 does not handle cancellations")
        cls = graph.class_of[v]
        if phase[v] == 1:
            if tape.read_bit() == 0:
                own = set(_private_palette(_CLASS_RESIDUE[cls], size)) - f[v]
                if not own:
                    if frozen:
                        raise AdviceError(
                            f"{v!r} needs a private palette beyond the frozen size {size}"
                        )
                    size += 1
                    own = set(_private_palette(_CLASS_RESIDUE[cls], size)) - f[v]
                color = min(own)
                f[v].add(color)
                out.append(ColorAction(color))
                continue
            s = len(f[v])
            phase[v] = 2
            p3min[v] = 3 * s + 1
            p3max[v] = 4 * s + 1
            frozen = True
        if phase[v] == 2:
            if tape.read_bit() == 0:
                lender = set(_private_palette(_CLASS_RESIDUE[BORROW_FROM[cls]], size))
                lender -= f[v]
                for u in graph.neighbors(v):
                    lender -= f[u]
                if not lender:
                    raise CapacityExceededError(f"no borrowable color left at {v!r}")
                color = max(lender)
                f[v].add(color)
                out.append(ColorAction(color))
                continue
            upper[v] = tape.read_bit()
            phase[v] = 3
        # phase 3
        window = set(range(p3min[v], p3max[v] + 1)) - f[v]
        if not window:
            raise CapacityExceededError(f"phase-3 window exhausted at {v!r}")
        color = max(window) if upper[v] == 1 else min(window)
        f[v].add(color)
        out.append(ColorAction(color))
    return out


def run_player(algo: str, graph: Graph, tape: AdviceTape, requests, b: int | None = None):
    """Dispatch by algorithm id; returns the action list."""
    if algo == "greedy_opt":
        return greedy_opt(graph, tape, requests)
    if algo == "greedy_truncated":
        if b is None:
            raise DomainError("greedy_truncated needs the truncation width b")
        return greedy_truncated(graph, tape, requests, b)
    if algo == "greedy_cancel":
        return greedy_cancel(graph, tape, requests)
    if algo == "trivial":
        return trivial(graph, tape, requests)
    if algo == "fpa":
        return fpa(graph, tape, requests)
    if algo == "hex43":
        return hex43(graph, tape, requests)
    raise DomainError(f"unknown algorithm {algo!r}")


ALGORITHMS = ("greedy_opt", "greedy_truncated", "greedy_cancel", "trivial", "fpa", "hex43")
