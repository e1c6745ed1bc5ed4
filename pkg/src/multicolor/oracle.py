"""Offline side: exact optimum search, the bipartite closed form, and the
advice-tape generators for every online player.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .advice import AdviceTape, enc
from .errors import (
    BudgetExceededError,
    DomainError,
    InternalConsistencyError,
    MalformedInstanceError,
    MultiColorError,
)
from .graph import Graph, clique_weight
from .instance import Instance, demand, demand_clique_weight, peak_clique_load

DEFAULT_MAX_NODES = 14
DEFAULT_MAX_REQUESTS = 40

BORROW_FROM = {"R": "G", "G": "B", "B": "R"}


@dataclass(frozen=True)
class OptWitness:
    opt_value: int
    coloring: dict  # node -> frozenset of colors


def opt_exact(instance: Instance, max_nodes: int = DEFAULT_MAX_NODES,
              max_requests: int = DEFAULT_MAX_REQUESTS) -> OptWitness:
    """Exact minimum palette size with a witness coloring.

    Iterative deepening on the palette size C, starting from the clique
    lower bound.  Nodes are assigned in order of decreasing demand; within
    a node, candidate color sets are tried in lexicographic order, so the
    witness is deterministic.  Intended for small instances only.
    """
    if instance.has_cancellations():
        raise DomainError("opt_exact handles cancellation-free instances only")
    dem = demand(instance)
    omega = clique_weight(instance.graph, dem)
    active = [v for v in instance.graph.nodes if dem[v] > 0]
    total = sum(dem.values())
    if len(active) > max_nodes or total > max_requests:
        raise BudgetExceededError(
            f"instance too large for exact search ({len(active)} demanded nodes, "
            f"{total} requests); best lower bound is {omega}",
            lower_bound=omega,
        )
    if not active:
        return OptWitness(opt_value=0, coloring={v: frozenset() for v in instance.graph.nodes})

    order = sorted(active, key=lambda v: (-dem[v], v))
    g = instance.graph
    neighbor_cache = {v: sorted(set(g.neighbors(v)) & set(active)) for v in order}
    from .graph import maximal_cliques
    cliques = [tuple(c & set(active)) for c in maximal_cliques(g)]
    cliques = [c for c in cliques if len(c) >= 2]

    c = omega
    while True:
        witness = _search(order, dem, neighbor_cache, cliques, c)
        if witness is not None:
            coloring = {v: witness.get(v, frozenset()) for v in g.nodes}
            return OptWitness(opt_value=c, coloring=coloring)
        c += 1


def _candidate_sets(avail, k, used):
    """Feasible color sets for one node, in lexicographic order, with value
    symmetry broken: never-used colors are interchangeable, so only prefixes
    of the fresh colors need to be tried."""
    used_avail = [c for c in avail if c in used]
    fresh = [c for c in avail if c not in used]
    out = []
    for s in range(min(k, len(used_avail)), -1, -1):
        j = k - s
        if j > len(fresh):
            continue
        head = tuple(fresh[:j])
        for comb in combinations(used_avail, s):
            out.append(tuple(sorted(comb + head)))
    out.sort()
    return out


def _search(order, dem, neighbors, cliques, palette_size):
    assigned = {}
    demanded = set(order)

    def avail_for(v):
        blocked = set()
        for u in neighbors[v]:
            blocked |= assigned.get(u, frozenset())
        return [c for c in range(1, palette_size + 1) if c not in blocked]

    def forward_ok(start):
        rest = order[start:]
        avail = {}
        for v in rest:
            avail[v] = set(avail_for(v))
            if len(avail[v]) < dem[v]:
                return False
        # Hall-style necessary condition per clique: within a clique the
        # color sets are pairwise disjoint, so the open demands must fit in
        # the union of the open availabilities
        open_set = set(rest)
        for clique in cliques:
            open_nodes = [v for v in clique if v in open_set]
            if len(open_nodes) < 2:
                continue
            union = set()
            for v in open_nodes:
                union |= avail[v]
            if sum(dem[v] for v in open_nodes) > len(union):
                return False
        return True

    def backtrack(idx):
        if idx == len(order):
            return True
        v = order[idx]
        avail = avail_for(v)
        if len(avail) < dem[v]:
            return False
        open_neighbors = any(
            u in demanded and u not in assigned for u in neighbors[v]
        )
        if not open_neighbors:
            # nothing later is constrained by this choice: the
            # lexicographically smallest feasible set suffices
            candidates = [tuple(avail[: dem[v]])]
        else:
            used = set()
            for s in assigned.values():
                used |= s
            candidates = _candidate_sets(avail, dem[v], used)
        for cand in candidates:
            assigned[v] = frozenset(cand)
            if forward_ok(idx + 1) and backtrack(idx + 1):
                return True
            del assigned[v]
        return False

    if backtrack(0):
        return dict(assigned)
    return None


def opt_bipartite(instance: Instance) -> int:
    """Closed-form optimum for path/bipartite graphs: the clique weight
    (max node demand, max summed demand over an edge)."""
    if instance.graph.kind not in ("path", "bipartite"):
        raise DomainError(f"opt_bipartite needs a path or bipartite graph, got {instance.graph.kind}")
    if instance.has_cancellations():
        raise DomainError("opt_bipartite handles cancellation-free instances only")
    return demand_clique_weight(instance)


# ---------------------------------------------------------------------------
# advice generators

def advice_greedyopt(instance: Instance) -> AdviceTape:
    """enc(Opt) for the strictly 1-competitive bipartite player."""
    tape = AdviceTape()
    tape.write_int(opt_bipartite(instance))
    return tape


def advice_truncated(instance: Instance, b: int) -> AdviceTape:
    """b raw high-order bits of Opt followed by enc(a), a = bits(Opt) - b.

    If Opt fits in b bits the raw field is Opt left-padded with zeros and
    a = 0, which the reader uses to detect the exact case.
    """
    if b < 1:
        raise DomainError(f"b must be >= 1, got {b}")
    opt = opt_bipartite(instance)
    total_bits = opt.bit_length()
    tape = AdviceTape()
    if total_bits <= b:
        a = 0
        raw = opt
    else:
        a = total_bits - b
        raw = opt >> a
    tape.write((raw >> (b - 1 - i)) & 1 for i in range(b))
    tape.write_int(a)
    return tape


def advice_cancel(instance: Instance) -> AdviceTape:
    """enc(peak clique load); peak load <= Opt, and the reader's interval
    invariants only need m to dominate every instantaneous edge load."""
    if instance.graph.kind not in ("path", "bipartite"):
        raise DomainError(f"advice_cancel needs a path or bipartite graph, got {instance.graph.kind}")
    tape = AdviceTape()
    tape.write_int(peak_clique_load(instance))
    return tape


def advice_trivial(instance: Instance, max_nodes: int = DEFAULT_MAX_NODES,
                   max_requests: int = DEFAULT_MAX_REQUESTS) -> AdviceTape:
    """enc(w) plus one w-bit field per request, w = ceil(log2(Opt+1)).

    Each field is (color - 1) of the request under the exact witness,
    replayed per node in increasing color order.
    """
    witness = opt_exact(instance, max_nodes=max_nodes, max_requests=max_requests)
    w = witness.opt_value.bit_length()
    tape = AdviceTape()
    tape.write_int(w)
    pending = {v: sorted(witness.coloring[v]) for v in instance.graph.nodes}
    served = {v: 0 for v in instance.graph.nodes}
    for r in instance.requests:
        color = pending[r.node][served[r.node]]
        served[r.node] += 1
        tape.write((color - 1 >> (w - 1 - i)) & 1 for i in range(w))
    return tape


def advice_fpa(instance: Instance) -> AdviceTape:
    """enc(ceil(omega/2)) for the fixed-preference-allocation player."""
    if instance.graph.kind != "hexagonal":
        raise DomainError("advice_fpa needs a hexagonal graph")
    omega = demand_clique_weight(instance)
    tape = AdviceTape()
    tape.write_int((omega + 1) // 2)
    return tape


# ---------------------------------------------------------------------------
# the 4/3 plan and its bit stream

@dataclass(frozen=True)
class Plan43:
    omega: int
    q: int  # floor((omega+1)/3), the final private-palette size
    phase1_count: dict  # node -> min(n_v, q)
    borrow_count: dict  # node -> colors borrowed in phase 2
    b_v: dict
    n_prime: dict
    in_g2: dict  # node -> bool
    upper: dict  # node -> 0/1, defined for G2 nodes


def plan_43(instance: Instance) -> Plan43:
    """Per-node phase counts of the offline 4/3-approximation, plus a
    2-coloring of the bipartite leftover graph G2.

    Fails loudly (InternalConsistencyError) if G2 contains a triangle or an
    odd cycle, which the theory rules out.
    """
    if instance.graph.kind != "hexagonal":
        raise DomainError("plan_43 needs a hexagonal graph")
    if instance.has_cancellations():
        raise DomainError("plan_43 handles cancellation-free instances only")
    g = instance.graph
    dem = demand(instance)
    omega = clique_weight(g, dem)
    q = (omega + 1) // 3

    n_prime, b_v, phase1, borrow, in_g2 = {}, {}, {}, {}, {}
    for v in g.nodes:
        lender = BORROW_FROM[g.class_of[v]]
        lender_demands = [dem[u] for u in g.neighbors(v) if g.class_of[u] == lender]
        n_prime[v] = max(lender_demands, default=0)
        b_v[v] = max(0, q - n_prime[v])
        phase1[v] = min(dem[v], q)
        borrow[v] = min(dem[v] - q, b_v[v]) if dem[v] > q else 0
        in_g2[v] = dem[v] - phase1[v] - borrow[v] > 0

    g2_nodes = sorted(v for v in g.nodes if in_g2[v])
    pending = {v: dem[v] - phase1[v] - borrow[v] for v in g2_nodes}
    for u, w in combinations(g2_nodes, 2):
        if g.adjacent(u, w):
            if any(g.adjacent(u, x) and g.adjacent(w, x) for x in g2_nodes if x not in (u, w)):
                raise InternalConsistencyError("triangle in G2")
            if pending[u] + pending[w] > omega - 2 * q:
                raise InternalConsistencyError("G2 edge exceeds the pending-pair bound")

    upper = _two_color(g, g2_nodes)
    return Plan43(omega=omega, q=q, phase1_count=phase1, borrow_count=borrow,
                  b_v=b_v, n_prime=n_prime, in_g2=in_g2, upper=upper)


def _two_color(g: Graph, g2_nodes):
    """BFS 2-coloring of the subgraph induced by g2_nodes; the smallest node
    of each component is lower (upper = 0)."""
    g2 = set(g2_nodes)
    upper = {}
    for root in g2_nodes:
        if root in upper:
            continue
        upper[root] = 0
        frontier = [root]
        while frontier:
            nxt = []
            for v in frontier:
                for u in g.neighbors(v):
                    if u not in g2:
                        continue
                    if u not in upper:
                        upper[u] = 1 - upper[v]
                        nxt.append(u)
                    elif upper[u] == upper[v]:
                        raise InternalConsistencyError("G2 is not bipartite")
            frontier = nxt
    return upper


def _advice_43_standard(instance: Instance, plan: Plan43) -> AdviceTape:
    tape = AdviceTape()
    phase = {v: 1 for v in instance.graph.nodes}
    used = {v: 0 for v in instance.graph.nodes}       # phase-1 colors given
    borrowed = {v: 0 for v in instance.graph.nodes}   # phase-2 colors given
    for r in instance.requests:
        v = r.node
        if phase[v] == 1:
            if used[v] < plan.phase1_count[v]:
                tape.write([0])
                used[v] += 1
                continue
            tape.write([1])
            phase[v] = 2
        if phase[v] == 2:
            if borrowed[v] < plan.borrow_count[v]:
                tape.write([0])
                borrowed[v] += 1
                continue
            tape.write([1, plan.upper[v]])
            phase[v] = 3
        # phase 3 requests consume no bits
    return tape


def _advice_43_with_quota(instance: Instance, palette_target: int) -> AdviceTape:
    """Alternative tape: grow the private palettes to palette_target, cap each
    node's private quota so no private color exceeds the 4/3 color bound, and
    borrow greedily while the borrowed index stays above every lender-class
    neighbor's quota.  The caller validates the resulting run."""
    g = instance.graph
    dem = demand(instance)
    omega = clique_weight(g, dem)
    bound = (4 * omega + 1) // 3
    start = {"R": 1, "G": 2, "B": 3}
    quota = {}
    for v in g.nodes:
        value_cap = max(0, (bound - start[g.class_of[v]]) // 3 + 1)
        quota[v] = min(dem[v], palette_target, value_cap)
    lender_cap = {}
    for v in g.nodes:
        lender = BORROW_FROM[g.class_of[v]]
        lender_cap[v] = max(
            (quota[u] for u in g.neighbors(v) if g.class_of[u] == lender), default=0
        )

    def simulate(upper):
        tape = AdviceTape()
        size = 0
        frozen = False
        phase = {v: 1 for v in g.nodes}
        used = {v: 0 for v in g.nodes}
        borrowed = {v: 0 for v in g.nodes}
        p3 = []
        for r in instance.requests:
            v = r.node
            if phase[v] == 1:
                can_serve = used[v] < quota[v] and (used[v] < size or not frozen)
                if can_serve:
                    if used[v] == size:
                        size += 1
                    tape.write([0])
                    used[v] += 1
                    continue
                tape.write([1])
                frozen = True
                phase[v] = 2
            if phase[v] == 2:
                if borrowed[v] < size - lender_cap[v]:
                    tape.write([0])
                    borrowed[v] += 1
                    continue
                if v not in upper:
                    p3.append(v)
                tape.write([1, upper.get(v, 0)])
                phase[v] = 3
        return tape, p3

    _, p3 = simulate({})
    upper = _two_color(g, sorted(p3))
    tape, _ = simulate(upper)
    return tape


def _within_43_bound(instance: Instance, tape: AdviceTape, bound: int) -> bool:
    """Run the phase-automaton player on a copy of the tape and check the
    output is valid and the max color stays within bound."""
    from .algorithms import hex43
    from .instance import ColorAction, validate_full

    try:
        actions = hex43(instance.graph, AdviceTape(bits=list(tape.bits)), instance.requests)
    except MultiColorError:
        return False
    if validate_full(instance, actions) is not None:
        return False
    max_color = max((a.color for a in actions if isinstance(a, ColorAction)), default=0)
    return max_color <= bound


def advice_43(instance: Instance) -> AdviceTape:
    """Bit stream for the phase automaton: zeros for private/borrow steps,
    stop bits at phase transitions, one partition bit per G2 node.
    Total length is at most n + 2|V|.

    The plan-derived tape can leave the max color at 4q+1, above the
    floor((4*omega+1)/3) target, when omega is not 1 mod 3 and the leftover
    bipartite part has an upper node.  In that case alternative tapes with a
    larger private palette are tried; the first one whose simulated run is
    valid and within the target wins, otherwise the standard tape is kept.
    """
    plan = plan_43(instance)
    tape = _advice_43_standard(instance, plan)
    bound = (4 * plan.omega + 1) // 3
    if _within_43_bound(instance, tape, bound):
        return tape
    for target in (plan.q + 1, plan.q + 2, plan.q + 3):
        try:
            candidate = _advice_43_with_quota(instance, target)
        except (InternalConsistencyError, DomainError):
            continue
        if _within_43_bound(instance, candidate, bound):
            return candidate
    return tape


def opt_value(instance: Instance, max_nodes: int = DEFAULT_MAX_NODES,
              max_requests: int = DEFAULT_MAX_REQUESTS):
    """Best available exact optimum: closed form for path/bipartite, the
    peak load for cancellation sequences, exact search otherwise.
    Returns None when the search budget is exceeded."""
    if instance.has_cancellations():
        if instance.graph.kind in ("path", "bipartite"):
            return peak_clique_load(instance)
        return None
    if instance.graph.kind in ("path", "bipartite"):
        return opt_bipartite(instance)
    try:
        return opt_exact(instance, max_nodes=max_nodes, max_requests=max_requests).opt_value
    except BudgetExceededError:
        return None
