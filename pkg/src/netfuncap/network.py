"""Single-receiver directed acyclic multigraphs and their cut machinery.

A network is a DAG with unit-capacity edges (parallel edges = repeated
(tail, head) pairs), an ordered list of source nodes, one receiver, and an
alphabet size q.  Cuts are edge subsets that separate at least one source
from the receiver; the separated index set I_C drives every bound computed
on top of this module.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import (
    BudgetExceeded,
    CyclicGraph,
    ReceiverIsSource,
    SourcelessLeaf,
    UnreachableReceiver,
    ValidationError,
)

DEFAULT_EDGE_BUDGET = 22


@dataclass(frozen=True)
class NetworkSpec:
    """Declarative form of a network, prior to validation.

    Edge repetition encodes parallel edges; each edge carries exactly n
    alphabet symbols per block once a code is fixed.
    """

    nodes: tuple
    edges: tuple
    sources: tuple
    receiver: str
    alphabet_size: int

    def __init__(self, nodes, edges, sources, receiver, alphabet_size):
        object.__setattr__(self, "nodes", tuple(nodes))
        object.__setattr__(self, "edges", tuple((t, h) for t, h in edges))
        object.__setattr__(self, "sources", tuple(sources))
        object.__setattr__(self, "receiver", receiver)
        object.__setattr__(self, "alphabet_size", int(alphabet_size))


@dataclass(frozen=True, order=True)
class Cut:
    """An edge subset together with the source indices it separates.

    ``separated`` holds 1-based source indices: i is present iff every
    directed path from source i to the receiver meets ``edge_set``.
    """

    edge_set: frozenset = field(compare=False)
    separated: frozenset = field(compare=False)
    sort_key: tuple = field(default=(), repr=False)

    def __init__(self, edge_set, separated):
        object.__setattr__(self, "edge_set", frozenset(edge_set))
        object.__setattr__(self, "separated", frozenset(separated))
        object.__setattr__(self, "sort_key", tuple(sorted(self.edge_set)))

    def __len__(self):
        return len(self.edge_set)


class Network:
    """Compiled network: dense node indices, adjacency, topological order.

    Instances are immutable after construction and safe to share across
    threads; every operation in this module is a pure function of one.
    """

    def __init__(self, spec: NetworkSpec):
        self.spec = spec
        self.alphabet_size = spec.alphabet_size

        if len(set(spec.nodes)) != len(spec.nodes):
            raise ValidationError("duplicate node ids")
        if len(set(spec.sources)) != len(spec.sources):
            raise ValidationError("duplicate source ids")
        if not spec.sources:
            raise ValidationError("at least one source required")
        if spec.alphabet_size < 2:
            raise ValidationError("alphabet size must be at least 2")

        # Dense indices in first-appearance order of the node list.
        self.node_ids = tuple(spec.nodes)
        self.node_index = {v: i for i, v in enumerate(self.node_ids)}
        for t, h in spec.edges:
            if t not in self.node_index or h not in self.node_index:
                raise ValidationError(f"edge ({t!r}, {h!r}) references unknown node")
        for sid in spec.sources:
            if sid not in self.node_index:
                raise ValidationError(f"unknown source node {sid!r}")
        if spec.receiver not in self.node_index:
            raise ValidationError(f"unknown receiver node {spec.receiver!r}")
        if spec.receiver in spec.sources:
            raise ReceiverIsSource(spec.receiver)

        self.num_nodes = len(self.node_ids)
        self.edges = tuple(
            (self.node_index[t], self.node_index[h]) for t, h in spec.edges
        )
        self.num_edges = len(self.edges)
        self.receiver = self.node_index[spec.receiver]
        self.sources = tuple(self.node_index[s] for s in spec.sources)
        self.num_sources = len(self.sources)

        out_e = [[] for _ in range(self.num_nodes)]
        in_e = [[] for _ in range(self.num_nodes)]
        for e, (t, h) in enumerate(self.edges):
            if t == h:
                raise CyclicGraph(f"self-loop at {self.node_ids[t]!r}")
            out_e[t].append(e)
            in_e[h].append(e)
        self._out_edges = tuple(tuple(es) for es in out_e)
        self._in_edges = tuple(tuple(es) for es in in_e)

        self.topo_order = self._topological_order()
        self._topo_pos = {v: i for i, v in enumerate(self.topo_order)}
        self._check_reaches_receiver()

        for v in range(self.num_nodes):
            if not self._in_edges[v] and v not in self.sources:
                raise SourcelessLeaf(self.node_ids[v])

        self._frontier_cache = None

    # -- structure accessors --------------------------------------------

    def out_edges(self, v: int) -> tuple:
        return self._out_edges[v]

    def in_edges(self, v: int) -> tuple:
        return self._in_edges[v]

    def tail(self, e: int) -> int:
        return self.edges[e][0]

    def head(self, e: int) -> int:
        return self.edges[e][1]

    def source_index(self, v: int) -> int:
        """1-based position of node v in the source ordering, or 0."""
        try:
            return self.sources.index(v) + 1
        except ValueError:
            return 0

    def topo_sorted_edges(self) -> tuple:
        """Edges ordered so every edge's tail precedes its head's edges."""
        return tuple(
            sorted(range(self.num_edges), key=lambda e: (self._topo_pos[self.edges[e][0]], e))
        )

    # -- construction checks ---------------------------------------------

    def _topological_order(self):
        indeg = [len(self._in_edges[v]) for v in range(self.num_nodes)]
        # Ties among ready nodes broken by node-id order for determinism.
        ready = sorted(
            (v for v in range(self.num_nodes) if indeg[v] == 0),
            key=lambda v: self.node_ids[v],
        )
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            touched = False
            for e in self._out_edges[v]:
                h = self.edges[e][1]
                indeg[h] -= 1
                if indeg[h] == 0:
                    ready.append(h)
                    touched = True
            if touched:
                ready.sort(key=lambda u: self.node_ids[u])
        if len(order) != self.num_nodes:
            raise CyclicGraph("edge list contains a directed cycle")
        return tuple(order)

    def _check_reaches_receiver(self):
        seen = {self.receiver}
        queue = deque([self.receiver])
        while queue:
            v = queue.popleft()
            for e in self._in_edges[v]:
                t = self.edges[e][0]
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
        if len(seen) != self.num_nodes:
            missing = min(
                self.node_ids[v] for v in range(self.num_nodes) if v not in seen
            )
            raise UnreachableReceiver(missing)

    # -- reachability helper ----------------------------------------------

    def reaches_receiver_without(self, removed: frozenset) -> set:
        """Node set that still reaches the receiver once ``removed`` edges are gone."""
        seen = {self.receiver}
        queue = deque([self.receiver])
        while queue:
            v = queue.popleft()
            for e in self._in_edges[v]:
                if e in removed:
                    continue
                t = self.edges[e][0]
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
        return seen


def compile_network(spec: NetworkSpec) -> Network:
    """Validate a NetworkSpec and return its compiled form.

    Pure: the same spec always yields an identical Network (edge indices
    keep the spec's edge positions, node indices follow first appearance).
    """
    return Network(spec)


# Spec-facing alias for the operation name.
compile = compile_network


def classify_cut(net: Network, edge_set) -> Cut | None:
    """Classify an edge subset; return None when it separates no source.

    The separated index set is recomputed from scratch by reachability in
    the graph with the candidate edges removed.
    """
    removed = frozenset(edge_set)
    for e in removed:
        if not 0 <= e < net.num_edges:
            raise ValidationError(f"edge index {e} out of range")
    reach = net.reaches_receiver_without(removed)
    separated = frozenset(
        i + 1 for i, s in enumerate(net.sources) if s not in reach
    )
    if not separated:
        return None
    return Cut(removed, separated)


def _frontier_cuts(net: Network):
    """All cuts of the form E(U -> D) for receiver-closed node sets D.

    D ranges over node sets containing the receiver in which every member
    reaches the receiver using only D-internal edges; U is the complement.
    Removing the crossing edges E(U -> D) makes exactly U unreachable, so
    the separated set is sources & U with no further search.  Every cut C
    is dominated by the member with D = reach(receiver, G - C): that member
    has the same separated set and no more edges, hence taking minima of
    any objective that grows with |C| over this family equals the minimum
    over all cuts.  All inclusion-minimal cuts appear in the family.
    """
    if net._frontier_cache is not None:
        return net._frontier_cache
    if net.num_edges > DEFAULT_EDGE_BUDGET:
        raise BudgetExceeded(
            f"{net.num_edges} edges exceeds enumeration budget {DEFAULT_EDGE_BUDGET}"
        )

    n = net.num_nodes
    rho = net.receiver
    results = {}

    # Enumerate receiver-closed D by growing from {rho}; each candidate node
    # must have an edge into the current D.  The forbidden set makes each D
    # appear exactly once.
    def grow(d_mask, forbidden):
        u_nodes = [v for v in range(n) if not d_mask >> v & 1]
        if u_nodes:
            sep = frozenset(
                i + 1 for i, s in enumerate(net.sources) if not d_mask >> s & 1
            )
            if sep:
                crossing = frozenset(
                    e
                    for e, (t, h) in enumerate(net.edges)
                    if not d_mask >> t & 1 and d_mask >> h & 1
                )
                # A crossing set determines D (removal makes exactly U
                # unreachable), so repeated keys carry identical sep.
                results[crossing] = sep
        cands = []
        for v in range(n):
            if d_mask >> v & 1 or forbidden >> v & 1:
                continue
            if any(d_mask >> net.edges[e][1] & 1 for e in net._out_edges[v]):
                cands.append(v)
        blocked = forbidden
        for v in cands:
            grow(d_mask | 1 << v, blocked)
            blocked |= 1 << v
    grow(1 << rho, 0)

    cache = tuple(
        Cut(edges, sep)
        for edges, sep in sorted(results.items(), key=lambda kv: tuple(sorted(kv[0])))
    )
    net._frontier_cache = cache
    return cache


def enumerate_cuts(net: Network, edge_budget: int | None = None):
    """All minimal cuts: no proper subset separates the same source set.

    Dropping an edge from a minimal cut therefore strictly shrinks the
    separated set or stops being a cut.  Every such cut is a frontier cut
    (see ``_frontier_cuts``), and a non-minimal frontier cut always
    contains a smaller frontier cut with the same separated set, so
    filtering inside the frontier family is exact.  Minimal cuts suffice
    for the cut-set minima: any cut is dominated by a frontier cut with
    the same separated set and no more edges.  Order is deterministic:
    lexicographic by sorted edge indices.
    """
    budget = DEFAULT_EDGE_BUDGET if edge_budget is None else edge_budget
    if net.num_edges > budget:
        raise BudgetExceeded(
            f"{net.num_edges} edges exceeds enumeration budget {budget}"
        )
    candidates = sorted(_frontier_cuts(net), key=lambda c: (len(c), c.sort_key))
    kept = []
    for cut in candidates:
        if any(
            k.separated == cut.separated and k.edge_set < cut.edge_set
            for k in kept
        ):
            continue
        kept.append(cut)
    kept.sort(key=lambda c: c.sort_key)
    return kept


def min_edge_cut(net: Network, separate):
    """Fewest unit edges whose removal disconnects every listed source.

    ``separate`` holds 1-based source indices.  Computed by max-flow from a
    virtual super-source into the listed sources; augmenting paths are
    explored lowest-edge-index-first so the witness cut is reproducible.
    Returns (size, witness Cut); the witness separates at least the
    requested sources.
    """
    wanted = sorted(set(separate))
    if not wanted:
        raise ValidationError("need at least one source index")
    for i in wanted:
        if not 1 <= i <= net.num_sources:
            raise ValidationError(f"source index {i} out of range")

    num_edges = net.num_edges
    super_src = net.num_nodes
    # Arc table: per original edge one unit arc; super-source arcs get
    # effectively infinite capacity.  Arc 2*a is forward, 2*a+1 residual.
    arcs = list(net.edges)
    caps = [1] * num_edges
    for i in wanted:
        arcs.append((super_src, net.sources[i - 1]))
        caps.append(num_edges + 1)
    flow = [0] * len(arcs)
    out_arcs = [[] for _ in range(net.num_nodes + 1)]
    in_arcs = [[] for _ in range(net.num_nodes + 1)]
    for a, (t, h) in enumerate(arcs):
        out_arcs[t].append(a)
        in_arcs[h].append(a)

    def bfs_augment():
        parent = {super_src: None}
        queue = deque([super_src])
        while queue:
            v = queue.popleft()
            if v == net.receiver:
                break
            for a in out_arcs[v]:
                h = arcs[a][1]
                if h not in parent and flow[a] < caps[a]:
                    parent[h] = (a, +1)
                    queue.append(h)
            for a in in_arcs[v]:
                t = arcs[a][0]
                if t not in parent and flow[a] > 0:
                    parent[t] = (a, -1)
                    queue.append(t)
        if net.receiver not in parent:
            return parent, False
        v = net.receiver
        while parent[v] is not None:
            a, direction = parent[v]
            flow[a] += direction
            v = arcs[a][0] if direction > 0 else arcs[a][1]
        return parent, True

    value = 0
    while True:
        _, augmented = bfs_augment()
        if not augmented:
            break
        value += 1
    reachable, _ = bfs_augment()
    witness_edges = frozenset(
        e
        for e, (t, h) in enumerate(net.edges)
        if t in reachable and h not in reachable
    )
    witness = classify_cut(net, witness_edges)
    assert witness is not None and len(witness.edge_set) == value
    assert set(wanted) <= set(witness.separated)
    return value, witness


def is_multi_edge_tree(net: Network) -> bool:
    """True iff each non-receiver node's out-edges all enter one node."""
    for v in range(net.num_nodes):
        if v == net.receiver:
            continue
        heads = {net.edges[e][1] for e in net.out_edges(v)}
        if len(heads) != 1:
            return False
    return True
