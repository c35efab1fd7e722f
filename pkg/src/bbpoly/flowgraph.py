"""Abstract flow graphs: filterability, the numeric stratification
condition, and the cells-per-dimension census.

This layer accepts hand-authored graphs (not necessarily arising from a
polytope) so that non-filterable phenomena can be exercised; graphs built
from polytopes convert into it via ``from_orbit_graph``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import ConsistencyError, InvalidInput


@dataclass(frozen=True)
class FlowGraph:
    ambient_dim: int
    nodes: tuple      # (id, posDim, negDim) triples, ids are strings
    edges: tuple      # (src, dst) pairs

    def __post_init__(self):
        ids = [n[0] for n in self.nodes]
        if len(set(ids)) != len(ids):
            raise InvalidInput("duplicate node ids")
        known = set(ids)
        for nid, pos, neg in self.nodes:
            if not isinstance(nid, str):
                raise InvalidInput(f"node id {nid!r} is not a string")
            if pos < 0 or neg < 0:
                raise InvalidInput(f"node {nid} has a negative cell dimension")
        for src, dst in self.edges:
            if src == dst:
                raise InvalidInput(f"self-loop at {src!r}: flow graphs are loopless")
            if src not in known or dst not in known:
                raise InvalidInput(f"edge ({src!r}, {dst!r}) references unknown node")

    def pos_dim(self, nid: str) -> int:
        return self._dims()[nid][0]

    def neg_dim(self, nid: str) -> int:
        return self._dims()[nid][1]

    def _dims(self):
        return {nid: (pos, neg) for nid, pos, neg in self.nodes}

    def successors(self):
        out = {nid: [] for nid, _, _ in self.nodes}
        for src, dst in self.edges:
            out[src].append(dst)
        return {k: sorted(set(v)) for k, v in out.items()}

    def reversed(self) -> "FlowGraph":
        return FlowGraph(
            ambient_dim=self.ambient_dim,
            nodes=tuple((nid, neg, pos) for nid, pos, neg in self.nodes),
            edges=tuple((dst, src) for src, dst in self.edges),
        )

    def to_json_dict(self) -> dict:
        return {
            "ambientDim": self.ambient_dim,
            "nodes": [
                {"id": nid, "posDim": pos, "negDim": neg}
                for nid, pos, neg in self.nodes
            ],
            "edges": [[src, dst] for src, dst in self.edges],
        }


def flowgraph_from_json(data: dict) -> FlowGraph:
    """Parse the interchange format; unknown keys are ignored."""
    try:
        ambient = data["ambientDim"]
        nodes = tuple(
            (str(n["id"]), int(n["posDim"]), int(n["negDim"])) for n in data["nodes"]
        )
        edges = tuple((str(a), str(b)) for a, b in data["edges"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed flow graph JSON: {exc}") from exc
    if not isinstance(ambient, int) or ambient < 0:
        raise InvalidInput("ambientDim must be a nonnegative integer")
    return FlowGraph(ambient_dim=ambient, nodes=nodes, edges=edges)


def from_orbit_graph(og) -> FlowGraph:
    """Convert a polytope orbit graph; vertex indices become string ids."""
    nodes = tuple(
        (str(p), pos, neg) for p, (pos, neg) in sorted(og.node_dims.items())
    )
    edges = tuple((str(e.src), str(e.dst)) for e in og.edges)
    return FlowGraph(ambient_dim=og.dim, nodes=nodes, edges=edges)


def _shortest_cycle(G: FlowGraph):
    """Shortest directed cycle, by BFS from every node; ties resolved by the
    smallest starting id, then by the BFS's sorted neighbor order."""
    succ = G.successors()
    best = None
    for start in sorted(succ):
        parent = {}
        dist = {start: 0}
        queue = deque([start])
        found = None
        while queue:
            node = queue.popleft()
            for nxt in succ[node]:
                if nxt == start:
                    found = node
                    queue.clear()
                    break
                if nxt not in dist:
                    dist[nxt] = dist[node] + 1
                    parent[nxt] = node
                    queue.append(nxt)
        if found is None:
            continue
        path = [found]
        while path[-1] != start:
            path.append(parent[path[-1]])
        path.reverse()
        if best is None or len(path) < len(best):
            best = path
    return best


def is_filterable(G: FlowGraph):
    """(True, topological order) when acyclic, else (False, shortest cycle).

    The topological order resolves ties by node id, so it is deterministic.
    """
    succ = G.successors()
    indeg = {nid: 0 for nid in succ}
    for src, dst in set(G.edges):
        indeg[dst] += 1
    ready = sorted(nid for nid, k in indeg.items() if k == 0)
    order = []
    while ready:
        node = ready.pop(0)
        order.append(node)
        changed = False
        for nxt in succ[node]:
            indeg[nxt] -= 1
            if indeg[nxt] == 0:
                ready.append(nxt)
                changed = True
        if changed:
            ready.sort()
    if len(order) == len(G.nodes):
        return True, order
    cycle = _shortest_cycle(G)
    if cycle is None:
        raise ConsistencyError("non-acyclic graph but no cycle found")
    return False, cycle


def numeric_strat_condition(G: FlowGraph):
    """True iff negDim(p) + posDim(q) exceeds the ambient dimension on
    every edge p -> q; else (False, violating edges)."""
    dims = G._dims()
    bad = [
        (src, dst)
        for src, dst in G.edges
        if dims[src][1] + dims[dst][0] <= G.ambient_dim
    ]
    bad.sort()
    return not bad, bad


def missing_dimensions(G: FlowGraph) -> list:
    present = {pos for _, pos, _ in G.nodes}
    return [d for d in range(G.ambient_dim + 1) if d not in present]


def cells_per_dimension(G: FlowGraph, require_complete=None) -> dict:
    """Histogram of positive cell dimensions.

    For filterable graphs the theory guarantees a cell in every dimension
    0..ambientDim, so by default that is asserted exactly when the graph is
    filterable; pass ``require_complete=False`` to merely report.
    """
    histogram = {}
    for _, pos, _ in G.nodes:
        histogram[pos] = histogram.get(pos, 0) + 1
    if require_complete is None:
        require_complete = is_filterable(G)[0]
    if require_complete:
        missing = missing_dimensions(G)
        if missing:
            raise ConsistencyError(
                f"filterable graph is missing cells of dimensions {missing}"
            )
    return dict(sorted(histogram.items()))


def strong_product(G: FlowGraph, H: FlowGraph) -> FlowGraph:
    """Strong product: edges move in one factor, the other, or both at once.
    Cell dimensions add, matching the product rule for decompositions."""
    nodes = tuple(
        (f"({a},{b})", pa + pb, na + nb)
        for a, pa, na in G.nodes
        for b, pb, nb in H.nodes
    )
    g_succ = set(G.edges)
    h_succ = set(H.edges)
    edges = []
    for a, _, _ in G.nodes:
        for b, _, _ in H.nodes:
            for a2, _, _ in G.nodes:
                for b2, _, _ in H.nodes:
                    move_a = (a, a2) in g_succ
                    move_b = (b, b2) in h_succ
                    if (move_a and move_b) or (move_a and b == b2) or (a == a2 and move_b):
                        edges.append((f"({a},{b})", f"({a2},{b2})"))
    return FlowGraph(
        ambient_dim=G.ambient_dim + H.ambient_dim,
        nodes=nodes,
        edges=tuple(sorted(set(edges))),
    )
