"""Rooted SPQR-trees for biconnected graphs.

The tree is built straight from the recursive definition: root the
decomposition at a Q-node for a chosen reference edge, then repeatedly split
at the poles (parallel case), at cutvertices of the remainder (series case),
or at maximal separation pairs (rigid case).  Exhaustive separation-pair
search makes this O(n^2 * m) per node, which is fine at the scales this
project targets; no attempt is made at the linear-time algorithms.

Every skeleton edge is a record: either a real graph edge (only in Q-node
skeletons), a virtual edge pointing at a child node, or the virtual edge
standing for the rest of the graph (the parent side).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import edge_key

Edge = tuple[str, str]

PARENT = "parent"


class NotBiconnected(ValueError):
    pass


class EdgeNotPresent(ValueError):
    pass


class WrongKind(ValueError):
    pass


@dataclass
class SkelEdge:
    a: str
    b: str
    child: int | None = None  # child node id; None for the parent virtual edge
    real: Edge | None = None  # set on the Q-node's actual graph edge

    def key(self) -> Edge:
        return edge_key(self.a, self.b)

    def is_parent(self) -> bool:
        return self.child is None and self.real is None


@dataclass
class SpqrNode:
    id: int
    kind: str  # "S" | "P" | "Q" | "R"
    poles: tuple[str, str]
    skeleton: list[SkelEdge] = field(default_factory=list)
    parent: int | None = None

    def children(self) -> list[int]:
        return [e.child for e in self.skeleton if e.child is not None]

    def parent_edge(self) -> SkelEdge | None:
        for e in self.skeleton:
            if e.is_parent():
                return e
        return None


@dataclass
class SpqrTree:
    nodes: list[SpqrNode]
    root: int
    reference: Edge

    def node(self, i: int) -> SpqrNode:
        return self.nodes[i]

    def to_json(self) -> dict:
        return {
            "reference": list(self.reference),
            "root": self.root,
            "nodes": [
                {
                    "id": n.id,
                    "kind": n.kind,
                    "poles": list(n.poles),
                    "parent": n.parent,
                    "skeleton": [
                        {
                            "ends": [e.a, e.b],
                            "child": e.child,
                            "real": list(e.real) if e.real else None,
                            "parent_edge": e.is_parent(),
                        }
                        for e in n.skeleton
                    ],
                }
                for n in self.nodes
            ],
        }


# ---------------------------------------------------------------------------
# construction helpers
# ---------------------------------------------------------------------------

def _adj(edges: set[Edge]) -> dict[str, set[str]]:
    adj: dict[str, set[str]] = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return adj


def _components(vertices: set[str], edges: set[Edge], removed: set[str]) -> list[set[str]]:
    adj = _adj(edges)
    left = {v for v in vertices if v not in removed}
    comps = []
    seen: set[str] = set()
    for v in sorted(left):
        if v in seen:
            continue
        comp = set()
        stack = [v]
        while stack:
            x = stack.pop()
            if x in comp:
                continue
            comp.add(x)
            stack.extend(w for w in adj.get(x, ()) if w in left)
        seen |= comp
        comps.append(comp)
    return comps


def _is_biconnected(vertices: set[str], edges: set[Edge]) -> bool:
    import networkx as nx

    g = nx.Graph()
    g.add_nodes_from(vertices)
    g.add_edges_from(edges)
    return len(vertices) >= 3 and nx.is_biconnected(g)


def _articulation_points(edges: set[Edge]) -> set[str]:
    import networkx as nx

    g = nx.Graph()
    g.add_edges_from(edges)
    return set(nx.articulation_points(g))


class _Builder:
    def __init__(self):
        self.nodes: list[SpqrNode] = []

    def new_node(self, kind: str, poles: tuple[str, str]) -> SpqrNode:
        node = SpqrNode(len(self.nodes), kind, poles)
        self.nodes.append(node)
        return node

    # ---- the recursive decomposition -----------------------------------

    def decompose(self, edges: set[Edge], u: str, v: str) -> int:
        """Decompose the subgraph ``edges`` hanging between poles u, v (a
        virtual edge (u, v) stands for the rest of the graph)."""
        if len(edges) == 1:
            (e,) = edges
            assert set(e) == {u, v}
            q = self.new_node("Q", (u, v))
            q.skeleton = [SkelEdge(u, v, real=e), SkelEdge(u, v)]
            return q.id

        vertices = {x for e in edges for x in e}

        # Parallel case: the poles split the subgraph into k >= 2 parts
        parts = _components(vertices, edges, {u, v})
        direct = edge_key(u, v) in edges
        k = len(parts) + (1 if direct else 0)
        if k >= 2:
            p = self.new_node("P", (u, v))
            p.skeleton = [SkelEdge(u, v)]
            if direct:
                cid = self.decompose({edge_key(u, v)}, u, v)
                p.skeleton.append(SkelEdge(u, v, child=cid))
                self.nodes[cid].parent = p.id
            for comp in parts:
                sub = {e for e in edges if (set(e) - {u, v}) and set(e) <= comp | {u, v}}
                cid = self.decompose(sub, u, v)
                p.skeleton.append(SkelEdge(u, v, child=cid))
                self.nodes[cid].parent = p.id
            return p.id

        # Series case: cutvertices of the subgraph chain u to v
        cuts = _articulation_points(edges)
        if cuts:
            chain = self._block_chain(edges, u, v)
            s = self.new_node("S", (u, v))
            s.skeleton = [SkelEdge(u, v)]
            for (a, b, block_edges) in chain:
                cid = self.decompose(block_edges, a, b)
                s.skeleton.append(SkelEdge(a, b, child=cid))
                self.nodes[cid].parent = s.id
            return s.id

        # Rigid case: split at the maximal separation pairs
        return self._rigid(edges, vertices, u, v)

    def _block_chain(self, edges: set[Edge], u: str, v: str):
        """Blocks of the chain between u and v, as (pole_a, pole_b, edges)."""
        import networkx as nx

        g = nx.Graph()
        g.add_edges_from(edges)
        blocks = [frozenset(b) for b in nx.biconnected_component_edges(g)]
        cuts = set(nx.articulation_points(g))
        # walk from u to v through the block-cut chain
        chain = []
        pole = u
        used: set[frozenset] = set()
        while pole != v:
            nxt = None
            for b in blocks:
                if b in used:
                    continue
                verts = {x for e in b for x in e}
                if pole in verts:
                    nxt = b
                    break
            assert nxt is not None, "broken block chain"
            used.add(nxt)
            verts = {x for e in nxt for x in e}
            if v in verts:
                end = v
            else:
                ends = [c for c in verts & cuts if c != pole]
                # the cut vertex leading onward: the one that separates v off
                end = None
                for c in sorted(ends):
                    rest = {e for b2 in blocks if b2 not in used and b2 != nxt for e in b2}
                    comp_vs = {x for e in rest for x in e}
                    if c in comp_vs:
                        # candidate; confirm v reachable from c avoiding this block
                        if self._reaches(rest, c, v):
                            end = c
                            break
                assert end is not None, "broken block chain"
            chain.append((pole, end, {edge_key(*e) for e in nxt}))
            pole = end
        return chain

    @staticmethod
    def _reaches(edges: set[Edge] | set[frozenset], a: str, b: str) -> bool:
        adj = _adj({edge_key(*e) for e in edges})
        seen = set()
        stack = [a]
        while stack:
            x = stack.pop()
            if x == b:
                return True
            if x in seen:
                continue
            seen.add(x)
            stack.extend(adj.get(x, ()))
        return False

    def _rigid(self, edges: set[Edge], vertices: set[str], u: str, v: str) -> int:
        gprime = set(edges) | {edge_key(u, v)}
        gverts = vertices | {u, v}

        sep_pairs = []
        for s in sorted(gverts):
            for t in sorted(gverts):
                if s >= t:
                    continue
                comps = _components(gverts, gprime, {s, t})
                if len(comps) >= 2:
                    sep_pairs.append(((s, t), comps))

        def e_side(comps, s, t):
            for comp in comps:
                if (u in comp and u not in (s, t)) or (v in comp and v not in (s, t)):
                    return comp
            return None  # both reference endpoints are the pair itself

        maximal = []
        for (s, t), comps in sep_pairs:
            dominated = False
            for (s2, t2), comps2 in sep_pairs:
                if (s2, t2) == (s, t):
                    continue
                ce2 = e_side(comps2, s2, t2)
                for comp in comps2:
                    if comp is ce2:
                        continue
                    if {s, t} <= comp | {s2, t2}:
                        dominated = True
                        break
                if dominated:
                    break
            if not dominated:
                maximal.append(((s, t), comps))

        r = self.new_node("R", (u, v))
        r.skeleton = [SkelEdge(u, v)]
        consumed: set[Edge] = set()
        for (s, t), comps in maximal:
            ce = e_side(comps, s, t)
            child_edges = set()
            for comp in comps:
                if comp is ce:
                    continue
                child_edges |= {
                    e for e in edges if set(e) <= comp | {s, t} and set(e) - {s, t}
                }
            if edge_key(s, t) in edges:
                child_edges.add(edge_key(s, t))
            assert child_edges and not (child_edges & consumed), "overlapping split parts"
            consumed |= child_edges
            cid = self.decompose(child_edges, s, t)
            r.skeleton.append(SkelEdge(s, t, child=cid))
            self.nodes[cid].parent = r.id
        for e in sorted(edges - consumed):
            cid = self.decompose({e}, e[0], e[1])
            r.skeleton.append(SkelEdge(e[0], e[1], child=cid))
            self.nodes[cid].parent = r.id
        return r.id


def build_spqr(vertices, edges, reference: Edge) -> SpqrTree:
    """SPQR-tree of a biconnected graph, rooted at the reference edge."""
    vs = set(vertices)
    es = {edge_key(*e) for e in edges}
    ref = edge_key(*reference)
    if ref not in es:
        raise EdgeNotPresent(f"reference edge {ref} not in graph")
    if not _is_biconnected(vs, es):
        raise NotBiconnected("graph is not biconnected")

    b = _Builder()
    root = b.new_node("Q", ref)
    root.skeleton = [SkelEdge(ref[0], ref[1], real=ref)]
    if len(es) > 1:
        cid = b.decompose(es - {ref}, ref[0], ref[1])
        root.skeleton.append(SkelEdge(ref[0], ref[1], child=cid))
        b.nodes[cid].parent = root.id
    return SpqrTree(b.nodes, root.id, ref)


# ---------------------------------------------------------------------------
# queries
# ---------------------------------------------------------------------------

def pertinent(tree: SpqrTree, node_id: int) -> set[Edge]:
    """Edges of G obtained by recursively expanding every non-parent
    virtual edge of the node's skeleton."""
    node = tree.node(node_id)
    out: set[Edge] = set()
    for e in node.skeleton:
        if e.real is not None:
            out.add(e.real)
        elif e.child is not None:
            out |= pertinent(tree, e.child)
    return out


def pertinent_vertices(tree: SpqrTree, node_id: int) -> set[str]:
    return {x for e in pertinent(tree, node_id) for x in e}


def visible_nodes(tree: SpqrTree, node_id: int) -> list[tuple[int, int | None]]:
    """Children that are not S-nodes, plus children of S-node children;
    each entry is (node id, S-node it came through or None)."""
    node = tree.node(node_id)
    if node.kind not in ("P", "R"):
        raise WrongKind(f"visible_nodes needs a P- or R-node, got {node.kind}")
    out: list[tuple[int, int | None]] = []
    for cid in node.children():
        child = tree.node(cid)
        if child.kind == "S":
            out.extend((gid, cid) for gid in child.children())
        else:
            out.append((cid, None))
    return out
