"""Clustered-graph data model, validation, and the ``.cg`` text format.

A clustered graph is a simple graph together with a rooted inclusion tree of
clusters; every vertex belongs to exactly one (leaf-most) cluster, and the
vertex set of an internal cluster is the union of its descendants' vertices.
The root cluster is implicit, always named ``root``, and contains everything.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

ROOT = "root"

_ID_RE = re.compile(r"^[A-Za-z0-9_]+$")


class CgError(ValueError):
    """Malformed clustered-graph input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def edge_key(u: str, v: str) -> tuple[str, str]:
    """Canonical (sorted) form of an undirected edge."""
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class ClusteredGraph:
    """Immutable clustered graph.

    ``parent`` maps every cluster id (including ``root``) to its parent
    cluster id; the root maps to ``None``.  ``membership`` maps each vertex
    to the cluster whose vertex set directly contains it.
    """

    vertices: frozenset[str]
    edges: frozenset[tuple[str, str]]
    parent: dict[str, str | None]
    membership: dict[str, str]

    def __post_init__(self):
        object.__setattr__(self, "parent", dict(self.parent))
        object.__setattr__(self, "membership", dict(self.membership))

    # -- tree helpers -----------------------------------------------------

    def clusters(self) -> list[str]:
        """All cluster ids including the root, in sorted order."""
        return sorted(self.parent)

    def children(self, mu: str) -> list[str]:
        return sorted(c for c, p in self.parent.items() if p == mu)

    def ancestors(self, mu: str) -> list[str]:
        """Proper ancestors of ``mu``, nearest first, ending at the root."""
        out = []
        p = self.parent[mu]
        while p is not None:
            out.append(p)
            p = self.parent[p]
        return out

    def is_ancestor(self, mu: str, nu: str) -> bool:
        """True iff ``mu`` is ``nu`` or a proper ancestor of ``nu``."""
        while nu is not None:
            if nu == mu:
                return True
            nu = self.parent[nu]
        return False

    def vertex_set(self, mu: str) -> set[str]:
        """V(mu): every vertex whose membership cluster lies under ``mu``."""
        if mu not in self.parent:
            raise CgError(f"unknown cluster {mu!r}")
        return {v for v in self.vertices if self.is_ancestor(mu, self.membership[v])}

    def adjacency(self) -> dict[str, set[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def depth(self, mu: str) -> int:
        return len(self.ancestors(mu))


def make_clustered_graph(
    vertices,
    edges,
    parent: dict[str, str | None],
    membership: dict[str, str],
) -> ClusteredGraph:
    """Validate structure and build an immutable ClusteredGraph."""
    vs = frozenset(vertices)
    es = set()
    for u, v in edges:
        if u == v:
            raise CgError(f"self-loop at {u!r}")
        if u not in vs or v not in vs:
            raise CgError(f"edge ({u!r}, {v!r}) references unknown vertex")
        es.add(edge_key(u, v))
    parent = dict(parent)
    parent.setdefault(ROOT, None)
    if parent[ROOT] is not None:
        raise CgError("root cluster must not have a parent")
    for c, p in parent.items():
        if c != ROOT and p not in parent:
            raise CgError(f"cluster {c!r} has unknown parent {p!r}")
    # reject cycles: walking up from any cluster must reach the root
    for c in parent:
        seen = set()
        cur = c
        while cur is not None:
            if cur in seen:
                raise CgError(f"cluster parent cycle through {c!r}")
            seen.add(cur)
            cur = parent[cur]
        if ROOT not in seen:
            raise CgError(f"cluster {c!r} not connected to root")
    for v in vs:
        if v not in membership:
            raise CgError(f"vertex {v!r} without cluster membership")
        if membership[v] not in parent:
            raise CgError(f"vertex {v!r} assigned to unknown cluster {membership[v]!r}")
    for v in membership:
        if v not in vs:
            raise CgError(f"membership references unknown vertex {v!r}")
    return ClusteredGraph(vs, frozenset(es), parent, dict(membership))


# ---------------------------------------------------------------------------
# .cg text format
# ---------------------------------------------------------------------------

def parse_clustered_graph(text: str) -> ClusteredGraph:
    """Parse the line-based ``.cg`` format.

    Grammar (whitespace-separated tokens, ``#`` starts a comment)::

        cg 1
        v <id>
        e <id> <id>
        c <cluster-id> <parent-cluster-id|root>
        m <vertex-id> <cluster-id>
    """
    vertices: list[str] = []
    edges: list[tuple[str, str]] = []
    parent: dict[str, str | None] = {ROOT: None}
    membership: dict[str, str] = {}
    header_seen = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if not header_seen:
            if tokens != ["cg", "1"]:
                raise CgError("expected header 'cg 1'", lineno)
            header_seen = True
            continue
        kind, args = tokens[0], tokens[1:]
        for ident in args:
            if not _ID_RE.match(ident):
                raise CgError(f"bad identifier {ident!r}", lineno)
        if kind == "v" and len(args) == 1:
            if args[0] in vertices:
                raise CgError(f"duplicate vertex {args[0]!r}", lineno)
            vertices.append(args[0])
        elif kind == "e" and len(args) == 2:
            u, v = args
            if u == v:
                raise CgError("self-loop", lineno)
            if edge_key(u, v) in {edge_key(a, b) for a, b in edges}:
                raise CgError(f"duplicate edge {u} {v}", lineno)
            edges.append((u, v))
        elif kind == "c" and len(args) == 2:
            cid, pid = args
            if cid == ROOT:
                raise CgError("'root' is reserved", lineno)
            if cid in parent:
                raise CgError(f"duplicate cluster {cid!r}", lineno)
            parent[cid] = pid
        elif kind == "m" and len(args) == 2:
            vid, cid = args
            if vid in membership:
                raise CgError(f"duplicate membership for vertex {vid!r}", lineno)
            membership[vid] = cid
        else:
            raise CgError(f"unrecognized line {line!r}", lineno)

    if not header_seen:
        raise CgError("empty input (missing 'cg 1' header)")
    for u, v in edges:
        if u not in vertices or v not in vertices:
            raise CgError(f"edge ({u}, {v}) references unknown vertex")
    try:
        return make_clustered_graph(vertices, edges, parent, membership)
    except CgError:
        raise
    except ValueError as exc:  # pragma: no cover - defensive
        raise CgError(str(exc))


def serialize(cg: ClusteredGraph) -> str:
    """Canonical text form: sections in v/e/c/m order, ids sorted."""
    lines = ["cg 1"]
    lines += [f"v {v}" for v in sorted(cg.vertices)]
    lines += [f"e {u} {v}" for u, v in sorted(cg.edges)]
    lines += [f"c {c} {cg.parent[c]}" for c in sorted(cg.parent) if c != ROOT]
    lines += [f"m {v} {cg.membership[v]}" for v in sorted(cg.vertices)]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Validation and cluster subgraphs
# ---------------------------------------------------------------------------

@dataclass
class ValidationReport:
    is_planar: bool
    is_c_connected: bool
    is_flat: bool
    is_biconnected: bool
    violations: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "is_planar": self.is_planar,
            "is_c_connected": self.is_c_connected,
            "is_flat": self.is_flat,
            "is_biconnected": self.is_biconnected,
            "violations": list(self.violations),
        }


def cluster_subgraph(cg: ClusteredGraph, mu: str) -> tuple[set[str], set[tuple[str, str]]]:
    """(V(mu), edge set of the induced subgraph G(mu))."""
    vs = cg.vertex_set(mu)
    es = {e for e in cg.edges if e[0] in vs and e[1] in vs}
    return vs, es


def _is_connected(vertices: set[str], edges: set[tuple[str, str]]) -> bool:
    if not vertices:
        return True
    adj: dict[str, set[str]] = {v: set() for v in vertices}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen = set()
    stack = [next(iter(sorted(vertices)))]
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        stack.extend(adj[v] - seen)
    return len(seen) == len(vertices)


def validate(cg: ClusteredGraph) -> ValidationReport:
    import networkx as nx

    g = nx.Graph()
    g.add_nodes_from(cg.vertices)
    g.add_edges_from(cg.edges)

    is_planar = bool(nx.check_planarity(g)[0]) if len(cg.vertices) else True
    is_biconnected = bool(len(cg.vertices) >= 3 and nx.is_biconnected(g))

    is_flat = True
    for c in cg.parent:
        if c == ROOT:
            continue
        if cg.parent[c] != ROOT:
            is_flat = False
            break

    is_c_connected = True
    violations: list[str] = []
    for c in cg.clusters():
        vs, es = cluster_subgraph(cg, c)
        if not _is_connected(vs, es):
            is_c_connected = False
            violations.append(f"cluster {c} induces a disconnected subgraph")

    return ValidationReport(is_planar, is_c_connected, is_flat, is_biconnected, violations)
