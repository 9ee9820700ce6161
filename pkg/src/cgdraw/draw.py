"""Drawing constructors for edge-edge-only and edge-region-only drawings,
the cluster-spanning tree, and the geometric crossing counters.

Counting rules: an edge meeting a region boundary k times contributes
floor(k/2) edge-region crossings (a single piercing is free); two non-nested
regions whose set difference has c connected components contribute c - 1
region-region crossings.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import ClusteredGraph, ROOT, edge_key, validate

Edge = tuple[str, str]


class NonPlanar(ValueError):
    pass


class NotCConnected(ValueError):
    pass


class DegeneratePosition(ValueError):
    pass


@dataclass
class CrossingReport:
    alpha: int = 0
    beta: int = 0
    gamma: int = 0
    detail: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "gamma": self.gamma,
            "detail": [list(x) for x in self.detail],
        }


@dataclass
class GeometricDrawing:
    points: dict[str, tuple[float, float]]
    edges: list[Edge]
    regions: dict[str, list[tuple[float, float]]]  # cluster -> convex polygon
    cg: ClusteredGraph | None = None

    def to_dict(self) -> dict:
        return {
            "points": {v: list(p) for v, p in sorted(self.points.items())},
            "edges": [list(e) for e in sorted(self.edges)],
            "regions": {c: [list(p) for p in poly] for c, poly in sorted(self.regions.items())},
        }


# ---------------------------------------------------------------------------
# <alpha,0,0>: convex placement
# ---------------------------------------------------------------------------

def cluster_order(cg: ClusteredGraph) -> list[str]:
    """Vertex order keeping every cluster's vertices consecutive: a DFS of
    the inclusion tree, direct members first, children in sorted order."""
    out: list[str] = []
    direct: dict[str, list[str]] = {c: [] for c in cg.parent}
    for v in sorted(cg.vertices):
        direct[cg.membership[v]].append(v)

    def walk(c: str):
        out.extend(direct[c])
        for child in cg.children(c):
            walk(child)

    walk(ROOT)
    return out


def _chords_cross(pos: dict[str, int], e1: Edge, e2: Edge) -> bool:
    a, b = sorted((pos[e1[0]], pos[e1[1]]))
    c, d = sorted((pos[e2[0]], pos[e2[1]]))
    return a < c < b < d or c < a < d < b


def construct_a00(cg: ClusteredGraph) -> tuple[GeometricDrawing, CrossingReport]:
    """All vertices on a convex curve (a parabola at integer abscissae),
    straight edges, clusters as slightly inflated convex hulls.

    Works for any underlying graph, planar or not; the report counts the
    exact chord crossings and certifies beta = gamma = 0.
    """
    from shapely.geometry import LineString, MultiPoint, Point

    order = cluster_order(cg)
    pos = {v: i for i, v in enumerate(order)}
    points = {v: (float(i), float(i) * float(i)) for v, i in pos.items()}

    hulls = {}
    for c in cg.clusters():
        if c == ROOT:
            continue
        vs = cg.vertex_set(c)
        if not vs:
            continue
        geoms = [Point(points[v]) for v in sorted(vs)]
        hulls[c] = MultiPoint([g.coords[0] for g in geoms]).convex_hull

    segments = {e: LineString([points[e[0]], points[e[1]]]) for e in sorted(cg.edges)}

    # clearance: nothing that must stay off a region may come closer than r
    clearance = 1.0
    for c, hull in hulls.items():
        vs = cg.vertex_set(c)
        for e, seg in segments.items():
            if e[0] in vs or e[1] in vs:
                continue
            clearance = min(clearance, seg.distance(hull))
        for c2, hull2 in hulls.items():
            if c2 <= c or cg.is_ancestor(c, c2) or cg.is_ancestor(c2, c):
                continue
            clearance = min(clearance, hull.distance(hull2))

    regions = {}
    for c, hull in hulls.items():
        r = clearance / (3.0 + cg.depth(c))
        poly = hull.buffer(r, quad_segs=4)
        regions[c] = [tuple(p) for p in poly.exterior.coords]

    alpha = 0
    detail = []
    edges = sorted(cg.edges)
    for i, e1 in enumerate(edges):
        for e2 in edges[i + 1:]:
            if set(e1) & set(e2):
                continue
            if _chords_cross(pos, e1, e2):
                alpha += 1
                detail.append(("ee", e1, e2))

    drawing = GeometricDrawing(points, edges, regions, cg)
    return drawing, CrossingReport(alpha=alpha, detail=detail)


# ---------------------------------------------------------------------------
# cluster spanning structure
# ---------------------------------------------------------------------------

@dataclass
class ClusterSpanningTree:
    edges: list[Edge]
    in_g: dict[Edge, bool]

    def auxiliary(self) -> list[Edge]:
        return [e for e in self.edges if not self.in_g[e]]

    def induced(self, vs: set[str]) -> list[Edge]:
        return [e for e in self.edges if e[0] in vs and e[1] in vs]


class _DSU:
    def __init__(self):
        self.p: dict[str, str] = {}

    def find(self, x):
        self.p.setdefault(x, x)
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.p[ra] = rb
        return True


def _clusters_bottom_up(cg: ClusteredGraph) -> list[str]:
    return sorted(cg.clusters(), key=lambda c: -cg.depth(c))


def cluster_spanning_tree(cg: ClusteredGraph, mode: str) -> ClusterSpanningTree:
    """Spanning tree whose restriction to every cluster is connected.

    ``c_connected`` mode uses graph edges only (Kruskal per cluster, bottom
    up); ``general`` mode joins the child structures of each cluster with
    auxiliary edges that need not exist in the graph.
    """
    if mode not in ("general", "c_connected"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "c_connected" and not validate(cg).is_c_connected:
        raise NotCConnected("instance is not c-connected")

    dsu = _DSU()
    tree: list[Edge] = []
    in_g: dict[Edge, bool] = {}

    if mode == "c_connected":
        for c in _clusters_bottom_up(cg):
            vs = cg.vertex_set(c)
            for e in sorted(cg.edges):
                if e[0] in vs and e[1] in vs and dsu.union(*e):
                    tree.append(e)
                    in_g[e] = True
    else:
        for c in _clusters_bottom_up(cg):
            # one representative per child part (child cluster or direct vertex)
            parts: list[str] = [v for v in sorted(cg.vertices) if cg.membership[v] == c]
            for child in cg.children(c):
                cvs = cg.vertex_set(child)
                if cvs:
                    parts.append(min(cvs))
            if not parts:
                continue
            anchor = parts[0]
            for other in parts[1:]:
                if dsu.union(anchor, other):
                    e = edge_key(anchor, other)
                    tree.append(e)
                    in_g[e] = e in cg.edges
    return ClusterSpanningTree(tree, in_g)


# ---------------------------------------------------------------------------
# <0,beta,0>
# ---------------------------------------------------------------------------

@dataclass
class BetaPlan:
    embedding: "object"
    tree: ClusterSpanningTree
    ledger: dict[tuple[Edge, str], int]
    beta: int

    def to_dict(self) -> dict:
        return {
            "embedding": self.embedding.to_json(),
            "tree": [
                {"edge": list(e), "in_graph": self.tree.in_g[e]} for e in sorted(self.tree.edges)
            ],
            "ledger": [
                {"edge": list(e), "cluster": c, "crossings": k}
                for (e, c), k in sorted(self.ledger.items())
            ],
            "beta": self.beta,
        }


def beta_closed_form(cg: ClusteredGraph, tree: ClusterSpanningTree) -> int:
    """Sum over non-tree edges of the number of non-root clusters containing
    both endpoints (the exact crossing count of the c-connected layout)."""
    total = 0
    tset = set(tree.edges)
    for e in sorted(cg.edges):
        if e in tset:
            continue
        for c in cg.clusters():
            if c == ROOT:
                continue
            vs = cg.vertex_set(c)
            if e[0] in vs and e[1] in vs:
                total += 1
    return total


def construct_0b0(cg: ClusteredGraph) -> tuple[BetaPlan, CrossingReport]:
    from . import embedding as emb

    rep = validate(cg)
    if not rep.is_planar:
        raise NonPlanar("underlying graph is not planar")
    rs = emb.planar_embed(cg.vertices, cg.edges)

    ledger: dict[tuple[Edge, str], int] = {}
    if rep.is_c_connected:
        tree = cluster_spanning_tree(cg, "c_connected")
        tset = set(tree.edges)
        for e in sorted(cg.edges):
            if e in tset:
                continue
            for c in cg.clusters():
                if c == ROOT:
                    continue
                vs = cg.vertex_set(c)
                if e[0] in vs and e[1] in vs:
                    ledger[(e, c)] = ledger.get((e, c), 0) + 1
    else:
        tree = cluster_spanning_tree(cg, "general")
        fs = emb.faces(rs)
        dual_adj: dict[int, list[tuple[int, Edge]]] = {}
        for f1, f2, e in emb.dual_graph(rs)[1]:
            dual_adj.setdefault(f1, []).append((f2, e))
            dual_adj.setdefault(f2, []).append((f1, e))
        for aux in sorted(tree.auxiliary()):
            crossed = _route_dual(fs, dual_adj, aux)
            clusters = [
                c for c in cg.clusters()
                if c != ROOT
                and aux[0] in cg.vertex_set(c) and aux[1] in cg.vertex_set(c)
            ]
            for e1 in crossed:
                for c in clusters:
                    ledger[(e1, c)] = ledger.get((e1, c), 0) + 1

    beta = sum(ledger.values())
    detail = [("er", e, c, k) for (e, c), k in sorted(ledger.items())]
    return BetaPlan(rs, tree, ledger, beta), CrossingReport(beta=beta, detail=detail)


def _route_dual(fs, dual_adj, aux: Edge) -> list[Edge]:
    """Edges of G crossed when routing the auxiliary edge through faces
    (breadth-first, fewest crossings)."""
    from collections import deque

    src = fs.incidence[aux[0]]
    dst = fs.incidence[aux[1]]
    if src & dst:
        return []
    prev: dict[int, tuple[int, Edge]] = {}
    seen = set(src)
    q = deque(sorted(src))
    while q:
        f = q.popleft()
        if f in dst:
            path = []
            while f in prev:
                f0, e = prev[f]
                path.append(e)
                f = f0
            return list(reversed(path))
        for f2, e in sorted(dual_adj.get(f, [])):
            if f2 not in seen:
                seen.add(f2)
                prev[f2] = (f, e)
                q.append(f2)
    raise AssertionError("dual graph not connected")  # pragma: no cover


# ---------------------------------------------------------------------------
# geometric counting
# ---------------------------------------------------------------------------

def _boundary_hits(seg, poly) -> int:
    """Number of proper intersection points between a segment and a region
    boundary; non-point overlap means degenerate position."""
    inter = seg.intersection(poly.exterior)
    if inter.is_empty:
        return 0
    if inter.geom_type == "Point":
        return 1
    if inter.geom_type == "MultiPoint":
        return len(inter.geoms)
    raise DegeneratePosition(f"segment overlaps boundary: {inter.geom_type}")


def count_crossings_geometric(d: GeometricDrawing, cg: ClusteredGraph | None = None) -> CrossingReport:
    from shapely.geometry import LineString, Polygon

    cg = cg or d.cg
    segments = {e: LineString([d.points[e[0]], d.points[e[1]]]) for e in d.edges}
    polys = {c: Polygon(coords) for c, coords in d.regions.items()}

    report = CrossingReport()

    edges = sorted(segments)
    for i, e1 in enumerate(edges):
        for e2 in edges[i + 1:]:
            if set(e1) & set(e2):
                continue
            inter = segments[e1].intersection(segments[e2])
            if inter.is_empty:
                continue
            if inter.geom_type != "Point":
                raise DegeneratePosition("edges overlap")
            report.alpha += 1
            report.detail.append(("ee", e1, e2))

    for e, seg in segments.items():
        for c, poly in sorted(polys.items()):
            k = _boundary_hits(seg, poly)
            if k >= 2:
                n = k // 2
                report.beta += n
                report.detail.append(("er", e, c, n))

    for c1 in sorted(polys):
        for c2 in sorted(polys):
            if c2 <= c1:
                continue
            if cg is not None and (cg.is_ancestor(c1, c2) or cg.is_ancestor(c2, c1)):
                continue
            diff = polys[c1].difference(polys[c2])
            if diff.is_empty:
                comps = 0
            elif diff.geom_type == "Polygon":
                comps = 1
            else:
                comps = len(diff.geoms)
            n = max(0, comps - 1)
            if n:
                report.gamma += n
                report.detail.append(("rr", c1, c2, n))
    return report
