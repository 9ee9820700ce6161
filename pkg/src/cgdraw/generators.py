"""Deterministic instance families used as fixtures and for growth checks.

Each family builds a valid ClusteredGraph; multigraph gadgets (bundles of
parallel edges between two hub vertices) are always exported subdivided into
length-2 paths, so outputs are simple graphs.

Size parameters: ``n`` means the natural size of the family (vertex count of
the cycle for the sun families, 3x the number of stacked triangles for the
nested-triangle families, total matched vertices for matching-k5, and so
on); for ``abc-sum`` and the ``osmosis-*`` templates it is the bundle
multiplicity m.
"""

from __future__ import annotations

import random

from .model import ClusteredGraph, ROOT, make_clustered_graph


class BadParameter(ValueError):
    pass


K5 = ("a", "b", "c", "d", "e")


def _pairs(keep=None, drop=()):
    out = []
    for i, u in enumerate(K5):
        for v in K5[i + 1:]:
            if keep is not None and (u, v) not in keep:
                continue
            if (u, v) in drop:
                continue
            out.append((u, v))
    return out


def _require(cond: bool, msg: str):
    if not cond:
        raise BadParameter(msg)


def gen(family: str, n: int | None = None, seed: int | None = None) -> ClusteredGraph:
    try:
        builder = _FAMILIES[family]
    except KeyError:
        raise BadParameter(f"unknown family {family!r}") from None
    return builder(n, seed)


# ---------------------------------------------------------------------------


def _abc_sum(m, seed):
    m = 1 if m is None else m
    _require(m >= 1, "abc-sum needs m >= 1")
    vertices = list(K5)
    edges = []
    parent = {}
    membership = {}
    for u in K5:
        parent[f"mu_{u}"] = ROOT
        membership[u] = f"mu_{u}"
    for u, v in _pairs():
        for i in range(1, m + 1):
            x, y = f"{u}{v}_{i}", f"{v}{u}_{i}"
            cl = f"mu_{u}{v}_{i}"
            vertices += [x, y]
            edges += [(u, x), (v, y)]
            parent[cl] = ROOT
            membership[x] = cl
            membership[y] = cl
    return make_clustered_graph(vertices, edges, parent, membership)


def _k5_minus_de(n, seed):
    n = 14 if n is None else n
    _require(n >= 14 and (n - 5) % 9 == 0, "k5-minus-de needs n = 9m + 5")
    m = (n - 5) // 9
    vertices = list(K5)
    edges = []
    membership = {v: "mu_1" for v in K5}
    membership["d"] = "mu_2"
    membership["e"] = "mu_3"
    for u, v in _pairs(drop=[("d", "e")]):
        for i in range(1, m + 1):
            s = f"s_{u}{v}_{i}"
            vertices.append(s)
            edges += [(u, s), (s, v)]
            membership[s] = "mu_1"
    parent = {"mu_1": ROOT, "mu_2": ROOT, "mu_3": ROOT}
    return make_clustered_graph(vertices, edges, parent, membership)


def _matching_k5(n, seed):
    n = 20 if n is None else n
    _require(n >= 20 and n % 20 == 0, "matching-k5 needs n divisible by 20")
    k = n // 20
    vertices, edges = [], []
    parent = {f"mu_{i}": ROOT for i in range(1, 6)}
    membership = {}
    for i in range(1, 6):
        for j in range(i + 1, 6):
            for t in range(1, k + 1):
                x, y = f"v_{i}_{j}_{t}", f"v_{j}_{i}_{t}"
                vertices += [x, y]
                edges.append((x, y))
                membership[x] = f"mu_{i}"
                membership[y] = f"mu_{j}"
    return make_clustered_graph(vertices, edges, parent, membership)


def _nested_triangles(n, flat: bool):
    n = 12 if n is None else n
    _require(n >= 6 and n % 3 == 0, "nested-triangles needs n divisible by 3")
    t = n // 3
    vertices = ["va", "vb"]
    edges = []
    for i in range(1, t + 1):
        a, b, c = f"a_{i}", f"b_{i}", f"c_{i}"
        vertices += [a, b, c]
        edges += [(a, b), (b, c), (a, c)]
        if i > 1:
            edges += [(f"a_{i-1}", a), (f"b_{i-1}", b), (f"c_{i-1}", c)]
    edges += [("va", "a_1"), ("va", "b_1"), ("va", "c_1")]
    edges += [("vb", f"a_{t}"), ("vb", f"b_{t}"), ("vb", f"c_{t}")]

    parent = {"mu_a": ROOT, "mu_b": ROOT}
    membership = {"va": "mu_a", "vb": "mu_b"}
    if flat:
        for i in range(1, t + 1):
            parent[f"mu_{i}"] = ROOT
            for x in ("a", "b", "c"):
                membership[f"{x}_{i}"] = f"mu_{i}"
    else:
        # mu_1 innermost, each mu_i nested inside mu_{i+1}
        for i in range(1, t + 1):
            parent[f"mu_{i}"] = f"mu_{i+1}" if i < t else ROOT
            for x in ("a", "b", "c"):
                membership[f"{x}_{i}"] = f"mu_{i}"
    return make_clustered_graph(vertices, edges, parent, membership)


def _sun(n, flat: bool):
    n = (8 if flat else 8) if n is None else n
    if flat:
        _require(n >= 4 and n % 2 == 0, "sun-flat needs even n >= 4")
    else:
        _require(n >= 4 and n % 4 == 0, "sun-nonflat needs n divisible by 4")
    vertices = [f"v_{i}" for i in range(1, n + 1)] + [f"u_{i}" for i in range(1, n + 1)]
    edges = []
    for i in range(1, n + 1):
        nxt = 1 if i == n else i + 1
        edges += [(f"v_{i}", f"u_{i}"), (f"u_{i}", f"v_{nxt}")]

    parent = {"mu_star": ROOT}
    membership = {f"v_{i}": "mu_star" for i in range(1, n + 1)}
    if flat:
        for i in range(1, n // 2 + 1):
            parent[f"mu_{i}"] = ROOT
            membership[f"u_{i}"] = f"mu_{i}"
            membership[f"u_{n//2 + i}"] = f"mu_{i}"
    else:
        # two nested chains: mu_1 in mu_3 in mu_5 ... and mu_2 in mu_4 ...
        for i in range(1, n + 1):
            parent[f"mu_{i}"] = f"mu_{i+2}" if i + 2 <= n else ROOT
            membership[f"u_{i}"] = f"mu_{i}"
    return make_clustered_graph(vertices, edges, parent, membership)


def _infeasible_parallel(n, seed):
    # two poles joined by four paths; the middle path carries one vertex of
    # each cluster, so it would need to sit next to all three other paths
    vertices = ["x", "y", "a1", "b1", "b2", "b3", "c1", "d1"]
    edges = [
        ("x", "a1"), ("a1", "y"),
        ("x", "b1"), ("b1", "b2"), ("b2", "b3"), ("b3", "y"),
        ("x", "c1"), ("c1", "y"),
        ("x", "d1"), ("d1", "y"),
    ]
    parent = {"mu_1": ROOT, "mu_2": ROOT, "mu_3": ROOT}
    membership = {
        "x": ROOT, "y": ROOT,
        "a1": "mu_1", "b1": "mu_1",
        "b2": "mu_2", "c1": "mu_2",
        "b3": "mu_3", "d1": "mu_3",
    }
    return make_clustered_graph(vertices, edges, parent, membership)


def _infeasible_triconnected(n, seed):
    # triangular bipyramid: the mu-triangle separates the two apexes in
    # every planar embedding
    vertices = ["t1", "t2", "t3", "p", "q"]
    edges = [("t1", "t2"), ("t2", "t3"), ("t1", "t3")]
    edges += [("p", t) for t in ("t1", "t2", "t3")]
    edges += [("q", t) for t in ("t1", "t2", "t3")]
    parent = {"mu": ROOT}
    membership = {"t1": "mu", "t2": "mu", "t3": "mu", "p": ROOT, "q": ROOT}
    return make_clustered_graph(vertices, edges, parent, membership)


def _osmosis(m, variant: int):
    m = 2 if m is None else m
    _require(m >= 1, "osmosis needs m >= 1")
    vertices = list(K5)
    edges = []
    parent = {}
    membership = {v: ROOT for v in K5}
    # K5(m) as length-2 paths, minus S(a,d), S(c,e), S(a,e), S(c,d)
    for u, v in _pairs(drop=[("a", "d"), ("c", "e"), ("a", "e"), ("c", "d")]):
        for i in range(1, m + 1):
            s = f"s_{u}{v}_{i}"
            vertices.append(s)
            edges += [(u, s), (s, v)]
            membership[s] = ROOT
    # gadget clusters M(a,e) and M(c,d)
    for (u, v) in (("a", "e"), ("c", "d")):
        for i in range(1, m + 1):
            x, y = f"{u}{v}_{i}", f"{v}{u}_{i}"
            cl = f"mu_{u}{v}_{i}"
            vertices += [x, y]
            edges += [(u, x), (v, y)]
            parent[cl] = ROOT
            membership[x] = cl
            membership[y] = cl
    if variant == 1:
        edges += [("a", "d"), ("c", "e")]
    elif variant == 2:
        edges += [("c", "e")]
        parent["mu_ad"] = ROOT
        membership["a"] = "mu_ad"
        membership["d"] = "mu_ad"
    else:
        parent["mu_ad"] = ROOT
        membership["a"] = "mu_ad"
        membership["d"] = "mu_ad"
        parent["mu_ce"] = ROOT
        membership["c"] = "mu_ce"
        membership["e"] = "mu_ce"
    return make_clustered_graph(vertices, edges, parent, membership)


def _cplanar_random(n, seed):
    """A random planar connected graph with clusters grown as connected,
    non-enclosing regions of a fixed embedding (so the instance is
    guaranteed feasible for region-region-only drawings)."""
    import networkx as nx

    from . import embedding as emb
    from . import rr

    n = 10 if n is None else n
    _require(n >= 3, "cplanar-random needs n >= 3")
    rng = random.Random(0 if seed is None else seed)

    for attempt in range(200):
        # random planar connected graph: a random tree plus planarity-
        # preserving extra edges
        names = [f"n{i}" for i in range(n)]
        edges = set()
        for i in range(1, n):
            j = rng.randrange(i)
            edges.add(tuple(sorted((names[i], names[j]))))
        extra = rng.randint(0, 2 * n)
        for _ in range(extra):
            u, v = rng.sample(names, 2)
            e = tuple(sorted((u, v)))
            if e in edges:
                continue
            g = nx.Graph(list(edges) + [e])
            if nx.check_planarity(g)[0]:
                edges.add(e)

        parent = {}
        membership = {v: ROOT for v in names}
        n_clusters = rng.randint(1, max(1, n // 3))
        free = set(names)
        for ci in range(n_clusters):
            if not free:
                break
            size = rng.randint(1, 3)
            start = rng.choice(sorted(free))
            grown = {start}
            adj = {v: set() for v in names}
            for a, b in edges:
                adj[a].add(b)
                adj[b].add(a)
            while len(grown) < size:
                frontier = sorted({w for v in grown for w in adj[v]} & free - grown)
                if not frontier:
                    break
                grown.add(rng.choice(frontier))
            cl = f"mu_{ci}"
            parent[cl] = ROOT
            for v in grown:
                membership[v] = cl
            free -= grown

        cg = make_clustered_graph(names, edges, parent, membership)
        try:
            rs = emb.planar_embed(cg.vertices, cg.edges)
        except emb.NonPlanar:  # pragma: no cover
            continue
        if rr.check_fixed_embedding(cg, rs).verdict == "feasible":
            return cg
        rng = random.Random(rng.random())
    raise BadParameter("could not grow a feasible clustering")  # pragma: no cover


_FAMILIES = {
    "abc-sum": _abc_sum,
    "k5-minus-de": _k5_minus_de,
    "matching-k5": _matching_k5,
    "nested-triangles-flat": lambda n, s: _nested_triangles(n, True),
    "nested-triangles-nonflat": lambda n, s: _nested_triangles(n, False),
    "sun-flat": lambda n, s: _sun(n, True),
    "sun-nonflat": lambda n, s: _sun(n, False),
    "infeasible-parallel": _infeasible_parallel,
    "infeasible-triconnected": _infeasible_triconnected,
    "osmosis-c1": lambda n, s: _osmosis(n, 1),
    "osmosis-c2": lambda n, s: _osmosis(n, 2),
    "osmosis-c3": lambda n, s: _osmosis(n, 3),
    "cplanar-random": _cplanar_random,
}

FAMILIES = sorted(_FAMILIES)
