"""Combinatorial planar embeddings.

An embedding is stored as a rotation system: for every vertex, the cyclic
order of its incident darts (directed edge-ends), plus a distinguished outer
face named by one of its darts.  Faces are recovered by the usual traversal
rule: from dart (u, v), continue with (v, w) where w follows u in the
rotation at v.

Disconnected graphs are supported under one fixed convention: all components
lie side by side in the outer face.  The outer face is therefore the union of
one boundary cycle per component (plus every isolated vertex).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

Dart = tuple[str, str]


class NonPlanar(ValueError):
    pass


class CapExceeded(ValueError):
    pass


class MalformedRotation(ValueError):
    pass


@dataclass(frozen=True)
class RotationSystem:
    """Cyclic neighbor order per vertex plus a dart naming the outer face."""

    rotation: dict[str, tuple[str, ...]]
    outer: Dart | None

    def vertices(self) -> list[str]:
        return sorted(self.rotation)

    def darts(self) -> list[Dart]:
        return sorted((u, v) for u, nbrs in self.rotation.items() for v in nbrs)

    def edges(self) -> set[tuple[str, str]]:
        return {tuple(sorted(d)) for d in self.darts()}

    def to_json(self) -> dict:
        return {
            "rotation": {v: list(nbrs) for v, nbrs in sorted(self.rotation.items())},
            "outer_face": list(self.outer) if self.outer else None,
        }

    @staticmethod
    def from_json(data: dict) -> "RotationSystem":
        rotation = {v: tuple(nbrs) for v, nbrs in data["rotation"].items()}
        outer = tuple(data["outer_face"]) if data.get("outer_face") else None
        return RotationSystem(rotation, outer)


@dataclass(frozen=True)
class Face:
    """One face: usually a single dart cycle; the outer face of a
    disconnected embedding carries one cycle per component."""

    cycles: tuple[tuple[Dart, ...], ...]

    def darts(self) -> list[Dart]:
        return [d for cyc in self.cycles for d in cyc]

    def vertices(self) -> set[str]:
        return {d[0] for d in self.darts()}


@dataclass
class FaceSet:
    faces: list[Face]
    dart_face: dict[Dart, int]
    incidence: dict[str, set[int]]
    outer_id: int


def _next_dart(rotation: dict[str, tuple[str, ...]], dart: Dart) -> Dart:
    u, v = dart
    nbrs = rotation[v]
    try:
        i = nbrs.index(u)
    except ValueError:
        raise MalformedRotation(f"dart {dart} has no reverse at {v}")
    return (v, nbrs[(i + 1) % len(nbrs)])


def _dart_cycles(rotation: dict[str, tuple[str, ...]]) -> list[tuple[Dart, ...]]:
    all_darts = {(u, v) for u, nbrs in rotation.items() for v in nbrs}
    for u, v in all_darts:
        if (v, u) not in all_darts:
            raise MalformedRotation(f"dart ({u}, {v}) has no reverse")
    cycles = []
    remaining = set(all_darts)
    while remaining:
        start = min(remaining)
        cyc = []
        d = start
        while True:
            cyc.append(d)
            remaining.discard(d)
            d = _next_dart(rotation, d)
            if d == start:
                break
        cycles.append(tuple(cyc))
    return cycles


def _components(rotation: dict[str, tuple[str, ...]]) -> list[set[str]]:
    seen: set[str] = set()
    comps = []
    for v in sorted(rotation):
        if v in seen:
            continue
        comp = set()
        stack = [v]
        while stack:
            x = stack.pop()
            if x in comp:
                continue
            comp.add(x)
            stack.extend(rotation[x])
        seen |= comp
        comps.append(comp)
    return comps


def faces(rs: RotationSystem) -> FaceSet:
    """Partition the darts of ``rs`` into faces.

    The outer face is the face containing ``rs.outer``; for every other
    component the boundary cycle containing the component's minimal dart is
    folded into the outer face (side-by-side convention).  Isolated vertices
    are incident to the outer face only.
    """
    cycles = _dart_cycles(rs.rotation)
    comps = _components(rs.rotation)

    # pick the outer boundary cycle of each component
    outer_cycles = []
    cyc_of_dart = {}
    for i, cyc in enumerate(cycles):
        for d in cyc:
            cyc_of_dart[d] = i
    claimed: set[int] = set()
    for comp in comps:
        comp_darts = sorted(
            (u, v) for u in comp for v in rs.rotation[u]
        )
        if not comp_darts:
            continue  # isolated vertex
        if rs.outer is not None and rs.outer in {d for d in comp_darts}:
            claimed.add(cyc_of_dart[rs.outer])
        else:
            claimed.add(cyc_of_dart[min(comp_darts)])

    if rs.outer is not None and rs.outer not in cyc_of_dart:
        raise MalformedRotation(f"outer dart {rs.outer} not present")

    inner = [cyc for i, cyc in enumerate(cycles) if i not in claimed]
    outer_cycle_list = tuple(cycles[i] for i in sorted(claimed))

    face_list = [Face((cyc,)) for cyc in sorted(inner)]
    if outer_cycle_list or not face_list:
        face_list.append(Face(outer_cycle_list))
        outer_id = len(face_list) - 1
    else:  # pragma: no cover - edgeless graphs take the branch above
        outer_id = len(face_list) - 1

    dart_face = {}
    incidence: dict[str, set[int]] = {v: set() for v in rs.rotation}
    for fid, face in enumerate(face_list):
        for d in face.darts():
            dart_face[d] = fid
            incidence[d[0]].add(fid)
    for v, nbrs in rs.rotation.items():
        if not nbrs:
            incidence[v].add(outer_id)
    return FaceSet(face_list, dart_face, incidence, outer_id)


def euler_ok(rs: RotationSystem) -> bool:
    """Planarity check by Euler's formula: V - E + F = 1 + #components."""
    try:
        fs = faces(rs)
    except MalformedRotation:
        return False
    v = len(rs.rotation)
    e = len(rs.edges())
    f = len(fs.faces)
    return v - e + f == 1 + len(_components(rs.rotation))


def planar_embed(vertices, edges) -> RotationSystem:
    """A deterministic planar rotation system, or NonPlanar."""
    import networkx as nx

    g = nx.Graph()
    g.add_nodes_from(sorted(vertices))
    g.add_edges_from(sorted(tuple(sorted(e)) for e in edges))
    ok, emb = nx.check_planarity(g)
    if not ok:
        raise NonPlanar("graph is not planar")
    data = emb.get_data()
    rotation = {v: tuple(data.get(v, ())) for v in g.nodes}
    darts = sorted((u, v) for u, nbrs in rotation.items() for v in nbrs)
    outer = min(darts) if darts else None
    return RotationSystem(rotation, outer)


def enumerate_embeddings(vertices, edges, cap: int = 8):
    """Yield every planar rotation system of a connected graph, crossed with
    every choice of outer face.

    Brute force over all products of per-vertex cyclic orders (the first
    neighbor of each vertex is fixed to kill cyclic rotations of the same
    order), filtered by Euler's formula.  Reflections count as distinct.
    """
    vs = sorted(vertices)
    es = sorted(tuple(sorted(e)) for e in edges)
    if len(vs) > cap:
        raise CapExceeded(f"{len(vs)} vertices exceeds cap {cap}")
    adj: dict[str, list[str]] = {v: [] for v in vs}
    for u, v in es:
        adj[u].append(v)
        adj[v].append(u)
    for v in adj:
        adj[v].sort()

    choices = []
    for v in vs:
        nbrs = adj[v]
        if len(nbrs) <= 2:
            choices.append([tuple(nbrs)])
        else:
            first = nbrs[0]
            choices.append(
                [(first,) + p for p in itertools.permutations(nbrs[1:])]
            )

    for combo in itertools.product(*choices):
        rotation = dict(zip(vs, combo))
        rs0 = RotationSystem(rotation, None)
        cycles = _dart_cycles(rotation)
        v_n, e_n, f_n = len(vs), len(es), len(cycles)
        if v_n - e_n + f_n != 2:
            continue
        for cyc in sorted(cycles):
            yield RotationSystem(rotation, min(cyc))


def dual_graph(rs: RotationSystem) -> tuple[list[int], list[tuple[int, int, tuple[str, str]]]]:
    """Dual multigraph: one vertex per face, one dual edge per primal edge."""
    fs = faces(rs)
    dual_edges = []
    for u, v in sorted(rs.edges()):
        f1 = fs.dart_face[(u, v)]
        f2 = fs.dart_face[(v, u)]
        dual_edges.append((f1, f2, (u, v)))
    return list(range(len(fs.faces))), dual_edges


# ---------------------------------------------------------------------------
# Enclosure queries
# ---------------------------------------------------------------------------

class _DSU:
    def __init__(self, n: int):
        self.p = list(range(n))

    def find(self, x: int) -> int:
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a: int, b: int):
        self.p[self.find(a)] = self.find(b)


def _face_groups_after_deleting(fs: FaceSet, deleted: set[str]) -> _DSU:
    """Union faces that merge when ``deleted`` vertices (and their edges)
    are removed from the embedding."""
    dsu = _DSU(len(fs.faces))
    for w in deleted:
        incident = sorted(fs.incidence.get(w, ()))
        for a, b in zip(incident, incident[1:]):
            dsu.union(a, b)
    return dsu


def cycle_encloses(rs: RotationSystem, fs: FaceSet, cycle: list[str], w: str) -> bool:
    """Does vertex ``w`` lie strictly inside the simple ``cycle`` (given the
    outer face of ``rs``)?  Purely combinatorial: faces merge across every
    vertex off the cycle; ``w`` is inside iff its merged region differs from
    the outer one."""
    on_cycle = set(cycle)
    if w in on_cycle:
        return False
    dsu = _DSU(len(fs.faces))
    for v in rs.rotation:
        if v not in on_cycle:
            incident = sorted(fs.incidence.get(v, ()))
            for a, b in zip(incident, incident[1:]):
                dsu.union(a, b)
    # also merge across chords/edges not on the cycle
    cyc_edges = {tuple(sorted((cycle[i], cycle[(i + 1) % len(cycle)]))) for i in range(len(cycle))}
    for u, v in rs.edges():
        if tuple(sorted((u, v))) not in cyc_edges:
            dsu.union(fs.dart_face[(u, v)], fs.dart_face[(v, u)])
    w_face = min(fs.incidence[w])
    return dsu.find(w_face) != dsu.find(fs.outer_id)


def _simple_cycles_of_walk(walk: tuple[Dart, ...]) -> list[list[str]]:
    """Decompose a closed dart walk into simple cycles (length >= 3)."""
    out = []
    start = walk[0][0]
    stack = [start]
    pos = {start: 0}
    for _, v in walk:
        if v in pos:
            cyc = stack[pos[v]:]
            if len(cyc) >= 3:
                out.append(list(cyc))
            for x in stack[pos[v] + 1:]:
                del pos[x]
            del stack[pos[v] + 1:]
        else:
            stack.append(v)
            pos[v] = len(stack) - 1
    return out


def sub_rotation(rs: RotationSystem, keep: set[str]) -> dict[str, tuple[str, ...]]:
    """Rotation system inherited by the induced subgraph on ``keep``."""
    return {
        v: tuple(w for w in rs.rotation[v] if w in keep)
        for v in rs.rotation
        if v in keep
    }


def enclosed_violation(rs: RotationSystem, cg, mu: str):
    """Find a cycle of mu-vertices whose interior contains a non-mu vertex.

    Returns ``None`` when no such cycle exists, else a ``(cycle, vertex)``
    witness.  Implemented without cycle enumeration: delete the non-mu
    vertices, see which merged face region each of them lands in, and flag
    any that is separated from the outer region.
    """
    fs = faces(rs)
    v_mu = cg.vertex_set(mu)
    outside = set(rs.rotation) - v_mu
    dsu = _face_groups_after_deleting(fs, outside)
    outer_grp = dsu.find(fs.outer_id)

    enclosed = [
        w for w in sorted(outside)
        if fs.incidence[w] and dsu.find(min(fs.incidence[w])) != outer_grp
    ]
    if not enclosed:
        return None

    w = enclosed[0]
    # witness cycle: boundary walks of the inherited sub-embedding of G[mu]
    rot_mu = sub_rotation(rs, v_mu)
    for walk in _dart_cycles(rot_mu):
        for cyc in _simple_cycles_of_walk(walk):
            if cycle_encloses(rs, fs, cyc, w):
                return (cyc, w)
    raise AssertionError("enclosed vertex without witness cycle")  # pragma: no cover
