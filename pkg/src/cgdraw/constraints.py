"""Generic constraint engines: PQ-tree consecutivity and 2-SAT.

The PQ-tree stores the set of linear orders of a universe in which every
reduced subset appears as a contiguous block.  P-nodes permute children
freely, Q-nodes fix the child sequence up to reversal.  Reduction follows
the classic template rules; the tree here is rebuilt functionally per
constraint (quadratic overall, which is fine at the scales this project
works at).
"""

from __future__ import annotations

from dataclasses import dataclass, field

# ---------------------------------------------------------------------------
# PQ-tree
# ---------------------------------------------------------------------------

EMPTY, FULL, PARTIAL = "empty", "full", "partial"


class Infeasible(Exception):
    """No ordering satisfies the constraint family."""


class _Node:
    __slots__ = ("kind", "children", "elem")

    def __init__(self, kind, children=None, elem=None):
        self.kind = kind  # "leaf" | "P" | "Q"
        self.children = children or []
        self.elem = elem

    def leaves(self):
        if self.kind == "leaf":
            yield self.elem
        else:
            for c in self.children:
                yield from c.leaves()


def _pnode(children):
    if len(children) == 1:
        return children[0]
    return _Node("P", list(children))


def _qnode(children):
    if len(children) == 1:
        return children[0]
    return _Node("Q", list(children))


def _group(nodes):
    """Zero, one or many nodes into at most one node (None if zero)."""
    if not nodes:
        return None
    return _pnode(list(nodes))


def _splice(children):
    """Flatten nested Q children produced by partial merges."""
    out = []
    for c in children:
        if c is None:
            continue
        if isinstance(c, list):
            out.extend(x for x in c if x is not None)
        else:
            out.append(c)
    return out


def _reduce_node(node: _Node, s: frozenset, is_root: bool):
    """Returns (replacement node, state).  PARTIAL replacements are Q-nodes
    whose frontier runs empty -> full left to right."""
    if node.kind == "leaf":
        return node, (FULL if node.elem in s else EMPTY)

    results = [_reduce_node(c, s, False) for c in node.children]
    states = [st for _, st in results]

    if all(st == EMPTY for st in states):
        node.children = [n for n, _ in results]
        return node, EMPTY
    if all(st == FULL for st in states):
        node.children = [n for n, _ in results]
        return node, FULL

    if node.kind == "P":
        empties = [n for n, st in results if st == EMPTY]
        fulls = [n for n, st in results if st == FULL]
        partials = [n for n, st in results if st == PARTIAL]
        if len(partials) > 2 or (len(partials) == 2 and not is_root):
            raise Infeasible
        if is_root:
            if not partials:
                # group the full children so they stay together
                return _pnode(empties + [_group(fulls)]), FULL
            if len(partials) == 1:
                q = partials[0]
                q.children = _splice(q.children + [_group(fulls)])
                return _pnode(empties + [q]), FULL
            q1, q2 = partials
            q2.children.reverse()  # full end of q2 now on the left
            big = _qnode(_splice(q1.children + [_group(fulls)] + q2.children))
            if empties:
                return _pnode(empties + [big]), FULL
            return big, FULL
        # non-root
        if len(partials) == 1:
            q = partials[0]
            q.children = _splice([_group(empties)] + q.children + [_group(fulls)])
            return q, PARTIAL
        # mixed empties/fulls, no partial
        return _qnode(_splice([_group(empties), _group(fulls)])), PARTIAL

    # Q-node
    children = [n for n, _ in results]
    if not is_root:
        # must match (after possible reversal): E* [partial] F*
        for _ in range(2):
            ok = True
            seen_partial = False
            seen_full = False
            for st in states:
                if st == EMPTY:
                    if seen_partial or seen_full:
                        ok = False
                        break
                elif st == PARTIAL:
                    if seen_partial or seen_full:
                        ok = False
                        break
                    seen_partial = True
                else:
                    seen_full = True
            if ok:
                break
            children.reverse()
            states.reverse()
        else:
            raise Infeasible
        new_children = []
        for n, st in zip(children, states):
            if st == PARTIAL:
                new_children.extend(n.children)  # already empty->full
            else:
                new_children.append(n)
        return _qnode(_splice(new_children)), PARTIAL

    # root Q: E* [partial] F* [partial] E*
    seq = list(zip(children, states))
    i = 0
    n_ = len(seq)
    while i < n_ and seq[i][1] == EMPTY:
        i += 1
    j = n_ - 1
    while j >= 0 and seq[j][1] == EMPTY:
        j -= 1
    new_children = [n for n, _ in seq[: i]]
    mid = seq[i: j + 1]
    for k, (n, st) in enumerate(mid):
        if st == EMPTY:
            raise Infeasible
        if st == PARTIAL:
            if k == 0:
                new_children.extend(n.children)  # empty end outward (left)
            elif k == len(mid) - 1:
                n.children.reverse()
                new_children.extend(n.children)
            else:
                raise Infeasible
        else:
            new_children.append(n)
    new_children.extend(n for n, _ in seq[j + 1:])
    return _qnode(_splice(new_children)), FULL


def _pertinent_root(root: _Node, s: frozenset):
    """Deepest node whose subtree contains all of ``s``, plus its parent."""
    parent = None
    node = root
    while node.kind != "leaf":
        carriers = [c for c in node.children if s & frozenset(c.leaves())]
        if len(carriers) == 1 and frozenset(carriers[0].leaves()) >= s:
            parent, node = node, carriers[0]
        else:
            break
    return node, parent


@dataclass
class ConsecutivityProblem:
    universe: frozenset
    constraints: list[frozenset]
    pinned: object = None

    def __post_init__(self):
        self.universe = frozenset(self.universe)
        self.constraints = [frozenset(c) for c in self.constraints]
        for c in self.constraints:
            if not c or not c <= self.universe:
                raise ValueError(f"constraint {sorted(c)} not within universe")
        if self.pinned is not None and self.pinned not in self.universe:
            raise ValueError("pinned element not in universe")


def pq_reduce(problem: ConsecutivityProblem):
    """A linear order of the universe with every constraint contiguous (and
    the pinned element first), or None when infeasible."""
    universe = sorted(problem.universe)
    if not universe:
        return []
    root = _pnode([_Node("leaf", elem=e) for e in universe])

    todo = list(problem.constraints)
    if problem.pinned is not None and len(universe) > 1:
        todo.append(frozenset(problem.universe - {problem.pinned}))
    try:
        for s in todo:
            if len(s) <= 1 or s == problem.universe:
                continue
            node, parent = _pertinent_root(root, s)
            replacement, _ = _reduce_node(node, s, True)
            if parent is None:
                root = replacement
            else:
                parent.children[parent.children.index(node)] = replacement
    except Infeasible:
        return None

    order = _frontier_first(root, problem.pinned)
    return order


def _frontier_first(root: _Node, first) -> list:
    """Read the frontier, steering ``first`` (if given) to the front."""
    if first is not None:
        _steer(root, first)
    return list(root.leaves())


def _steer(node: _Node, elem) -> bool:
    if node.kind == "leaf":
        return node.elem == elem
    for i, c in enumerate(node.children):
        if elem in set(c.leaves()):
            if not _steer(c, elem):
                return False
            if node.kind == "P":
                node.children.insert(0, node.children.pop(i))
                return True
            if i == 0:
                return True
            if i == len(node.children) - 1:
                node.children.reverse()
                return True
            return False
    return False


# ---------------------------------------------------------------------------
# 2-SAT
# ---------------------------------------------------------------------------

@dataclass
class TwoSatProblem:
    variables: list
    clauses: list = field(default_factory=list)

    def add(self, lit_a, lit_b):
        """Literals are (variable, polarity) pairs."""
        self.clauses.append((lit_a, lit_b))

    def add_unit(self, lit):
        self.clauses.append((lit, lit))


def two_sat_solve(problem: TwoSatProblem):
    """Satisfying assignment as {var: bool}, or None when unsatisfiable.

    Implication graph plus Tarjan SCC; a variable is true when the component
    of its positive literal is closer to the sinks than its negation's.
    """
    index = {v: i for i, v in enumerate(problem.variables)}
    n = len(problem.variables)

    def lit_id(lit):
        var, pol = lit
        return 2 * index[var] + (0 if pol else 1)

    def neg(x):
        return x ^ 1

    graph: list[list[int]] = [[] for _ in range(2 * n)]
    for a, b in problem.clauses:
        ia, ib = lit_id(a), lit_id(b)
        graph[neg(ia)].append(ib)
        graph[neg(ib)].append(ia)

    comp = [-1] * (2 * n)
    low = [0] * (2 * n)
    num = [-1] * (2 * n)
    stack: list[int] = []
    on_stack = [False] * (2 * n)
    counter = 0
    comp_count = 0

    for start in range(2 * n):
        if num[start] != -1:
            continue
        work = [(start, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                num[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            for i in range(pi, len(graph[v])):
                w = graph[v][i]
                if num[w] == -1:
                    work[-1] = (v, i + 1)
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], num[w])
            if recurse:
                continue
            if low[v] == num[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = comp_count
                    if w == v:
                        break
                comp_count += 1
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])

    assignment = {}
    for v, i in index.items():
        if comp[2 * i] == comp[2 * i + 1]:
            return None
        assignment[v] = comp[2 * i] < comp[2 * i + 1]
    return assignment
