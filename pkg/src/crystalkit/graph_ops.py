"""Finite crystal graphs and the head machinery.

A CrystalGraph is an explicit edge-colored digraph: one node per crystal
element (keyed by its canonical serialization) with cached wt/eps/phi labels,
and for each color i a partial map of lowering edges (f_i); raising edges are
the reversals.  Each (node, color, direction) slot is in one of three states:
an edge, an explicit nil, or unevaluated.  Nodes with unevaluated slots are
frontier-marked, and every query whose answer could depend on an unevaluated
slot fails loudly with SoundnessError rather than returning a best-effort
answer.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter, deque
from dataclasses import dataclass, field

from . import rank2
from .crystal_core import NEG_INF, canonical_key
from .errors import (
    BudgetError,
    DimensionError,
    SoundnessError,
    TheoremViolation,
    TruncationFault,
)

DEFAULT_BUDGET = 200_000

# distinguished "not evaluated" sentinel; None means an explicit nil
MISSING = object()


@dataclass
class NodeRec:
    elem: object
    wt: tuple
    eps: tuple
    phi: tuple


class GraphNodeElem:
    """Crystal-element view of a graph node; operators read recorded edges.

    Touching an unevaluated slot raises SoundnessError, so frontier taint
    propagates instead of being papered over.
    """

    __slots__ = ("graph", "key")

    def __init__(self, graph, key):
        self.graph = graph
        self.key = key

    @property
    def colors(self):
        return self.graph.colors

    def wt(self):
        return self.graph.nodes[self.key].wt

    def eps(self, i):
        return self.graph.nodes[self.key].eps[i]

    def phi(self, i):
        return self.graph.nodes[self.key].phi[i]

    def e(self, i):
        t = self.graph.e_record(self.key, i)
        if t is MISSING:
            raise SoundnessError(f"e_{i} unevaluated at {self.key}")
        return None if t is None else GraphNodeElem(self.graph, t)

    def f(self, i):
        t = self.graph.f_record(self.key, i)
        if t is MISSING:
            raise SoundnessError(f"f_{i} unevaluated at {self.key}")
        return None if t is None else GraphNodeElem(self.graph, t)

    def serialize(self):
        return json.loads(self.key)

    def __eq__(self, other):
        return isinstance(other, GraphNodeElem) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"GraphNodeElem({self.key})"


class CrystalGraph:
    def __init__(self, colors):
        self.colors = tuple(colors)
        self.nodes: dict[str, NodeRec] = {}
        self._e: dict[str, dict] = {}
        self._f: dict[str, dict] = {}
        self.frontier: set[str] = set()
        self.meta: dict = {}

    # -- construction ------------------------------------------------------

    def add_element(self, elem) -> str:
        key = canonical_key(elem)
        if key not in self.nodes:
            wt = elem.wt()
            eps = tuple(elem.eps(i) for i in self.colors)
            phi = tuple(elem.phi(i) for i in self.colors)
            self._insert(key, NodeRec(elem, wt, eps, phi))
        return key

    def add_raw_node(self, key, wt, eps, phi, elem=None):
        if key not in self.nodes:
            self._insert(key, NodeRec(elem, tuple(wt), tuple(eps), tuple(phi)))

    def _insert(self, key, rec):
        self.nodes[key] = rec
        self._e[key] = {}
        self._f[key] = {}

    def record_f(self, u, i, v):
        """Record f_i(u) = v (or nil when v is None); keeps e-reversal in sync."""
        old = self._f[u].get(i, MISSING)
        if old is not MISSING and old != v:
            raise SoundnessError(f"conflicting f_{i} records at {u}")
        self._f[u][i] = v
        if v is not None:
            rold = self._e[v].get(i, MISSING)
            if rold is not MISSING and rold != u:
                raise SoundnessError(f"conflicting e_{i} records at {v}")
            self._e[v][i] = u

    def record_e(self, u, i, v):
        old = self._e[u].get(i, MISSING)
        if old is not MISSING and old != v:
            raise SoundnessError(f"conflicting e_{i} records at {u}")
        self._e[u][i] = v
        if v is not None:
            rold = self._f[v].get(i, MISSING)
            if rold is not MISSING and rold != u:
                raise SoundnessError(f"conflicting f_{i} records at {v}")
            self._f[v][i] = u

    # -- queries -----------------------------------------------------------

    def e_record(self, u, i):
        return self._e[u].get(i, MISSING)

    def f_record(self, u, i):
        return self._f[u].get(i, MISSING)

    def is_e_complete(self, u) -> bool:
        return len(self._e[u]) == len(self.colors)

    def is_f_complete(self, u) -> bool:
        return len(self._f[u]) == len(self.colors)

    def element(self, key):
        rec = self.nodes[key]
        return rec.elem if rec.elem is not None else GraphNodeElem(self, key)

    def node_count(self) -> int:
        return len(self.nodes)

    def edge_count(self) -> int:
        return sum(1 for m in self._f.values() for v in m.values() if v is not None)

    def e_successors(self, u):
        return [v for v in self._e[u].values() if v is not None]

    def require_e_closed(self):
        """Every node must have all raising slots evaluated."""
        for u in self.nodes:
            if not self.is_e_complete(u):
                raise SoundnessError(
                    f"graph is not e-closed: unevaluated raising slots at {u}"
                )


# -- generation -------------------------------------------------------------


def _check_budget(count, budget):
    if count > budget:
        raise BudgetError(f"node budget {budget} exceeded")


def generate(seeds, depth, directions="both", budget=DEFAULT_BUDGET) -> CrystalGraph:
    """BFS closure of the seeds to the given depth.

    `directions` is one of "e", "f", "both".  Nodes first reached at exactly
    the depth bound are left unevaluated and frontier-marked.
    """
    seeds = list(seeds)
    if not seeds:
        raise DimensionError("generate needs at least one seed")
    if directions not in ("e", "f", "both"):
        raise DimensionError(f"bad directions {directions!r}")
    g = CrystalGraph(seeds[0].colors)
    dist = {}
    queue = deque()
    for s in seeds:
        k = g.add_element(s)
        if k not in dist:
            dist[k] = 0
            queue.append(k)
    while queue:
        u = queue.popleft()
        if dist[u] >= depth:
            g.frontier.add(u)
            continue
        elem = g.nodes[u].elem
        for i in g.colors:
            if directions in ("e", "both") and g.e_record(u, i) is MISSING:
                up = elem.e(i)
                if up is None:
                    g.record_e(u, i, None)
                else:
                    v = g.add_element(up)
                    _check_budget(g.node_count(), budget)
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        queue.append(v)
                    g.record_e(u, i, v)
            if directions in ("f", "both") and g.f_record(u, i) is MISSING:
                down = elem.f(i)
                if down is None:
                    g.record_f(u, i, None)
                else:
                    v = g.add_element(down)
                    _check_budget(g.node_count(), budget)
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        queue.append(v)
                    g.record_f(u, i, v)
    return g


def graph_from_elements(elems, budget=DEFAULT_BUDGET) -> CrystalGraph:
    """Fully evaluated graph on an explicit element set.

    Operator results that leave the set are left unevaluated and the source
    node is frontier-marked, so closure soundness is exactly the closure
    property of the chosen set.
    """
    elems = list(elems)
    if not elems:
        raise DimensionError("graph_from_elements needs at least one element")
    g = CrystalGraph(elems[0].colors)
    for b in elems:
        g.add_element(b)
        _check_budget(g.node_count(), budget)
    for u, rec in list(g.nodes.items()):
        for i in g.colors:
            if g.e_record(u, i) is MISSING:
                up = rec.elem.e(i)
                if up is None:
                    g.record_e(u, i, None)
                else:
                    k2 = canonical_key(up)
                    if k2 in g.nodes:
                        g.record_e(u, i, k2)
                    else:
                        g.frontier.add(u)
            if g.f_record(u, i) is MISSING:
                try:
                    down = rec.elem.f(i)
                except TruncationFault:
                    g.frontier.add(u)
                    continue
                if down is None:
                    g.record_f(u, i, None)
                else:
                    k2 = canonical_key(down)
                    if k2 in g.nodes:
                        g.record_f(u, i, k2)
                    else:
                        g.frontier.add(u)
    return g


# -- closures and heads -------------------------------------------------------


def e_closure(g: CrystalGraph, key: str) -> frozenset:
    """E(b): all nodes reachable from b by raising operators, b included."""
    if key not in g.nodes:
        raise DimensionError(f"node {key} not in graph")
    seen = {key}
    queue = deque([key])
    while queue:
        u = queue.popleft()
        for i in g.colors:
            t = g.e_record(u, i)
            if t is MISSING:
                raise SoundnessError(f"e-closure of {key} is frontier-tainted at {u}")
            if t is not None and t not in seen:
                seen.add(t)
                queue.append(t)
    return frozenset(seen)


def emax_target(g: CrystalGraph, key: str, i: int) -> str:
    """Top of the i-string through the node (e_i^max)."""
    u = key
    while True:
        t = g.e_record(u, i)
        if t is MISSING:
            raise SoundnessError(f"i-string through {key} is frontier-tainted at {u}")
        if t is None:
            return u
        u = t


def emax_closure(g: CrystalGraph, key: str) -> frozenset:
    """E^max(b): closure of b under all maximal raisings e_i^max."""
    seen = {key}
    queue = deque([key])
    while queue:
        u = queue.popleft()
        for i in g.colors:
            t = emax_target(g, u, i)
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return frozenset(seen)


def _tarjan_sccs(keys, succ):
    """Iterative Tarjan; returns the strongly connected components as sets."""
    counter = itertools.count()
    index, low = {}, {}
    stack, onstack = [], set()
    sccs = []
    for root in keys:
        if root in index:
            continue
        index[root] = low[root] = next(counter)
        stack.append(root)
        onstack.add(root)
        work = [(root, iter(succ(root)))]
        while work:
            u, it = work[-1]
            advanced = False
            for v in it:
                if v not in index:
                    index[v] = low[v] = next(counter)
                    stack.append(v)
                    onstack.add(v)
                    work.append((v, iter(succ(v))))
                    advanced = True
                    break
                if v in onstack:
                    low[u] = min(low[u], index[v])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[u])
            if low[u] == index[u]:
                comp = set()
                while True:
                    w = stack.pop()
                    onstack.discard(w)
                    comp.add(w)
                    if w == u:
                        break
                sccs.append(comp)
    return sccs


def head(g: CrystalGraph) -> frozenset:
    """H(B): union of the sink SCCs of the raising digraph.

    A sink SCC has no raising edge leaving it; on an e-closed graph this
    matches the definition of the head (checked against brute_force_head in
    the test suite, not assumed).
    """
    g.require_e_closed()
    sccs = _tarjan_sccs(sorted(g.nodes), g.e_successors)
    result = set()
    for comp in sccs:
        if all(v in comp for u in comp for v in g.e_successors(u)):
            result |= comp
    return frozenset(result)


def brute_force_head(g: CrystalGraph) -> frozenset:
    """Literal-definition head: b is in H(B) iff E(b') = E(b) for b' in E(b).

    Since E(b') is contained in E(b) whenever b' lies in E(b), set equality
    reduces to cardinality equality, so only closure sizes are compared.
    """
    g.require_e_closed()
    keys = sorted(g.nodes)
    idx = {k: p for p, k in enumerate(keys)}
    succ = [[idx[v] for v in g.e_successors(k)] for k in keys]

    def closure(start):
        seen = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in succ[u]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return seen

    sizes = [len(closure(p)) for p in range(len(keys))]
    result = set()
    for p, k in enumerate(keys):
        if all(sizes[q] == sizes[p] for q in closure(p)):
            result.add(k)
    return frozenset(result)


def head_crystal(g: CrystalGraph, head_set=None) -> CrystalGraph:
    """The induced crystal on H(B).

    Raising edges are inherited (the head is stable under them); lowering
    edges are kept only when the image stays in the head, nil otherwise;
    eps is inherited; phi_i is recomputed as the number of lowering steps
    that stay inside the head; wt is recomputed from the new phi and eps.
    """
    H = head(g) if head_set is None else frozenset(head_set)
    hc = CrystalGraph(g.colors)
    for k in sorted(H):
        rec = g.nodes[k]
        if any(x == NEG_INF for x in rec.eps):
            raise TheoremViolation(
                "head node carries minus-infinity statistics", witness=k
            )
        phi_new = []
        for i in g.colors:
            cur, cnt = k, 0
            while True:
                t = g.f_record(cur, i)
                if t is MISSING:
                    raise SoundnessError(
                        f"head phi_{i} at {k} is frontier-tainted at {cur}"
                    )
                if t is None or t not in H:
                    break
                cnt += 1
                cur = t
            phi_new.append(cnt)
        wt_new = tuple(p - e for p, e in zip(phi_new, rec.eps))
        hc.add_raw_node(k, wt_new, rec.eps, tuple(phi_new))
    for k in H:
        for i in g.colors:
            t = g.e_record(k, i)
            if t is MISSING:
                raise SoundnessError(f"head e_{i} at {k} unevaluated")
            if t is not None and t not in H:
                raise TheoremViolation(
                    "head is not stable under raising operators", witness=(k, i)
                )
            if hc.e_record(k, i) is MISSING:
                hc.record_e(k, i, t)
            t = g.f_record(k, i)
            if t is MISSING:
                raise SoundnessError(f"head f_{i} at {k} unevaluated")
            if hc.f_record(k, i) is MISSING:
                hc.record_f(k, i, t if t in H else None)
    for k in H:
        hc.nodes[k].elem = GraphNodeElem(hc, k)
    return hc


# -- Weyl group action --------------------------------------------------------


def weyl_action(g: CrystalGraph, key: str, i: int) -> str:
    """Simple reflection S_i: lower <h_i, wt> times, or raise minus that."""
    m = g.nodes[key].wt[i]
    if m == NEG_INF:
        raise SoundnessError(f"weyl action on minus-infinity weight at {key}")
    u = key
    for _ in range(abs(int(m))):
        t = g.f_record(u, i) if m >= 0 else g.e_record(u, i)
        if t is MISSING:
            raise SoundnessError(f"S_{i} string leaves the graph at {u}")
        if t is None:
            raise SoundnessError(f"S_{i} string terminates early at {u}")
        u = t
    return u


def weyl_word(g: CrystalGraph, key: str, word) -> str:
    """Apply S_w for w written as a product of simple reflections.

    The word is given in product order, so the rightmost letter acts first.
    """
    u = key
    for i in reversed(list(word)):
        u = weyl_action(g, u, i)
    return u


# -- seeded isomorphism checking ----------------------------------------------


@dataclass
class IsoResult:
    ok: bool
    reason: str | None = None
    witness: tuple | None = None
    pairing: dict = field(default_factory=dict)
    skipped_frontier: int = 0

    def __bool__(self):
        return self.ok


def undirected_ball(g: CrystalGraph, seeds, radius=None) -> set:
    """Nodes within the given undirected edge distance of the seed set.

    radius=None means no bound.  Expanding a node requires its records to be
    complete unless it sits at exactly the radius.
    """
    seeds = list(seeds)
    dist = {k: 0 for k in seeds}
    queue = deque(seeds)
    while queue:
        u = queue.popleft()
        if radius is not None and dist[u] >= radius:
            continue
        for i in g.colors:
            for t in (g.e_record(u, i), g.f_record(u, i)):
                if t is MISSING:
                    raise SoundnessError(
                        f"ball of radius {radius} is frontier-tainted at {u}"
                    )
                if t is not None and t not in dist:
                    dist[t] = dist[u] + 1
                    queue.append(t)
    return set(dist)


def is_isomorphic(g1: CrystalGraph, g2: CrystalGraph, seed_pairs, radius=None) -> IsoResult:
    """Simultaneous BFS from paired seeds.

    Accepts iff the induced pairing is a label-preserving bijection that
    matches every colored edge evaluated on both sides, and covers the
    radius-`radius` undirected balls around the seeds in both graphs
    (the whole graphs when radius is None).  Edges evaluated on only one
    side are skipped and counted: truncated graphs may legitimately differ
    in unevaluated boundary slots.
    """
    if g1.colors != g2.colors:
        return IsoResult(False, "different index sets")
    seed_pairs = list(seed_pairs)
    if not seed_pairs:
        return IsoResult(False, "no seed pairs")
    m12: dict = {}
    m21: dict = {}
    dist: dict = {}
    skipped = 0
    queue = deque()

    def pair(u, v, d):
        nonlocal skipped
        if u in m12:
            return m12[u] == v or ("pairing conflict", u, v)
        if v in m21:
            return ("injectivity violation", u, v)
        r1, r2 = g1.nodes[u], g2.nodes[v]
        if r1.wt != r2.wt:
            return ("wt mismatch", u, v)
        if r1.eps != r2.eps:
            return ("eps mismatch", u, v)
        if r1.phi != r2.phi:
            return ("phi mismatch", u, v)
        m12[u] = v
        m21[v] = u
        dist[u] = d
        queue.append((u, v))
        return True

    for u, v in seed_pairs:
        res = pair(u, v, 0)
        if res is not True:
            return IsoResult(False, res[0], res, dict(m12), skipped)
    while queue:
        u, v = queue.popleft()
        if radius is not None and dist[u] >= radius:
            continue
        for i in g1.colors:
            for dir_name, t1, t2 in (
                ("e", g1.e_record(u, i), g2.e_record(v, i)),
                ("f", g1.f_record(u, i), g2.f_record(v, i)),
            ):
                if t1 is MISSING or t2 is MISSING:
                    skipped += 1
                    continue
                if (t1 is None) != (t2 is None):
                    return IsoResult(
                        False,
                        f"{dir_name}_{i} presence mismatch",
                        (u, v, i, dir_name),
                        dict(m12),
                        skipped,
                    )
                if t1 is None:
                    continue
                res = pair(t1, t2, dist[u] + 1)
                if res is not True:
                    return IsoResult(
                        False, res[0], res[1:] + (i, dir_name), dict(m12), skipped
                    )
    if radius is None:
        ball1, ball2 = set(g1.nodes), set(g2.nodes)
    else:
        ball1 = undirected_ball(g1, [u for u, _ in seed_pairs], radius)
        ball2 = undirected_ball(g2, [v for _, v in seed_pairs], radius)
    if set(m12) != ball1 or set(m21) != ball2:
        missing1 = sorted(ball1 - set(m12))[:3]
        missing2 = sorted(ball2 - set(m21))[:3]
        return IsoResult(
            False,
            "pairing does not cover both compared regions",
            (tuple(missing1), tuple(missing2)),
            dict(m12),
            skipped,
        )
    return IsoResult(True, None, None, dict(m12), skipped)


# -- rank-2 regularity probe --------------------------------------------------


@dataclass
class Rank2ProbeReport:
    ok: bool
    colors: tuple
    components: list
    violations: list

    def __bool__(self):
        return self.ok


def connected_components(g: CrystalGraph, colors=None) -> list[set]:
    """Components under the undirected edges of the given colors."""
    colors = g.colors if colors is None else tuple(colors)
    seen = set()
    comps = []
    for start in sorted(g.nodes):
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for i in colors:
                for t in (g.e_record(u, i), g.f_record(u, i)):
                    if t is not MISSING and t is not None and t not in comp:
                        comp.add(t)
                        queue.append(t)
        seen |= comp
        comps.append(comp)
    return comps


def _string_lengths(g, key, i):
    ups, u = 0, key
    while True:
        t = g.e_record(u, i)
        if t is MISSING:
            raise SoundnessError(f"probe string tainted at {u}")
        if t is None:
            break
        ups += 1
        u = t
    downs, u = 0, key
    while True:
        t = g.f_record(u, i)
        if t is MISSING:
            raise SoundnessError(f"probe string tainted at {u}")
        if t is None:
            break
        downs += 1
        u = t
    return ups, downs


def rank2_regularity_probe(g: CrystalGraph, J, cartan=None) -> Rank2ProbeReport:
    """Necessary conditions for the color-J restriction to be a crystal of an
    integrable module over the rank <= 2 subalgebra.

    Checks, per J-component: finite labels, seminormality, the weight axiom,
    a unique J-highest node, and equality of the J-weight multiset with the
    character of the highest weight module predicted by Freudenthal's
    recursion.  Full regularity (all proper color subsets) is not decided.

    `cartan` is the full Cartan matrix when the caller knows it; otherwise
    the needed entries are read off recorded edges.
    """
    J = tuple(sorted(J))
    if len(J) > 2 or not set(J) < set(g.colors):
        raise DimensionError("J must be a proper subset of the colors, size <= 2")
    violations = []
    comps_out = []
    for u in g.nodes:
        for i in J:
            if g.e_record(u, i) is MISSING or g.f_record(u, i) is MISSING:
                raise SoundnessError(f"probe needs complete color-{i} records at {u}")
    if cartan is not None:
        cartan_J = tuple(tuple(cartan[a][b] for b in J) for a in J)
    else:
        cartan_J = tuple(
            tuple(rank2_cartan_entry(g, a, b) for b in J) for a in J
        )
    for comp in connected_components(g, J):
        comp_report = {"size": len(comp)}
        finite = True
        for k in comp:
            rec = g.nodes[k]
            if any(rec.eps[i] == NEG_INF or rec.phi[i] == NEG_INF for i in J):
                violations.append(f"minus-infinity labels at {k}")
                finite = False
        if not finite:
            comps_out.append(comp_report)
            continue
        for k in comp:
            rec = g.nodes[k]
            for i in J:
                ups, downs = _string_lengths(g, k, i)
                if ups != rec.eps[i] or downs != rec.phi[i]:
                    violations.append(
                        f"not seminormal at {k}: color {i} strings ({ups},{downs})"
                        f" vs labels ({rec.eps[i]},{rec.phi[i]})"
                    )
                if rec.wt[i] != rec.phi[i] - rec.eps[i]:
                    violations.append(f"weight axiom fails at {k} color {i}")
        highest = [
            k for k in comp if all(g.e_record(k, i) is None for i in J)
        ]
        comp_report["highest"] = sorted(highest)
        if len(highest) != 1:
            violations.append(
                f"component of size {len(comp)} has {len(highest)} highest nodes"
            )
            comps_out.append(comp_report)
            continue
        hw = g.nodes[highest[0]]
        mu = tuple(hw.wt[i] for i in J)
        expected = rank2.character_counter(cartan_J, mu)
        actual = Counter(tuple(g.nodes[k].wt[i] for i in J) for k in comp)
        comp_report["character_ok"] = expected == actual
        if expected != actual:
            diff = (expected - actual) + (actual - expected)
            violations.append(
                f"J-character mismatch on component with highest {highest[0]}:"
                f" {dict(diff)}"
            )
        comps_out.append(comp_report)
    return Rank2ProbeReport(not violations, J, comps_out, violations)


def rank2_cartan_entry(g: CrystalGraph, a, b):
    """Cartan entry <h_a, alpha_b> recovered from any recorded b-edge.

    wt drops by the alpha_b column along f_b edges, so one edge determines
    the entry.  Falls back to 0 when color b has no edge at all, which can
    only happen when every b-string is trivial and the entry is then never
    consulted with a nonzero coefficient.
    """
    if a == b:
        return 2
    for u in g.nodes:
        t = g.f_record(u, b)
        if t is not MISSING and t is not None:
            return g.nodes[u].wt[a] - g.nodes[t].wt[a]
    return 0


# -- serialization ------------------------------------------------------------


def _label_to_json(x):
    return None if x == NEG_INF else int(x)


def _label_from_json(x):
    return NEG_INF if x is None else int(x)


def to_json_obj(g: CrystalGraph) -> dict:
    nodes = []
    for k in sorted(g.nodes):
        rec = g.nodes[k]
        node = {
            "key": k,
            "wt": [int(x) for x in rec.wt],
            "eps": [_label_to_json(x) for x in rec.eps],
            "phi": [_label_to_json(x) for x in rec.phi],
            "frontier": k in g.frontier,
        }
        e_nil = sorted(i for i, t in g._e[k].items() if t is None)
        f_nil = sorted(i for i, t in g._f[k].items() if t is None)
        if e_nil:
            node["e_nil"] = e_nil
        if f_nil:
            node["f_nil"] = f_nil
        nodes.append(node)
    edges = []
    for k in sorted(g.nodes):
        for i in g.colors:
            t = g.f_record(k, i)
            if t is not MISSING and t is not None:
                edges.append({"i": i, "from": k, "to": t})
    edges.sort(key=lambda e: (e["i"], e["from"], e["to"]))
    return {"nodes": nodes, "edges": edges}


def to_json(g: CrystalGraph) -> str:
    return json.dumps(to_json_obj(g), indent=1, sort_keys=True)


def from_json_obj(obj) -> CrystalGraph:
    """Rebuild a graph from the JSON schema.

    Files without the explicit-nil lists are accepted: for a non-frontier
    node every unlisted slot is taken as nil; frontier nodes keep unlisted
    slots unevaluated.
    """
    nodes = obj["nodes"]
    if not nodes:
        raise DimensionError("graph JSON has no nodes")
    colors = range(len(nodes[0]["eps"]))
    g = CrystalGraph(colors)
    has_nil_lists = any("e_nil" in nd or "f_nil" in nd for nd in nodes)
    for nd in nodes:
        g.add_raw_node(
            nd["key"],
            tuple(int(x) for x in nd["wt"]),
            tuple(_label_from_json(x) for x in nd["eps"]),
            tuple(_label_from_json(x) for x in nd["phi"]),
        )
        if nd.get("frontier"):
            g.frontier.add(nd["key"])
    for edge in obj["edges"]:
        g.record_f(edge["from"], edge["i"], edge["to"])
    for nd in nodes:
        k = nd["key"]
        if has_nil_lists or k in g.frontier:
            for i in nd.get("e_nil", ()):
                g.record_e(k, i, None)
            for i in nd.get("f_nil", ()):
                g.record_f(k, i, None)
        if k not in g.frontier:
            for i in g.colors:
                if g.e_record(k, i) is MISSING:
                    g.record_e(k, i, None)
                if g.f_record(k, i) is MISSING:
                    g.record_f(k, i, None)
    for k in g.nodes:
        g.nodes[k].elem = GraphNodeElem(g, k)
    return g


def from_json(text: str) -> CrystalGraph:
    return from_json_obj(json.loads(text))


def _pretty_obj(obj) -> str:
    if isinstance(obj, list) and obj and all(isinstance(x, int) for x in obj):
        # perfect crystal coordinates (length >= 3 for every family)
        return "(" + ",".join(str(x) for x in obj) + ")"
    if isinstance(obj, list) and len(obj) == 2:
        return f"{_pretty_obj(obj[0])} (x) {_pretty_obj(obj[1])}"
    if isinstance(obj, dict):
        if "t" in obj:
            return "t[" + ",".join(str(x) for x in obj["t"]) + "]"
        if "mu_N" in obj:
            slots = " ".join(
                "(" + ",".join(str(x) for x in s) + ")" for s in obj["slots"]
            )
            mu = ",".join(str(x) for x in obj["mu_N"])
            return f"u[{mu}] {slots}".rstrip()
    return json.dumps(obj, separators=(",", ":"), sort_keys=True)


def pretty_key(key: str) -> str:
    return _pretty_obj(json.loads(key))


def to_dot(g: CrystalGraph) -> str:
    """DOT export: nodes labeled with coordinates and weight, edges by color,
    frontier nodes dashed."""
    keys = sorted(g.nodes)
    ids = {k: f"n{p}" for p, k in enumerate(keys)}
    lines = ["digraph crystal {"]
    for k in keys:
        rec = g.nodes[k]
        label = f"{pretty_key(k)}\\nwt={tuple(int(x) for x in rec.wt)}"
        style = ', style="dashed"' if k in g.frontier else ""
        lines.append(f'  {ids[k]} [label="{label}"{style}];')
    for k in keys:
        for i in g.colors:
            t = g.f_record(k, i)
            if t is not MISSING and t is not None:
                lines.append(f'  {ids[k]} -> {ids[t]} [label="{i}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
