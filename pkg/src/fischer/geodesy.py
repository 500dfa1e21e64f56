"""Shortest paths on lazy graphs, geodesic rays, and bounded searches for
eventually geodesic strictly proximal pairs.

Distances use the empty-path convention ``distance(v, v) == 0``, so a
nonempty closed path is never geodesic.

Finite-horizon witness semantics
--------------------------------
Two rays ``x, y`` of length ``horizon`` form a *witness* at bounds
``(window w, min_disagreements m)`` when both are geodesic and, with ``A``
the first index where they share an edge and ``B`` the start of the last
block ``x[B..B+w] == y[B..B+w]``, at least ``m`` indices ``A < j < B``
carry ``x[j] != y[j]``.  Disagreements therefore have to be enclosed by
agreements, which is what an infinite strictly proximal pair looks like on
any finite window.

Search strategy
---------------
A witness forces a *bigon*: two distinct geodesics of equal length between
the same two vertices (the rays split after ``A`` and meet again before
``B``).  The search first screens every vertex that could host the split for
bigons; when none exist the negative answer is exhaustive.  Otherwise a pair
search over the geodesic DAG runs under a node budget.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .graphs import (Edge, GraphError, GraphGen, check_path, explore,
                     fischer_graph, tensor_product)
from .shifts import Product, ShiftSpec, fixed_point

Path = tuple  # tuple[Edge, ...]


def _store(g: GraphGen, name: str) -> dict:
    store = g.__dict__.get(name)
    if store is None:
        store = g.__dict__[name] = {}
    return store


# ---------------------------------------------------------------------------
# distances
# ---------------------------------------------------------------------------


def distance(g: GraphGen, u, v, cap: int) -> Optional[int]:
    """Length of a shortest path ``u -> v`` if it is at most ``cap``."""
    if u == v:
        return 0
    cache = _store(g, "_dist_cache")
    hit = cache.get((u, v))
    if hit is not None:
        d, searched = hit
        if d is not None:
            return d if d <= cap else None
        if searched >= cap:
            return None
    ball = _store(g, "_ball_cache").get(u)
    if ball is not None and ball[0] >= cap:
        d = ball[1].get(v)
        return d if d is not None and d <= cap else None
    d = _bfs_to(g, u, v, cap)
    cache[(u, v)] = (d, cap)
    return d


def _bfs_to(g: GraphGen, u, v, cap: int) -> Optional[int]:
    seen = {u}
    layer = [u]
    for d in range(1, cap + 1):
        nxt = []
        for x in layer:
            for e in g.out_edges(x):
                w = e.dst
                if w == v:
                    return d
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        if not nxt:
            return None
        layer = nxt
    return None


def ball(g: GraphGen, u, radius: int) -> dict:
    """``{vertex: distance}`` for every vertex within ``radius`` of ``u``."""
    cache = _store(g, "_ball_cache")
    hit = cache.get(u)
    if hit is not None and hit[0] >= radius:
        if hit[0] == radius:
            return hit[1]
        return {v: d for v, d in hit[1].items() if d <= radius}
    dist = {u: 0}
    layer = [u]
    for d in range(1, radius + 1):
        nxt = []
        for x in layer:
            for e in g.out_edges(x):
                if e.dst not in dist:
                    dist[e.dst] = d
                    nxt.append(e.dst)
        if not nxt:
            break
        layer = nxt
    cache[u] = (radius, dist)
    return dist


def is_geodesic(g: GraphGen, path: Sequence[Edge]) -> bool:
    """True iff ``path`` is a shortest path between its endpoints."""
    if not path:
        return True
    check_path(path)
    u, v, n = path[0].src, path[-1].dst, len(path)
    if u == v:
        return False
    if g.distance_lower_bound(u, v, n) >= n:
        return True
    return distance(g, u, v, n - 1) is None


def geodesic_rays(g: GraphGen, v, length: int) -> Iterator[Path]:
    """All paths of ``length`` from ``v`` that are geodesic, in label order.

    Every prefix of a geodesic is geodesic, and a path from ``v`` is geodesic
    exactly when it climbs one BFS layer of ``v`` per edge, so the walk stays
    inside the layered ball around ``v``.
    """
    if length < 1:
        raise ValueError("length must be >= 1")
    dist = ball(g, v, length)

    def grow(prefix, u, t):
        if t == length:
            yield tuple(prefix)
            return
        for e in g.out_edges(u):
            if dist.get(e.dst) == t + 1:
                prefix.append(e)
                yield from grow(prefix, e.dst, t + 1)
                prefix.pop()

    yield from grow([], v, 0)


def shortest_path(g: GraphGen, u, v, cap: int) -> Optional[Path]:
    """A shortest path ``u -> v`` (label-order tie-break) or ``None``."""
    if u == v:
        return ()
    parent = {u: None}
    layer = [u]
    for _ in range(cap):
        nxt = []
        for x in layer:
            for e in g.out_edges(x):
                if e.dst in parent:
                    continue
                parent[e.dst] = e
                if e.dst == v:
                    out = []
                    while e is not None:
                        out.append(e)
                        e = parent[e.src]
                    return tuple(reversed(out))
                nxt.append(e.dst)
        layer = nxt
    return None


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

WITNESS = "WitnessFound"
NO_WITNESS = "NoWitnessUpToBound"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Bounds:
    explore_depth: int = 6
    horizon: int = 12
    window: int = 4
    min_disagreements: int = 3
    bfs_cap: int = 24
    budget: int = 200_000

    def __post_init__(self):
        for name in ("explore_depth", "horizon", "window", "min_disagreements", "bfs_cap"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.horizon < self.window:
            raise ValueError("horizon must be >= window")

    def to_doc(self) -> dict:
        return {"explore_depth": self.explore_depth, "horizon": self.horizon,
                "window": self.window, "min_disagreements": self.min_disagreements,
                "bfs_cap": self.bfs_cap, "budget": self.budget}


@dataclass(frozen=True)
class RayPair:
    """Two aligned finite paths on ``graph``."""

    graph: GraphGen = field(repr=False, compare=False)
    x: Path
    y: Path

    @property
    def horizon(self) -> int:
        return len(self.x)

    def check(self) -> None:
        if len(self.x) != len(self.y):
            raise GraphError("ray lengths differ")
        for p in (self.x, self.y):
            check_path(p)
            for e in p:
                if self.graph.step(e.src, e.label) != e.dst:
                    raise GraphError(f"{e!r} is not an edge of the given graph")

    def to_doc(self) -> dict:
        g = self.graph
        names = g.alphabet.names

        def enc(p):
            return {"start": g.vertex_name(p[0].src) if p else None,
                    "labels": [names[e.label] for e in p]}

        return {"x": enc(self.x), "y": enc(self.y), "horizon": self.horizon}


@dataclass
class ProximalReport:
    status: str
    bounds: Bounds
    pair: Optional[RayPair] = None
    evidence: dict = field(default_factory=dict)
    reason: str = ""
    stats: dict = field(default_factory=dict)

    def to_doc(self) -> dict:
        doc = {"status": self.status, "bounds": self.bounds.to_doc(),
               "evidence": self.evidence, "stats": self.stats,
               "semantics": "disagreements counted strictly between the first agreement "
                            "and the last full agreement block"}
        if self.reason:
            doc["reason"] = self.reason
        if self.pair is not None:
            doc["pair"] = self.pair.to_doc()
        return doc

    def to_text(self) -> str:
        return json.dumps(self.to_doc(), sort_keys=True, indent=2) + "\n"


def witness_evidence(x: Path, y: Path, window: int) -> Optional[dict]:
    """Agreement/disagreement bookkeeping for a pair, ``None`` if there is no
    agreement block of ``window + 1`` edges."""
    n = len(x)
    agree = [x[i] == y[i] for i in range(n)]
    first = next((i for i in range(n) if agree[i]), None)
    if first is None:
        return None
    blocks = {}
    run = 0
    for i in range(n):
        run = run + 1 if agree[i] else 0
        for k in range(min(run, window + 1)):
            # block x[i-k..i] of k+1 edges, i.e. length parameter k
            blocks[k] = i - k
    if window not in blocks:
        return None
    last = blocks[window]
    dis = [j for j in range(first + 1, last) if not agree[j]]
    return {"first_agreement": first, "last_block": last,
            "agreement_blocks": [[blocks[k], k] for k in range(window + 1)],
            "disagreements": dis}


def verify_strict_proximal_prefix(pair: RayPair, bounds: Bounds) -> ProximalReport:
    """Check one explicit pair against the finite witness conditions."""
    pair.check()
    g = pair.graph
    problems = []
    if pair.horizon < bounds.horizon:
        problems.append(f"pair horizon {pair.horizon} < {bounds.horizon}")
    x, y = pair.x[:bounds.horizon], pair.y[:bounds.horizon]
    gx, gy = is_geodesic(g, x), is_geodesic(g, y)
    if not gx:
        problems.append("x is not geodesic")
    if not gy:
        problems.append("y is not geodesic")
    ev = witness_evidence(x, y, bounds.window)
    if ev is None:
        problems.append(f"no agreement block of {bounds.window + 1} edges")
    elif len(ev["disagreements"]) < bounds.min_disagreements:
        problems.append(f"only {len(ev['disagreements'])} enclosed disagreements")
    evidence = dict(ev or {})
    evidence.update({"x_geodesic": gx, "y_geodesic": gy})
    if problems:
        return ProximalReport(INCONCLUSIVE, bounds, pair, evidence, "; ".join(problems))
    return ProximalReport(WITNESS, bounds, RayPair(g, x, y), evidence)


# ---------------------------------------------------------------------------
# witness search
# ---------------------------------------------------------------------------


def _has_bigon(g: GraphGen, a, radius: int) -> bool:
    """Do two distinct equal-length geodesics leave ``a`` and meet within
    ``radius``?  True iff some vertex has two in-edges in the BFS DAG."""
    dist = {a: 0}
    layer = [a]
    for d in range(1, radius + 1):
        nxt = []
        for x in layer:
            for e in g.out_edges(x):
                w = e.dst
                seen = dist.get(w)
                if seen is None:
                    dist[w] = d
                    nxt.append(w)
                elif seen == d:
                    return True
        if not nxt:
            return False
        layer = nxt
    return False


def bigon_screen(g: GraphGen, depth: int, radius: int) -> tuple[list, int]:
    """Vertices within ``depth`` of the root hosting a bigon of length at most
    ``radius``, plus the number of vertices screened."""
    frag = explore(g, depth)
    memo: dict = {}
    hosts = []
    for v in frag.vertices:
        key = g.ball_key(v, radius)
        if key is None:
            hit = _has_bigon(g, v, radius)
        else:
            hit = memo.get(key)
            if hit is None:
                hit = memo[key] = _has_bigon(g, v, radius)
        if hit:
            hosts.append(v)
    return hosts, len(frag.vertices)


class _BudgetExceeded(Exception):
    pass


class _PairSearch:
    """Common-start pair search from one vertex ``a``.

    Both rays run inside the BFS DAG of ``a``.  ``starts`` holds the admissible
    true start vertices (within the explore depth, at distance ``offset`` from
    ``a``); a ray stays geodesic from its start ``s`` iff every vertex reached
    at step ``t`` sits at distance ``offset + t`` from ``s``.
    """

    def __init__(self, g, a, offset, starts, bounds, bigon_hosts, counter):
        self.g, self.a, self.offset = g, a, offset
        self.length = bounds.horizon - offset
        self.w, self.m = bounds.window, bounds.min_disagreements
        self.bounds = bounds
        self.balls = {s: ball(g, s, bounds.horizon) for s in starts}
        self.starts = frozenset(starts)
        self.hosts = bigon_hosts
        self.counter = counter
        self.failed: set = set()

    def _advance(self, ss, v, t):
        return frozenset(s for s in ss if self.balls[s].get(v) == self.offset + t)

    def _extend(self, ss, v, t):
        """Some continuation of the remaining length geodesic from a start."""
        for s in sorted(ss, key=self.g.vertex_name):
            path = self._continue(s, v, t)
            if path is not None:
                return s, path
        return None

    def _continue(self, s, v, t):
        dist = self.balls[s]
        if t == self.length:
            return ()
        for e in self.g.out_edges(v):
            if dist.get(e.dst) == self.offset + t + 1:
                rest = self._continue(s, e.dst, t + 1)
                if rest is not None:
                    return (e,) + rest
        return None

    def run(self):
        g = self.g
        sx = self.starts
        for e in g.out_edges(self.a):
            s1 = self._advance(sx, e.dst, 1)
            if not s1:
                continue
            found = self._dfs(e.dst, e.dst, 1, 0, 1, s1, s1, [e], [e])
            if found:
                return found
        return None

    def _dfs(self, vx, vy, t, cnt, run, sx, sy, px, py):
        self.counter[0] += 1
        if self.counter[0] > self.bounds.budget:
            raise _BudgetExceeded
        if run >= self.w + 1 and cnt >= self.m:
            ex = self._extend(sx, vx, t)
            ey = self._extend(sy, vy, t)
            if ex and ey:
                return (ex[0], tuple(px) + ex[1]), (ey[0], tuple(py) + ey[1])
            return None
        remaining = self.length - t
        need = (self.w + 1 - run) if cnt >= self.m else (self.m - cnt) + self.w + 1
        if need > remaining:
            return None
        state = (vx, vy, min(cnt, self.m), min(run, self.w + 1), sx, sy)
        if state in self.failed:
            return None
        g = self.g
        same = vx == vy
        for ex in g.out_edges(vx):
            sx2 = self._advance(sx, ex.dst, t + 1)
            if not sx2:
                continue
            for ey in g.out_edges(vy):
                agree = same and ex == ey
                if same and not agree and vx not in self.hosts:
                    # splitting here can never close up again in time
                    continue
                sy2 = sx2 if agree else self._advance(sy, ey.dst, t + 1)
                if not sy2:
                    continue
                px.append(ex)
                py.append(ey)
                if agree:
                    found = self._dfs(ex.dst, ey.dst, t + 1, cnt, run + 1, sx2, sy2, px, py)
                else:
                    found = self._dfs(ex.dst, ey.dst, t + 1, cnt + 1, 0, sx2, sy2, px, py)
                px.pop()
                py.pop()
                if found:
                    return found
        self.failed.add(state)
        return None


def proximal_witness_search(g: GraphGen, bounds: Bounds) -> ProximalReport:
    """Bounded search for a witness pair among rays starting within
    ``explore_depth`` of the root (see the module docstring)."""
    D, H, w, m = bounds.explore_depth, bounds.horizon, bounds.window, bounds.min_disagreements
    max_first = H - w - m - 2           # latest possible first agreement
    split_slack = H - 1 - w - m         # latest possible first split
    radius = H - w - 2                  # longest possible bigon
    if max_first < 0 or radius < 1:
        return ProximalReport(NO_WITNESS, bounds, stats={"reason": "bounds leave no room"},
                              reason="horizon too short for window plus disagreements")
    hosts, screened = bigon_screen(g, D + split_slack, radius)
    stats = {"screened_vertices": screened, "bigon_hosts": len(hosts)}
    if not hosts:
        return ProximalReport(NO_WITNESS, bounds, stats=stats)
    host_set = frozenset(hosts)
    counter = [0]
    depth_of = explore(g, D + max_first).vertices
    within = [v for v, d in depth_of.items() if d <= D]
    try:
        for first in range(max_first + 1):
            for a, da in depth_of.items():
                if da > D + first:
                    continue
                if first == 0:
                    starts = [a] if da <= D else []
                else:
                    starts = [s for s in within if distance(g, s, a, first) == first]
                if not starts:
                    continue
                found = _PairSearch(g, a, first, starts, bounds, host_set, counter).run()
                if found:
                    (sx, xs), (sy, ys) = found
                    x = shortest_path(g, sx, a, first) + xs
                    y = shortest_path(g, sy, a, first) + ys
                    rep = verify_strict_proximal_prefix(RayPair(g, x, y), bounds)
                    stats["pair_nodes"] = counter[0]
                    rep.stats = stats
                    if rep.status != WITNESS:
                        raise AssertionError(f"search produced an invalid pair: {rep.reason}")
                    return rep
    except _BudgetExceeded:
        stats["pair_nodes"] = counter[0]
        return ProximalReport(INCONCLUSIVE, bounds, stats=stats,
                              reason=f"pair search exceeded budget {bounds.budget}")
    stats["pair_nodes"] = counter[0]
    return ProximalReport(NO_WITNESS, bounds, stats=stats)


# ---------------------------------------------------------------------------
# product construction
# ---------------------------------------------------------------------------


def _return_cycle(g: GraphGen, v, e: Edge, cap: int) -> Path:
    back = shortest_path(g, e.dst, v, cap)
    if back is None:
        raise GraphError(f"no return to {g.vertex_name(v)} within {cap} steps after {e!r}")
    return (e,) + back


def witness_cycles(g: GraphGen, v, e1: Edge, e2: Edge, cap: int = 64) -> tuple[Path, Path]:
    """Shortest cycles at ``v`` starting with ``e1`` and ``e2``."""
    return _return_cycle(g, v, e1, cap), _return_cycle(g, v, e2, cap)


def product_witness(gy: GraphGen, y_ray_length: int, gz: GraphGen, v=None,
                    e1: Optional[Edge] = None, e2: Optional[Edge] = None,
                    horizon: int = 64, cap: int = 64) -> RayPair:
    """Build the pair ``(y, u1 u1 u1 ...)`` and ``(y, u1 u2 u1 u1 u2 ...)`` on
    ``gy x gz`` where ``u1 = w1 w2``, ``u2 = w2 w1`` and ``w1``/``w2`` are
    shortest cycles at ``v`` through ``e1``/``e2``.

    ``v`` defaults to the root of ``gz`` and the edges to its first two
    out-edges.
    """
    if v is None:
        v = gz.root
    out = gz.out_edges(v)
    if e1 is None or e2 is None:
        if len(out) < 2:
            raise GraphError(f"{gz.vertex_name(v)} has fewer than two out-edges")
        e1, e2 = e1 or out[0], e2 or out[1]
    if e1 == e2 or e1 not in out or e2 not in out:
        raise GraphError("e1 and e2 must be two distinct out-edges of v")
    if y_ray_length < horizon:
        raise GraphError("y ray shorter than the horizon")
    y = next(geodesic_rays(gy, gy.root, y_ray_length), None)
    if y is None:
        raise GraphError(f"no geodesic ray of length {y_ray_length} from the root")
    w1, w2 = witness_cycles(gz, v, e1, e2, cap)
    u1, u2 = w1 + w2, w2 + w1
    z1 = []
    while len(z1) < horizon:
        z1.extend(u1)
    z2 = []
    i = 1
    while len(z2) < horizon:
        z2.extend(u1 * i)
        z2.extend(u2)
        i += 1
    t = tensor_product(gy, gz)

    def pair_path(zs):
        return tuple(Edge((a.src, b.src), t.pair_label(a.label, b.label), (a.dst, b.dst))
                     for a, b in zip(y[:horizon], zs[:horizon]))

    return RayPair(t, pair_path(z1), pair_path(z2))


# ---------------------------------------------------------------------------
# primeness criterion
# ---------------------------------------------------------------------------

SATISFIED = "criterion-satisfied-at-bound"
CANDIDATE = "witness-candidate-found"
NO_FIXED_POINT = "no-fixed-point"
UNDECIDED = "inconclusive"


@dataclass
class PrimenessReport:
    spec: str
    status: str
    proximal: ProximalReport
    fixed_point: Optional[str]
    method: str

    def to_doc(self) -> dict:
        return {"spec": self.spec, "status": self.status, "fixed_point": self.fixed_point,
                "method": self.method, "proximal": self.proximal.to_doc()}

    def to_text(self) -> str:
        return json.dumps(self.to_doc(), sort_keys=True, indent=2) + "\n"


def primeness_report(spec: ShiftSpec, bounds: Bounds, product_horizon: int = 64) -> PrimenessReport:
    """Run the direct-primeness criterion at bounds.

    Products are checked through the explicit construction (verified at
    ``product_horizon``); every other family through the bounded search.
    """
    fp = fixed_point(spec)
    fp_name = None if fp is None else spec.alphabet.names[fp]
    if isinstance(spec, Product):
        gy, gz = fischer_graph(spec.left), fischer_graph(spec.right)
        pb = Bounds(bounds.explore_depth, product_horizon, bounds.window,
                    bounds.min_disagreements, max(bounds.bfs_cap, product_horizon), bounds.budget)
        pair = product_witness(gy, product_horizon, gz, horizon=product_horizon)
        rep = verify_strict_proximal_prefix(pair, pb)
        status = CANDIDATE if rep.status == WITNESS else UNDECIDED
        return PrimenessReport(spec.shorthand(), status, rep, fp_name, "product-construction")
    rep = proximal_witness_search(fischer_graph(spec), bounds)
    if rep.status == WITNESS:
        status = CANDIDATE
    elif rep.status == INCONCLUSIVE:
        status = UNDECIDED
    else:
        status = SATISFIED if fp is not None else NO_FIXED_POINT
    return PrimenessReport(spec.shorthand(), status, rep, fp_name, "bounded-search")
