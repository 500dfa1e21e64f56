"""Lazy right-resolving labeled graphs: Fischer covers of the builtin shift
families, graph transforms, bounded exploration and DOT export.

A generator never materializes its (usually infinite) vertex set.  It exposes
a ``root`` and a deterministic ``out_edges(v)`` returning edges sorted by
label code.  Vertices are canonical hashable encodings:

===========  ==========================================================
family       vertex encoding
===========  ==========================================================
dyck         tuple of left-bracket codes (the stack), ``()`` is the root
sgap         ``n`` for the follower set of ``0 1^n``; root ``0``
beta         ``n >= -1`` for the follower set of ``x_beta[0..n]``; root ``-1``
sft          ``(k-block)`` of the essential higher-block presentation
star         ``(base vertex, starred)``
tensor       ``(left vertex, right vertex)``
subdivision  ``("v", vertex)`` or ``("m", (src, label))`` midpoints
induced      vertex of the subdivided graph, edges are 2-paths
===========  ==========================================================
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, NamedTuple, Optional, Sequence

from .shifts import (SFT, Alphabet, Beta, Dyck, DigitStream, GapSet, Product, SGap, ShiftSpec,
                     SpecError, Star, product_alphabet)


class GraphError(ValueError):
    """Invalid graph input (non-contiguous path, bad coloring, ...)."""


class Edge(NamedTuple):
    src: Hashable
    label: int
    dst: Hashable


class GraphGen:
    """Base class for lazy deterministic labeled graphs."""

    family = "graph"
    alphabet: Alphabet
    root: Hashable

    def __init__(self):
        self._cache: dict = {}

    def out_edges(self, v) -> tuple[Edge, ...]:
        try:
            return self._cache[v]
        except KeyError:
            edges = tuple(sorted(self._out_edges(v), key=lambda e: e.label))
            self._cache[v] = edges
            return edges

    def _out_edges(self, v) -> Iterable[Edge]:
        raise NotImplementedError

    def step(self, v, label: int):
        """Terminal vertex of the ``label`` edge out of ``v`` or ``None``."""
        for e in self.out_edges(v):
            if e.label == label:
                return e.dst
        return None

    def vertex_name(self, v) -> str:
        return f"{self.family}:{v!r}"

    def ball_key(self, v, radius: int):
        """Hashable key such that equal keys imply label-isomorphic
        out-balls of ``radius`` (centred at the vertex).  Defaults to ``v``."""
        return v

    def distance_lower_bound(self, u, v, cap: int) -> int:
        """A valid lower bound on the distance ``u -> v`` (0 when unknown)."""
        return 0

    def color(self, v) -> Optional[int]:
        return None


# ---------------------------------------------------------------------------
# Fischer graphs of the builtin families
# ---------------------------------------------------------------------------


class DyckGraph(GraphGen):
    family = "dyck"

    def __init__(self, n: int):
        if n < 2:
            raise SpecError("Dyck graphs need n >= 2")
        super().__init__()
        self.spec = Dyck(n)
        self.n = n
        self.alphabet = self.spec.alphabet
        self.root = ()

    def _out_edges(self, stack):
        edges = [Edge(stack, 2 * i, stack + (2 * i,)) for i in range(self.n)]
        if stack:
            edges.append(Edge(stack, stack[-1] + 1, stack[:-1]))
        else:
            edges.extend(Edge(stack, 2 * i + 1, stack) for i in range(self.n))
        return edges

    def vertex_name(self, stack):
        return f'dyck:"{self.alphabet.format(stack)}"'

    def ball_key(self, stack, radius):
        if len(stack) > radius:
            return ("deep", stack[-radius:] if radius else ())
        return ("exact", stack)


class SGapGraph(GraphGen):
    family = "sgap"

    def __init__(self, gaps: GapSet):
        super().__init__()
        self.spec = SGap(gaps)
        self.gaps = gaps
        self.alphabet = self.spec.alphabet
        self.root = 0

    def _out_edges(self, n):
        edges = [Edge(n, 1, n + 1)]
        if n in self.gaps:
            edges.append(Edge(n, 0, 0))
        return edges

    def vertex_name(self, n):
        return f"sgap:{n}"

    def ball_key(self, n, radius):
        if n > radius:
            return ("deep", tuple(k in self.gaps for k in range(n, n + radius + 1)))
        return ("exact", n)

    def distance_lower_bound(self, u, v, cap):
        # 1-edges raise the index by one, 0-edges drop to 0
        return v - u if v >= u else v + 1


class BetaGraph(GraphGen):
    family = "beta"

    def __init__(self, digits: DigitStream):
        super().__init__()
        self.spec = Beta(digits)
        self.digits = digits
        self.alphabet = self.spec.alphabet
        self.root = -1

    def _out_edges(self, n):
        d = self.digits.digit(n + 1)
        return [Edge(n, i, -1) for i in range(d)] + [Edge(n, d, n + 1)]

    def vertex_name(self, n):
        return f"beta:{n}"

    def ball_key(self, n, radius):
        if n > radius + 1:
            return ("deep", tuple(self.digits.digit(k) for k in range(n + 1, n + radius + 2)))
        return ("exact", n)

    def distance_lower_bound(self, u, v, cap):
        return v - u if v >= u else v + 1


class SFTGraph(GraphGen):
    """Essential higher-block presentation of an SFT (not necessarily minimal)."""

    family = "sft"

    def __init__(self, spec: SFT):
        super().__init__()
        self.spec = spec
        self.alphabet = spec.alphabet
        verts, self._succ = spec._essential
        if not verts:
            raise SpecError("SFT is empty")
        self.root = min(verts)

    def _out_edges(self, v):
        return [Edge(v, w[-1], w) for w in self._succ[v]]

    def vertex_name(self, v):
        return f'sft:"{self.alphabet.format(v)}"'


# ---------------------------------------------------------------------------
# Transforms
# ---------------------------------------------------------------------------


class StarGraph(GraphGen):
    """Star-studded version: ``v -*-> (v, starred)`` and base edges copied
    out of the starred copy."""

    family = "star"

    def __init__(self, base: GraphGen):
        super().__init__()
        self.base = base
        self.alphabet = Alphabet(tuple(base.alphabet.names) + ("*",))
        self.star = len(base.alphabet)
        self.root = (base.root, False)

    def _out_edges(self, v):
        b, starred = v
        edges = [Edge(v, e.label, (e.dst, False)) for e in self.base.out_edges(b)]
        if not starred:
            edges.append(Edge(v, self.star, (b, True)))
        return edges

    def vertex_name(self, v):
        b, starred = v
        return f"star:({self.base.vertex_name(b)}{',*' if starred else ''})"

    def ball_key(self, v, radius):
        return (self.base.ball_key(v[0], radius), v[1])

    def distance_lower_bound(self, u, v, cap):
        if u[0] == v[0] and v[1] and not u[1]:
            return 1
        if u == v:
            return 0
        # dropping star edges turns any path into a base path that is not longer
        return max(self.base.distance_lower_bound(u[0], v[0], cap), 1 if v[1] else 0)


class TensorProduct(GraphGen):
    family = "tensor"

    def __init__(self, left: GraphGen, right: GraphGen):
        super().__init__()
        self.left, self.right = left, right
        self.alphabet = product_alphabet(left.alphabet, right.alphabet)
        self._k = len(right.alphabet)
        self.root = (left.root, right.root)

    def pair_label(self, a: int, b: int) -> int:
        return a * self._k + b

    def split_label(self, c: int) -> tuple[int, int]:
        return divmod(c, self._k)

    def _out_edges(self, v):
        a, b = v
        return [Edge(v, self.pair_label(e.label, f.label), (e.dst, f.dst))
                for e in self.left.out_edges(a) for f in self.right.out_edges(b)]

    def vertex_name(self, v):
        return f"pair:({self.left.vertex_name(v[0])},{self.right.vertex_name(v[1])})"

    def ball_key(self, v, radius):
        return (self.left.ball_key(v[0], radius), self.right.ball_key(v[1], radius))

    def project(self, edge: Edge, side: int) -> Edge:
        a, b = self.split_label(edge.label)
        return Edge(edge.src[side], (a, b)[side], edge.dst[side])

    def distance_lower_bound(self, u, v, cap):
        from .geodesy import distance
        best = 0
        for side, g in ((0, self.left), (1, self.right)):
            d = distance(g, u[side], v[side], cap)
            if d is None:
                return cap + 1
            best = max(best, d)
        return best


MID_LABEL = "~"


class Subdivision(GraphGen):
    """Every edge ``v -a-> w`` becomes ``("v", v) -a-> ("m", (v, a)) -~-> ("v", w)``.

    Colors: original vertices 1, midpoints 2.  Labels are the base labels
    plus one extra symbol ``~`` (code ``len(base.alphabet)``) on the second
    half-edges.
    """

    family = "sub"

    def __init__(self, base: GraphGen):
        super().__init__()
        self.base = base
        self.mid = len(base.alphabet)
        names = tuple(base.alphabet.names)
        self.alphabet = Alphabet(names + (MID_LABEL if MID_LABEL not in names else "~~",))
        self.root = ("v", base.root)

    def _out_edges(self, v):
        kind, x = v
        if kind == "v":
            return [Edge(v, e.label, ("m", (x, e.label))) for e in self.base.out_edges(x)]
        src, label = x
        dst = self.base.step(src, label)
        if dst is None:
            raise GraphError(f"midpoint {x!r} does not name an edge")
        return [Edge(v, self.mid, ("v", dst))]

    def color(self, v):
        return 1 if v[0] == "v" else 2

    def vertex_name(self, v):
        kind, x = v
        if kind == "v":
            return f"sub:{self.base.vertex_name(x)}"
        return f"sub:mid({self.base.vertex_name(x[0])},{self.base.alphabet.names[x[1]]})"

    def distance_lower_bound(self, u, v, cap):
        return 0


class InducedGraph(GraphGen):
    """One component of the induced pair of a 2-colored graph: vertices of
    ``color``, one edge per path of length 2 from such a vertex."""

    family = "induced"

    def __init__(self, bg: GraphGen, color: int, root):
        super().__init__()
        if bg.color(bg.root) is None:
            raise GraphError("induced_pair needs a 2-colored graph")
        if bg.color(root) != color:
            raise GraphError("root has the wrong color")
        self.bg = bg
        self.which = color
        self.alphabet = product_alphabet(bg.alphabet, bg.alphabet)
        self._k = len(bg.alphabet)
        self.root = root

    def _out_edges(self, v):
        bg = self.bg
        if bg.color(v) != self.which:
            raise GraphError(f"vertex {v!r} has the wrong color")
        out = []
        for e in bg.out_edges(v):
            if bg.color(e.dst) == self.which:
                raise GraphError(f"edge {e!r} does not cross colors")
            for f in bg.out_edges(e.dst):
                if bg.color(f.dst) != self.which:
                    raise GraphError(f"edge {f!r} does not cross colors")
                out.append(Edge(v, e.label * self._k + f.label, f.dst))
        return out

    def halves(self, edge: Edge) -> tuple[Edge, Edge]:
        """The two underlying edges of ``bg`` realizing an induced edge."""
        a, b = divmod(edge.label, self._k)
        mid = self.bg.step(edge.src, a)
        if mid is None or self.bg.step(mid, b) != edge.dst:
            raise GraphError(f"{edge!r} is not an edge of the induced graph")
        return Edge(edge.src, a, mid), Edge(mid, b, edge.dst)

    def vertex_name(self, v):
        return f"ind{self.which}:{self.bg.vertex_name(v)}"

    def distance_lower_bound(self, u, v, cap):
        bg = self.bg
        if isinstance(bg, Subdivision):
            base = bg.base
            if self.which == 1:
                return base.distance_lower_bound(u[1], v[1], cap)
            # midpoint (s, a) -> midpoint (s', a'): 1 + base distance dst(s,a) -> s'
            w = base.step(*u[1])
            return 1 + base.distance_lower_bound(w, v[1][0], cap)
        return 0


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def dyck_fischer(n: int) -> DyckGraph:
    return DyckGraph(n)


def sgap_fischer(gaps: GapSet) -> SGapGraph:
    if not gaps.infinite:
        raise SpecError("the S-gap Fischer generator needs an infinite gap set")
    return SGapGraph(gaps)


def beta_fischer(digits: DigitStream) -> BetaGraph:
    return BetaGraph(digits)


def tensor_product(g1: GraphGen, g2: GraphGen) -> TensorProduct:
    return TensorProduct(g1, g2)


def star_graph(g: GraphGen) -> StarGraph:
    return StarGraph(g)


def subdivide_bipartite(g: GraphGen) -> Subdivision:
    return Subdivision(g)


def induced_pair(bg: GraphGen) -> tuple[InducedGraph, InducedGraph]:
    """Both induced components; the second is rooted at the midpoint of the
    root's first out-edge."""
    first = InducedGraph(bg, bg.color(bg.root), bg.root)
    edges = bg.out_edges(bg.root)
    if not edges:
        raise GraphError("root has no out-edges")
    second = InducedGraph(bg, bg.color(edges[0].dst), edges[0].dst)
    return first, second


def fischer_graph(spec: ShiftSpec) -> GraphGen:
    """Cover generator for a builtin family."""
    if isinstance(spec, Dyck):
        return dyck_fischer(spec.n)
    if isinstance(spec, SGap):
        return sgap_fischer(spec.gaps)
    if isinstance(spec, Beta):
        return beta_fischer(spec.digits)
    if isinstance(spec, Star):
        return star_graph(fischer_graph(spec.inner))
    if isinstance(spec, Product):
        return tensor_product(fischer_graph(spec.left), fischer_graph(spec.right))
    if isinstance(spec, SFT):
        return SFTGraph(spec)
    raise SpecError(f"no cover generator for {type(spec).__name__}")


# ---------------------------------------------------------------------------
# Exploration, paths, DOT
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GraphFragment:
    """BFS closure of a generator to ``depth``.

    ``edges`` holds every edge whose endpoints both lie in the fragment.
    ``frontier`` holds vertices whose out-edges leave the fragment.
    """

    graph: GraphGen = field(repr=False, compare=False)
    vertices: dict
    edges: tuple
    depth: int
    frontier: frozenset

    def summary(self) -> dict:
        return {"family": self.graph.family, "depth": self.depth,
                "vertices": len(self.vertices), "edges": len(self.edges),
                "frontier": len(self.frontier)}


def explore(g: GraphGen, depth: int, max_vertices: Optional[int] = None) -> GraphFragment:
    """Breadth-first closure; each layer is visited in vertex-name order."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    dist = {g.root: 0}
    layer = [g.root]
    for d in range(depth):
        nxt = []
        for v in layer:
            for e in g.out_edges(v):
                if e.dst not in dist:
                    if max_vertices is not None and len(dist) >= max_vertices:
                        continue
                    dist[e.dst] = d + 1
                    nxt.append(e.dst)
        layer = sorted(nxt, key=g.vertex_name)
        if not layer:
            break
    order = sorted(dist, key=lambda v: (dist[v], g.vertex_name(v)))
    vertices = {v: dist[v] for v in order}
    edges = []
    frontier = set()
    for v in order:
        for e in g.out_edges(v):
            if e.dst in dist:
                edges.append(e)
            else:
                frontier.add(v)
    return GraphFragment(g, vertices, tuple(edges), depth, frozenset(frontier))


def path_label(path: Sequence[Edge]) -> tuple:
    check_path(path)
    return tuple(e.label for e in path)


def check_path(path: Sequence[Edge]) -> None:
    for a, b in zip(path, path[1:]):
        if a.dst != b.src:
            raise GraphError(f"non-contiguous path: {a!r} then {b!r}")


def follow(g: GraphGen, v, labels: Iterable[int]) -> tuple[Edge, ...]:
    """The path from ``v`` spelling ``labels`` (right-resolving)."""
    path = []
    for a in labels:
        w = g.step(v, a)
        if w is None:
            raise GraphError(f"no edge labeled {a!r} out of {v!r}")
        path.append(Edge(v, a, w))
        v = w
    return tuple(path)


def return_reachable(g: GraphGen, v, cap: int) -> bool:
    """Is there a path from ``v`` back to the root of length at most ``cap``?"""
    if v == g.root:
        return True
    seen = {v}
    frontier = [v]
    for _ in range(cap):
        nxt = []
        for u in frontier:
            for e in g.out_edges(u):
                if e.dst == g.root:
                    return True
                if e.dst not in seen:
                    seen.add(e.dst)
                    nxt.append(e.dst)
        frontier = nxt
    return False


def path_labels(g: GraphGen, length: int, starts: Iterable) -> set:
    """Label words of all paths of ``length`` starting at any of ``starts``.

    Walks the word trie carrying the set of current vertices.  Vertices whose
    ball keys agree at the remaining radius read the same words, so only one
    representative per key is kept.
    """
    out = set()

    def dedupe(vertices, r):
        reps = {}
        for v in vertices:
            key = g.ball_key(v, r)
            reps.setdefault(v if key is None else key, v)
        return list(reps.values())

    def grow(prefix, current, r):
        if r == 0:
            out.add(prefix)
            return
        nxt: dict = {}
        for v in current:
            for e in g.out_edges(v):
                nxt.setdefault(e.label, []).append(e.dst)
        for label in sorted(nxt):
            grow(prefix + (label,), dedupe(nxt[label], r - 1), r - 1)

    grow((), dedupe(starts, length), length)
    return out


def _dot_id(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(fragment: GraphFragment, max_vertices: Optional[int] = None) -> str:
    """Deterministic DOT text.  Frontier vertices (and vertices cut by
    ``max_vertices``) are drawn as boxes."""
    g = fragment.graph
    verts = list(fragment.vertices)
    kept = set(verts if max_vertices is None else verts[:max_vertices])
    cut = set(verts) - kept
    lines = [f"digraph {_dot_id(g.family)} {{", "  rankdir=LR;"]
    for v in verts:
        if v not in kept:
            continue
        shape = "box" if v in fragment.frontier or any(
            e.dst in cut for e in fragment.edges if e.src == v) else "circle"
        if v == g.root:
            shape = "doublecircle" if shape == "circle" else shape
        lines.append(f"  {_dot_id(g.vertex_name(v))} [shape={shape}];")
    for e in fragment.edges:
        if e.src in kept and e.dst in kept:
            lines.append(f"  {_dot_id(g.vertex_name(e.src))} -> {_dot_id(g.vertex_name(e.dst))}"
                         f" [label={_dot_id(g.alphabet.names[e.label])}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
