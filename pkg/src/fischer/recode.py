"""Bipartite codes on configurations and on path spaces of 2-colored graphs.

A forward bipartite code for a partition ``(C, D)`` reads a configuration
over pair symbols ``c_i d_i`` and writes ``d_i c_{i+1}``; the backward code
writes ``d_{i-1} c_i``.  Backward with the swapped partition ``(D, C)``
undoes forward exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .ca import apply_local
from .geodesy import (INCONCLUSIVE, WITNESS, Bounds, RayPair, is_geodesic,
                      verify_strict_proximal_prefix)
from .graphs import Edge, GraphError, GraphGen, InducedGraph, Subdivision, check_path
from .shifts import Alphabet, Configuration, SpecError, product_alphabet


@dataclass(frozen=True)
class BipartiteCodeSpec:
    direction: str
    C: Alphabet
    D: Alphabet

    def __post_init__(self):
        if self.direction not in ("forward", "backward"):
            raise SpecError(f"direction must be forward or backward, not {self.direction!r}")
        if set(self.C.names) & set(self.D.names):
            raise SpecError("partition classes must be disjoint")

    @property
    def domain(self) -> Alphabet:
        return product_alphabet(self.C, self.D)

    @property
    def codomain(self) -> Alphabet:
        return product_alphabet(self.D, self.C)

    def inverse(self) -> "BipartiteCodeSpec":
        flip = "backward" if self.direction == "forward" else "forward"
        return BipartiteCodeSpec(flip, self.D, self.C)


def bipartite_apply(spec: BipartiteCodeSpec, x: Configuration) -> Configuration:
    nc, nd = len(spec.C), len(spec.D)
    n = nc * nd

    def split(s):
        if not 0 <= s < n:
            raise SpecError(f"symbol {s!r} does not decompose over the partition")
        return divmod(s, nd)

    def rule(w):
        (_, d), (c, _) = split(w[0]), split(w[1])
        return d * nc + c

    if spec.direction == "forward":
        return apply_local(x, 0, 1, rule)
    return apply_local(x, -1, 0, rule)


def _second_component(bg: GraphGen, vertex) -> InducedGraph:
    return InducedGraph(bg, bg.color(vertex), vertex)


def path_bipartite(bg: GraphGen, path: Sequence[Edge]) -> tuple:
    """Re-chunk ``c0 d0 c1 d1 ...`` into ``d0 c1, d1 c2, ...``.

    ``path`` lives in the induced component of the source color; the result
    lives in the other component and is one edge shorter.
    """
    check_path(path)
    if not path:
        return ()
    first = bg.color(path[0].src)
    if first is None:
        raise GraphError("path_bipartite needs a 2-colored graph")
    k = len(bg.alphabet)
    halves = []
    for e in path:
        if bg.color(e.src) != first or bg.color(e.dst) != first:
            raise GraphError(f"{e!r} leaves the induced component")
        a, b = divmod(e.label, k)
        mid = bg.step(e.src, a)
        if mid is None or bg.color(mid) == first or bg.step(mid, b) != e.dst:
            raise GraphError(f"{e!r} is not a path of length 2 in the colored graph")
        halves.append((Edge(e.src, a, mid), Edge(mid, b, e.dst)))
    out = []
    for (_, d), (c, _) in zip(halves, halves[1:]):
        out.append(Edge(d.src, d.label * k + c.label, c.dst))
    return tuple(out)


def lift_to_first(bg: Subdivision, path: Sequence[Edge]) -> tuple:
    """The path of the first induced component of ``subdivide_bipartite(g)``
    that spells the same base edges as ``path`` on ``g``."""
    check_path(path)
    k = len(bg.alphabet)
    return tuple(Edge(("v", e.src), e.label * k + bg.mid, ("v", e.dst)) for e in path)


@dataclass
class TransportReport:
    holds: bool
    geodesic_in: tuple
    geodesic_out: tuple
    proximal_in: str
    proximal_out: str
    index_map_ok: bool
    detail: dict

    def to_doc(self) -> dict:
        return {"holds": self.holds, "geodesic_in": list(self.geodesic_in),
                "geodesic_out": list(self.geodesic_out), "proximal_in": self.proximal_in,
                "proximal_out": self.proximal_out, "index_map_ok": self.index_map_ok,
                "detail": self.detail}

    def to_text(self) -> str:
        return json.dumps(self.to_doc(), sort_keys=True, indent=2) + "\n"


def transport_check(bg: GraphGen, pair: RayPair, bounds: Bounds) -> TransportReport:
    """Push both rays through :func:`path_bipartite` and re-check geodesics and
    the witness conditions; the image horizon and window shrink by one.

    The geodesic item holds when every geodesic input ray has a geodesic
    image.  The proximal item holds when a witness input has a witness image.
    Each input disagreement ``i`` must reappear at ``i - 1`` or ``i``.
    """
    pair.check()
    if not pair.x:
        raise GraphError("empty pair")
    fx, fy = path_bipartite(bg, pair.x), path_bipartite(bg, pair.y)
    g2 = _second_component(bg, fx[0].src if fx else pair.x[0].dst)
    g_in = (is_geodesic(pair.graph, pair.x), is_geodesic(pair.graph, pair.y))
    g_out = (is_geodesic(g2, fx), is_geodesic(g2, fy))
    rep_in = verify_strict_proximal_prefix(pair, bounds)
    image = RayPair(g2, fx, fy)
    b2 = Bounds(bounds.explore_depth, bounds.horizon - 1, max(bounds.window - 1, 1),
                bounds.min_disagreements, bounds.bfs_cap, bounds.budget)
    rep_out = verify_strict_proximal_prefix(image, b2) if b2.horizon <= image.horizon \
        else None
    dis_in = [i for i in range(len(pair.x)) if pair.x[i] != pair.y[i]]
    dis_out = {i for i in range(len(fx)) if fx[i] != fy[i]}
    # interior indices only: a boundary cell may lose its differing half
    index_ok = all((i - 1 in dis_out) or (i in dis_out) for i in dis_in if 1 <= i < len(fx))
    geo_ok = all(o for i, o in zip(g_in, g_out) if i)
    prox_out = rep_out.status if rep_out else INCONCLUSIVE
    prox_ok = rep_in.status != WITNESS or prox_out == WITNESS
    return TransportReport(geo_ok and prox_ok and index_ok, g_in, g_out, rep_in.status, prox_out,
                           index_ok, {"image_horizon": len(fx), "image_window": b2.window,
                                      "disagreements_in": dis_in,
                                      "disagreements_out": sorted(dis_out)})
