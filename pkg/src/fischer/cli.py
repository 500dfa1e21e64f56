"""Command-line front end.

Exit codes: 0 success or expectation matched, 1 expectation mismatched,
2 input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from itertools import islice

import yaml

from .ca import (Direction, default_directions, identity, random_member_configuration,
                 sensitivity_scan, sensitivity_text, spacetime, star_ca)
from .geodesy import (NO_WITNESS, WITNESS, Bounds, RayPair, geodesic_rays, primeness_report,
                      product_witness, verify_strict_proximal_prefix)
from .graphs import GraphError, explore, fischer_graph, induced_pair, subdivide_bipartite, to_dot
from .recode import lift_to_first, transport_check
from .shifts import Product, SpecError, Star, member
from .specdoc import from_doc, from_shorthand, load

VERSION = "0.1.0"
_INVISIBLE = dict.fromkeys([0x200B, 0x200C, 0x200D, 0xFEFF])


class InputError(Exception):
    pass


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def add_spec_args(p: argparse.ArgumentParser):
    g = p.add_argument_group("shift specification")
    g.add_argument("--spec", metavar="FILE", help="YAML/JSON spec document")
    g.add_argument("--family", choices=["sft", "dyck", "sgap", "beta", "product", "star", "golden"])
    g.add_argument("--n", type=int, help="Dyck bracket pairs")
    g.add_argument("--gaps", help="pow2 or a comma list")
    g.add_argument("--digits", help="fig3 or a digit string")
    g.add_argument("--inner", help="shorthand of the starred shift, e.g. sgap:pow2")
    g.add_argument("--left", help="shorthand of the left factor")
    g.add_argument("--right", help="shorthand of the right factor")
    g.add_argument("--alphabet", help="SFT alphabet letters")
    g.add_argument("--forbidden", help="SFT forbidden words, comma separated")


def build_spec(args):
    if args.spec:
        return load(args.spec)
    fam = args.family
    if fam is None:
        raise InputError("give --spec FILE or --family")
    if fam == "golden":
        return from_shorthand("golden")
    if fam == "dyck":
        return from_doc({"family": "dyck", "n": args.n if args.n is not None else 2})
    if fam == "sgap":
        return from_doc({"family": "sgap", "gaps": args.gaps or "pow2"})
    if fam == "beta":
        return from_doc({"family": "beta", "digits": args.digits or "fig3"})
    if fam == "star":
        if not args.inner:
            raise InputError("--family star needs --inner")
        return Star(from_shorthand(args.inner))
    if fam == "product":
        if not (args.left and args.right):
            raise InputError("--family product needs --left and --right")
        return Product(from_shorthand(args.left), from_shorthand(args.right))
    if not (args.alphabet and args.forbidden is not None):
        raise InputError("--family sft needs --alphabet and --forbidden")
    return from_doc({"family": "sft", "alphabet": args.alphabet,
                     "forbidden": [w for w in args.forbidden.split(",") if w]})


def add_bounds_args(p, depth=6, horizon=12, window=4, dis=3):
    g = p.add_argument_group("search bounds")
    g.add_argument("--explore-depth", type=int, default=depth)
    g.add_argument("--horizon", type=int, default=horizon)
    g.add_argument("--window", type=int, default=window)
    g.add_argument("--min-disagreements", type=int, default=dis)
    g.add_argument("--bfs-cap", type=int, default=24)
    g.add_argument("--budget", type=int, default=200_000)


def build_bounds(args) -> Bounds:
    return Bounds(args.explore_depth, args.horizon, args.window, args.min_disagreements,
                  args.bfs_cap, args.budget)


def _manifest(args, spec) -> dict:
    return {"command": args.command, "spec": spec.to_doc(), "seed": args.seed,
            "version": VERSION}


def _emit(text: str, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_member(args):
    spec = build_spec(args)
    word = spec.parse(args.word.translate(_INVISIBLE))
    print("true" if member(spec, word) else "false")
    return 0


def cmd_graph(args):
    spec = build_spec(args)
    frag = explore(fischer_graph(spec), args.depth)
    if args.format == "summary":
        _emit(_dump(frag.summary()), args.output)
    else:
        _emit(to_dot(frag, args.max_vertices), args.output)
    return 0


def _expect_code(status: str, expect) -> int:
    if expect is None:
        return 0
    want = WITNESS if expect == "witness" else NO_WITNESS
    return 0 if status == want else 1


def cmd_prime_scan(args):
    spec = build_spec(args)
    rep = primeness_report(spec, build_bounds(args), args.product_horizon)
    doc = rep.to_doc()
    doc["manifest"] = _manifest(args, spec)
    _emit(_dump(doc), args.output)
    return _expect_code(rep.proximal.status, args.expect)


def _edge_by_name(g, v, name):
    if name is None:
        return None
    code = g.alphabet.code(name)
    for e in g.out_edges(v):
        if e.label == code:
            return e
    raise InputError(f"no edge labeled {name!r} at the root")


def cmd_witness(args):
    spec = build_spec(args)
    if not isinstance(spec, Product):
        raise InputError("witness needs a product spec")
    gy, gz = fischer_graph(spec.left), fischer_graph(spec.right)
    pair = product_witness(gy, args.horizon, gz, None, _edge_by_name(gz, gz.root, args.e1),
                           _edge_by_name(gz, gz.root, args.e2), args.horizon)
    b = Bounds(args.explore_depth, args.horizon, args.window, args.min_disagreements,
               max(args.bfs_cap, args.horizon), args.budget)
    rep = verify_strict_proximal_prefix(pair, b)
    doc = rep.to_doc()
    doc["manifest"] = _manifest(args, spec)
    _emit(_dump(doc), args.output)
    return 0 if rep.status == WITNESS else 1


def _star_domain(spec):
    return spec if isinstance(spec, Star) else Star(spec)


def cmd_ca_run(args):
    spec = _star_domain(build_spec(args))
    f = star_ca(spec.inner)
    x = random_member_configuration(spec, random.Random(args.seed))
    text = spacetime(f, x, args.steps, args.lo, args.lo + args.width - 1)
    _emit(text, args.output)
    return 0


def cmd_sense_scan(args):
    spec = _star_domain(build_spec(args))
    f = star_ca(spec.inner) if args.code == "star" else identity(spec.alphabet, spec)
    if args.directions:
        dirs = [Direction.parse(t) for t in args.directions.split(",") if t.strip()]
    else:
        dirs = default_directions()
    rep = sensitivity_scan(f, dirs, args.max_word_len, args.steps, spec)
    all_refuted = all(e["status"] == "all-candidates-refuted" for e in rep.values())
    _emit(sensitivity_text(rep, code=args.code, max_word_len=args.max_word_len,
                           steps=args.steps, manifest=_manifest(args, spec)), args.output)
    if args.expect is None:
        return 0
    return 0 if all_refuted == (args.expect == "all-refuted") else 1


def cmd_transport(args):
    spec = build_spec(args)
    g = fischer_graph(spec)
    bg = subdivide_bipartite(g)
    first, _ = induced_pair(bg)
    bounds = build_bounds(args)
    rays = list(islice(geodesic_rays(g, g.root, args.horizon), args.rays))
    ok = 0
    for r in rays:
        lifted = lift_to_first(bg, r)
        rep = transport_check(bg, RayPair(first, lifted, lifted), bounds)
        ok += rep.holds
    doc = {"rays_tested": len(rays), "rays_transported": ok, "manifest": _manifest(args, spec)}
    holds = ok == len(rays)
    if isinstance(spec, Product):
        gy, gz = fischer_graph(spec.left), fischer_graph(spec.right)
        pair = product_witness(gy, args.witness_horizon, gz, horizon=args.witness_horizon)
        pbg = subdivide_bipartite(pair.graph)
        pfirst, _ = induced_pair(pbg)
        lifted = RayPair(pfirst, lift_to_first(pbg, pair.x), lift_to_first(pbg, pair.y))
        pb = Bounds(bounds.explore_depth, args.witness_horizon, bounds.window,
                    bounds.min_disagreements, max(bounds.bfs_cap, args.witness_horizon),
                    bounds.budget)
        rep = transport_check(pbg, lifted, pb)
        doc["witness"] = rep.to_doc()
        holds = holds and rep.holds and rep.proximal_out == WITNESS
    doc["holds"] = holds
    _emit(_dump(doc), args.output)
    return 0 if holds else 1


# ---------------------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fischer", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("-o", "--output", help="write the report here instead of stdout")
        add_spec_args(p)
        return p

    p = command("member", cmd_member, "membership of a finite word")
    p.add_argument("word")

    p = command("graph", cmd_graph, "explore the cover and print DOT")
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--max-vertices", type=int)
    p.add_argument("--format", choices=["dot", "summary"], default="dot")

    p = command("prime-scan", cmd_prime_scan, "bounded primeness criterion")
    add_bounds_args(p)
    p.add_argument("--product-horizon", type=int, default=64)
    p.add_argument("--expect", choices=["no-witness", "witness"])

    p = command("witness", cmd_witness, "product witness construction")
    add_bounds_args(p, horizon=64)
    p.add_argument("--e1", help="label of the first edge at the right factor's root")
    p.add_argument("--e2", help="label of the second edge")

    p = command("ca-run", cmd_ca_run, "space-time diagram of the star CA")
    p.add_argument("--steps", type=int, default=16)
    p.add_argument("--lo", type=int, default=-20)
    p.add_argument("--width", type=int, default=48)

    p = command("sense-scan", cmd_sense_scan, "directional sensitivity scan")
    p.add_argument("--directions", help="comma list like 0/1,1/2 (default |p|<=3, q<=2)")
    p.add_argument("--max-word-len", type=int, default=6)
    p.add_argument("--steps", type=int, default=20)
    p.add_argument("--code", choices=["star", "identity"], default="star")
    p.add_argument("--expect", choices=["all-refuted", "survivors"])

    p = command("transport", cmd_transport, "geodesic and witness transport through subdivision")
    add_bounds_args(p, horizon=10)
    p.add_argument("--rays", type=int, default=100)
    p.add_argument("--witness-horizon", type=int, default=64)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (InputError, SpecError, GraphError, ValueError, OSError, yaml.YAMLError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
