"""Sliding block codes on eventually periodic configurations, the star CA
and its inverse, blocking-word refutation and directional sensitivity scans.

A code with memory ``m`` and anticipation ``a`` computes
``F(x)[i] = rule(x[i+m], ..., x[i+a])``.  Codes built with :func:`power`
and :func:`with_shift` remember their factorization ``shift^p o base^q`` so
long runs go through the tabulated kernels instead of a nested rule.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from itertools import product as cartesian
from math import gcd
from typing import Callable, Iterable, Optional, Sequence

from . import kernels
from .geodesy import shortest_path
from .graphs import SFTGraph, fischer_graph
from .shifts import (SFT, Alphabet, Configuration, ShiftSpec, SpecError, Star, _primitive_root,
                     member)

Rule = Callable[[tuple], int]


def apply_local(x: Configuration, m: int, a: int, rule: Rule) -> Configuration:
    """Apply ``i -> rule(x[i+m..i+a])`` exactly, keeping tail periods."""
    lp, rp = len(x.left_period), len(x.right_period)
    end = x.offset + len(x.core)
    lo = min(x.offset - a, end - m)
    hi = max(end - m, lo)

    def out(i):
        return rule(x.window(i + m, i + a))

    left = tuple(out(i) for i in range(lo - lp, lo))
    core = tuple(out(i) for i in range(lo, hi))
    right = tuple(out(i) for i in range(hi, hi + rp))
    return Configuration(left, core, right, lo)


class SlidingBlockCode:
    """Local rule with a memory/anticipation window."""

    def __init__(self, memory: int, anticipation: int, rule: Rule, alphabet: Alphabet,
                 out_alphabet: Optional[Alphabet] = None, domain: Optional[ShiftSpec] = None,
                 name: str = "code", _factors=None):
        if memory > anticipation:
            raise ValueError("memory must not exceed anticipation")
        self.memory = memory
        self.anticipation = anticipation
        self.rule = rule
        self.alphabet = alphabet
        self.out_alphabet = out_alphabet or alphabet
        self.domain = domain
        self.name = name
        # (base, q, p) with self == shift^p o base^q
        self._factors = _factors

    def __repr__(self):
        return f"SlidingBlockCode({self.name}, m={self.memory}, a={self.anticipation})"

    @property
    def span(self) -> int:
        return self.anticipation - self.memory + 1

    @property
    def radius(self) -> int:
        return max(abs(self.memory), abs(self.anticipation))

    @property
    def factors(self):
        return self._factors or (self, 1, 0)

    def local(self, word: Sequence[int]) -> int:
        if len(word) != self.span:
            raise ValueError(f"local rule needs {self.span} symbols")
        return self.rule(tuple(word))

    def table(self):
        """Rule values for every word of the span, indexed base ``k``."""
        cached = self.__dict__.get("_table")
        if cached is None:
            k = len(self.alphabet)
            if k ** self.span > 1 << 22:
                raise ValueError("rule table too large")
            cached = [self.rule(w) for w in cartesian(range(k), repeat=self.span)]
            self.__dict__["_table"] = cached
        return cached

    def apply(self, x: Configuration) -> Configuration:
        if self._factors is not None:
            base, q, p = self._factors
            for _ in range(q):
                x = base.apply(x)
            return x.shift(p)
        return apply_local(x, self.memory, self.anticipation, self.rule)

    def apply_word(self, word: Sequence[int]) -> tuple:
        """Image of a finite word; output has ``len(word) - span + 1`` symbols."""
        n = len(word) - self.span + 1
        return tuple(self.rule(tuple(word[i:i + self.span])) for i in range(max(n, 0)))


def _check_alphabets(f: SlidingBlockCode, g: SlidingBlockCode):
    if f.alphabet != g.out_alphabet:
        raise SpecError("alphabet mismatch in composition")


def compose(f: SlidingBlockCode, g: SlidingBlockCode) -> SlidingBlockCode:
    """The code ``f o g`` (apply ``g`` first)."""
    _check_alphabets(f, g)
    fb, fq, fp = f.factors
    gb, gq, gp = g.factors
    m, a = f.memory + g.memory, f.anticipation + g.anticipation
    factors = None
    if fb is gb:
        factors = (fb, fq + gq, fp + gp)
    gspan, fspan = g.span, f.span

    def rule(w):
        inner = tuple(g.rule(w[j:j + gspan]) for j in range(fspan))
        return f.rule(inner)

    return SlidingBlockCode(m, a, rule, g.alphabet, f.out_alphabet, g.domain,
                            f"({f.name})o({g.name})", factors)


def identity(alphabet: Alphabet, domain: Optional[ShiftSpec] = None) -> SlidingBlockCode:
    return SlidingBlockCode(0, 0, lambda w: w[0], alphabet, domain=domain, name="id")


def power(f: SlidingBlockCode, q: int) -> SlidingBlockCode:
    if q < 0:
        raise ValueError("q must be >= 0")
    if q == 0:
        return identity(f.alphabet, f.domain)
    out = f
    for _ in range(q - 1):
        out = compose(f, out)
    return out


def with_shift(f: SlidingBlockCode, p: int) -> SlidingBlockCode:
    """``shift^p o f``: memory and anticipation both move by ``p``."""
    b, q, p0 = f.factors
    return SlidingBlockCode(f.memory + p, f.anticipation + p, f.rule, f.alphabet,
                            f.out_alphabet, f.domain, f"s^{p}o({f.name})", (b, q, p0 + p))


def shift_code(alphabet: Alphabet, p: int = 1, domain: Optional[ShiftSpec] = None):
    return with_shift(identity(alphabet, domain), p)


def symbol_map(mapping: dict, alphabet: Alphabet, out_alphabet: Alphabet) -> SlidingBlockCode:
    """Radius-0 code from a ``{name: name}`` mapping."""
    codes = {}
    for a in alphabet.names:
        if a not in mapping:
            raise SpecError(f"symbol map misses {a!r}")
        codes[alphabet.code(a)] = out_alphabet.code(mapping[a])
    return SlidingBlockCode(0, 0, lambda w: codes[w[0]], alphabet, out_alphabet, name="phi")


def _star_base(base) -> Alphabet:
    if isinstance(base, ShiftSpec):
        return base.alphabet
    if isinstance(base, Alphabet):
        return base
    return Alphabet(tuple(base))


def star_ca(base, domain: Optional[ShiftSpec] = None) -> SlidingBlockCode:
    """Letters hop one letter to the left over isolated stars; stars stay."""
    a = _star_base(base)
    star = len(a)
    alphabet = Alphabet(tuple(a.names) + ("*",))

    def rule(w):
        x0, x1, x2 = w
        if x0 == star:
            return star
        if x1 != star:
            return x1
        return x2

    if domain is None and isinstance(base, ShiftSpec):
        domain = Star(base)
    return SlidingBlockCode(0, 2, rule, alphabet, domain=domain, name="star")


def star_ca_inverse(base, domain: Optional[ShiftSpec] = None) -> SlidingBlockCode:
    a = _star_base(base)
    star = len(a)
    alphabet = Alphabet(tuple(a.names) + ("*",))

    def rule(w):
        x2, x1, x0 = w  # x[i-2], x[i-1], x[i]
        if x0 == star:
            return star
        if x1 != star:
            return x1
        return x2

    if domain is None and isinstance(base, ShiftSpec):
        domain = Star(base)
    return SlidingBlockCode(-2, 0, rule, alphabet, domain=domain, name="star^-1")


# ---------------------------------------------------------------------------
# directions and blocking words
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Direction:
    p: int
    q: int

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("q must be positive")
        if gcd(abs(self.p), self.q) != 1:
            raise ValueError(f"{self.p}/{self.q} is not in lowest terms")

    def __str__(self):
        return f"{self.p}/{self.q}"

    @classmethod
    def parse(cls, text: str) -> "Direction":
        p, _, q = text.partition("/")
        return cls(int(p), int(q or 1))

    def code(self, f: SlidingBlockCode) -> SlidingBlockCode:
        return with_shift(power(f, self.q), self.p)


def default_directions(max_p: int = 3, max_q: int = 2) -> list[Direction]:
    return [Direction(p, q) for q in range(1, max_q + 1) for p in range(-max_p, max_p + 1)
            if gcd(abs(p), q) == 1]


@dataclass(frozen=True)
class BlockingCandidate:
    w: tuple
    e: int
    p_off: int

    def check(self, radius: int) -> None:
        if not (len(self.w) >= self.e >= radius + 1):
            raise ValueError(f"need |w| >= e >= r + 1 (|w|={len(self.w)}, e={self.e}, r={radius})")
        if not 0 <= self.p_off <= len(self.w) - self.e:
            raise ValueError(f"offset {self.p_off} outside [0, {len(self.w) - self.e}]")


def legal_candidates(w: tuple, radius: int) -> list[BlockingCandidate]:
    return [BlockingCandidate(w, e, p) for e in range(radius + 1, len(w) + 1)
            for p in range(len(w) - e + 1)]


@dataclass
class RefutationResult:
    status: str  # "Refuted" or "SurvivedBound"
    candidate: BlockingCandidate
    steps: int
    cone: tuple
    x: Optional[Configuration] = None
    y: Optional[Configuration] = None
    step: Optional[int] = None
    tried: int = 0

    @property
    def refuted(self) -> bool:
        return self.status == "Refuted"


def _periodic_tails(spec: ShiftSpec, max_len: int = 3, reps: int = 8) -> list[tuple]:
    k = len(spec.alphabet)
    out = []
    for n in range(1, max_len + 1):
        for u in cartesian(range(k), repeat=n):
            if _primitive_root(u) == u and member(spec, u * reps):
                out.append(u)
    return out


def _near_words(k: int, max_len: int = 2) -> list[tuple]:
    return [w for n in range(max_len + 1) for w in cartesian(range(k), repeat=n)]


def cone(g: SlidingBlockCode, cand: BlockingCandidate, steps: int) -> tuple[int, int]:
    """Cells of ``x`` that can influence the watched window within ``steps``."""
    m, a = g.memory, g.anticipation
    lo = min(0, cand.p_off + min(m, steps * m))
    hi = max(len(cand.w) - 1, cand.p_off + cand.e - 1 + max(a, steps * a))
    return lo, hi


def _extensions(spec: ShiftSpec, w: tuple, lo: int, hi: int):
    """Deterministic family of member configurations carrying ``w`` at 0,
    filtered by membership of the cone window ``[lo, hi]``.

    Left sides ``tail^oo near`` and right sides ``near tail^oo`` are paired in
    growing square shells so both sides vary early.  Yields the configuration
    and its cone window.
    """
    tails = spec.__dict__.get("_tails_cache")
    if tails is None:
        tails = spec.__dict__["_tails_cache"] = _periodic_tails(spec)
    near = _near_words(len(spec.alphabet))

    # only the cone window matters, so sides with equal windows are skipped
    def left_sides():
        seen = set()
        for t in tails:
            for n in near:
                side = Configuration(t, n, t, -len(n)).window(lo, -1)
                if side not in seen and member(spec, side + w):
                    seen.add(side)
                    yield t, n, side

    def right_sides():
        seen = set()
        for t in tails:
            for n in near:
                side = Configuration(t, n, t, len(w)).window(len(w), hi)
                if side not in seen and member(spec, w + side):
                    seen.add(side)
                    yield n, t, side

    lefts, rights = _Lazy(left_sides()), _Lazy(right_sides())
    s = 0
    while lefts.has(s) or rights.has(s):
        pairs = [(s, j) for j in range(s + 1) if rights.has(j)] if lefts.has(s) else []
        if rights.has(s):
            pairs += [(i, s) for i in range(s) if lefts.has(i)]
        for i, j in pairs:
            lt, ln, lw = lefts[i]
            rn, rt, rw = rights[j]
            win = lw + w + rw
            if member(spec, win):
                yield Configuration(lt, ln + w + rn, rt, -len(ln)), win
        s += 1


class _Lazy:
    """List view of an iterator, filled on demand."""

    def __init__(self, it):
        self._it = it
        self._items = []

    def has(self, i: int) -> bool:
        while len(self._items) <= i:
            nxt = next(self._it, None)
            if nxt is None:
                return False
            self._items.append(nxt)
        return True

    def __getitem__(self, i):
        return self._items[i]


def refute_blocking(g: SlidingBlockCode, cand: BlockingCandidate, steps: int,
                    spec: Optional[ShiftSpec] = None) -> RefutationResult:
    """Look for two members of the cylinder of ``w`` whose images under
    ``g^n`` differ on ``[p_off, p_off + e - 1]`` for some ``n <= steps``.

    The extension family combines short periodic tails with short words next
    to ``w``; every reported pair is a genuine counterexample, while
    ``SurvivedBound`` only says the family produced none.
    """
    spec = spec or g.domain
    if spec is None:
        raise SpecError("refutation needs a domain")
    cand.check(g.radius)
    if not member(spec, cand.w):
        raise SpecError("candidate word is not a member")
    lo, hi = cone(g, cand, steps)
    base, q, p = g.factors
    table = base.table()
    k = len(base.alphabet)
    span = base.span
    # the cone is exactly the range the base rule must be simulated on:
    # after k base steps the valid cells are [lo - k*m_b, hi - k*a_b]
    ref = None
    ref_sig = None
    tried = 0
    for x, win in _extensions(spec, cand.w, lo, hi):
        sig = kernels.trajectory(table, k, span, base.memory, win, lo, q, p, steps,
                                 cand.p_off, cand.e)
        tried += 1
        if ref is None:
            ref, ref_sig = x, sig
            continue
        if sig != ref_sig:
            e = cand.e
            n = next(i for i in range(steps)
                     if sig[i * e:(i + 1) * e] != ref_sig[i * e:(i + 1) * e])
            return RefutationResult("Refuted", cand, steps, (lo, hi), ref, x, n + 1, tried)
    return RefutationResult("SurvivedBound", cand, steps, (lo, hi), tried=tried)


def sensitivity_scan(f: SlidingBlockCode, directions: Iterable[Direction], max_word_len: int,
                     steps: int, spec: Optional[ShiftSpec] = None,
                     max_survivors: int = 20) -> dict:
    """Per direction: refute every blocking candidate with ``|w| <= max_word_len``."""
    spec = spec or f.domain
    if spec is None:
        raise SpecError("sensitivity scan needs a domain")
    words = [w for n in range(1, max_word_len + 1) for w in spec.words(n)]
    report = {}
    for d in directions:
        g = d.code(f)
        total = refuted = 0
        survivors = []
        for w in words:
            for cand in legal_candidates(w, g.radius):
                total += 1
                res = refute_blocking(g, cand, steps, spec)
                if res.refuted:
                    refuted += 1
                elif len(survivors) < max_survivors:
                    survivors.append({"w": spec.format(w), "e": cand.e, "p": cand.p_off})
        status = "all-candidates-refuted" if refuted == total else "survivors"
        entry = {"radius": g.radius, "memory": g.memory, "anticipation": g.anticipation,
                 "candidates": total, "refuted": refuted, "survivors": survivors,
                 "status": status}
        if total == 0:
            entry["note"] = "no legal candidate: radius exceeds max_word_len - 1"
        report[str(d)] = entry
    return report


def sensitivity_text(report: dict, **header) -> str:
    return json.dumps({"directions": report, **header}, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# factor maps, sampling, space-time diagrams
# ---------------------------------------------------------------------------


def factor_check(f: SlidingBlockCode, phi: SlidingBlockCode, f_target: SlidingBlockCode,
                 samples: Iterable[Configuration], window: int = 64,
                 target: Optional[ShiftSpec] = None) -> bool:
    """``phi o f == f_target o phi`` on every sample (exact configuration
    equality) and, when ``target`` is given, every ``phi`` image window is a
    member of it."""
    lo = -(window // 2)
    hi = lo + window - 1
    for x in samples:
        lhs = phi.apply(f.apply(x))
        rhs = f_target.apply(phi.apply(x))
        if lhs != rhs or lhs.window(lo, hi) != rhs.window(lo, hi):
            return False
        if target is not None and not member(target, phi.apply(x).window(lo, hi)):
            return False
    return True


def _cycle(g, v, rng: random.Random, min_len: int, max_len: int, cap: int = 256):
    """Closed walk at ``v``: a random walk followed by a shortest return."""
    walk = []
    u = v
    for _ in range(rng.randint(min_len, max_len)):
        e = rng.choice(g.out_edges(u))
        walk.append(e)
        u = e.dst
    back = shortest_path(g, u, v, cap)
    if back is None:
        raise SpecError("cover is not strongly connected at the sampled vertex")
    walk.extend(back)
    return walk


def cover(spec: ShiftSpec):
    if isinstance(spec, SFT):
        return SFTGraph(spec)
    return fischer_graph(spec)


def random_member_configuration(spec: ShiftSpec, rng: random.Random, core_len: int = 24,
                                max_period: int = 6) -> Configuration:
    """Eventually periodic point of ``spec`` read off closed walks at the
    root of its cover (left cycle, core walk, right cycle)."""
    g = cover(spec)
    root = g.root
    while True:
        left = _cycle(g, root, rng, 1, max_period)
        core = _cycle(g, root, rng, core_len // 2, core_len)
        right = _cycle(g, root, rng, 1, max_period)
        if left and right:
            break
    lab = lambda p: tuple(e.label for e in p)
    return Configuration(lab(left), lab(core), lab(right), rng.randint(-len(core), 0))


def spacetime(f: SlidingBlockCode, x: Configuration, steps: int, lo: int, hi: int) -> str:
    """One row per time step ``0..steps`` showing ``[lo, hi]``."""
    names = f.alphabet.names
    sep = "" if all(len(n) == 1 for n in names) else " "
    rows = []
    for n in range(steps + 1):
        rows.append(f"{n:4d} | " + sep.join(names[s] for s in x.window(lo, hi)))
        if n < steps:
            x = f.apply(x)
    return "\n".join(rows) + "\n"
