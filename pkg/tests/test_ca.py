import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fischer.ca import (BlockingCandidate, Direction, SlidingBlockCode, apply_local, compose,
                        cone, default_directions, factor_check, identity, legal_candidates,
                        power, random_member_configuration, refute_blocking, sensitivity_scan,
                        shift_code, spacetime, star_ca, star_ca_inverse, symbol_map, with_shift)
from fischer.shifts import (Alphabet, Configuration, PowersOfTwo, SGap, SpecError, Star,
                            golden_mean, member)

GOLDEN = golden_mean()
SG = SGap(PowersOfTwo())
STAR_G = Star(GOLDEN)
STAR_S = Star(SG)


def samples(spec, n, seed=0):
    rng = random.Random(seed)
    return [random_member_configuration(spec, rng) for _ in range(n)]


def at(f, text, i=0):
    # F(x)[i] where x carries ``text`` at 0 and the rest is 0
    x = Configuration((0,), f.alphabet.parse(text), (0,), 0)
    return f.alphabet.names[f.apply(x)[i]]


# ---------------------------------------------------------------------------
# basic codes
# ---------------------------------------------------------------------------


def test_identity_and_shift():
    for x in samples(STAR_S, 10):
        assert identity(STAR_S.alphabet).apply(x) == x
        s = shift_code(STAR_S.alphabet)
        assert s.apply(x).window(0, 2) == x.window(1, 3)
        assert (s.memory, s.anticipation) == (1, 1)


def test_apply_keeps_periodic_tails():
    f = star_ca(SG)
    x = Configuration.periodic(STAR_S.parse("1*0"))
    y = f.apply(x)
    assert y == y.shift(3)
    # 1*0 1*0 -> letters hop over the star
    assert STAR_S.format(y.window(0, 5)) == "0*10*1"


def test_power_matches_repeated_application():
    f = star_ca(SG)
    f2 = power(f, 2)
    assert (f2.memory, f2.anticipation) == (0, 4)
    direct = SlidingBlockCode(f2.memory, f2.anticipation, f2.rule, f2.alphabet)
    for x in samples(STAR_S, 50, seed=1):
        want = f.apply(f.apply(x))
        assert f2.apply(x) == want
        assert direct.apply(x).window(-16, 15) == want.window(-16, 15)


def test_with_shift_bookkeeping():
    f = star_ca(SG)
    for p, q in [(1, 1), (-3, 1), (2, 2), (-1, 2), (0, 3)]:
        g = with_shift(power(f, q), p)
        assert (g.memory, g.anticipation) == (p, 2 * q + p)
        assert g.radius == max(abs(p), abs(2 * q + p))
        direct = SlidingBlockCode(g.memory, g.anticipation, g.rule, g.alphabet)
        for x in samples(STAR_S, 10, seed=p * 7 + q):
            want = x
            for _ in range(q):
                want = f.apply(want)
            want = want.shift(p)
            assert g.apply(x) == want
            assert direct.apply(x) == want


def test_compose_alphabet_mismatch():
    with pytest.raises(SpecError):
        compose(star_ca(SG), identity(Alphabet(("0", "1"))))
    with pytest.raises(ValueError):
        SlidingBlockCode(2, 1, lambda w: 0, Alphabet(("0",)))


def test_apply_word():
    f = star_ca(SG)
    assert STAR_S.format(f.apply_word(STAR_S.parse("01*10"))) == "11*"


@pytest.mark.parametrize("make", [lambda: star_ca(SG), lambda: star_ca_inverse(SG),
                                  lambda: Direction(-1, 2).code(star_ca(SG)),
                                  lambda: shift_code(STAR_S.alphabet, 2)],
                         ids=["star", "inverse", "direction", "shift"])
def test_shift_equivariance(make):
    f = make()
    for x in samples(STAR_S, 50, seed=3):
        assert f.apply(x.shift(1)) == f.apply(x).shift(1)
        assert f.apply(x.shift(-5)) == f.apply(x).shift(-5)


# ---------------------------------------------------------------------------
# the star CA
# ---------------------------------------------------------------------------


def test_star_rule_examples():
    f = star_ca(SG)
    assert at(f, "01") == "1"
    assert at(f, "0*1") == "1"
    assert at(f, "*01") == "*"
    assert f.local(STAR_S.parse("1*0")) == 0
    assert (f.memory, f.anticipation) == (0, 2)
    g = star_ca_inverse(SG)
    assert (g.memory, g.anticipation) == (-2, 0)


def _no_double_star(u, star):
    return all(not (a == star and b == star) for a, b in zip(u, u[1:]))


def test_inverse_on_every_width_five_window():
    f, g = star_ca(SG), star_ca_inverse(SG)
    gf, fg = compose(g, f), compose(f, g)
    assert (gf.memory, gf.anticipation) == (fg.memory, fg.anticipation) == (-2, 2)
    star = f.alphabet.code("*")
    count = 0
    for u in product(range(3), repeat=5):
        if _no_double_star(u, star):
            count += 1
            assert gf.local(u) == u[2]
            assert fg.local(u) == u[2]
    assert count == 164


@pytest.mark.parametrize("spec", [STAR_G, STAR_S], ids=["golden", "sgap"])
def test_reversibility_on_members(spec):
    f, g = star_ca(spec.inner), star_ca_inverse(spec.inner)
    for x in samples(spec, 100, seed=11):
        assert g.apply(f.apply(x)) == x
        assert f.apply(g.apply(x)) == x
        assert g.apply(f.apply(x)).window(-32, 31) == x.window(-32, 31)


@pytest.mark.parametrize("spec", [STAR_G, STAR_S], ids=["golden", "sgap"])
def test_star_positions_fixed_and_members_preserved(spec):
    f = star_ca(spec.inner)
    star = spec.star
    for x in samples(spec, 50, seed=5):
        y = f.apply(x)
        wx, wy = x.window(-32, 31), y.window(-32, 31)
        assert [s == star for s in wx] == [s == star for s in wy]
        assert member(spec, wy)


def test_sampled_configurations_are_members():
    for spec in (STAR_G, STAR_S, SG, GOLDEN):
        for x in samples(spec, 20, seed=2):
            assert member(spec, x.window(-40, 40))


def test_sampling_is_seeded():
    assert samples(STAR_S, 5, seed=9) == samples(STAR_S, 5, seed=9)


# ---------------------------------------------------------------------------
# factor maps
# ---------------------------------------------------------------------------


def test_factor_onto_golden_mean():
    phi = symbol_map({"0": "0", "1": "0", "*": "1"}, STAR_S.alphabet, GOLDEN.alphabet)
    f = star_ca(SG)
    xs = samples(STAR_S, 100, seed=4)
    assert factor_check(f, phi, identity(GOLDEN.alphabet), xs, 64, GOLDEN)
    one = GOLDEN.alphabet.code("1")
    for x in xs:
        img = phi.apply(x).window(-32, 31)
        assert (one, one) not in zip(img, img[1:])


def test_factor_check_detects_mismatch():
    phi = symbol_map({"0": "0", "1": "1", "*": "0"}, STAR_S.alphabet, GOLDEN.alphabet)
    assert not factor_check(star_ca(SG), phi, identity(GOLDEN.alphabet),
                            samples(STAR_S, 20, seed=4), 64)


def test_factor_check_shift_commutes():
    s = shift_code(STAR_S.alphabet)
    assert factor_check(s, identity(STAR_S.alphabet), s, samples(STAR_S, 20), 64)


def test_symbol_map_must_be_total():
    with pytest.raises(SpecError):
        symbol_map({"0": "0"}, STAR_S.alphabet, GOLDEN.alphabet)


# ---------------------------------------------------------------------------
# blocking words
# ---------------------------------------------------------------------------


def test_directions():
    dirs = default_directions()
    assert len(dirs) == 11
    assert [str(d) for d in dirs[:7]] == ["-3/1", "-2/1", "-1/1", "0/1", "1/1", "2/1", "3/1"]
    assert Direction.parse("-1/2") == Direction(-1, 2)
    assert Direction.parse("2") == Direction(2, 1)
    with pytest.raises(ValueError):
        Direction(2, 4)
    with pytest.raises(ValueError):
        Direction(1, 0)


def test_candidate_ranges():
    w = STAR_S.parse("1010")
    cands = legal_candidates(w, 2)
    assert {(c.e, c.p_off) for c in cands} == {(3, 0), (3, 1), (4, 0)}
    with pytest.raises(ValueError):
        BlockingCandidate(w, 2, 0).check(2)
    with pytest.raises(ValueError):
        BlockingCandidate(w, 3, 2).check(2)
    with pytest.raises(ValueError):
        refute_blocking(star_ca(SG), BlockingCandidate(w, 1, 0), 5)
    with pytest.raises(SpecError):
        refute_blocking(star_ca(SG), BlockingCandidate(STAR_S.parse("1**"), 3, 0), 5)


def test_cone_tracks_memory_and_anticipation():
    f = star_ca(SG)
    cand = BlockingCandidate(STAR_S.parse("101"), 3, 0)
    assert cone(f, cand, 20) == (0, 2 + 40)
    assert cone(star_ca_inverse(SG), cand, 20) == (-40, 2)
    assert cone(Direction(-1, 1).code(f), cand, 4) == (-4, 6)


@pytest.mark.parametrize("text", ["0", "1", "*", "01", "1*1"])
def test_identity_blocks_every_word(text):
    w = STAR_S.parse(text)
    res = refute_blocking(identity(STAR_S.alphabet, STAR_S), BlockingCandidate(w, 1, 0), 20)
    assert res.status == "SurvivedBound" and res.tried >= 1


def _check_refutation(g, res, spec):
    cand = res.candidate
    n = len(cand.w)
    assert res.x.window(0, n - 1) == cand.w == res.y.window(0, n - 1)
    lo, hi = res.cone
    assert member(spec, res.x.window(lo, hi)) and member(spec, res.y.window(lo, hi))
    x, y = res.x, res.y
    for _ in range(res.step):
        x, y = g.apply(x), g.apply(y)
    sl = (cand.p_off, cand.p_off + cand.e - 1)
    assert x.window(*sl) != y.window(*sl)


@pytest.mark.parametrize("text", ["0", "1", "*", "0110", "1*0"])
def test_shift_refutes_every_word(text):
    g = Direction(1, 1).code(identity(STAR_S.alphabet, STAR_S))
    w = STAR_S.parse(text)
    for cand in legal_candidates(w, g.radius):
        lo, hi = cone(g, cand, 1)
        res = refute_blocking(g, cand, hi - lo + 1)
        assert res.refuted
        _check_refutation(g, res, STAR_S)


def test_star_ca_refutes_101():
    f = star_ca(SG)
    w = STAR_S.parse("101")
    cands = legal_candidates(w, f.radius)
    assert cands
    for cand in cands:
        res = refute_blocking(f, cand, 20)
        assert res.refuted
        _check_refutation(f, res, STAR_S)


def test_refutation_is_deterministic():
    f = Direction(1, 2).code(star_ca(SG))
    cand = legal_candidates(STAR_S.parse("10*101"), f.radius)[0]
    a, b = refute_blocking(f, cand, 20), refute_blocking(f, cand, 20)
    assert (a.x, a.y, a.step, a.tried) == (b.x, b.y, b.step, b.tried)


def test_scan_small():
    ident = identity(STAR_S.alphabet, STAR_S)
    rep = sensitivity_scan(ident, [Direction(0, 1), Direction(1, 1)], 3, 8)
    assert rep["0/1"]["status"] == "survivors" and rep["0/1"]["refuted"] == 0
    assert rep["1/1"]["status"] == "all-candidates-refuted"
    rep = sensitivity_scan(star_ca(SG), [Direction(0, 1), Direction(3, 2)], 4, 20)
    assert all(e["status"] == "all-candidates-refuted" for e in rep.values())
    assert rep["3/2"]["candidates"] == 0 and "note" in rep["3/2"]


# ---------------------------------------------------------------------------
# space-time output
# ---------------------------------------------------------------------------


def test_spacetime_rows():
    f = star_ca(SG)
    x = Configuration.periodic(STAR_S.parse("01*1"))
    text = spacetime(f, x, 3, 0, 7)
    rows = text.splitlines()
    assert len(rows) == 4
    assert rows[0] == "   0 | 01*101*1"
    assert rows[1] == "   1 | 11*011*0"
    assert text == spacetime(f, x, 3, 0, 7)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.sampled_from("01*"), min_size=1, max_size=8).map("".join))
def test_apply_local_matches_pointwise_rule(text):
    x = Configuration.periodic(STAR_S.parse(text))
    f = star_ca(SG)
    y = apply_local(x, 0, 2, f.rule)
    for i in range(-10, 10):
        assert y[i] == f.rule(x.window(i, i + 2))
