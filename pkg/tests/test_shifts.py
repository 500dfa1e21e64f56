import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fischer.shifts import (SFT, Alphabet, Beta, Configuration, Dyck, FiniteGapSet, HorizonError,
                            LiteralDigits, PowersOfTwo, Product, SampleBetaDigits, SGap, SpecError,
                            Star, dyck_alphabet, dyck_reduce, erase_stars, fixed_point,
                            golden_mean, member, shift, window)
from fischer.specdoc import dumps, from_shorthand, loads

from oracles import beta_member, dyck_all_reductions, sgap_factors, star_forbidden_member

D2 = Dyck(2)
SG = SGap(PowersOfTwo())
BETA = Beta(SampleBetaDigits())
GOLDEN = golden_mean()


def w(spec, text):
    return spec.parse(text)


# ---------------------------------------------------------------------------
# Dyck monoid
# ---------------------------------------------------------------------------


def test_dyck_reduce_examples():
    nf = dyck_reduce(w(D2, "()"), 2)
    assert nf.is_identity
    assert dyck_reduce(w(D2, "(]"), 2) is None
    assert dyck_reduce((), 2).is_identity
    nf = dyck_reduce(w(D2, "](("), 2)
    assert D2.format(nf.closers) == "]"
    assert D2.format(nf.openers) == "(("


def test_dyck_reduce_rejects_foreign_symbol():
    with pytest.raises(SpecError):
        dyck_reduce((0, 7), 2)


def _nf_word(nf):
    return None if nf is None else nf.closers + nf.openers


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_dyck_reduce_matches_confluent_rewriting(n):
    for word in product(range(4), repeat=n):
        results = dyck_all_reductions(word, 2)
        assert len(results) == 1
        assert _nf_word(dyck_reduce(word, 2)) == next(iter(results))


@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(0, 5), max_size=5), st.lists(st.integers(0, 5), max_size=5))
def test_dyck_reduce_is_a_morphism(u, v):
    whole = dyck_reduce(tuple(u + v), 3)
    ru, rv = dyck_reduce(tuple(u), 3), dyck_reduce(tuple(v), 3)
    if ru is None or rv is None:
        assert whole is None
    else:
        assert _nf_word(whole) == _nf_word(dyck_reduce(_nf_word(ru) + _nf_word(rv), 3))


def test_dyck_alphabet_codes():
    a = dyck_alphabet(3)
    assert a.names[:6] == ("(", ")", "[", "]", "{", "}")
    assert len(dyck_alphabet(6)) == 12
    with pytest.raises(SpecError):
        Dyck(1)


# ---------------------------------------------------------------------------
# membership
# ---------------------------------------------------------------------------


def test_member_examples():
    assert member(D2, w(D2, "(())"))
    assert member(D2, w(D2, "((()))"))
    assert not member(D2, w(D2, "(]"))
    assert member(SG, w(SG, "0110"))
    assert not member(SG, w(SG, "01110"))
    assert member(BETA, w(BETA, "2210"))
    assert not member(BETA, w(BETA, "2211"))
    for spec in (D2, SG, BETA, GOLDEN, Star(SG), Product(SG, D2)):
        assert member(spec, ())


def test_member_alphabet_mismatch():
    with pytest.raises(SpecError):
        member(SG, (0, 2))


@pytest.mark.parametrize("length", range(1, 13))
def test_sgap_language_matches_block_concatenations(length):
    assert set(SG.words(length)) == sgap_factors(PowersOfTwo(), length)


def test_sgap_finite_gap_set_bounds_boundary_runs():
    spec = SGap(FiniteGapSet([1, 3]))
    assert member(spec, spec.parse("111"))
    assert not member(spec, spec.parse("1111"))
    assert member(spec, spec.parse("01110"))
    assert not member(spec, spec.parse("0110"))
    for n in range(1, 9):
        assert set(spec.words(n)) == sgap_factors(FiniteGapSet([1, 3]), n)


@pytest.mark.parametrize("length", range(1, 9))
def test_beta_language_matches_direct_comparison(length):
    digits = BETA.digits.prefix(length)
    expected = {u for u in product(range(3), repeat=length) if beta_member(u, digits)}
    assert set(BETA.words(length)) == expected


def test_beta_stream_prefix_and_validity():
    d = SampleBetaDigits()
    assert d.prefix(5) == (2, 2, 1, 0, 2)
    x = d.prefix(80)
    for j in range(60):
        for k in range(1, 20):
            assert list(x[j:j + k]) <= list(x[:k])


def test_literal_digit_streams():
    d = LiteralDigits("22102...")
    assert d.prefix(5) == (2, 2, 1, 0, 2)
    with pytest.raises(HorizonError):
        d.digit(5)
    with pytest.raises(SpecError):
        LiteralDigits("0121").digit(0)
    with pytest.raises(SpecError):
        LiteralDigits("1000").digit(0)
    with pytest.raises(SpecError):
        LiteralDigits("2122").prefix(4)


def test_sft_membership_is_exact_on_the_essential_part():
    # "0" is locally allowed but every bi-infinite point avoiding 00 and 01 is 1^Z
    spec = SFT(Alphabet(("0", "1")), frozenset({(0, 0), (0, 1)}))
    assert member(spec, spec.parse("111"))
    assert not member(spec, spec.parse("10"))
    assert member(GOLDEN, GOLDEN.parse("10101"))
    assert not member(GOLDEN, GOLDEN.parse("0110"))


# ---------------------------------------------------------------------------
# star-studded shifts
# ---------------------------------------------------------------------------


def test_erase_stars():
    s = Star(GOLDEN)
    assert erase_stars(s.parse("0*1"), s.star) == s.parse("01")
    assert erase_stars(s.parse("***"), s.star) == ()
    assert erase_stars(s.parse("01"), s.star) == s.parse("01")


@pytest.mark.parametrize("length", range(1, 8))
def test_star_matches_forbidden_word_formulation(length):
    spec = Star(GOLDEN)
    forbidden = {(1, 1)}
    for u in product(range(3), repeat=length):
        assert member(spec, u) == star_forbidden_member(u, spec.star, forbidden)


def test_star_examples():
    s = Star(SG)
    assert not member(s, s.parse("1**1"))
    assert member(s, s.parse("1*1"))
    assert member(s, s.parse("*0*11*0"))


# ---------------------------------------------------------------------------
# fixed points
# ---------------------------------------------------------------------------


def test_fixed_points():
    assert Dyck(3).alphabet.names[fixed_point(Dyck(3))] == "("
    assert SG.alphabet.names[fixed_point(SG)] == "1"
    assert BETA.alphabet.names[fixed_point(BETA)] == "0"
    assert fixed_point(SFT(Alphabet(("0", "1")), frozenset({(0, 0), (1, 1)}))) is None
    assert Product(SG, D2).alphabet.names[fixed_point(Product(SG, D2))] == "1("
    assert fixed_point(Star(SG)) == fixed_point(SG)
    assert fixed_point(SGap(FiniteGapSet([1, 2]))) is None


def test_fixed_points_are_members():
    for spec in (Dyck(3), SG, BETA, GOLDEN, Star(SG), Product(SG, D2)):
        a = fixed_point(spec)
        assert member(spec, (a,) * 12)


# ---------------------------------------------------------------------------
# factoriality and extendability
# ---------------------------------------------------------------------------

FAMILIES = [D2, SG, BETA, GOLDEN, Star(SG), Star(GOLDEN), Product(SG, GOLDEN)]


@pytest.mark.parametrize("spec", FAMILIES, ids=lambda s: s.shorthand())
def test_factoriality(spec):
    limit = 10 if len(spec.alphabet) <= 3 else 7
    for word in spec.words(limit):
        for i in range(len(word)):
            for j in range(i, len(word) + 1):
                assert member(spec, word[i:j])


@pytest.mark.parametrize("spec", FAMILIES, ids=lambda s: s.shorthand())
def test_extendability(spec):
    for n in range(9):
        for word in spec.words(n):
            assert any(member(spec, word + (a,)) for a in spec.alphabet)
            assert any(member(spec, (b,) + word) for b in spec.alphabet)


# ---------------------------------------------------------------------------
# configurations
# ---------------------------------------------------------------------------


def random_config(rng, k=3):
    rnd = lambda n: tuple(rng.randrange(k) for _ in range(n))
    return Configuration(rnd(rng.randint(1, 4)), rnd(rng.randint(0, 8)), rnd(rng.randint(1, 4)),
                         rng.randint(-6, 6))


def test_window_of_constant_configuration():
    assert window(Configuration.periodic((0,)), -3, 3) == (0,) * 7


def test_shift_is_invertible_and_moves_windows():
    rng = random.Random(7)
    for _ in range(20):
        x = random_config(rng)
        assert shift(shift(x, 5), -5) == x
        assert window(shift(x, 1), 0, 2) == window(x, 1, 3)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(-20, 20), st.integers(0, 25))
def test_window_agrees_with_pointwise_lookup(seed, lo, n):
    x = random_config(random.Random(seed))
    assert x.window(lo, lo + n - 1) == tuple(x[i] for i in range(lo, lo + n))


def test_configuration_equality_is_canonical():
    a = Configuration((0, 1), (0, 1, 0, 1), (0, 1), 0)
    b = Configuration.periodic((0, 1))
    assert a == b and hash(a) == hash(b)
    c = Configuration((1, 0, 1, 0), (), (1, 0), 1)
    assert a == c
    assert a != Configuration.periodic((1, 0))
    assert Configuration((0,), (1,), (0,), 0) != Configuration((0,), (1,), (0,), 1)


def test_configuration_requires_periods():
    with pytest.raises(SpecError):
        Configuration((), (1,), (0,))


# ---------------------------------------------------------------------------
# spec documents
# ---------------------------------------------------------------------------


def test_documents_round_trip():
    for spec in (D2, SG, BETA, GOLDEN, Star(SG), Product(SG, D2), SGap(FiniteGapSet([1, 5]))):
        again = loads(dumps(spec))
        assert again.to_doc() == spec.to_doc()


def test_documents_reject_unknown_and_missing_keys():
    with pytest.raises(SpecError):
        loads("family: dyck\nn: 2\ncolor: red\n")
    with pytest.raises(SpecError):
        loads("family: sgap\n")
    with pytest.raises(SpecError):
        loads("family: nope\n")
    with pytest.raises(SpecError):
        loads("[1, 2")


def test_shorthands():
    assert from_shorthand("dyck:3").to_doc() == {"family": "dyck", "n": 3}
    assert from_shorthand("sgap:1,3").gaps == FiniteGapSet([1, 3])
    assert from_shorthand("star:golden").to_doc()["inner"] == GOLDEN.to_doc()
    assert member(from_shorthand("sft:01:11"), (0, 1, 0))
    with pytest.raises(SpecError):
        from_shorthand("heap:2")
