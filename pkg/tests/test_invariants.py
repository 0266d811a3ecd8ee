"""Invariant normalization, Markov invariance, skein checks, specializations."""
from __future__ import annotations

import random

import pytest

import oracle_hecke as oracle
from framelink.braids import MarkovMove, apply_move, parse_braid
from framelink.invariants import (
    InvariantRequest,
    compare_links,
    framed_jones,
    homflypt,
    invariant,
    jones,
    lambda_d,
    verify_skein,
)
from framelink.scalars import RatFunc, RATFUNC_ONE, U, Z
from helpers import random_braid

TREFOIL = parse_braid("s1 s1 s1")
FIG8 = parse_braid("s1 -s2 s1 -s2")


def test_lambda_formula():
    assert lambda_d(1, 1) == (Z + 1 - U) / (U * Z)
    assert lambda_d(3, 2) == (2 * Z + 1 - U) / (2 * U * Z)
    for size in (1, 2, 3):
        zval = RatFunc.const(-1) / ((U + 1) * RatFunc.const(size))
        assert lambda_d(3, size).substitute({"z": zval}) == U
    with pytest.raises(ValueError):
        lambda_d(2, 0)


def test_unknot_is_one_everywhere():
    unknot = parse_braid("")
    for family, d, D in (("classical", 1, (0,)), ("framed", 2, (0, 1)),
                         ("framed", 3, (1,)), ("singular", 2, (0,))):
        v = invariant(InvariantRequest(unknot, family, d, D))
        assert v.value.half == 0 and v.value.value == RATFUNC_ONE


def test_stabilized_unknots_are_one():
    for word in ("s1", "-s1"):
        b = parse_braid(word)
        for family, d, D in (("classical", 1, (0,)), ("framed", 2, (0,)),
                             ("framed", 2, (0, 1)), ("singular", 3, (0, 2))):
            v = invariant(InvariantRequest(b, family, d, D))
            assert v.value.half == 0 and v.value.value == RATFUNC_ONE


def test_trefoil_matches_independent_expansion():
    got = homflypt(TREFOIL)
    want_value, want_half = oracle.homflypt_value(TREFOIL.letters, 2)
    assert got.value.half == want_half
    assert got.value.value == want_value
    assert got.epsilon == 3 and got.n == 2


def test_jones_trefoil_frozen():
    v = jones(TREFOIL)
    assert v.value.half == 0
    assert v.value.value == -(U ** 4) + U ** 3 + U


def test_jones_is_homflypt_specialized():
    rng = random.Random(11)
    zval = RatFunc.const(-1) / (U + 1)
    for _ in range(6):
        b = random_braid(rng, rng.randint(2, 3), rng.randint(1, 6))
        assert jones(b).value == homflypt(b).value.substitute({"z": zval})


def test_framed_jones_reduces_to_jones_at_d1():
    rng = random.Random(12)
    for _ in range(6):
        b = random_braid(rng, rng.randint(2, 3), rng.randint(1, 5))
        assert framed_jones(b, 1, (0,)).value == jones(b).value


def test_framed_equals_classical_on_zero_framings():
    rng = random.Random(13)
    for d, D in ((2, (0,)), (2, (0, 1)), (3, (0, 2))):
        for _ in range(4):
            b = random_braid(rng, rng.randint(2, 3), rng.randint(1, 5))
            cl = invariant(InvariantRequest(b, "classical", d, D))
            fr = invariant(InvariantRequest(b, "framed", d, D))
            assert cl.value == fr.value


def test_singular_equals_classical_on_tau_free_words():
    rng = random.Random(14)
    for _ in range(4):
        b = random_braid(rng, 3, 4)
        cl = invariant(InvariantRequest(b, "classical", 2, (0, 1)))
        sg = invariant(InvariantRequest(b, "singular", 2, (0, 1)))
        assert cl.value == sg.value


@pytest.mark.parametrize("family,d,D", [
    ("classical", 1, (0,)),
    ("framed", 2, (0, 1)),
    ("singular", 2, (0,)),
])
def test_markov_move_invariance(family, d, D):
    kind = {"classical": "classical", "framed": "framed", "singular": "singular"}[family]
    rng = random.Random(hash((family, d)) % 10 ** 6)
    for _ in range(6):
        n = rng.randint(2, 3)
        b = random_braid(rng, n, rng.randint(2, 5), kind=kind, d=d)
        base = invariant(InvariantRequest(b, family, d, D))
        conj = apply_move(b, MarkovMove.conjugate(random_braid(rng, n, 2)))
        up = apply_move(b, MarkovMove.stabilize_pos())
        dn = apply_move(b, MarkovMove.stabilize_neg())
        for moved in (conj, up, dn):
            v = invariant(InvariantRequest(moved, family, d, D))
            assert v == base
            assert v.value.half == base.value.half


def test_skein_framed():
    for d, D in ((1, (0,)), (2, (0,)), (2, (0, 1)), (3, (0, 1))):
        assert verify_skein("framed", parse_braid("n=2"), 1, d, D)
        assert verify_skein("framed", parse_braid("s1 t2"), 1, d, D)


def test_skein_cubic():
    assert verify_skein("cubic", parse_braid("s1"), 1, 1, (0,))
    assert verify_skein("cubic", parse_braid("s1 s2 s1"), 2, 2, (0, 1))


def test_skein_singular():
    assert verify_skein("singular", parse_braid("n=2"), 1, 2, (0,))
    assert verify_skein("singular", parse_braid("x1 s2"), 2, 3, (0, 2))


def test_skein_rejects_bad_input():
    with pytest.raises(ValueError):
        verify_skein("framed", parse_braid("s1"), 2, 2, (0,))
    with pytest.raises(ValueError):
        verify_skein("quintic", parse_braid("s1"), 1, 2, (0,))


def test_compare_links():
    conj = apply_move(TREFOIL, MarkovMove.conjugate(parse_braid("s1")))
    assert compare_links(TREFOIL, conj, "classical", 1, (0,))
    assert compare_links(TREFOIL, apply_move(TREFOIL, MarkovMove.stabilize_neg()),
                         "classical", 1, (0,))
    assert not compare_links(TREFOIL, parse_braid(""), "classical", 1, (0,))


def test_distinguishes_small_knots():
    assert not compare_links(TREFOIL, FIG8, "classical", 1, (0,))
    assert not compare_links(FIG8, parse_braid(""), "classical", 1, (0,))


def test_incompatible_kind_errors():
    framed_word = parse_braid("s1 t1")
    with pytest.raises(ValueError):
        InvariantRequest(framed_word, "classical", 2, (0,))
    with pytest.raises(ValueError):
        InvariantRequest(parse_braid("x1"), "framed", 2, (0,))
    with pytest.raises(ValueError):
        InvariantRequest(parse_braid("s1"), "jones", 1, (0,))


def test_meta_mismatch_not_comparable():
    a = homflypt(TREFOIL)
    b = invariant(InvariantRequest(TREFOIL, "classical", 2, (0, 1)))
    with pytest.raises(ValueError):
        a == b


def test_json_shape():
    v = invariant(InvariantRequest(TREFOIL, "classical", 1, (0,)))
    out = v.to_json()
    assert out["family"] == "classical" and out["d"] == 1 and out["D"] == [0]
    assert out["n"] == 2 and out["epsilon"] == 3
    assert isinstance(out["value"], str) and out["value"]
