import itertools
import random
from fractions import Fraction

import pytest

import oracles
from nccalc import operadgeo as og
from nccalc.operadgeo import KSColorWord, OperadError, RectEmbedding, parse_embedding

F = Fraction


def test_literal_round_trip():
    text = "D,C_M->C_M: [1/4 1/2, 1/3 0] [1/2 0, 1 1/3]"
    e = parse_embedding(text)
    assert str(e) == text
    assert parse_embedding(str(e)) == e
    assert e.rotation(1) == F(1, 3)


def test_invalid_embeddings():
    with pytest.raises(OperadError, match="overlap"):
        RectEmbedding(["D1", "D1"], "D1", [[(F(1, 2), 0)], [(F(1, 2), F(1, 4))]])
    with pytest.raises(OperadError, match="leaves"):
        RectEmbedding(["D1"], "D1", [[(F(1, 2), F(3, 4))]])
    with pytest.raises(OperadError, match="shrinking"):
        RectEmbedding(["M"], "M", [[(F(1, 2), F(1, 4))]])
    with pytest.raises(OperadError, match="empty"):
        RectEmbedding(["C"], "D", [[(F(1, 2), 0), (1, 0)]])
    with pytest.raises(OperadError, match="rotation"):
        RectEmbedding(["C_M"], "C_M", [[(F(1, 2), 0), (1, F(1, 3))]], strict=True)
    with pytest.raises(OperadError):
        parse_embedding("nonsense")


def test_shrinking_module_components():
    e = RectEmbedding(["C_M"], "C_M", [[(F(1, 2), 0), (1, F(1, 3))]])
    assert e.is_shrinking(0)
    s = RectEmbedding(["C_M"], "C_M", [[(F(1, 2), 0), (1, 0)]], strict=True)
    assert s.is_shrinking(0)
    assert og.cylinder_invariant(s)[1] == (0,)


def test_identity_and_unitality():
    for color in og.COLOR_PIECE:
        e = og.identity(color)
        assert og.unitality_holds(e)
    e = og.witness(["D", "D", "C_M"], "C_M")
    assert og.compose(og.identity("C_M"), [e]) == e


def test_composition_of_rotations_adds():
    r1 = RectEmbedding(["C"], "C", [[(1, 0), (1, F(1, 3))]])
    r2 = RectEmbedding(["C"], "C", [[(1, 0), (1, F(1, 2))]])
    comp = og.compose(r2, [r1])
    assert og.cylinder_invariant(comp) == ((0,), (F(5, 6),))
    ident = og.identity("C")
    assert og.cylinder_invariant(ident) == ((0,), (0,))


def test_pi0_order_examples():
    one = RectEmbedding(["D1"], "D1", [[(F(1, 2), F(1, 4))]])
    assert og.pi0_order(one) == (0,)
    two = RectEmbedding(["D1", "D1"], "D1", [[(F(1, 10), 0)], [(F(1, 10), F(2, 10))]])
    assert og.pi0_order(two) == (0, 1)
    with pytest.raises(OperadError):
        og.pi0_order(og.identity("D"))


@pytest.mark.parametrize("n", range(5))
def test_pi0_order_count(n):
    import math
    assert len(og.achievable_orders(n, samples=30, seed=n)) == math.factorial(n)


def test_arity_examples_for_mixed_words():
    assert og.ks_arity_nonempty(KSColorWord(("D", "C_M"), "C_M"), "KS")
    assert not og.ks_arity_nonempty(KSColorWord(("C", "C_M", "C_M"), "C_M"), "Cylbar")
    assert not og.ks_arity_nonempty(KSColorWord(("D", "C_M"), "D"), "DCylbar")
    with pytest.raises(OperadError):
        og.ks_arity_nonempty(KSColorWord(("C",), "C"), "KS")


def test_arity_tables_match_transcribed_rules():
    for op, colors in og.OPERADS.items():
        rows = og.arity_table(op, 4)
        assert rows
        for r in rows:
            assert r["nonempty"] == oracles.operad_word_nonempty(r["inputs"], r["output"]), r


def test_witness_exists_exactly_for_nonempty_words():
    colors = list(og.COLOR_PIECE)
    for n in range(4):
        for ins in itertools.product(colors, repeat=n):
            for out in colors:
                if oracles.operad_word_nonempty(ins, out):
                    assert og.witness(ins, out).source == tuple(ins)
                else:
                    with pytest.raises(OperadError):
                        og.witness(ins, out)


def test_random_laws():
    rng = random.Random(11)
    for k in range(150):
        op = list(og.OPERADS)[k % len(og.OPERADS)]
        h, gs, fs = og.random_triple(rng, op)
        perm = list(range(h.arity))
        rng.shuffle(perm)
        assert og.associativity_holds(h, gs, fs)
        assert og.unitality_holds(h)
        assert og.equivariance_holds(h, gs, perm)


def test_cylinder_invariant_is_multiplicative():
    rng = random.Random(12)
    checked = 0
    for _ in range(200):
        h, gs, _ = og.random_triple(rng, "DCylbar")
        if not og.piece_of(h.target).angular:
            continue
        got = og.cylinder_invariant(og.compose(h, gs))
        exp = og.compose_cylinder_invariants(og.cylinder_invariant(h),
                                             [og.cylinder_invariant_or_none(g) for g in gs],
                                             h.source, [g.source for g in gs])
        assert got[0] == exp[0]
        assert all(e is None or e == r for e, r in zip(exp[1], got[1]))
        checked += 1
    assert checked > 50


def test_pi0_is_an_operad_map():
    rng = random.Random(13)
    for _ in range(100):
        h, gs, _ = og.random_triple(rng, "E1")
        got = og.pi0_order(og.compose(h, gs))
        assert got == og.insert_orders(og.pi0_order(h), [og.pi0_order(g) for g in gs])


def test_compose_shape_mismatch():
    h = og.witness(["D1", "D1"], "D1")
    with pytest.raises(OperadError):
        og.compose(h, [og.identity("D1")])
    with pytest.raises(OperadError):
        og.compose(h, [og.identity("M"), og.identity("D1")])
