import random

import pytest

from relations import module_relation_failures, morphism_relation_failures

from nccalc import preset
from nccalc.algebra import chaotic_category
from nccalc.cyclic import (CyclicMorphism, MorphismError, ParacyclicMorphism, compose,
                           cyclic_module_of, degeneracy, face, factorize, hom_set, identity,
                           mitchell_cyclic_module_of, parse_morphism, power, rotation)


def test_morphism_literals():
    f = parse_morphism("2->1:[0,1,2]")
    assert f == CyclicMorphism(2, 1, (0, 1, 2))
    assert str(f) == "2->1:[0,1,2]"
    assert parse_morphism("1->1:[2,3]") == CyclicMorphism(1, 1, (0, 1))
    with pytest.raises(MorphismError):
        parse_morphism("1->1:[1,0]")
    with pytest.raises(MorphismError):
        parse_morphism("garbage")
    with pytest.raises(MorphismError):
        CyclicMorphism(1, 1, (0, 4))  # winds twice


def test_hom_set_sizes():
    # |Lambda((p), (q))| = (p + q + 1)! / (p! q!)
    from math import factorial
    for p in range(4):
        for q in range(4):
            assert len(hom_set(p, q)) == factorial(p + q + 1) // (factorial(p) * factorial(q))


@pytest.mark.parametrize("p", range(7))
def test_rotation_has_order_p_plus_one(p):
    assert power(rotation(p), p + 1) == identity(p)
    for k in range(1, p + 1):
        assert power(rotation(p), k) != identity(p)


def test_paracyclic_cover():
    r = ParacyclicMorphism(1, 1, (-1, 0))
    twice = ParacyclicMorphism(1, 1, tuple(r(r(i)) for i in range(2)))
    assert twice.values == (-2, -1)
    assert twice.normalize() == identity(1)


def test_factorization_recovers_morphism():
    for p in range(3):
        for q in range(3):
            for f in hom_set(p, q):
                k, cofaces, codeg = factorize(f)
                g = power(rotation(p), k)
                for c in codeg + cofaces:
                    g = compose(c, g)
                assert g == f


@pytest.mark.parametrize("p", range(5))
def test_generator_relations_on_upper_triangular(p):
    # the lower degrees are fine here; p = 5 is covered by the acceptance suite
    V = cyclic_module_of(preset("upper_triangular", 2))
    assert module_relation_failures(V, p) == []


@pytest.mark.parametrize("p", range(5))
def test_generator_relations_in_the_category(p):
    assert morphism_relation_failures(p) == []


def test_faces_multiply_neighbours():
    A = preset("truncated_polynomial", 3)
    V = cyclic_module_of(A)
    # d_2 on (x, 1, x) multiplies the last factor into the first: (x^2, 1)
    t = (1, 0, 1)
    img = V.action(face(2, 2)).apply({V.index(t): A.field.one})
    assert img == {V.index((2, 0)): 1}
    img = V.action(degeneracy(1, 0)).apply({V.index((1, 2)): A.field.one})
    assert img == {V.index((1, 0, 2)): 1}
    img = V.tau(2).apply({V.index((0, 1, 2)): A.field.one})
    assert img == {V.index((2, 0, 1)): 1}


def test_signed_rotation():
    V = cyclic_module_of(preset("truncated_polynomial", 2))
    assert V.t(1) == V.tau(1).scale(-1)
    assert V.t(2) == V.tau(2)


def test_functoriality_and_factorization_on_random_pairs():
    rng = random.Random(3)
    V = cyclic_module_of(preset("matrix", 2))
    for _ in range(40):
        p, q, r = (rng.randint(0, 2) for _ in range(3))
        f = rng.choice(hom_set(p, q))
        g = rng.choice(hom_set(q, r))
        assert V.action(compose(g, f)) == V.action(f) @ V.action(g)
        assert V.action_via_factorization(f) == V.action(f)


def test_mitchell_module_of_chaotic_category():
    V = mitchell_cyclic_module_of(chaotic_category(preset("ground_field").field, 2))
    assert V.dim(0) == 2 and V.dim(1) == 4
    for p in range(3):
        assert module_relation_failures(V, p) == []
