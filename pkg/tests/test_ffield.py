import random

import pytest

from towerlab.ffield import (
    FFPoly,
    NoEmbedding,
    NotPrime,
    embed,
    is_prime,
    make_field,
    poly_factor,
    poly_gcd,
    qth_root,
    resultant_y,
    roots_in_field,
)
from helpers import F2, F3, F4, F5, bivar, unipoly


def test_is_prime():
    assert [n for n in range(2, 30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert not is_prime(1)
    assert not is_prime(0)


def test_make_field_gf4_canonical_modulus():
    # smallest irreducible quadratic over GF(2) is x^2 + x + 1
    assert make_field(2, 2).modulus == (1, 1, 1)


def test_make_field_rejects_composite_characteristic():
    with pytest.raises(NotPrime):
        make_field(4)
    with pytest.raises(NotPrime):
        make_field(1)


def test_field_element_enumeration_and_encoding():
    F9 = make_field(3, 2)
    elems = list(F9.elements())
    assert len(elems) == 9
    assert len(set(elems)) == 9
    for e in elems:
        assert F9.elem(e.to_int()) == e


def test_inverses():
    F8 = make_field(2, 3)
    for e in F8.elements():
        if not e.is_zero():
            assert e * e.inverse() == F8.one()


def test_poly_factor_y3_plus_y_gf2():
    f = unipoly(F2, [0, 1, 0, 1])  # y^3 + y = y (y+1)^2
    assert poly_factor(f) == [
        (unipoly(F2, [0, 1]), 1),
        (unipoly(F2, [1, 1]), 2),
    ]


def test_poly_factor_y4_plus_y_gf3():
    f = unipoly(F3, [0, 1, 0, 0, 1])  # y^4 + y = y (y+1)^3 over GF(3)
    assert poly_factor(f) == [
        (unipoly(F3, [0, 1]), 1),
        (unipoly(F3, [1, 1]), 3),
    ]


def test_poly_factor_expand_roundtrip():
    rng = random.Random(7001)
    fields = [F2, F3, F4, F5, make_field(3, 2)]
    for _ in range(60):
        field = rng.choice(fields)
        deg = rng.randint(1, 8)
        coeffs = [rng.randrange(field.order) for _ in range(deg)] + [1]
        f = FFPoly(field, [field.elem(c) for c in coeffs])
        fac = poly_factor(f)
        prod = FFPoly(field, [f.lc()])
        total = 0
        for g, mult in fac:
            assert g.lc() == field.one()
            prod = prod * g**mult
            total += g.degree() * mult
        assert prod == f
        assert total == f.degree()


def test_qth_root_prime_field():
    c = qth_root(F3.elem(2), 3)
    assert c == F3.elem(2)  # 2^3 = 8 = 2 in GF(3)


def test_qth_root_gf4():
    g = F4.gen()
    c = qth_root(g, 2)
    assert c == g * g
    assert c * c == g


def test_qth_root_inverts_frobenius_everywhere():
    for p, k in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 4)]:
        field = make_field(p, k)
        for s in range(1, k + 1):
            q = p**s
            for b in field.elements():
                assert qth_root(b, q) ** q == b


def test_embed_properties():
    rng = random.Random(7002)
    pairs = [(make_field(2), make_field(2, 3)), (F4, make_field(2, 4)), (make_field(3, 2), make_field(3, 4))]
    for src, dst in pairs:
        images = {embed(e, dst) for e in src.elements()}
        assert len(images) == src.order  # injective
        for _ in range(100):
            a = src.elem(rng.randrange(src.order))
            b = src.elem(rng.randrange(src.order))
            assert embed(a * b, dst) == embed(a, dst) * embed(b, dst)
            assert embed(a + b, dst) == embed(a, dst) + embed(b, dst)


def test_embed_rejects_non_subfield():
    with pytest.raises(NoEmbedding):
        embed(F4.gen(), make_field(2, 3))


def test_roots_in_field():
    f = unipoly(F5, [1, 0, 1])  # x^2 + 1 = (x+2)(x+3) over GF(5)
    assert [r.to_int() for r in roots_in_field(f)] == [2, 3]
    g = unipoly(F2, [1, 1, 1])  # irreducible over GF(2)
    assert roots_in_field(g) == []
    rs = roots_in_field(g, F4)
    assert len(rs) == 2
    for r in rs:
        assert r * r + r + F4.one() == F4.zero()


def test_resultant_y_detects_common_factor():
    # (y - x)(y - 1) and (y - x)(y + 1) share y - x
    A = bivar(F5, {(0, 2): 1, (1, 1): -1, (0, 1): -1, (1, 0): 1})
    B = bivar(F5, {(0, 2): 1, (1, 1): -1, (0, 1): 1, (1, 0): -1})
    assert resultant_y(A, B).is_zero()
    C = bivar(F5, {(0, 1): 1, (0, 0): 1})  # y + 1, coprime to y - x
    D = bivar(F5, {(0, 1): 1, (1, 0): -1})
    assert not resultant_y(C, D).is_zero()


def test_poly_gcd():
    f = unipoly(F2, [0, 1]) * unipoly(F2, [1, 1]) ** 2
    g = unipoly(F2, [1, 1]) * unipoly(F2, [1, 1, 1])
    assert poly_gcd(f, g) == unipoly(F2, [1, 1])


def test_bivar_swap_roundtrip_and_eval():
    F = bivar(F5, {(0, 2): 1, (3, 0): -1, (1, 0): -1, (2, 1): 2})
    assert F.swap_xy().swap_xy() == F
    for xi in F5.elements():
        for eta in F5.elements():
            assert F.eval_x(xi).eval(eta) == F.swap_xy().eval_x(eta).eval(xi)


def test_derivative_reduces_exponent_mod_p():
    # over GF(4) every y-power here is even, so the derivative vanishes;
    # int coercion is digit encoding, which would give 2 -> g if unreduced
    g = F4.gen()
    F = bivar(F4, {(0, 4): g + F4.one(), (1, 2): g, (0, 0): g})
    assert F.derivative_y().is_zero()
    f = FFPoly(F4, [g, F4.zero(), F4.one()])
    assert f.derivative().is_zero()
    F9 = make_field(3, 2)
    k = FFPoly(F9, [F9.zero(), F9.one(), F9.zero(), F9.one()])
    assert k.derivative() == FFPoly(F9, [F9.one()])


def test_bivar_degrees_and_str():
    F = bivar(F2, {(1, 3): 1, (0, 3): 1, (1, 1): 1, (0, 1): 1, (3, 0): 1})
    assert F.deg_y() == 3
    assert F.deg_x() == 3
    assert F.to_str() == "(x + 1)*y^3 + (x + 1)*y + x^3"
