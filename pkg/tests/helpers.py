"""Shared constructors for the test suite: the base fields, the canonical
one-parameter family instances, and the fixed comparison curves."""

from towerlab.ffield import BivarPoly, FFPoly, make_field
from towerlab.checker import FamilyParams, build_family

F2 = make_field(2)
F3 = make_field(3)
F4 = make_field(2, 2)
F5 = make_field(5)


def bivar(field, d):
    """BivarPoly from {(i, j): int or FFElem}; ints are reduced mod p so that
    -1 means the additive inverse of one on every field."""
    return BivarPoly.from_coeff_dict(
        field,
        {k: (field.elem(v % field.p) if isinstance(v, int) else v) for k, v in d.items()},
    )


def unipoly(field, coeffs):
    return FFPoly(field, [field.elem(c % field.p) if isinstance(c, int) else c for c in coeffs])


def family_params(q):
    """The canonical family instance used throughout: a = 0, g = x + 1, and
    b = 1 except over GF(4) where b is the field generator."""
    if q == 2:
        K = F2
    elif q == 3:
        K = F3
    elif q == 4:
        K = F4
    elif q == 5:
        K = F5
    else:
        raise ValueError(q)
    b = K.gen() if q == 4 else K.one()
    return FamilyParams(q=q, a=K.zero(), b=b, g=unipoly(K, [1, 1]))


def family_F(q):
    return build_family(family_params(q)).F


# y^2 = x^3 + x over GF(5): ramifies exactly at x, x +- 2, infinity, genus 1
def elliptic5():
    return bivar(F5, {(0, 2): 1, (3, 0): -1, (1, 0): -1})


# y^3 = x(x+1)^2 over GF(5): tame everywhere, genus 0
def kummer5():
    return bivar(F5, {(0, 3): 1, (3, 0): -1, (2, 0): -2, (1, 0): -1})


# y = x over GF(2): the trivial degree-1 step, genus 0
def line2():
    return bivar(F2, {(0, 1): 1, (1, 0): 1})


# y^3 = x over GF(2): tame Kummer cover, genus 0
def cubic2():
    return bivar(F2, {(0, 3): 1, (1, 0): 1})


# y^2 = x^5 + 2x + 1 over GF(3): hyperelliptic, tame everywhere, genus 2
def hyper3():
    return bivar(F3, {(0, 2): 1, (5, 0): -1, (1, 0): -2, (0, 0): -1})
