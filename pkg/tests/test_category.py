from itertools import product

from hypothesis import given, settings, strategies as st

import pytest

from k1wb.category import (ObjectMismatch, biproduct, compose, copair, factor_through_epi,
                           free_cover, free_obj, identity, image_equals_kernel,
                           in_coordinates, is_admissible_epi, is_admissible_mono, is_in_F,
                           is_zero_object, iso_invariants, kernel, lift_through, mor,
                           mor_equal, obj_from_presentation, oplus, pullback, zero_mor)
from k1wb.gen import GenConfig, random_presented
from k1wb.linalg import GF, ZZ, Matrix

F5 = GF(5)


def cyclic(n):
    return obj_from_presentation(Matrix.from_rows(ZZ, [[n]], 1))


def test_invariants_of_presentations():
    assert iso_invariants(cyclic(5)) == (0, (5,))
    assert iso_invariants(free_obj(ZZ, 3)) == (3, ())
    x = obj_from_presentation(Matrix.from_rows(ZZ, [[2, 0], [0, 3], [0, 0]], 2))
    assert iso_invariants(x) == (1, (6,))


def test_unit_relation_gives_zero_object():
    x = obj_from_presentation(Matrix.from_rows(ZZ, [[1]], 1))
    assert is_zero_object(x) and iso_invariants(x) == (0, ())
    assert is_in_F(x)


def test_field_objects_are_always_in_F():
    x = obj_from_presentation(Matrix.from_rows(F5, [[2], [0]], 1))
    assert iso_invariants(x) == (1, ())


def test_morphisms_equal_modulo_relations():
    z5 = cyclic(5)
    assert mor_equal(mor(z5, z5, [[1]]), mor(z5, z5, [[6]]))
    assert not mor_equal(mor(z5, z5, [[1]]), mor(z5, z5, [[2]]))


def test_ill_defined_morphism_detected():
    z = free_obj(ZZ, 1)
    assert not mor(cyclic(5), z, [[1]]).is_well_defined()
    assert mor(cyclic(5), cyclic(10), [[2]]).is_well_defined()


def test_compose_mismatch():
    a, b = free_obj(ZZ, 1), free_obj(ZZ, 2)
    with pytest.raises(ObjectMismatch):
        compose(identity(a), identity(b))


def test_kernel_of_quotient_by_five():
    z = free_obj(ZZ, 1)
    q = mor(z, cyclic(5), [[1]])
    k, inc = kernel(q)
    assert iso_invariants(k) == (1, ())
    assert inc.matrix == Matrix.from_rows(ZZ, [[5]], 1)
    assert is_admissible_mono(inc) and image_equals_kernel(inc, q)


def test_kernel_is_canonical():
    z2 = free_obj(ZZ, 2)
    z = free_obj(ZZ, 1)
    f = mor(z2, z, [[2, 3]])
    g = mor(z2, z, [[2, 3]])
    assert kernel(f) == kernel(g)


def test_admissibility():
    z = free_obj(ZZ, 1)
    assert not is_admissible_epi(mor(z, z, [[2]]))
    assert is_admissible_epi(mor(z, cyclic(5), [[2]]))
    assert not is_admissible_mono(mor(cyclic(5), cyclic(5), [[5]]))
    assert is_admissible_mono(mor(z, z, [[2]]))


def test_pullback_on_F5_line():
    x = free_obj(F5, 1)
    P, p1, p2 = pullback(mor(x, x, [[1]]), mor(x, x, [[2]]))
    assert iso_invariants(P) == (1, ())
    # brute force: the pairs (u, v) with u = 2v are exactly the image
    pairs = {(u, v) for u, v in product(range(5), repeat=2) if u == 2 * v % 5}
    img = {(p1.matrix[0, 0] * t % 5, p2.matrix[0, 0] * t % 5) for t in range(5)}
    assert img == pairs


def test_pullback_of_two_epis_dimension():
    a, b = free_obj(F5, 2), free_obj(F5, 1)
    P, _, _ = pullback(mor(a, b, [[1, 0]]), mor(a, b, [[0, 1]]))
    assert iso_invariants(P) == (3, ())


def test_lift_and_factor():
    z = free_obj(ZZ, 1)
    assert lift_through(mor(z, z, [[6]]), mor(z, z, [[3]])).matrix == Matrix.from_rows(ZZ, [[2]], 1)
    assert lift_through(mor(z, z, [[5]]), mor(z, z, [[3]])) is None
    q = mor(z, cyclic(5), [[1]])
    h = factor_through_epi(mor(z, cyclic(5), [[3]]), q)
    assert h is not None and mor_equal(compose(h, q), mor(z, cyclic(5), [[3]]))
    assert factor_through_epi(mor(z, z, [[1]]), q) is None


def test_free_cover_is_epi_from_F():
    x = cyclic(4)
    p, psi = free_cover(x)
    assert is_in_F(p) and is_admissible_epi(psi)


def test_in_coordinates_drops_dead_generators():
    x = obj_from_presentation(Matrix.from_rows(ZZ, [[1], [1]], 1))  # Z^2 / (1,1) = Z
    C = in_coordinates(identity(x))
    assert C == Matrix.identity(ZZ, 1)


@given(st.integers(0, 2**32), st.integers(0, 2**32))
@settings(max_examples=100, deadline=None)
def test_biproduct_identities(s1, s2):
    x = random_presented(GenConfig(ZZ, s1))
    y = random_presented(GenConfig(ZZ, s2))
    s, il, ir, pl, pr = biproduct(x, y)
    assert mor_equal(compose(pl, il), identity(x))
    assert mor_equal(compose(pr, ir), identity(y))
    assert mor_equal(compose(pr, il), zero_mor(x, y))
    assert mor_equal(compose(pl, ir), zero_mor(y, x))
    assert mor_equal(compose(il, pl) + compose(ir, pr), identity(s))
    assert mor_equal(copair(il, ir), identity(oplus(x, y)))
