from hypothesis import given, settings, strategies as st

import pytest

from k1wb.category import free_obj, identity, is_in_F, mor, obj_from_presentation, zero_mor
from k1wb.diagrams import DoubleSES, FormalSum, dses_type, validate_3x3, validate_dses
from k1wb.gen import GenConfig, random_cover, random_dses, random_general_dses
from k1wb.k1 import UnitClass, check_relation_3x3, class_any, class_of_sum, dses_class_free
from k1wb.linalg import GF, ZZ, Matrix
from k1wb.resolution import (ConstructionFault, build_p, check_choice_independence, cover_with,
                             include, inflated_cover, phi, phi_auto, phi_on_sum,
                             resolution_chain, round_trip_check, validate_cover, varphi)

F5 = GF(5)


def f5_class2():
    ap, a, app = free_obj(F5, 1), free_obj(F5, 2), free_obj(F5, 1)
    il = mor(ap, a, [[1], [0]])
    return DoubleSES(ap, a, app, il, il, mor(a, app, [[0, 1]]), mor(a, app, [[0, 2]]))


def test_default_cover_size():
    for k in range(10):
        d = random_dses(GenConfig(F5, k))
        c = build_p(d)
        ap, a, app = d.objects
        assert c.p.generators == 2 * a.generators - app.generators
        assert validate_cover(c).ok


def test_phi_on_f5_example():
    d = f5_class2()
    r = phi_auto(d)
    assert validate_dses(r.output).ok
    assert dses_class_free(r.output).value == 3
    assert validate_3x3(r.witness3x3).ok and check_relation_3x3(r.witness3x3)


def test_phi_names_maps_by_codomain():
    r = phi_auto(f5_class2())
    for i in (1, 2):
        assert r.omega(i).dst == r.input.a
        assert r.nu(i).src == r.k


def test_phi_raises_type():
    d = random_general_dses(GenConfig(ZZ, 3), torsion_kernel=True)
    assert dses_type(d) == 0
    types = [dses_type(s.output) for s in resolution_chain(d)]
    assert types[-1] == 3 and all(t >= i + 1 for i, t in enumerate(types))


def test_varphi_on_f5_example():
    d = f5_class2()
    assert dses_class_free(varphi(d)).value == 3
    assert round_trip_check(d)


def test_round_trip_over_Z():
    for k in range(30):
        assert round_trip_check(random_dses(GenConfig(ZZ, k)))


def test_cover_validation_modes():
    d = f5_class2()
    c = build_p(d)
    assert validate_cover(c).ok and validate_cover(c, strict=False).ok
    fat = inflated_cover(c, 2)
    assert fat.p.generators == c.p.generators + 2
    assert validate_cover(fat).ok
    assert check_choice_independence(d, c, fat)
    # scaling eta2 keeps the kernel but breaks the triangle; phi still runs,
    # but the class is only independent of strict covers
    loose = cover_with(d, c.p, c.eta1, c.eta2.scale(2))
    assert not validate_cover(loose).ok
    assert validate_cover(loose, strict=False).ok
    assert validate_dses(phi(d, loose).output).ok
    assert not check_choice_independence(d, c, loose)


def test_bad_cover_is_a_fault():
    d = f5_class2()
    p = free_obj(F5, 2)
    bad = cover_with(d, p, mor(p, d.a, [[1, 0], [0, 1]]), mor(p, d.a, [[0, 1], [1, 0]]))
    assert not validate_cover(bad, strict=False).ok
    with pytest.raises(ConstructionFault):
        phi(d, bad)


def test_phi_on_sum_and_include():
    d = f5_class2()
    s = FormalSum.generator(d)
    up = phi_on_sum(include(s))
    assert up.level == 3
    assert (class_of_sum(up) * class_of_sum(s)).is_identity
    with pytest.raises(ValueError):
        phi_on_sum(s)


@given(st.sampled_from([F5, ZZ]), st.integers(0, 2**40), st.integers(0, 2**40))
@settings(max_examples=40, deadline=None)
def test_phi_inverts_class(ring, s, t):
    d = random_dses(GenConfig(ring, s))
    cfg = GenConfig(ring, t)
    r = phi(d, random_cover(d, cfg))
    assert validate_dses(r.output).ok
    assert validate_3x3(r.witness3x3).ok
    assert (dses_class_free(r.output) * dses_class_free(d)).is_identity


@given(st.integers(0, 2**40))
@settings(max_examples=8, deadline=None)
def test_choice_independence_on_torsion_inputs(s):
    cfg = GenConfig(ZZ, s)
    rng = cfg.rng()
    d = random_general_dses(cfg, rng)
    assert check_choice_independence(d, random_cover(d, cfg, rng), random_cover(d, cfg, rng))


def test_phi_output_in_F_for_torsion_kernel():
    z5 = obj_from_presentation(Matrix.from_rows(ZZ, [[5]], 1))
    zero = free_obj(ZZ, 0)
    d = DoubleSES(zero, z5, z5, zero_mor(zero, z5), zero_mor(zero, z5),
                  identity(z5), mor(z5, z5, [[2]]))
    r = phi_auto(d)
    assert is_in_F(r.k)
    assert validate_dses(r.output).ok
    assert class_any(varphi(d)) in (UnitClass(ZZ, 1), UnitClass(ZZ, -1))
