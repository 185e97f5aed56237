import pytest

from k1wb.diagrams import DoubleSES, ThreeByThree, oplus_schema, validate_3x3
from k1wb.gen import CONSTRUCTION_SHAPES, GenConfig, random_dses
from k1wb.k1 import check_relation_3x3
from k1wb.linalg import GF, ZZ
from k1wb.resolution import CONSTRUCTIONS, ShapeError, derive_cons2_3, phi_auto

RINGS = [GF(5), GF(7), ZZ]
NAMES = sorted(CONSTRUCTIONS)


@pytest.mark.parametrize("name", NAMES)
@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_split_instance(name, ring):
    cfg = GenConfig(ring, 1)
    D = CONSTRUCTION_SHAPES[name](cfg, cfg.rng(), split=True)
    _, check, shape = CONSTRUCTIONS[name]
    assert shape(D).ok
    rep, _ = check(D)
    assert rep.ok, str(rep)


@pytest.mark.parametrize("name", NAMES)
@pytest.mark.parametrize("seed", [11, 12, 13])
@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_generated_instances(name, seed, ring):
    cfg = GenConfig(ring, seed)
    D = CONSTRUCTION_SHAPES[name](cfg, cfg.rng())
    rep, der = CONSTRUCTIONS[name][1](D)
    assert rep.ok, str(rep)
    for out in der.diagrams:
        assert validate_3x3(out).ok and check_relation_3x3(out)


def test_derive_returns_diagrams():
    cfg = GenConfig(GF(5), 4)
    D = CONSTRUCTION_SHAPES["cons2_3"](cfg, cfg.rng())
    D1, D2 = derive_cons2_3(D)
    assert validate_3x3(D1).ok and validate_3x3(D2).ok
    for name in ("cons1", "cons2", "cons2_1", "cons_new", "cons2_2"):
        D = CONSTRUCTION_SHAPES[name](cfg, cfg.rng())
        assert validate_3x3(CONSTRUCTIONS[name][0](D)).ok


def test_witness_input_from_phi():
    for ring, s in ((GF(5), 1), (GF(7), 2), (ZZ, 3)):
        W = phi_auto(random_dses(GenConfig(ring, s))).witness3x3
        rep, _ = CONSTRUCTIONS["cons2_2"][1](W)
        assert rep.ok, str(rep)


def _other_shape(name):
    # a valid diagram built for a different construction
    return "cons2_1" if name != "cons2_1" else "cons1"


@pytest.mark.parametrize("name", NAMES)
def test_wrong_shape_raises(name):
    cfg = GenConfig(GF(5), 21)
    D = CONSTRUCTION_SHAPES[_other_shape(name)](cfg, cfg.rng())
    derive, _, shape = CONSTRUCTIONS[name]
    if shape(D).ok:
        pytest.skip("the other shape happens to fit")
    with pytest.raises(ShapeError):
        derive(D)


@pytest.mark.parametrize("name", NAMES)
def test_mutated_diagram_rejected(name):
    cfg = GenConfig(GF(5), 22)
    D = CONSTRUCTION_SHAPES[name](cfg, cfg.rng())
    mid = D.H_M
    # scale the second epi of the middle row; squares stop commuting
    bad = DoubleSES(mid.ap, mid.a, mid.app, mid.f1, mid.f2, mid.g1, mid.g2.scale(2))
    M = ThreeByThree((D.H_T, bad, D.H_B), D.cols)
    if validate_3x3(M).ok:
        pytest.skip("mutation landed on a zero map")
    with pytest.raises(ShapeError):
        CONSTRUCTIONS[name][0](M)


def test_swap_schema_without_swap_is_rejected():
    d = random_dses(GenConfig(GF(5), 5))
    S = oplus_schema(d)
    M = ThreeByThree((S.H_T, S.H_M, S.H_T), S.cols)
    with pytest.raises(ShapeError):
        CONSTRUCTIONS["cons2_1"][0](M)
