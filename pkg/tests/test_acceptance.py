"""One test per acceptance criterion, at the full default instance counts."""
from k1wb import acceptance as acc


def _run(criterion):
    r = criterion()
    print(r.line())
    assert r.passed, r.line()


def test_criterion_01_normal_forms():
    _run(acc.normal_forms)


def test_criterion_02_equal_structures_have_trivial_class():
    _run(acc.trivial_class)


def test_criterion_03_swap_lemma():
    _run(acc.swap_lemma)


def test_criterion_04_3x3_relation():
    _run(acc.three_by_three)


def test_criterion_05_phi_inverts_class():
    _run(acc.phi_inversion)


def test_criterion_06_cover_independence():
    _run(acc.cover_independence)


def test_criterion_07_constructions():
    _run(acc.constructions)


def test_criterion_08_relation_preservation():
    _run(acc.relation_preservation)


def test_criterion_09_round_trip():
    _run(acc.round_trip)


def test_criterion_10_free_closure():
    _run(acc.free_closure)


def test_criterion_11_general_class_stability():
    _run(acc.general_class)
