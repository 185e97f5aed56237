"""Executable relation-preservation lemmas and the choice/round-trip checks.

Every generating 3x3 relation of a type level must map under phi to a
relation one level up.  ``verify_relation_preservation`` takes a diagram of
one of the generating shapes, runs the construction(s) that prove the
statement and then asserts the concluding identity between classes of phi
images.  Identities are stated multiplicatively in the unit group.
"""
from __future__ import annotations

from typing import Callable

from ..diagrams import (DoubleSES, Report, ThreeByThree, dses_equal, validate_3x3,
                        vm_zero_diagram)
from ..k1 import UnitClass, class_any, dses_class_free, relation_sides
from .constructions import (ShapeError, _is_identity, _is_single, check_cons1, check_cons2,
                            check_cons2_1, check_cons2_2, check_cons2_3,
                            check_cons_new, shape_cons1, shape_cons2,
                            shape_cons2_1, shape_cons2_2, shape_cons2_3,
                            shape_cons_new)
from .phi import CoverTriangle, phi, phi_auto, varphi


def phi_class(d: DoubleSES) -> UnitClass:
    return class_any(phi_auto(d).output)


def _identities(D: ThreeByThree, cols: tuple[int, ...]) -> Report:
    rep = Report()
    for c in cols:
        col = D.cols[c]
        if not (_is_identity(col.g1) and _is_identity(col.g2)):
            rep.add(("V_L", "V_M", "V_R")[c], "upper vertical map must be the identity")
    return rep


def _shape_iso(cols):
    def shape(D: ThreeByThree) -> Report:
        rep = shape_cons2_3(D)
        if rep.ok:
            rep.extend(_identities(D, cols))
        return rep
    return shape


def _single_rows(base, rows):
    def shape(D: ThreeByThree) -> Report:
        rep = base(D)
        if rep.ok:
            for r in rows:
                if not _is_single(D.rows[r]):
                    rep.add(("H_T", "H_M", "H_B")[r], "row must carry a single structure")
        return rep
    return shape


def _shape_vm_zero(D: ThreeByThree) -> Report:
    rep = validate_3x3(D)
    if not rep.ok:
        return rep
    ref = vm_zero_diagram(D.obj(0, 0))
    for (name, x), (_, y) in zip(D.six(), ref.six()):
        if not dses_equal(x, y):
            rep.add(name, "does not match the fixed diagram on a")
    return rep


def _want(rep: Report, where: str, lhs: UnitClass, rhs: UnitClass):
    if lhs != rhs:
        rep.add(where, f"identity fails: {lhs} vs {rhs}")


# concluding identities -------------------------------------------------------

def _rows_vs_middle(D):
    # phi(H_T) / phi(H_M) = phi(V_M)^-1
    return phi_class(D.H_T) / phi_class(D.H_M), phi_class(D.V_M).inverse()


def _columns_sum(D):
    one = UnitClass.one(D.H_T.ring)
    return phi_class(D.V_L) / phi_class(D.V_M) * phi_class(D.V_R), one


def _top_plus_bottom(D):
    return phi_class(D.H_T) * phi_class(D.H_B), UnitClass.one(D.H_T.ring)


def _top_minus_middle_is_right(D):
    return phi_class(D.H_T) / phi_class(D.H_M), phi_class(D.V_R)


def _witness(D):
    return phi_class(D.H_T), phi_class(D.V_R) / phi_class(D.V_M)


def _bottom_minus_middle(D):
    return phi_class(D.H_B) / phi_class(D.H_M), phi_class(D.V_M).inverse()


def _vm_zero(D):
    return phi_class(D.V_M), UnitClass.one(D.H_T.ring)


# construction runs -------------------------------------------------------------

def _run_none(D, rep):
    pass


def _run(check):
    def run(D, rep):
        r, _ = check(D)
        rep.extend(r)
    return run


def _run_vertical_t0(D, rep):
    r, der = check_cons1(D)
    rep.extend(r)
    if r.ok:
        _want(rep, "V_L' vs phi(V_L)", class_any(der.diagram.V_L), phi_class(D.V_L))


def _run_top_equal(D, rep):
    r, der = check_cons2_3(D)
    rep.extend(r)
    if not r.ok:
        return
    D1, D2 = der.diagrams
    if not dses_equal(D1.H_T, D1.H_M):
        rep.add("output1", "phi images of the top and middle rows differ")
    r2, _ = check_cons2_2(D2)
    rep.extend(r2, "second diagram ")


KINDS: dict[str, tuple[int, Callable, Callable, Callable]] = {
    # kind: (type level, shape, construction run, concluding identity)
    "t0_iso": (0, _shape_iso((0, 2)), _run(check_cons2_3), _rows_vs_middle),
    "t0_vertical": (0, _single_rows(shape_cons1, (1, 2)), _run_vertical_t0, _columns_sum),
    "t0_oplus": (0, shape_cons2_1, _run(check_cons2_1), _top_plus_bottom),
    "t1_top_equal": (1, _shape_iso((0, 1)), _run_top_equal, _top_minus_middle_is_right),
    "t1_oplus": (1, shape_cons2_1, _run(check_cons2_1), _top_plus_bottom),
    "t1_vertical": (1, _single_rows(shape_cons2, (0, 1)), _run(check_cons2), _columns_sum),
    "t1_witness": (1, shape_cons2_2, _run(check_cons2_2), _witness),
    "t2_corner": (2, shape_cons_new, _run(check_cons_new), _bottom_minus_middle),
    "t2_iso": (2, _shape_iso((0, 2)), _run_none, _rows_vs_middle),
    "t2_oplus": (2, shape_cons2_1, _run(check_cons2_1), _top_plus_bottom),
    "t2_vm_zero": (2, _shape_vm_zero, _run_none, _vm_zero),
    "t2_witness": (2, shape_cons2_2, _run(check_cons2_2), _witness),
}


def verify_relation_preservation(kind: str, D: ThreeByThree) -> Report:
    """Empty report iff the phi image of the relation given by D holds.

    Raises ShapeError when D is not of the shape the kind requires.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown lemma kind {kind!r}")
    _, shape, run, identity = KINDS[kind]
    s = shape(D)
    if not s.ok:
        raise ShapeError(f"{kind}: {s}")
    rep = Report()
    lhs, rhs = relation_sides(D)
    _want(rep, "input relation", lhs, rhs)
    run(D, rep)
    a, b = identity(D)
    _want(rep, "conclusion", a, b)
    return rep


def check_choice_independence(d: DoubleSES, cover1: CoverTriangle, cover2: CoverTriangle) -> bool:
    """Classes of phi outputs agree for two covers (the kernels may differ)."""
    return class_any(phi(d, cover1).output) == class_any(phi(d, cover2).output)


def round_trip_check(d: DoubleSES) -> bool:
    """class(varphi(d)) · class(d) is the identity, for d inside F."""
    return dses_class_free(varphi(d)) * dses_class_free(d) == UnitClass.one(d.ring)
