"""Determinant-valued class oracle for double short exact sequences.

For a double sequence over F, split each epi g_i by some s_i, form the
isomorphisms iso_i = [f_i | s_i] : a'⊕a'' -> a and take the determinant of
iso_2^{-1} iso_1.  The value is a unit of the base ring and does not depend
on the splittings.  Objects with torsion are first pushed into F through the
resolution chain (see ``dses_class_general``).
"""
from __future__ import annotations

from dataclasses import dataclass

from .category import Morphism, from_coordinates, in_coordinates, is_in_F
from .diagrams import (DoubleSES, FormalSum, ThreeByThree, dses_type,
                       validate_3x3)
from .linalg import BaseRing, Matrix, Solver, det, hstack


class NotInF(ValueError):
    pass


@dataclass(frozen=True)
class UnitClass:
    ring: BaseRing
    value: int

    def __post_init__(self):
        v = self.ring.reduce(self.value)
        if not self.ring.is_unit(v):
            raise ValueError(f"{self.value} is not a unit of {self.ring}")
        object.__setattr__(self, "value", v)

    @classmethod
    def one(cls, ring: BaseRing) -> UnitClass:
        return cls(ring, 1)

    def __mul__(self, other: UnitClass) -> UnitClass:
        if self.ring != other.ring:
            raise ValueError("classes over different rings")
        return UnitClass(self.ring, self.value * other.value)

    def inverse(self) -> UnitClass:
        return UnitClass(self.ring, self.ring.inverse(self.value))

    def __pow__(self, k: int) -> UnitClass:
        base = self if k >= 0 else self.inverse()
        p = self.ring.modulus
        v = pow(base.value, abs(k), p) if p else base.value ** (abs(k) % 2)
        return UnitClass(self.ring, v)

    def __truediv__(self, other: UnitClass) -> UnitClass:
        return self * other.inverse()

    @property
    def is_identity(self) -> bool:
        return self.value == 1

    def __str__(self) -> str:
        if self.ring.modulus is None:
            return "+1" if self.value == 1 else "-1"
        return f"{self.value} mod {self.ring.modulus}"


def _splitting_coords(G: Matrix) -> Matrix:
    s = Solver(G).solve(Matrix.identity(G.ring, G.rows))
    if s is None:
        raise ValueError("map is not surjective, so it has no splitting")
    return s


def splitting(g: Morphism) -> Morphism:
    """A section s of the epi g (g∘s is the identity); the codomain must be in F."""
    if not is_in_F(g.dst):
        raise NotInF("codomain has torsion, so the epi need not split")
    if not is_in_F(g.src):
        raise NotInF("domain has torsion; splitting is computed only inside F")
    s = _splitting_coords(in_coordinates(g))
    return from_coordinates(g.dst, g.src, s)


def _change_of_splitting(d: DoubleSES) -> Matrix:
    for x in d.objects:
        if not is_in_F(x):
            raise NotInF(f"object {x!r} is not in F")
    isos = []
    for i in (1, 2):
        F = in_coordinates(d.f(i))
        G = in_coordinates(d.g(i))
        isos.append(hstack(F.ring, F.rows, F, _splitting_coords(G)))
    T = Solver(isos[1]).solve(isos[0])
    if T is None:
        raise ArithmeticError("splitting matrices are not invertible")
    return T


def dses_class_free(d: DoubleSES) -> UnitClass:
    return UnitClass(d.ring, det(_change_of_splitting(d)))


def class_any(d: DoubleSES) -> UnitClass:
    """Class of d, routed through the resolution chain when d leaves F."""
    if dses_type(d) == 3:
        return dses_class_free(d)
    return dses_class_general(d)


def class_of_sum(s: FormalSum, ring: BaseRing | None = None) -> UnitClass:
    if not s.terms:
        if ring is None:
            raise ValueError("empty sum needs an explicit ring")
        return UnitClass.one(ring)
    out = UnitClass.one(s.terms[0][1].ring)
    for c, d in s.terms:
        out = out * class_any(d) ** c
    return out


def relation_sides(D: ThreeByThree) -> tuple[UnitClass, UnitClass]:
    """Both sides of the 3x3 relation: rows (top·mid⁻¹·bottom) and columns."""
    h = [class_any(x) for x in D.rows]
    v = [class_any(x) for x in D.cols]
    return h[0] / h[1] * h[2], v[0] / v[1] * v[2]


def check_relation_3x3(D: ThreeByThree) -> bool:
    rep = validate_3x3(D)
    if not rep.ok:
        raise ValueError(f"invalid 3x3 diagram: {rep}")
    lhs, rhs = relation_sides(D)
    return lhs == rhs


def dses_class_general(d: DoubleSES, cover_factory=None) -> UnitClass:
    """Class of any double sequence: the inverse of the class of its resolution.

    ``cover_factory`` optionally supplies the covers used at each step; it is
    how the tests re-randomize the choices.
    """
    from .resolution.phi import varphi
    return dses_class_free(varphi(d, cover_factory)).inverse()
