"""Short exact sequences, double short exact sequences and 3x3 diagrams.

Validation never raises on a bad diagram: it returns a Report whose issues
name the offending row, column or square.

A 3x3 diagram is stored as its six double sequences.  Rows run left to
right (sub-object, middle, quotient) and are listed top to bottom; columns
run bottom to top, so the bottom row holds the sub-objects of the columns
and the top row their quotients.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .category import (Morphism, ObjectMismatch, PresentedObject, biproduct,
                       compose, copair, direct_sum_mor, identity,
                       image_equals_kernel, is_admissible_epi,
                       is_admissible_mono, is_in_F, is_zero_mor, mor_equal,
                       pairing, zero_mor, zero_obj)


@dataclass
class Report:
    issues: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    def add(self, where: str, what: str):
        self.issues.append((where, what))

    def extend(self, other: Report, prefix: str = ""):
        for where, what in other.issues:
            self.issues.append((f"{prefix}{where}" if prefix else where, what))

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(f"{w}: {m}" for w, m in self.issues)


@dataclass(frozen=True)
class ShortExactSeq:
    f: Morphism
    g: Morphism


@dataclass(frozen=True)
class DoubleSES:
    ap: PresentedObject
    a: PresentedObject
    app: PresentedObject
    f1: Morphism
    f2: Morphism
    g1: Morphism
    g2: Morphism

    def f(self, i: int) -> Morphism:
        return self.f1 if i == 1 else self.f2

    def g(self, i: int) -> Morphism:
        return self.g1 if i == 1 else self.g2

    def ses(self, i: int) -> ShortExactSeq:
        return ShortExactSeq(self.f(i), self.g(i))

    @property
    def objects(self) -> tuple[PresentedObject, PresentedObject, PresentedObject]:
        return self.ap, self.a, self.app

    @property
    def ring(self):
        return self.a.ring

    @classmethod
    def of(cls, f1: Morphism, f2: Morphism, g1: Morphism, g2: Morphism) -> DoubleSES:
        return cls(f1.src, f1.dst, g1.dst, f1, f2, g1, g2)

    @classmethod
    def single(cls, f: Morphism, g: Morphism) -> DoubleSES:
        return cls(f.src, f.dst, g.dst, f, f, g, g)


def validate_ses(s: ShortExactSeq, where: str = "ses") -> Report:
    rep = Report()
    f, g = s.f, s.g
    if f.dst != g.src:
        rep.add(where, "f and g do not meet in the same object")
        return rep
    for name, m in (("f", f), ("g", g)):
        if not m.is_well_defined():
            rep.add(where, f"{name} is not well defined on the presentation")
    if not rep.ok:
        return rep
    if not is_admissible_mono(f):
        rep.add(where, "f is not injective")
    if not is_admissible_epi(g):
        rep.add(where, "g is not surjective")
    if not is_zero_mor(compose(g, f)):
        rep.add(where, "g∘f is not zero")
    elif not image_equals_kernel(f, g):
        rep.add(where, "ker g is not contained in im f")
    return rep


def validate_dses(d: DoubleSES, where: str = "dses") -> Report:
    rep = Report()
    for i in (1, 2):
        f, g = d.f(i), d.g(i)
        if f.src != d.ap or f.dst != d.a:
            rep.add(where, f"f{i} does not run a' -> a")
        if g.src != d.a or g.dst != d.app:
            rep.add(where, f"g{i} does not run a -> a''")
    if not rep.ok:
        return rep
    for i in (1, 2):
        rep.extend(validate_ses(d.ses(i), f"{where}[{i}]"))
    return rep


def dses_type(d: DoubleSES) -> int:
    """Number of leading objects (in the order a', a, a'') lying in F."""
    t = 0
    for x in d.objects:
        if not is_in_F(x):
            break
        t += 1
    return t


def trivial_dses(f: Morphism, g: Morphism) -> DoubleSES:
    rep = validate_ses(ShortExactSeq(f, g))
    if not rep.ok:
        raise ValueError(f"not a short exact sequence: {rep}")
    return DoubleSES.single(f, g)


def lemma_pl_dses(a: PresentedObject) -> DoubleSES:
    """``a ⇉ a⊕a ⇉ a`` with first structure (i_r, -p_l), second (i_l, p_r)."""
    s, il, ir, pl, pr = biproduct(a, a)
    return DoubleSES(a, s, a, ir, il, -pl, pr)


def swap(d: DoubleSES) -> DoubleSES:
    return DoubleSES(d.ap, d.a, d.app, d.f2, d.f1, d.g2, d.g1)


def dses_direct_sum(d: DoubleSES, e: DoubleSES) -> DoubleSES:
    if d.ring != e.ring:
        raise ValueError("ring mismatch in direct sum")
    return DoubleSES.of(direct_sum_mor(d.f1, e.f1), direct_sum_mor(d.f2, e.f2),
                        direct_sum_mor(d.g1, e.g1), direct_sum_mor(d.g2, e.g2))


def dses_equal(d: DoubleSES, e: DoubleSES) -> bool:
    """Same objects and equal maps (modulo relations)."""
    if d.objects != e.objects:
        return False
    return all(mor_equal(x, y) for x, y in
               ((d.f1, e.f1), (d.f2, e.f2), (d.g1, e.g1), (d.g2, e.g2)))


# ---------------------------------------------------------------------------
# 3x3 diagrams

ROW_NAMES = ("H_T", "H_M", "H_B")
COL_NAMES = ("V_L", "V_M", "V_R")


@dataclass(frozen=True)
class ThreeByThree:
    rows: tuple[DoubleSES, DoubleSES, DoubleSES]
    cols: tuple[DoubleSES, DoubleSES, DoubleSES]

    @property
    def H_T(self) -> DoubleSES:
        return self.rows[0]

    @property
    def H_M(self) -> DoubleSES:
        return self.rows[1]

    @property
    def H_B(self) -> DoubleSES:
        return self.rows[2]

    @property
    def V_L(self) -> DoubleSES:
        return self.cols[0]

    @property
    def V_M(self) -> DoubleSES:
        return self.cols[1]

    @property
    def V_R(self) -> DoubleSES:
        return self.cols[2]

    def obj(self, r: int, c: int) -> PresentedObject:
        """Object in row r (0 = top) and column c (0 = left)."""
        return self.rows[r].objects[c]

    def six(self) -> Iterator[tuple[str, DoubleSES]]:
        yield from zip(ROW_NAMES, self.rows)
        yield from zip(COL_NAMES, self.cols)

    @classmethod
    def of(cls, H_T, H_M, H_B, V_L, V_M, V_R) -> ThreeByThree:
        return cls((H_T, H_M, H_B), (V_L, V_M, V_R))


def validate_3x3(D: ThreeByThree) -> Report:
    rep = Report()
    for c in range(3):
        col = D.cols[c]
        want = (D.obj(2, c), D.obj(1, c), D.obj(0, c))
        if col.objects != want:
            rep.add(COL_NAMES[c], "objects do not match the rows")
    if not rep.ok:
        return rep
    for name, d in D.six():
        rep.extend(validate_dses(d, name))
    if not rep.ok:
        return rep
    top, mid, bot = D.rows
    left, centre, right = D.cols
    for i in (1, 2):
        squares = (
            ("upper-left", compose(centre.g(i), mid.f(i)), compose(top.f(i), left.g(i))),
            ("upper-right", compose(right.g(i), mid.g(i)), compose(top.g(i), centre.g(i))),
            ("lower-left", compose(centre.f(i), bot.f(i)), compose(mid.f(i), left.f(i))),
            ("lower-right", compose(right.f(i), bot.g(i)), compose(mid.g(i), centre.f(i))),
        )
        for name, x, y in squares:
            try:
                same = mor_equal(x, y)
            except ObjectMismatch:
                same = False
            if not same:
                rep.add(f"square {name}", f"index {i} maps do not commute")
    return rep


def oplus_schema(d: DoubleSES) -> ThreeByThree:
    """The direct-sum relation diagram built from d.

    Top row d, middle row the doubled sequence with both structures equal to
    the sums of the two structures of d, bottom row d with its structures
    exchanged; every column is the shape of ``lemma_pl_dses``.
    """
    ap, a, app = d.objects
    mid = DoubleSES.single(direct_sum_mor(d.f1, d.f2), direct_sum_mor(d.g1, d.g2))
    cols = tuple(lemma_pl_dses(x) for x in (ap, a, app))
    return ThreeByThree((d, mid, swap(d)), cols)


def vm_zero_diagram(a: PresentedObject) -> ThreeByThree:
    """Fixed diagram whose middle column is ``lemma_pl_dses(a)``.

    Top row a = a -> 0, middle row a -(-1;1)-> a⊕a -(1 1)-> a,
    bottom row 0 -> a = a.
    """
    z = zero_obj(a.ring)
    ida = identity(a)
    top = DoubleSES.single(ida, zero_mor(a, z))
    mid = DoubleSES.single(pairing(-ida, ida), copair(ida, ida))
    bot = DoubleSES.single(zero_mor(z, a), ida)
    V_L = DoubleSES.single(zero_mor(z, a), ida)
    V_R = DoubleSES.single(ida, zero_mor(a, z))
    return ThreeByThree.of(top, mid, bot, V_L, lemma_pl_dses(a), V_R)


# ---------------------------------------------------------------------------
# formal sums

@dataclass(frozen=True)
class FormalSum:
    level: int
    terms: tuple[tuple[int, DoubleSES], ...] = ()

    def __post_init__(self):
        if self.level not in (0, 1, 2, 3):
            raise ValueError(f"type level {self.level} outside 0..3")

    @classmethod
    def generator(cls, d: DoubleSES, level: int | None = None) -> FormalSum:
        return cls(dses_type(d) if level is None else level, ((1, d),))

    def __add__(self, other: FormalSum) -> FormalSum:
        if self.level != other.level:
            raise ValueError("cannot add sums of different type levels")
        return FormalSum(self.level, self.terms + other.terms)

    def __neg__(self) -> FormalSum:
        return FormalSum(self.level, tuple((-c, d) for c, d in self.terms))

    def __sub__(self, other: FormalSum) -> FormalSum:
        return self + (-other)


def validate_sum(s: FormalSum) -> Report:
    rep = Report()
    for k, (_, d) in enumerate(s.terms):
        t = dses_type(d)
        if t < s.level:
            rep.add(f"term {k}", f"type {t} below level {s.level}")
    return rep


def include(s: FormalSum) -> FormalSum:
    """View a sum of type j+1 generators as a sum at type j."""
    if s.level == 0:
        raise ValueError("type 0 is the bottom level")
    return FormalSum(s.level - 1, s.terms)
