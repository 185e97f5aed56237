"""Finitely presented modules over a base ring, as a concrete exact category.

An object is the cokernel of its relations matrix: ``generators`` rows and
one column per relation.  A morphism is a matrix sending generators of the
source to combinations of generators of the target; two matrices give the
same morphism when their difference lands in the span of the target
relations.  Objects compare by presentation, never up to isomorphism.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .linalg import (BaseRing, DimensionError, Matrix, Solver, block_diag,
                     column_basis, hstack, inverse, kernel_basis, snf, vstack)


class ObjectMismatch(ValueError):
    """Raised when two morphisms do not line up on the nose."""


@dataclass(frozen=True, eq=True)
class PresentedObject:
    ring: BaseRing
    generators: int
    relations: Matrix = field(compare=True)

    def __post_init__(self):
        if self.relations.rows != self.generators:
            raise DimensionError(
                f"relations have {self.relations.rows} rows for {self.generators} generators")
        if self.relations.ring != self.ring:
            raise ValueError("relations matrix over the wrong ring")

    @cached_property
    def _hash(self) -> int:
        return hash((self.ring, self.generators, self.relations))

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def relation_solver(self) -> Solver:
        return Solver(self.relations)

    @cached_property
    def _snf(self):
        return snf(self.relations)

    def invariants(self) -> tuple[int, tuple[int, ...]]:
        d = self._snf.divisors
        free_rank = self.generators - len(d)
        if self.ring.is_field:
            return free_rank, ()
        return free_rank, tuple(x for x in d if x != 1)

    @property
    def is_free_presentation(self) -> bool:
        return self.relations.cols == 0

    @cached_property
    def coordinates(self) -> tuple[Matrix, Matrix]:
        """``(proj, sect)`` identifying an object of F with a standard free module.

        proj kills the relations and is injective on the cokernel; sect is a
        right inverse.  Only defined for objects without torsion.
        """
        if not is_in_F(self):
            raise ValueError("coordinates requested for an object with torsion")
        if self.is_free_presentation:
            ident = Matrix.identity(self.ring, self.generators)
            return ident, ident
        dec = self._snf
        s = dec.rank
        n = self.generators
        proj = dec.U.submatrix(s, n, 0, n)
        sect = inverse(dec.U).submatrix(0, n, s, n)
        return proj, sect

    @property
    def rank(self) -> int:
        """Rank (dimension) of the free module of coordinates."""
        return self.invariants()[0]

    def __repr__(self) -> str:
        if self.is_free_presentation:
            return f"Free({self.ring}, {self.generators})"
        return f"Presented({self.ring}, gens={self.generators}, rels={self.relations.tolists()})"


@dataclass(frozen=True)
class Morphism:
    src: PresentedObject
    dst: PresentedObject
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.shape != (self.dst.generators, self.src.generators):
            raise DimensionError(
                f"morphism matrix {self.matrix.shape} does not fit "
                f"{self.src.generators} -> {self.dst.generators}")

    def __matmul__(self, other: Morphism) -> Morphism:
        return compose(self, other)

    def __add__(self, other: Morphism) -> Morphism:
        _same_ends(self, other)
        return Morphism(self.src, self.dst, self.matrix + other.matrix)

    def __sub__(self, other: Morphism) -> Morphism:
        _same_ends(self, other)
        return Morphism(self.src, self.dst, self.matrix - other.matrix)

    def __neg__(self) -> Morphism:
        return Morphism(self.src, self.dst, -self.matrix)

    def scale(self, c: int) -> Morphism:
        return Morphism(self.src, self.dst, self.matrix.scale(c))

    def is_well_defined(self) -> bool:
        image = self.matrix @ self.src.relations
        return self.dst.relation_solver.solve(image) is not None

    def __repr__(self) -> str:
        return f"Morphism({self.src!r} -> {self.dst!r}, {self.matrix.tolists()})"


def _same_ends(f: Morphism, g: Morphism):
    if f.src != g.src or f.dst != g.dst:
        raise ObjectMismatch("morphisms have different source or target")


# ---------------------------------------------------------------------------
# objects

def free_obj(ring: BaseRing, rank: int) -> PresentedObject:
    return PresentedObject(ring, rank, Matrix.zero(ring, rank, 0))


def zero_obj(ring: BaseRing) -> PresentedObject:
    return free_obj(ring, 0)


def obj_from_presentation(relations: Matrix) -> PresentedObject:
    return PresentedObject(relations.ring, relations.rows, relations)


def iso_invariants(x: PresentedObject) -> tuple[int, tuple[int, ...]]:
    """Free rank and torsion divisors (the SNF divisors larger than 1)."""
    return x.invariants()


def is_in_F(x: PresentedObject) -> bool:
    return not x.invariants()[1]


def is_zero_object(x: PresentedObject) -> bool:
    return x.invariants() == (0, ())


# ---------------------------------------------------------------------------
# morphisms

def mor(src: PresentedObject, dst: PresentedObject, rows: Sequence[Sequence[int]] | Matrix) -> Morphism:
    if not isinstance(rows, Matrix):
        rows = Matrix.from_rows(src.ring, rows, src.generators)
    return Morphism(src, dst, rows)


def identity(x: PresentedObject) -> Morphism:
    return Morphism(x, x, Matrix.identity(x.ring, x.generators))


def zero_mor(src: PresentedObject, dst: PresentedObject) -> Morphism:
    return Morphism(src, dst, Matrix.zero(src.ring, dst.generators, src.generators))


def compose(g: Morphism, f: Morphism) -> Morphism:
    """``g`` after ``f``."""
    if f.dst != g.src:
        raise ObjectMismatch(f"cannot compose: {f.dst!r} is not {g.src!r}")
    return Morphism(f.src, g.dst, g.matrix @ f.matrix)


def compose_all(*maps: Morphism) -> Morphism:
    """Right-to-left composite of the given maps."""
    out = maps[-1]
    for g in reversed(maps[:-1]):
        out = compose(g, out)
    return out


def mor_equal(f: Morphism, g: Morphism) -> bool:
    _same_ends(f, g)
    if f.matrix == g.matrix:
        return True
    return f.dst.relation_solver.solve(f.matrix - g.matrix) is not None


def is_zero_mor(f: Morphism) -> bool:
    return mor_equal(f, zero_mor(f.src, f.dst))


def lift_through(target: Morphism, through: Morphism) -> Morphism | None:
    """Some h with ``through ∘ h == target`` (same source as target), or None."""
    if target.dst != through.dst:
        raise ObjectMismatch("lift: maps do not share a codomain")
    A = hstack(through.src.ring, through.dst.generators, through.matrix, through.dst.relations)
    X = Solver(A).solve(target.matrix)
    if X is None:
        return None
    h = X.submatrix(0, through.src.generators, 0, X.cols)
    return Morphism(target.src, through.src, h)


def factor_through_epi(target: Morphism, epi: Morphism) -> Morphism | None:
    """Some h with ``h ∘ epi == target``; needs target to vanish on ker(epi)."""
    if target.src != epi.src:
        raise ObjectMismatch("factor: maps do not share a domain")
    x, y = epi.dst, target.dst
    # preimages of the generators of the quotient
    ident = identity(x)
    pre = lift_through(ident, epi)
    if pre is None:
        return None
    h = compose(target, pre)
    if not h.is_well_defined():
        return None
    return h if mor_equal(compose(h, epi), target) else None


# ---------------------------------------------------------------------------
# exactness predicates

def is_admissible_epi(f: Morphism) -> bool:
    A = hstack(f.src.ring, f.dst.generators, f.matrix, f.dst.relations)
    return Solver(A).spans_everything()


def _preimage_lattice(f: Morphism) -> Matrix:
    """Basis of ``{x : F x ∈ im R_dst}`` in canonical Hermite form."""
    n = f.src.generators
    A = hstack(f.src.ring, f.dst.generators, f.matrix, f.dst.relations)
    K = kernel_basis(A)
    top = K.submatrix(0, n, 0, K.cols)
    return column_basis(top)


def is_admissible_mono(f: Morphism) -> bool:
    L = _preimage_lattice(f)
    return f.src.relation_solver.solve(L) is not None


def kernel(f: Morphism) -> tuple[PresentedObject, Morphism]:
    """Kernel object and its inclusion.

    The generators of the kernel are the canonical Hermite basis of the
    lattice of source vectors mapping into the target relations, so equal
    morphisms produce identical kernel objects.
    """
    G = _preimage_lattice(f)
    C = Solver(G).solve(f.src.relations)
    if C is None:
        raise AssertionError("kernel lattice does not contain the source relations")
    K = obj_from_presentation(C)
    return K, Morphism(K, f.src, G)


def contains_image(big: Morphism, small: Morphism) -> bool:
    """True when im(small) ⊆ im(big) as submodules of the common codomain."""
    return lift_through(small, big) is not None


def image_equals_kernel(f: Morphism, g: Morphism) -> bool:
    if not is_zero_mor(compose(g, f)):
        return False
    _, inc = kernel(g)
    return contains_image(f, inc)


# ---------------------------------------------------------------------------
# sums

def oplus(*objs: PresentedObject) -> PresentedObject:
    if not objs:
        raise ValueError("oplus of nothing needs a ring; use zero_obj")
    ring = objs[0].ring
    if any(o.ring != ring for o in objs):
        raise ValueError("ring mismatch in direct sum")
    if len(objs) == 1:
        return objs[0]
    return PresentedObject(ring, sum(o.generators for o in objs),
                           block_diag(ring, *[o.relations for o in objs]))


def injection(objs: Sequence[PresentedObject], k: int) -> Morphism:
    total = oplus(*objs)
    ring = total.ring
    blocks = [Matrix.identity(ring, o.generators) if j == k
              else Matrix.zero(ring, o.generators, objs[k].generators)
              for j, o in enumerate(objs)]
    return Morphism(objs[k], total, vstack(ring, objs[k].generators, *blocks))


def projection(objs: Sequence[PresentedObject], k: int) -> Morphism:
    total = oplus(*objs)
    ring = total.ring
    blocks = [Matrix.identity(ring, o.generators) if j == k
              else Matrix.zero(ring, objs[k].generators, o.generators)
              for j, o in enumerate(objs)]
    return Morphism(total, objs[k], hstack(ring, objs[k].generators, *blocks))


def biproduct(x: PresentedObject, y: PresentedObject):
    """``(x⊕y, i_l, i_r, p_l, p_r)``."""
    if x.ring != y.ring:
        raise ValueError("ring mismatch in biproduct")
    pair = (x, y)
    return (oplus(x, y), injection(pair, 0), injection(pair, 1),
            projection(pair, 0), projection(pair, 1))


def copair(*maps: Morphism) -> Morphism:
    """``[f | g | ...]`` out of the direct sum of the sources."""
    dst = maps[0].dst
    if any(m.dst != dst for m in maps):
        raise ObjectMismatch("copair: maps have different targets")
    src = oplus(*[m.src for m in maps])
    return Morphism(src, dst, hstack(dst.ring, dst.generators, *[m.matrix for m in maps]))


def pairing(*maps: Morphism) -> Morphism:
    """``(f; g; ...)`` into the direct sum of the targets."""
    src = maps[0].src
    if any(m.src != src for m in maps):
        raise ObjectMismatch("pairing: maps have different sources")
    dst = oplus(*[m.dst for m in maps])
    return Morphism(src, dst, vstack(src.ring, src.generators, *[m.matrix for m in maps]))


def direct_sum_mor(*maps: Morphism) -> Morphism:
    src = oplus(*[m.src for m in maps])
    dst = oplus(*[m.dst for m in maps])
    return Morphism(src, dst, block_diag(src.ring, *[m.matrix for m in maps]))


def block_mor(srcs: Sequence[PresentedObject], dsts: Sequence[PresentedObject],
              grid: Sequence[Sequence[Morphism | int | None]]) -> Morphism:
    """Map between direct sums given by a grid of component maps.

    ``grid[r][c]`` is the component from ``srcs[c]`` to ``dsts[r]``; ``None``
    or ``0`` is zero and ``1`` is the identity.
    """
    from .linalg import block_matrix
    src, dst = oplus(*srcs), oplus(*dsts)
    mats = []
    for r, row in enumerate(grid):
        out = []
        for c, m in enumerate(row):
            if isinstance(m, Morphism):
                if m.src != srcs[c] or m.dst != dsts[r]:
                    raise ObjectMismatch(f"block ({r},{c}) has the wrong ends")
                out.append(m.matrix)
            else:
                out.append(m)
        mats.append(out)
    M = block_matrix(src.ring, [d.generators for d in dsts], [s.generators for s in srcs], mats)
    return Morphism(src, dst, M)


# ---------------------------------------------------------------------------
# limits and covers

def pullback(g1: Morphism, g2: Morphism):
    """``(P, π1, π2)`` with ``g1 ∘ π1 == g2 ∘ π2``."""
    if g1.dst != g2.dst:
        raise ObjectMismatch("pullback: maps have different codomains")
    diff = copair(g1, -g2)
    P, inc = kernel(diff)
    pair = (g1.src, g2.src)
    pi1 = compose(projection(pair, 0), inc)
    pi2 = compose(projection(pair, 1), inc)
    return P, pi1, pi2


def free_cover(x: PresentedObject) -> tuple[PresentedObject, Morphism]:
    p = free_obj(x.ring, x.generators)
    return p, Morphism(p, x, Matrix.identity(x.ring, x.generators))


def in_coordinates(f: Morphism) -> Matrix:
    """Matrix of a map between F-objects in their standard free coordinates."""
    proj, _ = f.dst.coordinates
    _, sect = f.src.coordinates
    return proj @ f.matrix @ sect


def from_coordinates(src: PresentedObject, dst: PresentedObject, M: Matrix) -> Morphism:
    _, sect = dst.coordinates
    proj, _ = src.coordinates
    return Morphism(src, dst, sect @ M @ proj)
