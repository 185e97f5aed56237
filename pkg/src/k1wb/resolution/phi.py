"""Covers and the phi-construction.

Given a double sequence d = (a', a, a'') and a free object p with maps
eta_i : p -> a such that the composites g_i eta_i are epis with a common
kernel k, phi replaces d by the double sequence

    k --nu_i--> a' ⊕ p --omega_i--> a,   nu_i = (xi_i; tau),  omega_i = [f_i | eta_i]

where tau : k -> p is the kernel inclusion and xi_i solves f_i xi_i = -eta_i tau.
The new sequence has k and p in F, its class is the inverse of the class of
d, and a 3x3 diagram witnessing that comes with it.

Naming: the maps are named after their codomain, so ``omega`` always lands
in the quotient object of the new sequence and ``nu`` always leaves k.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from ..category import (Morphism, PresentedObject, compose, copair, free_cover,
                        identity, injection, is_admissible_epi, is_in_F,
                        kernel, lift_through, mor_equal, oplus, pairing,
                        projection, pullback, zero_mor, zero_obj, free_obj)
from ..diagrams import (DoubleSES, FormalSum, Report, ThreeByThree, dses_type,
                        include)
from ..linalg import Matrix, hstack


class ConstructionFault(RuntimeError):
    """A step that the theory guarantees has failed; this is a bug, not bad input."""


@dataclass(frozen=True)
class CoverTriangle:
    d: DoubleSES
    p: PresentedObject
    eta1: Morphism
    eta2: Morphism
    witness: Optional[tuple] = None  # (pullback object, gamma1, gamma2, psi)

    def eta(self, i: int) -> Morphism:
        return self.eta1 if i == 1 else self.eta2

    def composite(self, i: int) -> Morphism:
        return compose(self.d.g(i), self.eta(i))


def validate_cover(c: CoverTriangle, strict: bool = True) -> Report:
    """Check a cover.

    The strict form is the commutative triangle: both eta_i epi and equal
    composites.  The relaxed form only asks for epi composites with equal
    kernels, which is all that phi needs.
    """
    rep = Report()
    if not is_in_F(c.p):
        rep.add("p", "cover object is not in F")
    for i in (1, 2):
        e = c.eta(i)
        if e.src != c.p or e.dst != c.d.a:
            rep.add(f"eta{i}", "does not run p -> a")
            return rep
        if not is_admissible_epi(c.composite(i)):
            rep.add(f"eta{i}", "g∘eta is not an epi")
        if strict and not is_admissible_epi(e):
            rep.add(f"eta{i}", "not an epi")
    if strict:
        if not mor_equal(c.composite(1), c.composite(2)):
            rep.add("triangle", "g1∘eta1 differs from g2∘eta2")
    elif rep.ok:
        k1, t1 = kernel(c.composite(1))
        k2, t2 = kernel(c.composite(2))
        if k1 != k2 or t1.matrix != t2.matrix:
            rep.add("triangle", "composites have different kernels")
    return rep


def build_p(d: DoubleSES) -> CoverTriangle:
    """Default cover: the generators of the pullback of g1 and g2."""
    P, gamma1, gamma2 = pullback(d.g1, d.g2)
    p, psi = free_cover(P)
    return CoverTriangle(d, p, compose(gamma1, psi), compose(gamma2, psi),
                         (P, gamma1, gamma2, psi))


def cover_with(d: DoubleSES, p: PresentedObject, eta1: Morphism, eta2: Morphism) -> CoverTriangle:
    return CoverTriangle(d, p, eta1, eta2)


def reparametrized_cover(c: CoverTriangle, U: Matrix, M: Matrix) -> CoverTriangle:
    """Precompose the cover with ``[U | M] : p ⊕ free(extra) -> p``.

    U must be invertible; M (rows = generators of p) adds redundant free
    generators, so this also produces the inflated covers.
    """
    p = c.p
    if not p.is_free_presentation:
        raise ValueError("reparametrization expects a freely presented cover")
    n = p.generators
    new_p = free_obj(p.ring, n + M.cols)
    s = Morphism(new_p, p, hstack(p.ring, n, U, M))
    return CoverTriangle(c.d, new_p, compose(c.eta1, s), compose(c.eta2, s), c.witness)


def inflated_cover(c: CoverTriangle, extra: int) -> CoverTriangle:
    """The cover with ``extra`` free generators mapping to zero."""
    n = c.p.generators
    return reparametrized_cover(c, Matrix.identity(c.p.ring, n),
                                Matrix.zero(c.p.ring, n, extra))


@dataclass(frozen=True)
class PhiResult:
    input: DoubleSES
    cover: CoverTriangle
    output: DoubleSES
    tau: Morphism
    xi: tuple[Morphism, Morphism]
    witness3x3: ThreeByThree

    @property
    def k(self) -> PresentedObject:
        return self.output.ap

    def nu(self, i: int) -> Morphism:
        return self.output.f(i)

    def omega(self, i: int) -> Morphism:
        return self.output.g(i)


def phi(d: DoubleSES, cover: CoverTriangle) -> PhiResult:
    if cover.d.objects != d.objects:
        raise ValueError("cover was built for a different double sequence")
    ap, a, app = d.objects
    p = cover.p
    k, tau = kernel(cover.composite(1))
    k2, tau2 = kernel(cover.composite(2))
    if k2 != k or tau2.matrix != tau.matrix:
        raise ConstructionFault("the two composites p -> a'' have different kernels")
    xis = []
    for i in (1, 2):
        x = lift_through(-compose(cover.eta(i), tau), d.f(i))
        if x is None:
            raise ConstructionFault(f"eta{i}∘tau does not land in the image of f{i}")
        xis.append(x)
    nus = [pairing(x, tau) for x in xis]
    omegas = [copair(d.f(i), cover.eta(i)) for i in (1, 2)]
    out = DoubleSES(k, oplus(ap, p), a, nus[0], nus[1], omegas[0], omegas[1])

    zero = zero_obj(d.ring)
    pair = (ap, p)
    H_M = DoubleSES.single(injection(pair, 0), projection(pair, 1))
    H_B = DoubleSES.single(zero_mor(zero, k), identity(k))
    V_L = DoubleSES.single(zero_mor(zero, ap), identity(ap))
    V_R = DoubleSES(k, p, app, tau, tau, cover.composite(1), cover.composite(2))
    W = ThreeByThree.of(d, H_M, H_B, V_L, out, V_R)
    return PhiResult(d, cover, out, tau, (xis[0], xis[1]), W)


def phi_auto(d: DoubleSES) -> PhiResult:
    return phi(d, build_p(d))


CoverFactory = Callable[[DoubleSES], CoverTriangle]


def resolution_chain(d: DoubleSES, cover_factory: CoverFactory | None = None) -> list[PhiResult]:
    """The three phi steps taking any double sequence into F."""
    make = cover_factory or build_p
    steps = []
    cur = d
    for _ in range(3):
        r = phi(cur, make(cur))
        steps.append(r)
        cur = r.output
    return steps


def varphi(d: DoubleSES, cover_factory: CoverFactory | None = None) -> DoubleSES:
    return resolution_chain(d, cover_factory)[-1].output


def phi_on_sum(s: FormalSum) -> FormalSum:
    if s.level >= 3:
        raise ValueError("phi raises the type level; level 3 is the top")
    return FormalSum(s.level + 1, tuple((c, phi_auto(d).output) for c, d in s.terms))


__all__ = ["CoverTriangle", "PhiResult", "ConstructionFault", "validate_cover", "build_p",
           "cover_with", "reparametrized_cover", "inflated_cover", "phi", "phi_auto",
           "resolution_chain", "varphi", "phi_on_sum", "include", "dses_type"]
