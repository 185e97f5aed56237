"""Derived 3x3 diagrams built from a given 3x3 diagram by phi-constructions.

Each ``derive_*`` function checks the input shape, builds the new diagram(s)
and returns them.  The matching ``check_*`` function runs the same
construction and verifies everything the construction promises: validity
of the outputs, the 3x3 relation on them, the internal equalities that are
argued informally (for example that two candidate maps coincide), and the
stated class identity.

Diagram positions follow ``diagrams``: rows top to bottom, columns bottom to
top.  In the comments a 3x3 diagram is written with its top row a' a a'',
middle row b' b b'' and bottom row c' c c''; the vertical maps are alpha
(bottom to middle) and beta (middle to top).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..category import (Morphism, block_mor, compose, direct_sum_mor, identity,
                        injection, is_zero_object, lift_through, mor_equal,
                        oplus, pairing, projection, zero_mor, zero_obj)
from ..diagrams import (DoubleSES, Report, ThreeByThree, dses_equal,
                        oplus_schema, validate_3x3)
from ..k1 import UnitClass, class_any, relation_sides
from .phi import (ConstructionFault, CoverTriangle, PhiResult, build_p, phi,
                  validate_cover)


class ShapeError(ValueError):
    """The input diagram is not of the shape a construction requires."""


def _is_identity(m: Morphism) -> bool:
    return m.src == m.dst and mor_equal(m, identity(m.src))


def _is_single(d: DoubleSES) -> bool:
    return mor_equal(d.f1, d.f2) and mor_equal(d.g1, d.g2)


def _zero_row_dses(d: DoubleSES) -> bool:
    return all(is_zero_object(x) for x in d.objects)


def _require(rep: Report, cond: bool, where: str, what: str):
    if not cond:
        rep.add(where, what)


def _raise_on(rep: Report, name: str):
    if not rep.ok:
        raise ShapeError(f"{name}: {rep}")


def _identity_row(x) -> DoubleSES:
    """0 -> x = x."""
    z = zero_obj(x.ring)
    return DoubleSES.single(zero_mor(z, x), identity(x))


def _identity_col_top(x) -> DoubleSES:
    """x = x -> 0 (a column whose top object is zero)."""
    z = zero_obj(x.ring)
    return DoubleSES.single(identity(x), zero_mor(x, z))


def _zero_dses(ring) -> DoubleSES:
    z = zero_obj(ring)
    return DoubleSES.single(zero_mor(z, z), zero_mor(z, z))


@dataclass
class Derivation:
    """Output of a construction together with the intermediate data."""
    diagrams: tuple
    parts: dict = field(default_factory=dict)

    @property
    def diagram(self) -> ThreeByThree:
        return self.diagrams[0]


def _check_outputs(rep: Report, der: Derivation):
    for n, D in enumerate(der.diagrams):
        tag = f"output{n + 1}" if len(der.diagrams) > 1 else "output"
        v = validate_3x3(D)
        rep.extend(v, f"{tag} ")
        if v.ok:
            lhs, rhs = relation_sides(D)
            _require(rep, lhs == rhs, tag, f"3x3 relation fails: rows {lhs}, columns {rhs}")


def _same_class(rep: Report, where: str, x, y):
    _require(rep, x == y, where, f"class mismatch: {x} vs {y}")


# ---------------------------------------------------------------------------
# cons1: top row 0 -> a = a, left column b' ⇉ b' -> 0

def shape_cons1(D: ThreeByThree) -> Report:
    rep = validate_3x3(D)
    if not rep.ok:
        return rep
    top = D.H_T
    _require(rep, is_zero_object(top.ap), "H_T", "left object must be zero")
    _require(rep, top.a == top.app and _is_identity(top.g1) and _is_identity(top.g2),
             "H_T", "must be 0 -> a = a")
    _require(rep, D.obj(2, 0) == D.obj(1, 0) and is_zero_object(D.obj(0, 0)),
             "V_L", "must be b' ⇉ b' -> 0")
    return rep


def _cons1(D: ThreeByThree) -> Derivation:
    _raise_on(shape_cons1(D), "cons1")
    mid, bot = D.H_M, D.H_B
    cover = build_p(D.V_M)
    pm = phi(D.V_M, cover)
    p = cover.p
    cover_r = CoverTriangle(D.V_R, p, compose(mid.g1, cover.eta1), compose(mid.g2, cover.eta2))
    pr = phi(D.V_R, cover_r)
    if pr.k != pm.k or pr.tau.matrix != pm.tau.matrix:
        raise ConstructionFault("cons1: the two phi-constructions have different kernels")
    bp, c, cpp, k = mid.ap, bot.a, bot.app, pm.k
    zero_p = zero_mor(bp, p)
    row_mid = DoubleSES(bp, oplus(c, p), oplus(cpp, p),
                        pairing(bot.f1, zero_p), pairing(bot.f2, zero_p),
                        direct_sum_mor(bot.g1, identity(p)), direct_sum_mor(bot.g2, identity(p)))
    z = zero_obj(D.H_T.ring)
    col_left = DoubleSES(z, bp, bp, zero_mor(z, bp), zero_mor(z, bp), D.V_L.f1, D.V_L.f2)
    out = ThreeByThree.of(mid, row_mid, _identity_row(k), col_left, pm.output, pr.output)
    return Derivation((out,), {"phi_V_M": pm, "phi_V_R": pr, "cover": cover})


def derive_cons1(D: ThreeByThree) -> ThreeByThree:
    return _cons1(D).diagram


def check_cons1(D: ThreeByThree) -> tuple[Report, Derivation]:
    der = _cons1(D)
    rep = Report()
    _check_outputs(rep, der)
    return rep, der


# ---------------------------------------------------------------------------
# cons2: bottom row 0 -> c = c, left column 0 -> a' ⇉ a', top row single

def shape_cons2(D: ThreeByThree) -> Report:
    rep = validate_3x3(D)
    if not rep.ok:
        return rep
    bot = D.H_B
    _require(rep, is_zero_object(bot.ap), "H_B", "left object must be zero")
    _require(rep, bot.a == bot.app and _is_identity(bot.g1) and _is_identity(bot.g2),
             "H_B", "must be 0 -> c = c")
    _require(rep, is_zero_object(D.obj(2, 0)) and D.obj(1, 0) == D.obj(0, 0),
             "V_L", "must be 0 -> a' ⇉ a'")
    _require(rep, _is_single(D.H_T), "H_T", "top row must carry a single structure")
    return rep


def _cons2(D: ThreeByThree) -> Derivation:
    _raise_on(shape_cons2(D), "cons2")
    mid = D.H_M
    cover = build_p(D.V_M)
    pa = phi(D.V_M, cover)
    p = cover.p
    cover_r = CoverTriangle(D.V_R, p, compose(mid.g1, cover.eta1), compose(mid.g2, cover.eta2))
    pr = phi(D.V_R, cover_r)
    ka, kapp = pa.k, pr.k
    mus = []
    chis = []
    for i in (1, 2):
        mu = lift_through(pa.nu(i), pr.nu(i))
        if mu is None:
            raise ConstructionFault("cons2: nu^a does not factor through nu^a''")
        mus.append(mu)
        chi = lift_through(compose(pa.omega(i), pr.nu(i)), mid.f(i))
        if chi is None:
            raise ConstructionFault("cons2: omega^a nu^a'' does not factor through f^b")
        chis.append(chi)
    if not mor_equal(mus[0], mus[1]):
        raise ConstructionFault("cons2: mu_1 and mu_2 differ")
    ap = mid.ap
    bpp = mid.app
    row_bot = DoubleSES(ka, kapp, ap, mus[0], mus[0], chis[0], chis[1])
    out = ThreeByThree.of(_identity_row(bpp), pa.output, row_bot,
                          _identity_col_top(ka), pr.output, mid)
    return Derivation((out,), {"phi_V_M": pa, "phi_V_R": pr, "mu": mus[0],
                               "chi": (chis[0], chis[1]), "cover": cover})


def derive_cons2(D: ThreeByThree) -> ThreeByThree:
    return _cons2(D).diagram


def check_cons2(D: ThreeByThree) -> tuple[Report, Derivation]:
    der = _cons2(D)
    rep = Report()
    _check_outputs(rep, der)
    chi1, chi2 = der.parts["chi"]
    V_L = D.V_L
    cover_l = CoverTriangle(V_L, chi1.src, chi1, chi2)
    rep.extend(validate_cover(cover_l, strict=True), "cover over V_L ")
    if rep.ok:
        pl = phi(V_L, cover_l)
        der.parts["phi_V_L"] = pl
        _same_class(rep, "H_B' vs phi(k^a'', V_L)",
                    class_any(der.diagram.H_B), class_any(pl.output))
    return rep, der


# ---------------------------------------------------------------------------
# cons2.1: the direct-sum schema

def shape_cons2_1(D: ThreeByThree) -> Report:
    rep = validate_3x3(D)
    if not rep.ok:
        return rep
    ref = oplus_schema(D.H_T)
    for (name, x), (_, y) in zip(D.six(), ref.six()):
        _require(rep, dses_equal(x, y), name, "does not match the direct-sum schema")
    return rep


def _cons2_1(D: ThreeByThree) -> Derivation:
    _raise_on(shape_cons2_1(D), "cons2.1")
    cover = build_p(D.H_T)
    pt = phi(D.H_T, cover)
    return Derivation((oplus_schema(pt.output),), {"phi_H_T": pt, "cover": cover})


def derive_cons2_1(D: ThreeByThree) -> ThreeByThree:
    return _cons2_1(D).diagram


def check_cons2_1(D: ThreeByThree) -> tuple[Report, Derivation]:
    der = _cons2_1(D)
    rep = Report()
    _check_outputs(rep, der)
    cover = der.parts["cover"]
    swapped = CoverTriangle(D.H_B, cover.p, cover.eta2, cover.eta1)
    pb = phi(D.H_B, swapped)
    out = der.diagram
    _require(rep, dses_equal(out.H_B, pb.output), "H_B'", "is not phi(p, H_B)")
    _same_class(rep, "H_T'·H_B'", class_any(out.H_T) * class_any(out.H_B),
                UnitClass.one(D.H_T.ring))
    return rep, der


# ---------------------------------------------------------------------------
# cons_new: top row 0 -> a = a, left column c' = c' -> 0, right column single

def shape_cons_new(D: ThreeByThree) -> Report:
    rep = shape_cons1(D)
    if not rep.ok:
        return rep
    _require(rep, _is_identity(D.V_L.f1) and _is_identity(D.V_L.f2),
             "V_L", "must be the identity c' = c'")
    _require(rep, _is_single(D.V_R), "V_R", "must carry a single structure")
    return rep


def _cons_new(D: ThreeByThree) -> Derivation:
    _raise_on(shape_cons_new(D), "cons_new")
    mid, bot = D.H_M, D.H_B
    cover = build_p(mid)
    p = cover.p
    if not mor_equal(compose(D.V_M.g1, cover.eta1), compose(D.V_M.g2, cover.eta2)):
        raise ConstructionFault("cons_new: beta_1 eta_1 and beta_2 eta_2 differ")
    pa = phi(D.V_M, CoverTriangle(D.V_M, p, cover.eta1, cover.eta2))
    pb = phi(mid, cover)
    ka, kb = pa.k, pb.k
    mu = lift_through(pb.tau, pa.tau)
    if mu is None:
        raise ConstructionFault("cons_new: ker(g^b eta) is not inside ker(beta eta)")
    cp, c = bot.ap, bot.a
    parts3 = (ka, cp, p)
    pair2 = (cp, p)
    row_mid = DoubleSES.single(injection(parts3, 0),
                               block_mor(parts3, pair2, [[0, 1, 0], [0, 0, 1]]))
    lowers, uppers = [], []
    for i in (1, 2):
        xi_a = compose(projection((c, p), 0), pa.nu(i))
        xi_b = compose(projection(pair2, 0), pb.nu(i))
        lowers.append(block_mor((kb,), parts3, [[-mu], [xi_b], [pb.tau]]))
        uppers.append(block_mor(parts3, (c, p), [[xi_a, bot.f(i), 0], [pa.tau, 0, 1]]))
    col_mid = DoubleSES(kb, oplus(*parts3), oplus(c, p), lowers[0], lowers[1], uppers[0], uppers[1])
    out = ThreeByThree.of(pa.output, row_mid, _identity_row(kb),
                          _identity_row(ka), col_mid, pb.output)
    return Derivation((out,), {"phi_V_M": pa, "phi_H_M": pb, "mu": mu, "cover": cover})


def derive_cons_new(D: ThreeByThree) -> ThreeByThree:
    return _cons_new(D).diagram


def check_cons_new(D: ThreeByThree) -> tuple[Report, Derivation]:
    der = _cons_new(D)
    rep = Report()
    _check_outputs(rep, der)
    pa: PhiResult = der.parts["phi_V_M"]
    cover = der.parts["cover"]
    bot, mid = D.H_B, D.H_M
    c, p = bot.a, cover.p
    alpha_pp = D.V_R.f1
    xis = []
    for i in (1, 2):
        xi_a = compose(projection((c, p), 0), pa.nu(i))
        target = compose(mid.g(i), compose(cover.eta(i), pa.tau))
        xi = lift_through(target, alpha_pp)
        if xi is None:
            rep.add("xi", f"g^b eta_{i} tau^a does not factor through alpha''")
            continue
        _require(rep, mor_equal(xi, -compose(bot.g(i), xi_a)), "xi",
                 f"xi differs from -g^c_{i} xi^a_{i}")
        xis.append(-xi_a)
    if rep.ok:
        cover_b = CoverTriangle(bot, pa.k, xis[0], xis[1])
        rep.extend(validate_cover(cover_b, strict=True), "cover over H_B ")
        if rep.ok:
            pb = phi(bot, cover_b)
            der.parts["phi_H_B"] = pb
            _same_class(rep, "V_M' vs phi(k^a, H_B)",
                        class_any(der.diagram.V_M), class_any(pb.output))
    return rep, der


# ---------------------------------------------------------------------------
# cons2.2: input shaped like a phi witness

def shape_cons2_2(D: ThreeByThree) -> Report:
    rep = validate_3x3(D)
    if not rep.ok:
        return rep
    ap, s, pp = D.H_M.objects
    pair = (ap, pp)
    _require(rep, s == oplus(ap, pp), "H_M", "middle object must be a' ⊕ p'")
    if rep.ok:
        _require(rep, _is_single(D.H_M) and mor_equal(D.H_M.f1, injection(pair, 0))
                 and mor_equal(D.H_M.g1, projection(pair, 1)), "H_M", "must be a' -> a'⊕p' -> p'")
    _require(rep, is_zero_object(D.obj(2, 0)), "H_B", "left object must be zero")
    _require(rep, D.obj(2, 1) == D.obj(2, 2) and _is_identity(D.H_B.g1)
             and _is_identity(D.H_B.g2), "H_B", "must be 0 -> k' = k'")
    _require(rep, D.obj(1, 0) == D.obj(0, 0) and _is_identity(D.V_L.g1)
             and _is_identity(D.V_L.g2), "V_L", "must be 0 -> a' = a'")
    if rep.ok:
        for i in (1, 2):
            _require(rep, mor_equal(compose(D.V_M.g(i), injection(pair, 0)), D.H_T.f(i)),
                     "V_M", f"omega'_{i} must restrict to f_{i} on a'")
    return rep


def _cons2_2(D: ThreeByThree) -> Derivation:
    _raise_on(shape_cons2_2(D), "cons2.2")
    top = D.H_T
    ap, _, pp = D.H_M.objects
    pair = (ap, pp)
    kp = D.obj(2, 1)
    etas_p = [compose(D.V_M.g(i), injection(pair, 1)) for i in (1, 2)]
    xis_p = [compose(projection(pair, 0), D.V_M.f(i)) for i in (1, 2)]
    taus_p = [D.V_R.f(i) for i in (1, 2)]
    cover_r = build_p(D.V_R)
    p = cover_r.p
    gammas = [cover_r.eta1, cover_r.eta2]
    cover_t = CoverTriangle(top, p, compose(etas_p[0], gammas[0]), compose(etas_p[1], gammas[1]))
    pt = phi(top, cover_t)
    k = pt.k
    parts3 = (kp, ap, p)
    row_mid = DoubleSES.single(injection(parts3, 0),
                               block_mor(parts3, (ap, p), [[0, 1, 0], [0, 0, 1]]))
    lowers, uppers = [], []
    for n, i in enumerate((1, 2)):
        y = lift_through(-compose(gammas[n], pt.tau), taus_p[n])
        if y is None:
            raise ConstructionFault("cons2.2: gamma tau does not land in ker(g eta')")
        xi = compose(projection((ap, p), 0), pt.nu(i))
        lowers.append(block_mor((k,), parts3, [[y], [xi], [pt.tau]]))
        uppers.append(block_mor(parts3, pair, [[xis_p[n], 1, 0], [taus_p[n], 0, gammas[n]]]))
    col_mid = DoubleSES(k, oplus(*parts3), oplus(*pair), lowers[0], lowers[1], uppers[0], uppers[1])
    out = ThreeByThree.of(D.V_M, row_mid, _identity_row(k), _identity_row(kp),
                          col_mid, pt.output)
    return Derivation((out,), {"phi_H_T": pt, "cover_V_R": cover_r})


def derive_cons2_2(D: ThreeByThree) -> ThreeByThree:
    return _cons2_2(D).diagram


def check_cons2_2(D: ThreeByThree) -> tuple[Report, Derivation]:
    der = _cons2_2(D)
    rep = Report()
    _check_outputs(rep, der)
    pr = phi(D.V_R, der.parts["cover_V_R"])
    der.parts["phi_V_R"] = pr
    _same_class(rep, "V_M' vs phi(p, V_R)", class_any(der.diagram.V_M), class_any(pr.output))
    return rep, der


# ---------------------------------------------------------------------------
# cons2.3: bottom row zero, vertical isomorphisms

def shape_cons2_3(D: ThreeByThree) -> Report:
    rep = validate_3x3(D)
    if not rep.ok:
        return rep
    _require(rep, _zero_row_dses(D.H_B), "H_B", "bottom row must be zero")
    return rep


def _inverse_iso(m: Morphism) -> Morphism:
    inv = lift_through(identity(m.dst), m)
    if inv is None:
        raise ConstructionFault("vertical map is not an isomorphism")
    return inv


def _cons2_3(D: ThreeByThree) -> Derivation:
    _raise_on(shape_cons2_3(D), "cons2.3")
    top, mid = D.H_T, D.H_M
    cover = build_p(top)
    p = cover.p
    pt = phi(top, cover)
    etas_m = [compose(_inverse_iso(D.V_M.g(i)), cover.eta(i)) for i in (1, 2)]
    pm = phi(mid, CoverTriangle(mid, p, etas_m[0], etas_m[1]))
    if pm.k != pt.k or pm.tau.matrix != pt.tau.matrix:
        raise ConstructionFault("cons2.3: kernels over the two rows differ")
    k = pt.k
    z = zero_obj(top.ring)
    col_mid = DoubleSES(z, oplus(mid.ap, p), oplus(top.ap, p),
                        zero_mor(z, oplus(mid.ap, p)), zero_mor(z, oplus(mid.ap, p)),
                        direct_sum_mor(D.V_L.g1, identity(p)), direct_sum_mor(D.V_L.g2, identity(p)))
    col_left = DoubleSES.single(zero_mor(z, k), identity(k))
    D1 = ThreeByThree.of(pt.output, pm.output, _zero_dses(top.ring), col_left, col_mid, D.V_M)
    D2 = pm.witness3x3
    return Derivation((D1, D2), {"phi_H_T": pt, "phi_H_M": pm, "cover": cover})


def derive_cons2_3(D: ThreeByThree) -> tuple[ThreeByThree, ThreeByThree]:
    return _cons2_3(D).diagrams


def check_cons2_3(D: ThreeByThree) -> tuple[Report, Derivation]:
    der = _cons2_3(D)
    rep = Report()
    _check_outputs(rep, der)
    cover = der.parts["cover"]
    V_R = D.V_R
    etas_r = [compose(_inverse_iso(V_R.g(i)), cover.composite(i)) for i in (1, 2)]
    cover_r = CoverTriangle(V_R, cover.p, etas_r[0], etas_r[1])
    pr = phi(V_R, cover_r)
    der.parts["phi_V_R"] = pr
    D1, D2 = der.diagrams
    _require(rep, dses_equal(D2.V_R, pr.output), "output2 V_R", "is not phi(p, V_R)")
    one = UnitClass.one(D.H_T.ring)
    _same_class(rep, "H_T^1·H_T", class_any(D1.H_T) * class_any(D.H_T), one)
    _same_class(rep, "V_R^2·V_R", class_any(D2.V_R) * class_any(V_R), one)
    return rep, der


CONSTRUCTIONS = {
    "cons1": (derive_cons1, check_cons1, shape_cons1),
    "cons2": (derive_cons2, check_cons2, shape_cons2),
    "cons2_1": (derive_cons2_1, check_cons2_1, shape_cons2_1),
    "cons_new": (derive_cons_new, check_cons_new, shape_cons_new),
    "cons2_2": (derive_cons2_2, check_cons2_2, shape_cons2_2),
    "cons2_3": (derive_cons2_3, check_cons2_3, shape_cons2_3),
}
