"""The acceptance suite as plain functions.

Each criterion returns a ``CriterionResult``; the pytest suite and the
``selftest`` subcommand both run these.  ``cases`` overrides the default
number of generated instances per criterion (the defaults are the full
counts); ``seed`` shifts every generator stream.
"""
from __future__ import annotations

import time
from dataclasses import dataclass

from .category import free_cover, free_obj, is_in_F, kernel
from .diagrams import (ShortExactSeq, lemma_pl_dses, validate_3x3, validate_dses,
                       validate_ses)
from .gen import (CONSTRUCTION_SHAPES, KIND_SHAPES, GenConfig, Rng, random_3x3,
                  random_cover, random_dses, random_general_dses, random_trivial_dses)
from .k1 import check_relation_3x3, dses_class_free, dses_class_general
from .linalg import GF, ZZ, Matrix, hnf, is_unimodular, snf
from .resolution import (CONSTRUCTIONS, check_choice_independence, phi_auto,
                         round_trip_check, verify_relation_preservation)


@dataclass
class CriterionResult:
    id: int
    name: str
    passed: bool
    details: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.id} ({self.name}): {self.details}"


def _n(cases: int | None, default: int) -> int:
    return default if cases is None else max(1, cases)


def _cfg(ring, seed: int, k: int, **kw) -> GenConfig:
    return GenConfig(ring=ring, seed=(seed * 1_000_003 + k) & ((1 << 64) - 1), **kw)


def _timed(fn):
    def run(cases: int | None = None, seed: int = 0) -> CriterionResult:
        t = time.perf_counter()
        res = fn(cases, seed)
        res.seconds = time.perf_counter() - t
        return res
    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


@_timed
def normal_forms(cases, seed):
    """1000 integer matrices up to 6x6 with entries in [-20, 20]: SNF and HNF are sound, in < 10 s."""
    n = _n(cases, 1000)
    rng = Rng(seed ^ 0x5EED)
    bad = []
    t = time.perf_counter()
    for k in range(n):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        A = Matrix.from_rows(ZZ, [[rng.randint(-20, 20) for _ in range(c)] for _ in range(r)], c)
        dec = snf(A)
        ok = (dec.U @ A @ dec.V == dec.D and is_unimodular(dec.U) and is_unimodular(dec.V)
              and all(x > 0 for x in dec.divisors)
              and all(dec.divisors[i + 1] % dec.divisors[i] == 0 for i in range(len(dec.divisors) - 1)))
        H, V = hnf(A)
        ok = ok and A @ V == H and is_unimodular(V)
        if not ok:
            bad.append(k)
    elapsed = time.perf_counter() - t
    passed = not bad and elapsed < 10.0
    return CriterionResult(1, "normal forms", passed,
                           f"{n} matrices, {len(bad)} failures, {elapsed:.2f}s (limit 10s)")


@_timed
def trivial_class(cases, seed):
    """Double sequences with equal structures have class identity (500 per ring)."""
    n = _n(cases, 500)
    bad = 0
    for ring in (GF(5), ZZ):
        for k in range(n):
            d = random_trivial_dses(_cfg(ring, seed, k))
            if not validate_dses(d).ok or not dses_class_free(d).is_identity:
                bad += 1
    return CriterionResult(2, "equal structures", bad == 0,
                           f"{2 * n} instances over GF(5) and Z, {bad} failures")


@_timed
def swap_lemma(cases, seed):
    """lemma_pl_dses has class identity for ranks 1..4 over both rings."""
    bad = []
    for ring in (GF(5), ZZ):
        for r in range(1, 5):
            d = lemma_pl_dses(free_obj(ring, r))
            if not validate_dses(d).ok or not dses_class_free(d).is_identity:
                bad.append((str(ring), r))
    return CriterionResult(3, "swap lemma", not bad, f"8 instances, failures {bad}")


@_timed
def three_by_three(cases, seed):
    """200 diagrams per generation strategy satisfy the multiplicative 3x3 relation."""
    n = _n(cases, 200)
    bad = []
    for s in "abcd":
        for k in range(n):
            ring = GF(5) if k % 2 == 0 else ZZ
            D = random_3x3(_cfg(ring, seed, k), s)
            if not validate_3x3(D).ok or not check_relation_3x3(D):
                bad.append((s, k))
    return CriterionResult(4, "3x3 relation", not bad,
                           f"{4 * n} diagrams (strategies a-d), failures {bad[:5]}")


@_timed
def phi_inversion(cases, seed):
    """class(phi(d)) * class(d) = 1 on 200 free sequences over GF(5)."""
    n = _n(cases, 200)
    ring = GF(5)
    bad = 0
    seen = set()
    for k in range(n):
        d = random_dses(_cfg(ring, seed, k))
        c = dses_class_free(d)
        if not c.is_identity:
            seen.add(c.value)
        if not (dses_class_free(phi_auto(d).output) * c).is_identity:
            bad += 1
    ok = bad == 0 and (len(seen) >= 3 or n < 20)
    return CriterionResult(5, "phi inversion", ok,
                           f"{n} instances, {bad} failures, nontrivial classes seen {sorted(seen)}")


@_timed
def cover_independence(cases, seed):
    """50 inputs x 3 covers: phi output classes agree."""
    n = _n(cases, 50)
    bad = 0
    for k in range(n):
        ring = GF(5) if k % 2 == 0 else ZZ
        cfg = _cfg(ring, seed, k)
        rng = cfg.rng()
        if ring is ZZ and k % 4 == 1:
            d = random_general_dses(cfg, rng)
        else:
            d = random_dses(cfg, rng)
        covers = [random_cover(d, cfg, rng) for _ in range(3)]
        if not all(check_choice_independence(d, covers[0], c) for c in covers[1:]):
            bad += 1
    return CriterionResult(6, "cover independence", bad == 0,
                           f"{n} inputs x 3 covers, {bad} disagreements")


@_timed
def constructions(cases, seed):
    """Each construction: the split instance plus 10 generated ones pass their checks."""
    n = _n(cases, 10)
    bad = []
    total = 0
    for name, (_, check, _) in CONSTRUCTIONS.items():
        make = CONSTRUCTION_SHAPES[name]
        for k in range(n + 1):
            ring = GF(5) if k % 2 == 0 else ZZ
            cfg = _cfg(ring, seed, k)
            D = make(cfg, cfg.rng(), split=(k == 0))
            rep, _ = check(D)
            total += 1
            if not rep.ok:
                bad.append((name, k, str(rep)))
    return CriterionResult(7, "constructions", not bad,
                           f"{total} runs over 6 constructions, failures {bad[:3]}")


@_timed
def relation_preservation(cases, seed):
    """Every relation-preservation kind holds on 10 generated instances."""
    n = _n(cases, 10)
    bad = []
    for kind, make in KIND_SHAPES.items():
        for k in range(n):
            ring = GF(5) if k % 2 == 0 else ZZ
            cfg = _cfg(ring, seed, k)
            rep = verify_relation_preservation(kind, make(cfg, cfg.rng()))
            if not rep.ok:
                bad.append((kind, k, str(rep)))
    return CriterionResult(8, "relation preservation", not bad,
                           f"{len(KIND_SHAPES)} kinds x {n} instances, failures {bad[:3]}")


@_timed
def round_trip(cases, seed):
    """class(varphi(d)) * class(d) = 1 on 100 inputs over GF(7) and 100 over Z, in < 60 s."""
    n = _n(cases, 100)
    bad = 0
    nontrivial = {"GF(7)": 0, "Z": 0}
    t = time.perf_counter()
    for ring in (GF(7), ZZ):
        for k in range(n):
            d = random_dses(_cfg(ring, seed, k))
            if not dses_class_free(d).is_identity:
                nontrivial[str(ring)] += 1
            if not round_trip_check(d):
                bad += 1
    elapsed = time.perf_counter() - t
    ok = bad == 0 and elapsed < 60.0 and (n < 10 or all(nontrivial.values()))
    return CriterionResult(9, "round trip", ok,
                           f"{2 * n} inputs, {bad} failures, nontrivial inputs {nontrivial}, "
                           f"{elapsed:.2f}s (limit 60s)")


@_timed
def free_closure(cases, seed):
    """Closure properties of the free objects on 200 random sequences over Z."""
    n = _n(cases, 200)
    bad = []
    hits = [0, 0, 0]
    for k in range(n):
        d = random_general_dses(_cfg(ZZ, seed, k))
        if not validate_ses(ShortExactSeq(d.f1, d.g1)).ok:
            bad.append((k, "sequence"))
            continue
        ap, a, app = d.objects
        if is_in_F(ap) and is_in_F(app):
            hits[0] += 1
            if not is_in_F(a):
                bad.append((k, "extension of free objects is not free"))
        if is_in_F(a):
            hits[1] += 1
            if not is_in_F(ap):
                bad.append((k, "sub-object of a free object is not free"))
        p, psi = free_cover(app)
        kk, incl = kernel(psi)
        hits[2] += 1
        if not (is_in_F(p) and validate_ses(ShortExactSeq(incl, psi)).ok):
            bad.append((k, "no free cover"))
    ok = not bad and (n < 20 or min(hits) > 0)
    return CriterionResult(10, "free closure", ok,
                           f"{n} sequences, premises met {hits}, failures {bad[:3]}")


@_timed
def general_class(cases, seed):
    """General class of 20 torsion-bearing type-0 inputs is stable across 5 cover randomizations."""
    n = _n(cases, 20)
    bad = []
    values = set()
    for k in range(n):
        cfg = _cfg(ZZ, seed, k)
        d = random_general_dses(cfg, torsion_kernel=True)
        classes = set()
        for r in range(5):
            rng = Rng(cfg.seed ^ (r + 1) * 0x9E37)

            def factory(x, rng=rng):
                return random_cover(x, cfg, rng)
            classes.add(dses_class_general(d, factory).value)
        values |= classes
        if len(classes) != 1 or not classes <= {1, -1}:
            bad.append((k, sorted(classes)))
    return CriterionResult(11, "general class stability", not bad,
                           f"{n} inputs x 5 cover randomizations, values {sorted(values)}, "
                           f"failures {bad[:3]}")


CRITERIA = (normal_forms, trivial_class, swap_lemma, three_by_three, phi_inversion,
            cover_independence, constructions, relation_preservation, round_trip,
            free_closure, general_class)


def run_all(cases: int | None = None, seed: int = 0) -> list[CriterionResult]:
    return [c(cases, seed) for c in CRITERIA]
