"""Seeded generation of objects, double sequences and 3x3 diagrams.

Everything is correct by construction; nothing is generated and then
filtered.  The random source is xorshift64* with the update

    x ^= x >> 12;  x ^= x << 25 (mod 2**64);  x ^= x >> 27
    output = (x * 0x2545F4914F6CDD1D) mod 2**64

seeded with ``seed ^ 0x9E3779B97F4A7C15`` (a zero state is replaced by that
constant).  Integers in ``[lo, hi]`` are drawn as ``lo + output % (hi - lo + 1)``.
The same seed therefore gives the same values on any platform.

3x3 diagrams are built from a split base diagram in block coordinates.  The
index-i structure is the base conjugated by a per-position automorphism
Theta_i, so every square commutes automatically.  Theta_2 = Theta_1 ∘ S where
S commutes with every edge that must carry a single map, and positions joined
by an identity edge share their automorphisms.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .category import Morphism, PresentedObject, free_obj, kernel, obj_from_presentation
from .diagrams import (DoubleSES, ThreeByThree, oplus_schema, vm_zero_diagram)
from .linalg import BaseRing, Matrix, ZZ, block_matrix, hstack, inverse, snf
from .resolution.phi import CoverTriangle, build_p, phi_auto, reparametrized_cover

MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


class Rng:
    """xorshift64* stream."""

    def __init__(self, seed: int):
        s = (seed ^ GOLDEN) & MASK
        self.state = s or GOLDEN

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & MASK

    def randint(self, lo: int, hi: int) -> int:
        if hi < lo:
            raise ValueError("empty range")
        return lo + self.next_u64() % (hi - lo + 1)

    def choice(self, seq: Sequence):
        return seq[self.randint(0, len(seq) - 1)]

    def fork(self) -> Rng:
        """Independent stream derived from the next output."""
        return Rng(self.next_u64())


@dataclass(frozen=True)
class GenConfig:
    ring: BaseRing = ZZ
    seed: int = 0
    max_rank: int = 4
    entry_bound: int = 3
    torsion_palette: tuple[int, ...] = field(default=(2, 3, 4, 5))

    def __post_init__(self):
        if self.max_rank < 1 or self.entry_bound < 1:
            raise ValueError("max_rank and entry_bound must be at least 1")

    def rng(self) -> Rng:
        return Rng(self.seed)


def _rng(cfg: GenConfig, rng: Rng | None) -> Rng:
    return rng if rng is not None else cfg.rng()


def _units(ring: BaseRing) -> list[int]:
    if ring.modulus is None:
        return [1, -1]
    return list(range(1, ring.modulus))


def random_unimodular_pair(n: int, cfg: GenConfig, rng: Rng | None = None) -> tuple[Matrix, Matrix]:
    """Random invertible U with its inverse: 2n elementary row operations and a unit scaling."""
    rng = _rng(cfg, rng)
    ring = cfg.ring
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    Ui = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    B = cfg.entry_bound
    if n >= 2:
        for _ in range(2 * n):
            i = rng.randint(0, n - 1)
            j = rng.randint(0, n - 2)
            if j >= i:
                j += 1
            c = rng.randint(-B, B)
            # U <- E U with E = I + c e_ij ; U^{-1} <- U^{-1} E^{-1}
            U[i] = [x + c * y for x, y in zip(U[i], U[j])]
            for row in Ui:
                row[j] -= c * row[i]
    if n >= 1:
        i = rng.randint(0, n - 1)
        u = rng.choice(_units(ring))
        uinv = ring.inverse(u)
        U[i] = [u * x for x in U[i]]
        for row in Ui:
            row[i] = uinv * row[i]
    return (Matrix.from_rows(ring, U, n), Matrix.from_rows(ring, Ui, n))


def random_unimodular(n: int, cfg: GenConfig, rng: Rng | None = None) -> Matrix:
    return random_unimodular_pair(n, cfg, rng)[0]


def random_matrix(rows: int, cols: int, cfg: GenConfig, rng: Rng) -> Matrix:
    B = cfg.entry_bound
    return Matrix.from_rows(cfg.ring, [[rng.randint(-B, B) for _ in range(cols)]
                                       for _ in range(rows)], cols)


def _split(ring: BaseRing, r1: int, r2: int):
    incl = block_matrix(ring, [r1, r2], [r1], [[1], [0]])
    proj = block_matrix(ring, [r2], [r1, r2], [[0, 1]])
    return incl, proj


def random_free_dses(cfg: GenConfig, r1: int, r2: int, rng: Rng | None = None) -> DoubleSES:
    """Double sequence on free objects of ranks (r1, r1 + r2, r2)."""
    rng = _rng(cfg, rng)
    ring = cfg.ring
    ap, a, app = free_obj(ring, r1), free_obj(ring, r1 + r2), free_obj(ring, r2)
    incl, proj = _split(ring, r1, r2)
    U, Ui = random_unimodular_pair(r1 + r2, cfg, rng)
    f1 = U @ incl
    g1 = proj @ Ui
    al1, _ = random_unimodular_pair(r1, cfg, rng)
    al, ali = random_unimodular_pair(r1 + r2, cfg, rng)
    al2, _ = random_unimodular_pair(r2, cfg, rng)
    f2 = al @ f1 @ al1
    g2 = al2 @ g1 @ ali
    return DoubleSES(ap, a, app, Morphism(ap, a, f1), Morphism(ap, a, f2),
                     Morphism(a, app, g1), Morphism(a, app, g2))


def random_dses(cfg: GenConfig, rng: Rng | None = None) -> DoubleSES:
    rng = _rng(cfg, rng)
    r1 = rng.randint(0, cfg.max_rank)
    r2 = rng.randint(0, cfg.max_rank - r1) if r1 < cfg.max_rank else 0
    return random_free_dses(cfg, r1, r2, rng)


def _presented(cfg: GenConfig, rng: Rng, min_torsion: int = 0) -> tuple[PresentedObject, Matrix]:
    n = rng.randint(max(1, min_torsion), cfg.max_rank)
    t = rng.randint(min_torsion, max(min_torsion, min(2, n)))
    ring = cfg.ring
    D = [[0] * t for _ in range(n)]
    for j in range(t):
        D[j][j] = rng.choice(cfg.torsion_palette)
    Dm = Matrix.from_rows(ring, D, t)
    U = random_unimodular(n, cfg, rng)
    return obj_from_presentation(U @ Dm), U


def random_presented(cfg: GenConfig, rng: Rng | None = None) -> PresentedObject:
    """Random presented object over the integers, possibly with torsion."""
    return _presented(cfg, _rng(cfg, rng))[0]


def random_automorphism(x: PresentedObject, cfg: GenConfig,
                        rng: Rng | None = None) -> tuple[Morphism, Morphism]:
    """Random automorphism of a presented object, with its inverse.

    In Smith coordinates the object is a sum of dead generators, cyclic
    torsion pieces and a free part; the automorphism is ±1 on each torsion
    piece, arbitrary from the free part into the torsion, and unimodular on
    the free part.
    """
    rng = _rng(cfg, rng)
    ring = x.ring
    n = x.generators
    dec = snf(x.relations)
    divs = dec.divisors
    s = len(divs)
    units = _units(ring)
    W = random_unimodular(n - s, cfg, rng) if n > s else None
    B = cfg.entry_bound
    M = [[0] * n for _ in range(n)]
    for j, d in enumerate(divs):
        if d == 1:
            M[j][j] = 1
        else:
            M[j][j] = rng.choice(units)
            for c in range(s, n):
                M[j][c] = rng.randint(-B, B)
    for r in range(s, n):
        for c in range(s, n):
            M[r][c] = W[r - s, c - s]
    Mm = Matrix.from_rows(ring, M, n)
    Mi = inverse(Mm)
    U = dec.U
    Ui = inverse(U)
    return (Morphism(x, x, Ui @ Mm @ U), Morphism(x, x, Ui @ Mi @ U))


def random_general_dses(cfg: GenConfig, rng: Rng | None = None,
                        extra_relations: int | None = None,
                        torsion_kernel: bool = False) -> DoubleSES:
    """Double sequence a' -> a -> a'' with a'' a quotient of a presented object.

    With ``torsion_kernel`` the quotient kills a torsion element of a, so a'
    has torsion and the result has type 0.
    """
    rng = _rng(cfg, rng)
    ring = cfg.ring
    if ring.modulus is not None:
        raise ValueError("general double sequences are generated over the integers")
    a, U = _presented(cfg, rng, 1 if torsion_kernel else 0)
    n = a.generators
    e = rng.randint(0, 2) if extra_relations is None else extra_relations
    E = random_matrix(n, e, cfg, rng)
    if torsion_kernel:
        E = hstack(ring, n, U.submatrix(0, n, 0, 1), E)
    app = obj_from_presentation(hstack(ring, n, a.relations, E))
    g1 = Morphism(a, app, Matrix.identity(ring, n))
    ap, f1 = kernel(g1)
    t1, _ = random_automorphism(ap, cfg, rng)
    t, ti = random_automorphism(a, cfg, rng)
    t2, _ = random_automorphism(app, cfg, rng)
    f2 = t @ f1 @ t1
    g2 = t2 @ g1 @ ti
    return DoubleSES(ap, a, app, f1, f2, g1, g2)


def random_cover(d: DoubleSES, cfg: GenConfig, rng: Rng | None = None,
                 extra: int | None = None) -> CoverTriangle:
    """The default cover precomposed with a random invertible map plus redundant generators."""
    rng = _rng(cfg, rng)
    base = build_p(d)
    n = base.p.generators
    e = rng.randint(0, 2) if extra is None else extra
    sub = GenConfig(d.ring, cfg.seed, cfg.max_rank, cfg.entry_bound, cfg.torsion_palette)
    U = random_unimodular(n, sub, rng)
    M = random_matrix(n, e, sub, rng)
    return reparametrized_cover(base, U, M)


# ---------------------------------------------------------------------------
# 3x3 diagrams from a split base

def _auto(n: int, cfg: GenConfig, rng: Rng, split: bool) -> tuple[Matrix, Matrix]:
    if not split:
        return random_unimodular_pair(n, cfg, rng)
    I = Matrix.identity(cfg.ring, n)
    return I, I


def _triangular(r1: int, r2: int, cfg: GenConfig, rng: Rng, split: bool):
    """Block upper-triangular automorphism of X⊕Y and its diagonal blocks."""
    A, Ai = _auto(r1, cfg, rng, split)
    C, Ci = _auto(r2, cfg, rng, split)
    ring = cfg.ring
    Bm = Matrix.zero(ring, r1, r2) if split else random_matrix(r1, r2, cfg, rng)
    T = block_matrix(ring, [r1, r2], [r1, r2], [[A, Bm], [0, C]])
    Ti = block_matrix(ring, [r1, r2], [r1, r2], [[Ai, -(Ai @ Bm @ Ci)], [0, Ci]])
    return (T, Ti), (A, Ai), (C, Ci)


def _assemble(ring: BaseRing, ranks: dict, base_edges: dict, theta1: dict, theta2: dict) -> ThreeByThree:
    """Conjugate base edges by the two families of automorphisms.

    ``base_edges`` maps ('row'|'col', index, 'f'|'g') to (src_pos, dst_pos, matrix).
    Positions are (r, c) with r = 0 the top row.
    """
    objs = {pos: free_obj(ring, n) for pos, n in ranks.items()}

    def edge(key, i):
        src, dst, m = base_edges[key]
        th = theta1 if i == 1 else theta2
        M = th[dst][0] @ m @ th[src][1]
        return Morphism(objs[src], objs[dst], M)

    def dses(kind, idx):
        fs = [edge((kind, idx, "f"), i) for i in (1, 2)]
        gs = [edge((kind, idx, "g"), i) for i in (1, 2)]
        return DoubleSES(fs[0].src, fs[0].dst, gs[0].dst, fs[0], fs[1], gs[0], gs[1])

    rows = tuple(dses("row", r) for r in range(3))
    cols = tuple(dses("col", c) for c in range(3))
    return ThreeByThree(rows, cols)


def _edges_from_blocks(ring: BaseRing, pos_blocks: dict, specs: dict) -> tuple[dict, dict]:
    """Build base edges from block labels.

    pos_blocks: position -> tuple of block labels; block ranks come from the
    label -> rank map stored under key ``None``.  Each spec entry maps an
    edge key to (src_pos, dst_pos); the base matrix sends each block label to
    the same label and kills labels absent from the target.
    """
    rank_of = pos_blocks[None]
    ranks = {pos: sum(rank_of[l] for l in labels) for pos, labels in pos_blocks.items() if pos is not None}
    edges = {}
    for key, (src, dst) in specs.items():
        sl, dl = pos_blocks[src], pos_blocks[dst]
        grid = [[1 if a == b else 0 for b in sl] for a in dl]
        m = block_matrix(ring, [rank_of[l] for l in dl], [rank_of[l] for l in sl], grid)
        edges[key] = (src, dst, m)
    return ranks, edges


def _std_specs():
    specs = {}
    for r in range(3):
        specs[("row", r, "f")] = ((r, 0), (r, 1))
        specs[("row", r, "g")] = ((r, 1), (r, 2))
    for c in range(3):
        specs[("col", c, "f")] = ((2, c), (1, c))
        specs[("col", c, "g")] = ((1, c), (0, c))
    return specs


def _positions():
    return [(r, c) for r in range(3) for c in range(3)]


def _random_block_ranks(labels: str, cfg: GenConfig, rng: Rng, lo: int = 0) -> dict:
    top = max(1, min(2, cfg.max_rank))
    return {l: rng.randint(lo, top) for l in labels}


def shape_bottom_zero(cfg: GenConfig, rng: Rng | None = None, fixed: Sequence[int] = (0, 2),
                      split: bool = False) -> ThreeByThree:
    """Bottom row zero, vertical isomorphisms; columns in ``fixed`` are identities."""
    rng = _rng(cfg, rng)
    ring = cfg.ring
    rk = _random_block_ranks("XZ", cfg, rng)
    rk["X"] = max(rk["X"], 1) if rk["X"] + rk["Z"] == 0 else rk["X"]
    pb = {None: rk}
    row = [("X",), ("X", "Z"), ("Z",)]
    for c in range(3):
        pb[(0, c)] = row[c]
        pb[(1, c)] = row[c]
        pb[(2, c)] = ()
    ranks, edges = _edges_from_blocks(ring, pb, _std_specs())
    th1, th2 = {}, {}
    for c in range(3):
        n = ranks[(0, c)]
        for r in (0, 1):
            th1[(r, c)] = _auto(n, cfg, rng, split)
            th2[(r, c)] = _auto(n, cfg, rng, split)
        if c in fixed:
            th1[(1, c)] = th1[(0, c)]
            th2[(1, c)] = th2[(0, c)]
        I = Matrix.identity(ring, 0)
        th1[(2, c)] = th2[(2, c)] = (I, I)
    return _assemble(ring, ranks, edges, th1, th2)


def _cons1_base(ring, rk):
    pb = {None: rk,
          (0, 0): (), (0, 1): ("Z",), (0, 2): ("Z",),
          (1, 0): ("X",), (1, 1): ("X", "Y", "Z"), (1, 2): ("Y", "Z"),
          (2, 0): ("X",), (2, 1): ("X", "Y"), (2, 2): ("Y",)}
    return pb, _edges_from_blocks(ring, pb, _std_specs())


def shape_equal_top(cfg: GenConfig, rng: Rng | None = None, single_rows: bool = False,
                    split: bool = False) -> ThreeByThree:
    """Top row 0 -> a = a, left column b' ⇉ b' -> 0 (input of cons1)."""
    rng = _rng(cfg, rng)
    ring = cfg.ring
    rk = _random_block_ranks("XYZ", cfg, rng)
    pb, (ranks, edges) = _cons1_base(ring, rk)
    th1, S = {}, {}
    for pos in _positions():
        th1[pos] = _auto(ranks[pos], cfg, rng, split)
        S[pos] = _auto(ranks[pos], cfg, rng, split)
    th1[(0, 2)] = th1[(0, 1)]
    S[(0, 2)] = S[(0, 1)]
    if single_rows:
        for r, (l1, l2) in ((1, ("X", ("Y", "Z"))), (2, ("X", ("Y",)))):
            r1 = rk[l1]
            r2 = sum(rk[l] for l in l2)
            T, A, C = _triangular(r1, r2, cfg, rng, split)
            S[(r, 0)], S[(r, 1)], S[(r, 2)] = A, T, C
    th2 = {pos: (th1[pos][0] @ S[pos][0], S[pos][1] @ th1[pos][1]) for pos in _positions()}
    return _assemble(ring, ranks, edges, th1, th2)


def shape_corner(cfg: GenConfig, rng: Rng | None = None, split: bool = False) -> ThreeByThree:
    """Input of cons_new: top 0 -> a = a, left column c' = c' -> 0, right column single."""
    rng = _rng(cfg, rng)
    ring = cfg.ring
    rk = _random_block_ranks("XYZ", cfg, rng)
    pb, (ranks, edges) = _cons1_base(ring, rk)
    th1, S = {}, {}
    for pos in _positions():
        th1[pos] = _auto(ranks[pos], cfg, rng, split)
        S[pos] = _auto(ranks[pos], cfg, rng, split)
    th1[(0, 2)] = th1[(0, 1)]
    th1[(2, 0)] = th1[(1, 0)]
    S[(2, 0)] = S[(1, 0)]
    T, A, Dd = _triangular(rk["Y"], rk["Z"], cfg, rng, split)
    S[(2, 2)], S[(1, 2)], S[(0, 2)] = A, T, Dd
    S[(0, 1)] = Dd
    th2 = {pos: (th1[pos][0] @ S[pos][0], S[pos][1] @ th1[pos][1]) for pos in _positions()}
    return _assemble(ring, ranks, edges, th1, th2)


def shape_equal_bottom(cfg: GenConfig, rng: Rng | None = None, split: bool = False,
                       single_middle: bool = False) -> ThreeByThree:
    """Input of cons2: bottom 0 -> c = c, left column 0 -> a' ⇉ a', top row single."""
    rng = _rng(cfg, rng)
    ring = cfg.ring
    rk = _random_block_ranks("XCZ", cfg, rng)
    pb = {None: rk,
          (0, 0): ("X",), (0, 1): ("X", "Z"), (0, 2): ("Z",),
          (1, 0): ("X",), (1, 1): ("X", "C", "Z"), (1, 2): ("C", "Z"),
          (2, 0): (), (2, 1): ("C",), (2, 2): ("C",)}
    ranks, edges = _edges_from_blocks(ring, pb, _std_specs())
    th1, S = {}, {}
    for pos in _positions():
        th1[pos] = _auto(ranks[pos], cfg, rng, split)
        S[pos] = _auto(ranks[pos], cfg, rng, split)
    th1[(2, 2)] = th1[(2, 1)]
    S[(2, 2)] = S[(2, 1)]
    T, A, Dd = _triangular(rk["X"], rk["Z"], cfg, rng, split)
    S[(0, 0)], S[(0, 1)], S[(0, 2)] = A, T, Dd
    if single_middle:
        T, A, Cm = _triangular(rk["X"], rk["C"] + rk["Z"], cfg, rng, split)
        S[(1, 0)], S[(1, 1)], S[(1, 2)] = A, T, Cm
    th2 = {pos: (th1[pos][0] @ S[pos][0], S[pos][1] @ th1[pos][1]) for pos in _positions()}
    return _assemble(ring, ranks, edges, th1, th2)


def shape_witness(cfg: GenConfig, rng: Rng | None = None, split: bool = False) -> ThreeByThree:
    """The witness diagram of a phi-construction on a random double sequence."""
    rng = _rng(cfg, rng)
    if split:
        ring = cfg.ring
        r1 = rng.randint(0, 1)
        r2 = rng.randint(1, 2)
        incl, proj = _split(ring, r1, r2)
        a = free_obj(ring, r1 + r2)
        d = DoubleSES.single(Morphism(free_obj(ring, r1), a, incl), Morphism(a, free_obj(ring, r2), proj))
    else:
        d = random_free_dses(cfg, rng.randint(0, 2), rng.randint(1, 2), rng)
    return phi_auto(d).witness3x3


def shape_oplus(cfg: GenConfig, rng: Rng | None = None, split: bool = False) -> ThreeByThree:
    rng = _rng(cfg, rng)
    r1, r2 = rng.randint(0, 2), rng.randint(0, 2)
    if split:
        ring = cfg.ring
        incl, proj = _split(ring, r1, r2)
        a = free_obj(ring, r1 + r2)
        d = DoubleSES.single(Morphism(free_obj(ring, r1), a, incl), Morphism(a, free_obj(ring, r2), proj))
    else:
        d = random_free_dses(cfg, r1, r2, rng)
    return oplus_schema(d)


def shape_vm_zero(cfg: GenConfig, rng: Rng | None = None, split: bool = False) -> ThreeByThree:
    rng = _rng(cfg, rng)
    return vm_zero_diagram(free_obj(cfg.ring, rng.randint(1, 3)))


STRATEGIES = {
    "a": lambda cfg, rng: shape_bottom_zero(cfg, rng, fixed=(0, 2)),
    "b": lambda cfg, rng: shape_equal_top(cfg, rng),
    "c": lambda cfg, rng: shape_oplus(cfg, rng),
    "d": lambda cfg, rng: shape_witness(cfg, rng),
}


def random_3x3(cfg: GenConfig, strategy: str, rng: Rng | None = None) -> ThreeByThree:
    """Strategies: (a) bottom zero with vertical isomorphisms, (b) equal top row,
    (c) the direct-sum schema, (d) phi-construction witnesses."""
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    return STRATEGIES[strategy](cfg, _rng(cfg, rng))


def random_trivial_dses(cfg: GenConfig, rng: Rng | None = None) -> DoubleSES:
    d = random_dses(cfg, rng)
    return DoubleSES.single(d.f1, d.g1)


# shapes for each construction and each relation-preservation kind
CONSTRUCTION_SHAPES = {
    "cons1": lambda cfg, rng, split=False: shape_equal_top(cfg, rng, split=split),
    "cons2": shape_equal_bottom,
    "cons2_1": shape_oplus,
    "cons_new": shape_corner,
    "cons2_2": shape_witness,
    "cons2_3": lambda cfg, rng, split=False: shape_bottom_zero(cfg, rng, fixed=(), split=split),
}

KIND_SHAPES = {
    "t0_iso": lambda cfg, rng, split=False: shape_bottom_zero(cfg, rng, (0, 2), split),
    "t0_vertical": lambda cfg, rng, split=False: shape_equal_top(cfg, rng, True, split),
    "t0_oplus": shape_oplus,
    "t1_top_equal": lambda cfg, rng, split=False: shape_bottom_zero(cfg, rng, (0, 1), split),
    "t1_oplus": shape_oplus,
    "t1_vertical": lambda cfg, rng, split=False: shape_equal_bottom(cfg, rng, split, True),
    "t1_witness": shape_witness,
    "t2_corner": shape_corner,
    "t2_iso": lambda cfg, rng, split=False: shape_bottom_zero(cfg, rng, (0, 2), split),
    "t2_oplus": shape_oplus,
    "t2_vm_zero": shape_vm_zero,
    "t2_witness": shape_witness,
}
