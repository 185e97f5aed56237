"""JSON workspace format.

A workspace file is a UTF-8 JSON document::

    {
      "ring": "Z" | "GF(p)",
      "objects":   {name: {"generators": "2", "relations": MATRIX}},
      "morphisms": {name: {"src": obj, "dst": obj, "matrix": MATRIX}},
      "dses":      {name: {"aP": obj, "a": obj, "aPP": obj,
                           "f1": mor, "f2": mor, "g1": mor, "g2": mor}},
      "diagrams":  {name: {"objects": [[9 names, top row first]],
                           "rows": [{"f1","f2","g1","g2"} x 3, top first],
                           "cols": [{"f1","f2","g1","g2"} x 3, left first]}}
    }

with MATRIX = {"rows": "2", "cols": "1", "data": ["5", "0"]} (row-major).
All integers are decimal strings.  Columns run bottom to top: in column c,
f maps the bottom object to the middle one and g the middle to the top.

Parsing checks syntax, references and matrix shapes; whether the maps form
exact sequences or commuting diagrams is left to the ``validate`` command.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from ..category import Morphism, PresentedObject
from ..diagrams import DoubleSES, ThreeByThree
from ..linalg import GF, ZZ, BaseRing, Matrix


class ParseError(ValueError):
    pass


MAP_KEYS = ("f1", "f2", "g1", "g2")


@dataclass
class Workspace:
    ring: BaseRing = ZZ
    objects: dict[str, PresentedObject] = field(default_factory=dict)
    morphisms: dict[str, Morphism] = field(default_factory=dict)
    dses: dict[str, DoubleSES] = field(default_factory=dict)
    diagrams: dict[str, ThreeByThree] = field(default_factory=dict)

    # registration with automatic names --------------------------------------

    def _name_for(self, table: dict, value, name: str) -> str:
        for k, v in table.items():
            if v == value:
                return k
        if name in table:
            raise ValueError(f"name {name!r} already used")
        table[name] = value
        return name

    def add_object(self, name: str, x: PresentedObject) -> str:
        if x.ring != self.ring:
            raise ValueError("object over a different ring")
        return self._name_for(self.objects, x, name)

    def add_morphism(self, name: str, m: Morphism) -> str:
        self.add_object(f"{name}.src", m.src)
        self.add_object(f"{name}.dst", m.dst)
        return self._name_for(self.morphisms, m, name)

    def add_dses(self, name: str, d: DoubleSES) -> str:
        if name in self.dses:
            raise ValueError(f"double sequence {name!r} already defined")
        for key, x in zip(("aP", "a", "aPP"), d.objects):
            self.add_object(f"{name}.{key}", x)
        for key in MAP_KEYS:
            self.add_morphism(f"{name}.{key}", getattr(d, key))
        self.dses[name] = d
        return name

    def add_diagram(self, name: str, D: ThreeByThree) -> str:
        if name in self.diagrams:
            raise ValueError(f"diagram {name!r} already defined")
        for r in range(3):
            for c in range(3):
                self.add_object(f"{name}.o{r}{c}", D.obj(r, c))
        for label, d in D.six():
            for key in MAP_KEYS:
                self.add_morphism(f"{name}.{label}.{key}", getattr(d, key))
        self.diagrams[name] = D
        return name


# ---------------------------------------------------------------------------
# serialization

def _ring_name(ring: BaseRing) -> str:
    return "Z" if ring.modulus is None else f"GF({ring.modulus})"


def _matrix_json(M: Matrix) -> dict:
    return {"rows": str(M.rows), "cols": str(M.cols),
            "data": [str(v) for row in M.tolists() for v in row]}


def _lookup(table: dict, value, what: str) -> str:
    for k, v in table.items():
        if v == value:
            return k
    raise ValueError(f"{what} is not registered in the workspace")


def to_json(w: Workspace) -> dict:
    obj = lambda x: _lookup(w.objects, x, "object")
    mor = lambda m: _lookup(w.morphisms, m, "morphism")

    def maps(d: DoubleSES) -> dict:
        return {k: mor(getattr(d, k)) for k in MAP_KEYS}

    out = {
        "ring": _ring_name(w.ring),
        "objects": {n: {"generators": str(x.generators), "relations": _matrix_json(x.relations)}
                    for n, x in w.objects.items()},
        "morphisms": {n: {"src": obj(m.src), "dst": obj(m.dst), "matrix": _matrix_json(m.matrix)}
                      for n, m in w.morphisms.items()},
        "dses": {n: {"aP": obj(d.ap), "a": obj(d.a), "aPP": obj(d.app), **maps(d)}
                 for n, d in w.dses.items()},
        "diagrams": {n: {"objects": [[obj(D.obj(r, c)) for c in range(3)] for r in range(3)],
                         "rows": [maps(d) for d in D.rows],
                         "cols": [maps(d) for d in D.cols]}
                     for n, D in w.diagrams.items()},
    }
    return out


def serialize(w: Workspace) -> str:
    return json.dumps(to_json(w), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# parsing

_INT = re.compile(r"-?[0-9]+\Z")


def _int(v, where: str) -> int:
    if isinstance(v, str) and _INT.match(v):
        return int(v)
    raise ParseError(f"{where}: expected an integer as a decimal string, got {v!r}")


def _dict(v, where: str) -> dict:
    if not isinstance(v, dict):
        raise ParseError(f"{where}: expected an object")
    return v


def _matrix(ring: BaseRing, v, where: str) -> Matrix:
    v = _dict(v, where)
    rows, cols = _int(v.get("rows"), f"{where}.rows"), _int(v.get("cols"), f"{where}.cols")
    data = v.get("data")
    if rows < 0 or cols < 0:
        raise ParseError(f"{where}: negative dimension")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise ParseError(f"{where}: data must list rows*cols = {rows * cols} entries")
    vals = [_int(x, f"{where}.data[{i}]") for i, x in enumerate(data)]
    return Matrix.from_rows(ring, [vals[r * cols:(r + 1) * cols] for r in range(rows)], cols)


def _ring(v) -> BaseRing:
    if v == "Z":
        return ZZ
    m = re.fullmatch(r"(?:GF\(([0-9]+)\)|gf([0-9]+))", v) if isinstance(v, str) else None
    if not m:
        raise ParseError(f"ring: expected 'Z' or 'GF(p)', got {v!r}")
    try:
        return GF(int(m.group(1) or m.group(2)))
    except ValueError as e:
        raise ParseError(f"ring: {e}") from None


def parse_ring(v: str) -> BaseRing:
    return _ring(v)


def from_json(doc) -> Workspace:
    doc = _dict(doc, "document")
    ring = _ring(doc.get("ring"))
    w = Workspace(ring)
    for n, v in _dict(doc.get("objects", {}), "objects").items():
        v = _dict(v, f"objects.{n}")
        g = _int(v.get("generators"), f"objects.{n}.generators")
        R = _matrix(ring, v.get("relations"), f"objects.{n}.relations")
        if R.rows != g:
            raise ParseError(f"objects.{n}: relations must have {g} rows")
        w.objects[n] = PresentedObject(ring, g, R)

    def obj(name, where):
        if name not in w.objects:
            raise ParseError(f"{where}: unknown object {name!r}")
        return w.objects[name]

    def mor(name, where):
        if name not in w.morphisms:
            raise ParseError(f"{where}: unknown morphism {name!r}")
        return w.morphisms[name]

    for n, v in _dict(doc.get("morphisms", {}), "morphisms").items():
        v = _dict(v, f"morphisms.{n}")
        src, dst = obj(v.get("src"), f"morphisms.{n}.src"), obj(v.get("dst"), f"morphisms.{n}.dst")
        M = _matrix(ring, v.get("matrix"), f"morphisms.{n}.matrix")
        if (M.rows, M.cols) != (dst.generators, src.generators):
            raise ParseError(f"morphisms.{n}: matrix must be {dst.generators}x{src.generators}")
        w.morphisms[n] = Morphism(src, dst, M)

    def dses_from(v, where, objs=None) -> DoubleSES:
        v = _dict(v, where)
        if objs is None:
            objs = tuple(obj(v.get(k), f"{where}.{k}") for k in ("aP", "a", "aPP"))
        ms = {k: mor(v.get(k), f"{where}.{k}") for k in MAP_KEYS}
        ap, a, app = objs
        for k in ("f1", "f2"):
            if ms[k].src != ap or ms[k].dst != a:
                raise ParseError(f"{where}.{k}: must run a' -> a")
        for k in ("g1", "g2"):
            if ms[k].src != a or ms[k].dst != app:
                raise ParseError(f"{where}.{k}: must run a -> a''")
        return DoubleSES(ap, a, app, ms["f1"], ms["f2"], ms["g1"], ms["g2"])

    for n, v in _dict(doc.get("dses", {}), "dses").items():
        w.dses[n] = dses_from(v, f"dses.{n}")

    for n, v in _dict(doc.get("diagrams", {}), "diagrams").items():
        where = f"diagrams.{n}"
        v = _dict(v, where)
        grid = v.get("objects")
        if (not isinstance(grid, list) or len(grid) != 3
                or not all(isinstance(r, list) and len(r) == 3 for r in grid)):
            raise ParseError(f"{where}.objects: expected a 3x3 array of names")
        o = [[obj(grid[r][c], f"{where}.objects[{r}][{c}]") for c in range(3)] for r in range(3)]
        rows, cols = v.get("rows"), v.get("cols")
        if not (isinstance(rows, list) and len(rows) == 3 and isinstance(cols, list) and len(cols) == 3):
            raise ParseError(f"{where}: rows and cols must each list three double sequences")
        R = tuple(dses_from(rows[r], f"{where}.rows[{r}]", tuple(o[r])) for r in range(3))
        C = tuple(dses_from(cols[c], f"{where}.cols[{c}]", (o[2][c], o[1][c], o[0][c]))
                  for c in range(3))
        w.diagrams[n] = ThreeByThree(R, C)
    return w


def parse(text: str) -> Workspace:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    return from_json(doc)


def load(path: str) -> Workspace:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
    return parse(text)
