"""JSON persistence for named rings, maps, elements, matrices, rows, forms, fields and cycles.

Polynomials are stored as term lists ``[exponents, numerator, denominator]``
ordered by decreasing monomial in the ring's order; keys are sorted, so a
save-load-save cycle reproduces the file byte for byte.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction

from filelock import FileLock

from .cycles import FramedCycle
from .errors import SchemaVersionError, UnimodError
from .forms import FramedAlternatingForm, FramedModule
from .linalg import MatrixOverRing, UnimodularRow
from .poly import Polynomial
from .rings import PresentedRing, define_hom
from .witt import Component, PresentedField

SCHEMA_VERSION = 1
TOOL_VERSION = "0.1.0"


class SessionError(UnimodError, KeyError):
    """A dangling reference between session entries."""


@dataclass(eq=False)
class Session:
    rings: dict = field(default_factory=dict)
    homs: dict = field(default_factory=dict)
    elements: dict = field(default_factory=dict)
    matrices: dict = field(default_factory=dict)
    rows: dict = field(default_factory=dict)
    forms: dict = field(default_factory=dict)
    fields: dict = field(default_factory=dict)
    cycles: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=lambda: {"tool_version": TOOL_VERSION, "order": "grevlex"})

    def ring_name(self, ring: PresentedRing) -> str:
        for name, r in sorted(self.rings.items()):
            if r == ring:
                return name
        raise SessionError(f"ring {ring!r} is not registered in the session")

    def add_ring(self, ring: PresentedRing, name: str | None = None) -> str:
        """Register ``ring`` (and any localization bases); returns its name."""
        if ring.base is not None:
            self.add_ring(ring.base)
        try:
            existing = self.ring_name(ring)
        except SessionError:
            existing = None
        if name is None:
            if existing is not None:
                return existing
            k = len(self.rings)
            while f"R{k}" in self.rings:
                k += 1
            name = f"R{k}"
        self.rings[name] = ring
        return name

    def to_json(self) -> dict:
        return _encode(self)

    def __eq__(self, other):
        if not isinstance(other, Session):
            return NotImplemented
        return self.dumps() == other.dumps()

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"


# polynomials

def poly_to_json(p: Polynomial, order: str = "grevlex") -> list:
    return [[list(m), c.numerator, c.denominator] for m, c in p.sorted_terms(order)]


def poly_from_json(data, vars) -> Polynomial:
    terms = {}
    for exps, num, den in data:
        if len(exps) != len(vars):
            raise SessionError("exponent vector length does not match the ring variables")
        terms[tuple(exps)] = Fraction(num, den)
    return Polynomial(vars, terms)


def _ring_to_json(ring: PresentedRing, names: dict) -> dict:
    o = ring.order
    return {
        "vars": list(ring.vars),
        "order": o,
        "relations": [poly_to_json(g, o) for g in ring.gb.generators],
        "inverted": [[poly_to_json(f, o), t] for f, t in ring.inverted],
        "base": names[id(ring.base)] if ring.base is not None else None,
    }


def _ring_from_json(d: dict, rings: dict) -> PresentedRing:
    vars = tuple(d["vars"])
    base = None
    if d.get("base") is not None:
        base = rings[d["base"]]
    rels = [poly_from_json(t, vars) for t in d["relations"]]
    inverted = [(poly_from_json(f, vars), t) for f, t in d["inverted"]]
    return PresentedRing(vars, rels, d["order"], inverted, base=base)


def _mat(M: MatrixOverRing) -> list:
    return [[poly_to_json(a, M.ring.order) for a in row] for row in M.rows]


def _unmat(R: PresentedRing, rows) -> MatrixOverRing:
    return MatrixOverRing(R, [[poly_from_json(a, R.vars) for a in row] for row in rows])


def _encode(s: Session) -> dict:
    names = {}
    # bases first so references resolve on load
    ring_order = sorted(s.rings.items(), key=lambda kv: (_depth(kv[1]), kv[0]))
    for name, r in ring_order:
        names.setdefault(id(r), name)
    for name, r in ring_order:
        if r.base is not None and id(r.base) not in names:
            names[id(r.base)] = s.ring_name(r.base)
    rn = s.ring_name

    def polys(R, ps):
        return [poly_to_json(R._poly(p), R.order) for p in ps]

    out = {
        "schema_version": SCHEMA_VERSION,
        "metadata": dict(s.metadata),
        "rings": {n: dict(_ring_to_json(r, names), depth=_depth(r)) for n, r in s.rings.items()},
        "homs": {n: {"source": rn(h.source), "target": rn(h.target),
                     "images": polys(h.target, h.images)} for n, h in s.homs.items()},
        "elements": {n: {"ring": rn(e.ring), "poly": poly_to_json(e.poly, e.ring.order)}
                     for n, e in s.elements.items()},
        "matrices": {n: {"ring": rn(M.ring), "rows": _mat(M)} for n, M in s.matrices.items()},
        "rows": {n: {"ring": rn(r.ring), "v": polys(r.ring, r.v), "w": polys(r.ring, r.w)}
                 for n, r in s.rows.items()},
        "forms": {n: {"ring": rn(f.ring), "frame": _mat(f.frame), "rank": f.module.rank,
                      "gram": _mat(f.gram), "witness": _mat(f.witness)} for n, f in s.forms.items()},
        "fields": {n: {"ring": rn(F.ring), "prime": polys(F.ring, F.prime), "kind": F.kind,
                       "name": F.name,
                       "constants": [[c, poly_to_json(m, F.ring.order)] for c, m in F.constants]}
                   for n, F in s.fields.items()},
        "cycles": {n: {"ring": rn(c.ring), "components": [
            {"prime": polys(c.ring, comp.prime), "unit": poly_to_json(c.ring._poly(comp.unit), c.ring.order),
             "frame": polys(c.ring, comp.frame), "kind": comp.kind} for comp in c.components]}
            for n, c in s.cycles.items()},
    }
    return out


def _depth(r: PresentedRing) -> int:
    d = 0
    while r.base is not None:
        r, d = r.base, d + 1
    return d


def _decode(doc: dict) -> Session:
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionError(f"unsupported session schema version {version!r} "
                                 f"(this build reads version {SCHEMA_VERSION})")
    s = Session(metadata=dict(doc.get("metadata", {})))
    ring_docs = doc.get("rings", {})
    for name in sorted(ring_docs, key=lambda n: (ring_docs[n].get("depth", 0), n)):
        d = ring_docs[name]
        if d.get("base") is not None and d["base"] not in s.rings:
            raise SessionError(f"ring {name!r} refers to unknown base {d['base']!r}")
        s.rings[name] = _ring_from_json(d, s.rings)

    def ring(ref):
        try:
            return s.rings[ref]
        except KeyError:
            raise SessionError(f"unknown ring reference {ref!r}") from None

    def polys(R, ps):
        return tuple(poly_from_json(p, R.vars) for p in ps)

    for n, d in doc.get("homs", {}).items():
        S, T = ring(d["source"]), ring(d["target"])
        s.homs[n] = define_hom(S, T, list(polys(T, d["images"])))
    for n, d in doc.get("elements", {}).items():
        R = ring(d["ring"])
        s.elements[n] = R(poly_from_json(d["poly"], R.vars))
    for n, d in doc.get("matrices", {}).items():
        R = ring(d["ring"])
        s.matrices[n] = _unmat(R, d["rows"])
    for n, d in doc.get("rows", {}).items():
        R = ring(d["ring"])
        s.rows[n] = UnimodularRow(R, polys(R, d["v"]), polys(R, d["w"]))
    for n, d in doc.get("forms", {}).items():
        R = ring(d["ring"])
        module = FramedModule(R, _unmat(R, d["frame"]), d["rank"])
        s.forms[n] = FramedAlternatingForm(module, _unmat(R, d["gram"]), _unmat(R, d["witness"]))
    for n, d in doc.get("fields", {}).items():
        R = ring(d["ring"])
        consts = [(c, poly_from_json(m, (c,))) for c, m in d["constants"]]
        s.fields[n] = PresentedField(R, polys(R, d["prime"]), d["kind"], consts, name=d.get("name"))
    for n, d in doc.get("cycles", {}).items():
        R = ring(d["ring"])
        comps = tuple(Component(polys(R, c["prime"]), poly_from_json(c["unit"], R.vars),
                                polys(R, c["frame"]), c["kind"]) for c in d["components"])
        s.cycles[n] = FramedCycle(R, comps)
    return s


def loads(text: str) -> Session:
    return _decode(json.loads(text))


def save_session(s: Session, path) -> None:
    """Write ``s`` to ``path`` atomically while holding an advisory lock."""
    path = os.fspath(path)
    text = s.dumps()
    with FileLock(path + ".lock"):
        directory = os.path.dirname(os.path.abspath(path))
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".session-", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(text)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


def load_session(path) -> Session:
    path = os.fspath(path)
    with FileLock(path + ".lock"):
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return loads(text)
