"""JSON pipeline documents: define modules and maps, run steps, emit results."""
from __future__ import annotations

import re

import jsonschema

from . import catalogue as cat
from .backends import ring_from_json
from .errors import FpmodError, UnsupportedBackend
from .functors import (GENERAL, LEFT_EXACT_CONTRAVARIANT, RIGHT_EXACT_COVARIANT,
                       ComplexMorphism, ComplexRec, DerivedFunctor, Functor, compose_functors,
                       functor_map, functor_obj)
from .homology import ShortExactSeq, long_exact_homology_seq, verify_exactness
from .presentation import (MorphismRec, Presentation, better_generators,
                           canonical_decomposition, morphism_is_valid, morphisms_equal,
                           presentations_equal)
from .procedures import leftinverse, preimage, resolution_of_module, right_divide
from .ring import Matrix, basis_of_module, decide_zero, syzygies_generators

_MATRIX = {"type": "array", "items": {"type": "array", "items": {"type": ["string", "integer"]}}}
_REF = {"oneOf": [{"type": "string"}, {"type": "object"}]}

SCHEMA = {
    "type": "object",
    "required": ["ring"],
    "additionalProperties": False,
    "properties": {
        "ring": {"type": "object", "required": ["type"]},
        "defs": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "minProperties": 1,
                "maxProperties": 1,
                "properties": {
                    "module": {"type": "object", "required": ["gens"],
                               "properties": {"gens": {"type": "integer", "minimum": 0},
                                              "relations": _MATRIX}},
                    "cyclic": {"type": "array", "items": {"type": ["string", "integer"]}},
                    "free": {"type": "integer", "minimum": 0},
                    "matrix": {"type": "object", "required": ["rows"],
                               "properties": {"rows": _MATRIX,
                                              "cols": {"type": "integer", "minimum": 0}}},
                    "morphism": {"type": "object", "required": ["source", "target", "matrix"],
                                 "properties": {"source": _REF, "target": _REF,
                                                "matrix": _MATRIX}},
                    "complex": {"type": "array", "items": {"type": "string"}, "minItems": 1},
                    "chain_map": {"type": "object", "required": ["source", "target",
                                                                 "components"],
                                  "properties": {"source": {"type": "string"},
                                                 "target": {"type": "string"},
                                                 "components": {"type": "array"}}},
                },
                "additionalProperties": False,
            },
        },
        "steps": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["op"],
                "properties": {
                    "op": {"enum": ["functor_obj", "functor_map", "canonical_decomposition",
                                    "better_generators", "resolution", "right_divide",
                                    "decide_zero", "syzygies", "basis", "preimage",
                                    "leftinverse", "morphism_is_valid", "morphisms_equal",
                                    "presentations_equal", "long_exact_sequence",
                                    "verify_exactness"]},
                    "functor": {"type": "string"},
                    "args": {"type": "array"},
                    "bind": {"type": "string"},
                    "slot": {"type": "integer", "minimum": 0},
                    "length": {"type": "integer", "minimum": 0},
                    "top_degree": {"type": "integer", "minimum": 0},
                },
            },
        },
        "outputs": {"type": "array", "items": {"type": "string"}},
    },
}


_FACETS = {"type": "array", "minItems": 1,
           "items": {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 0}}}

FACETS_SCHEMA = {
    "oneOf": [_FACETS, {"type": "object", "required": ["facets"], "additionalProperties": False,
                        "properties": {"facets": _FACETS}}],
}


class SchemaError(FpmodError):
    def __init__(self, message, pointer):
        super().__init__(message)
        self.pointer = pointer


class StepError(FpmodError):
    def __init__(self, index, error):
        super().__init__(f"step {index}: {error}")
        self.index = index
        self.error = error


class Unsolvable:
    """Marker for systems without solution; emitted as data."""

    def __repr__(self):
        return "Unsolvable()"


UNSOLVABLE = Unsolvable()


def validate(doc, schema=SCHEMA):
    errors = sorted(jsonschema.Draft7Validator(schema).iter_errors(doc),
                    key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        pointer = "/" + "/".join(str(p) for p in e.absolute_path)
        raise SchemaError(e.message, pointer)


def facets_of(doc) -> list:
    """Facet list from a simplicial complex document (bare list or ``{"facets": ...}``)."""
    validate(doc, FACETS_SCHEMA)
    return doc["facets"] if isinstance(doc, dict) else doc


# -- functor expressions ----------------------------------------------------------

_TOK = re.compile(r"\s*(?:([A-Za-z_][A-Za-z_0-9]*)|(\d+)|([(),]))")


def parse_functor(text: str) -> Functor:
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOK.match(text, pos)
        if not m:
            raise ValueError(f"bad functor expression {text!r} at {pos}")
        toks.append(m.group(1) or m.group(2) or m.group(3))
        pos = m.end()
    out, rest = _parse_expr(toks, 0, text)
    if rest != len(toks):
        raise ValueError(f"trailing input in functor expression {text!r}")
    return out


def _expect(toks, i, tok, text):
    if i >= len(toks) or toks[i] != tok:
        raise ValueError(f"expected {tok!r} in functor expression {text!r}")
    return i + 1


def _int(toks, i, text):
    if i >= len(toks) or not toks[i].isdigit():
        raise ValueError(f"expected an integer in functor expression {text!r}")
    return int(toks[i]), i + 1


_FLAVORS = {"general": GENERAL, "cheap": None, "right_exact": RIGHT_EXACT_COVARIANT,
            "left_exact": LEFT_EXACT_CONTRAVARIANT}


def _parse_expr(toks, i, text):
    if i >= len(toks):
        raise ValueError(f"incomplete functor expression {text!r}")
    head = toks[i]
    i += 1
    if head in cat.BASIC or head == "Id":
        return (cat.IDENTITY if head == "Id" else cat.BASIC[head]), i
    if head in ("Ext", "Tor"):
        i = _expect(toks, i, "(", text)
        q, i = _int(toks, i, text)
        i = _expect(toks, i, ")", text)
        return (cat.ext(q) if head == "Ext" else cat.tor(q)), i
    if head in ("LDerived", "RDerived"):
        i = _expect(toks, i, "(", text)
        q, i = _int(toks, i, text)
        i = _expect(toks, i, ",", text)
        inner, i = _parse_expr(toks, i, text)
        slot, flavor = 0, GENERAL
        while i < len(toks) and toks[i] == ",":
            i += 1
            if toks[i].isdigit():
                slot, i = _int(toks, i, text)
            elif toks[i] in _FLAVORS:
                flavor = _FLAVORS[toks[i]]
                if flavor is None:
                    flavor = (RIGHT_EXACT_COVARIANT if head == "LDerived"
                              else LEFT_EXACT_CONTRAVARIANT)
                i += 1
            else:
                raise ValueError(f"unexpected {toks[i]!r} in functor expression {text!r}")
        i = _expect(toks, i, ")", text)
        want = 1 if head == "LDerived" else -1
        if inner.variance[slot] != want:
            raise ValueError(f"{head} needs a {'co' if want > 0 else 'contra'}variant slot")
        return DerivedFunctor(inner, slot, q, flavor), i
    if head == "Compose":
        i = _expect(toks, i, "(", text)
        outer, i = _parse_expr(toks, i, text)
        i = _expect(toks, i, ",", text)
        slot, i = _int(toks, i, text)
        i = _expect(toks, i, ",", text)
        inner, i = _parse_expr(toks, i, text)
        i = _expect(toks, i, ")", text)
        return compose_functors(outer, slot, inner), i
    raise ValueError(f"unknown functor {head!r}")


# -- execution ---------------------------------------------------------------------

class Pipeline:
    def __init__(self, doc: dict):
        validate(doc)
        self.doc = doc
        self.ring = ring_from_json(doc["ring"])
        self.env: dict = {}
        self.unsolvable = False
        for name, d in doc.get("defs", {}).items():
            try:
                self.env[name] = self._define(d)
            except (FpmodError, ValueError, KeyError, TypeError) as exc:
                raise FpmodError(f"definition {name!r}: {exc}") from exc

    def _matrix(self, rows, cols=None):
        return Matrix.from_json(self.ring, rows, cols)

    def _module(self, ref):
        if isinstance(ref, str):
            obj = self.env[ref]
            if not isinstance(obj, Presentation):
                raise TypeError(f"{ref!r} is not a module")
            return obj
        return self._define(ref)

    def _define(self, d):
        ring = self.ring
        if "module" in d:
            return Presentation.from_json(ring, d["module"])
        if "cyclic" in d:
            return Presentation.cyclic(ring, *[ring.parse(x) if isinstance(x, str)
                                               else ring.coerce(x) for x in d["cyclic"]])
        if "free" in d:
            return Presentation.free(ring, d["free"])
        if "matrix" in d:
            return self._matrix(d["matrix"]["rows"], d["matrix"].get("cols"))
        if "morphism" in d:
            m = d["morphism"]
            src, tgt = self._module(m["source"]), self._module(m["target"])
            return MorphismRec(src, tgt, self._matrix(m["matrix"], tgt.gens))
        if "complex" in d:
            return ComplexRec.from_maps(*[self.env[n] for n in d["complex"]])
        if "chain_map" in d:
            c = d["chain_map"]
            comps = tuple(None if x is None else self.env[x] for x in c["components"])
            return ComplexMorphism(self.env[c["source"]], self.env[c["target"]], comps)
        raise ValueError(f"unknown definition {sorted(d)}")

    def _arg(self, a):
        if isinstance(a, str):
            if a not in self.env:
                raise KeyError(f"unknown name {a!r}")
            return self.env[a]
        if isinstance(a, list):
            return [self._arg(x) for x in a]
        if isinstance(a, dict):
            return self._define(a)
        raise TypeError(f"bad argument {a!r}")

    @staticmethod
    def _fit(f: Functor, args):
        # morphisms or lists of morphisms stand for complexes in complex slots
        out = []
        for kind, a in zip(f.kinds, args):
            if kind != "module" and isinstance(a, MorphismRec):
                a = ComplexRec.from_maps(a)
            elif kind != "module" and isinstance(a, list):
                a = ComplexRec.from_maps(*a)
            out.append(a)
        return tuple(out)

    def run(self) -> dict:
        for idx, step in enumerate(self.doc.get("steps", [])):
            try:
                value = self._step(step)
            except (FpmodError, ValueError, KeyError, TypeError, IndexError) as exc:
                raise StepError(idx, exc) from exc
            if value is UNSOLVABLE:
                self.unsolvable = True
            if "bind" in step:
                self.env[step["bind"]] = value
        outputs = {}
        for name in self.doc.get("outputs", []):
            if name not in self.env:
                raise FpmodError(f"output {name!r} was never bound")
            outputs[name] = to_json(self.env[name])
        return outputs

    def _step(self, step):
        op = step["op"]
        args = [self._arg(a) for a in step.get("args", [])]
        if op in ("functor_obj", "functor_map", "long_exact_sequence"):
            if "functor" not in step:
                raise ValueError(f"{op} needs a functor expression")
            f = parse_functor(step["functor"])
        if op == "functor_obj":
            return functor_obj(f, self._fit(f, args))
        if op == "functor_map":
            slot = step.get("slot", 0)
            phi, fixed = args[0], args[1:]
            if f.kinds[slot] != "module" and isinstance(phi, MorphismRec):
                raise TypeError("complex slots need a chain_map argument")
            return functor_map(f, phi, fixed, slot)
        if op == "canonical_decomposition":
            return canonical_decomposition(args[0])
        if op == "better_generators":
            return better_generators(args[0])[0]
        if op == "resolution":
            return resolution_of_module(args[0], step.get("length", 1))
        if op == "right_divide":
            x = right_divide(*args[:3])
            return UNSOLVABLE if x is None else x
        if op == "preimage":
            x = preimage(args[0], args[1])
            return UNSOLVABLE if x is None else x
        if op == "leftinverse":
            x = leftinverse(args[0])
            return UNSOLVABLE if x is None else x
        if op == "decide_zero":
            return decide_zero(args[0], args[1]).reduced
        if op == "syzygies":
            return syzygies_generators(args[0], args[1] if len(args) > 1 else None)
        if op == "basis":
            return basis_of_module(args[0]).basis
        if op == "morphism_is_valid":
            return morphism_is_valid(args[0])
        if op == "morphisms_equal":
            return morphisms_equal(args[0], args[1])
        if op == "presentations_equal":
            return presentations_equal(args[0], args[1])
        if op == "long_exact_sequence":
            s = ShortExactSeq(args[0], args[1])
            return long_exact_homology_seq(f, s, step.get("top_degree", 1), args[2:],
                                           step.get("slot", 0))
        if op == "verify_exactness":
            c = args[0]
            if isinstance(c, list):
                c = ComplexRec.from_maps(*c)
            return verify_exactness(c)
        raise ValueError(f"unknown op {op!r}")


def to_json(value):
    from .homology import ExactnessReport, LongExactSeq
    from .presentation import Decomposition
    from .procedures import ResolutionRec

    if value is UNSOLVABLE:
        return {"unsolvable": True}
    if isinstance(value, bool):
        return value
    if isinstance(value, Decomposition):
        return value.to_json()
    if isinstance(value, Presentation):
        out = value.to_json()
        try:
            out["decomposition"] = canonical_decomposition(value).to_json()
        except UnsupportedBackend:
            pass
        return out
    if isinstance(value, MorphismRec):
        return {"source": to_json(value.source), "target": to_json(value.target),
                "matrix": value.matrix.to_json()}
    if isinstance(value, Matrix):
        return value.to_json()
    if isinstance(value, ResolutionRec):
        return [m.to_json() for m in value.maps]
    if isinstance(value, LongExactSeq):
        return value.to_json()
    if isinstance(value, list) and all(isinstance(v, ExactnessReport) for v in value):
        return [v.to_json() for v in value]
    if isinstance(value, ComplexRec):
        return {"objects": [to_json(o) for o in value.objects],
                "maps": [m.matrix.to_json() for m in value.maps]}
    raise TypeError(f"cannot serialize {type(value).__name__}")


def run_pipeline(doc: dict) -> tuple[dict, int]:
    """Run a document; returns ``(outputs, exit code)``."""
    p = Pipeline(doc)
    outputs = p.run()
    return outputs, (2 if p.unsolvable else 0)
