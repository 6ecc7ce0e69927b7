"""Data model and JSON loader for a relative pre-modular category's numbers.

A ModularDatum records everything checkable about such a category at the
numerical level: the grading group with its small symmetric subset, the
translation group with quantum dimensions and the compatibility pairing psi,
and per generic degree the index set, modified dimensions, twists and S'
blocks.

Degrees of the grading group are triples (finite part, alpha, shift): the
optional "generic torus" factor contributes alpha * abar + shift where abar is
a formal generic parameter and shift is an exact rational.  Two degrees are
equal iff all components match.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .matrices import ExactMatrix
from .scalars import CycScalar, ScalarParseError, parse_scalar


class DatumSchemaError(ValueError):
    """Malformed datum document; .path points at the offending field."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class DatumInvariantError(ValueError):
    """A structural invariant of the datum fails; names it and the indices."""

    def __init__(self, violations: list["Violation"]):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


@dataclass(frozen=True)
class Violation:
    invariant: str
    indices: tuple
    message: str

    def __str__(self):
        where = f" at {self.indices}" if self.indices else ""
        return f"[{self.invariant}]{where}: {self.message}"


# ---------------------------------------------------------------------------
# degrees and the grading group
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Degree:
    finite: tuple[int, ...] = ()
    alpha: int = 0
    shift: Fraction = Fraction(0)

    def __str__(self):
        parts = []
        if self.finite:
            parts.append(",".join(str(c) for c in self.finite) + "|")
        body = ""
        if self.alpha == 1:
            body = "a"
        elif self.alpha == -1:
            body = "-a"
        elif self.alpha:
            body = f"{self.alpha}a"
        if self.shift:
            if body:
                body += "+" + str(self.shift) if self.shift > 0 else str(self.shift)
            else:
                body = str(self.shift)
        if not body:
            body = "0"
        return "".join(parts) + body


_DEGREE_KEYS = {"finite", "alpha", "shift"}


def degree_to_json(d: Degree) -> dict:
    out: dict = {}
    if d.finite:
        out["finite"] = list(d.finite)
    if d.alpha:
        out["alpha"] = d.alpha
    if d.shift:
        out["shift"] = str(d.shift)
    return out


def degree_from_json(obj, path: str) -> Degree:
    if not isinstance(obj, dict) or not set(obj) <= _DEGREE_KEYS:
        raise DatumSchemaError(path, f"expected a degree object with keys {sorted(_DEGREE_KEYS)}")
    finite = obj.get("finite", [])
    if not (isinstance(finite, list) and all(isinstance(c, int) for c in finite)):
        raise DatumSchemaError(path + ".finite", "expected a list of integers")
    alpha = obj.get("alpha", 0)
    if not isinstance(alpha, int):
        raise DatumSchemaError(path + ".alpha", "expected an integer")
    try:
        shift = Fraction(obj.get("shift", 0))
    except (ValueError, ZeroDivisionError) as exc:
        raise DatumSchemaError(path + ".shift", f"bad rational: {exc}") from None
    return Degree(tuple(finite), alpha, shift)


def parse_degree(text: str) -> Degree:
    """Parse the compact degree syntax: '0', 'a', '-a', '2a+1/2', '1,0|a'."""
    text = text.strip()
    finite: tuple[int, ...] = ()
    if "|" in text:
        fin, text = text.split("|", 1)
        finite = tuple(int(c) for c in fin.split(",") if c.strip() != "")
    alpha = 0
    shift = Fraction(0)
    if "a" in text:
        head, _, tail = text.partition("a")
        head = head.strip()
        alpha = {"": 1, "-": -1, "+": 1}.get(head, None)
        if alpha is None:
            alpha = int(head)
        tail = tail.strip()
        if tail:
            shift = Fraction(tail.replace(" ", ""))
    elif text not in ("", "0"):
        shift = Fraction(text)
    return Degree(finite, alpha, shift)


@dataclass(frozen=True)
class SmallSubset:
    """The small symmetric subset X, as an explicit list or the torsion rule."""
    kind: str = "list"           # "list" | "torsion"
    elements: tuple[Degree, ...] = ()

    def contains(self, d: Degree) -> bool:
        if self.kind == "torsion":
            return d.alpha == 0
        return d in self.elements


@dataclass(frozen=True)
class GradingSpec:
    cyclic_factors: tuple[int, ...] = ()   # order 0 = infinite cyclic
    has_generic_torus: bool = True
    small: SmallSubset = field(default_factory=SmallSubset)

    def _reduce_finite(self, comps: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(c % o if o else c for c, o in zip(comps, self.cyclic_factors))

    def zero(self) -> Degree:
        return Degree((0,) * len(self.cyclic_factors), 0, Fraction(0))

    def add(self, d1: Degree, d2: Degree) -> Degree:
        fin = self._reduce_finite(tuple(a + b for a, b in zip(d1.finite, d2.finite)))
        return Degree(fin, d1.alpha + d2.alpha, d1.shift + d2.shift)

    def negate(self, d: Degree) -> Degree:
        fin = self._reduce_finite(tuple(-c for c in d.finite))
        return Degree(fin, -d.alpha, -d.shift)

    def is_generic(self, d: Degree) -> bool:
        return not self.small.contains(d)

    def validate(self) -> list[Violation]:
        out = []
        if self.small.kind == "list":
            for d in self.small.elements:
                if self.negate(d) not in self.small.elements:
                    out.append(Violation(
                        "small-subset-symmetric", (str(d),),
                        f"X must satisfy X = -X but -({d}) is missing"))
        return out


# ---------------------------------------------------------------------------
# translation group
# ---------------------------------------------------------------------------

ZElem = tuple[int, ...]


@dataclass(frozen=True)
class TranslationSpec:
    cyclic_factors: tuple[int, ...] = ()
    qdim_generators: tuple[CycScalar, ...] | None = None
    qdim_table: tuple[tuple[ZElem, CycScalar], ...] = ()
    psi: tuple[tuple[Degree, ZElem, CycScalar], ...] = ()
    no_self_extension: bool | None = None

    def reduce(self, z: ZElem) -> ZElem:
        return tuple(c % o if o else c for c, o in zip(z, self.cyclic_factors))

    def zadd(self, z1: ZElem, z2: ZElem) -> ZElem:
        return self.reduce(tuple(a + b for a, b in zip(z1, z2)))

    def zero_elem(self) -> ZElem:
        return (0,) * len(self.cyclic_factors)

    def quantum_dimension(self, z: ZElem, conductor: int) -> CycScalar | None:
        z = self.reduce(z)
        for elem, val in self.qdim_table:
            if elem == z:
                return val
        return self.quantum_dimension_from_generators(z, conductor)

    def psi_value(self, g: Degree, z: ZElem) -> CycScalar | None:
        z = self.reduce(z)
        for deg, elem, val in self.psi:
            if deg == g and elem == z:
                return val
        return None

    def validate(self, conductor: int, grading: GradingSpec) -> list[Violation]:
        out = []
        one = CycScalar.one(conductor)
        seen: dict[ZElem, CycScalar] = {}
        for z, val in self.qdim_table:
            seen[self.reduce(z)] = val
            if val != one and val != CycScalar.rational(-1, conductor):
                out.append(Violation(
                    "free-realisation-quantum-dimension", (z,),
                    f"quantum dimension of sigma{z} must be +1 or -1, got {val}"))
        zero = self.zero_elem()
        if zero in seen and seen[zero] != one:
            out.append(Violation(
                "free-realisation-quantum-dimension", (zero,),
                "quantum dimension of sigma(0) must be 1"))
        if self.qdim_generators is not None:
            for i, val in enumerate(self.qdim_generators):
                if val != one and val != CycScalar.rational(-1, conductor):
                    out.append(Violation(
                        "free-realisation-quantum-dimension", ("generator", i),
                        f"generator quantum dimension must be +1 or -1, got {val}"))
            for z, val in self.qdim_table:
                hom = self.quantum_dimension_from_generators(z, conductor)
                if hom is not None and hom != val:
                    out.append(Violation(
                        "free-realisation-quantum-dimension", (z,),
                        f"table value {val} conflicts with generator product {hom}"))
        # psi bilinearity on every derivable triple
        by_degree: dict[Degree, dict[ZElem, CycScalar]] = {}
        for deg, z, val in self.psi:
            if val.is_zero:
                out.append(Violation("psi-nonzero", (str(deg), z), "psi values must be nonzero"))
            by_degree.setdefault(deg, {})[self.reduce(z)] = val
        for deg, table in by_degree.items():
            elems = sorted(table)
            for z1 in elems:
                for z2 in elems:
                    z12 = self.zadd(z1, z2)
                    if z12 in table and table[z12] != table[z1] * table[z2]:
                        out.append(Violation(
                            "psi-bilinear", (str(deg), z1, z2),
                            f"psi({deg},{z1}+{z2}) != psi({deg},{z1})*psi({deg},{z2})"))
        degs = sorted(by_degree, key=str)
        for g1 in degs:
            for g2 in degs:
                g12 = grading.add(g1, g2)
                if g12 not in by_degree:
                    continue
                for z in by_degree[g12]:
                    if z in by_degree[g1] and z in by_degree[g2]:
                        if by_degree[g12][z] != by_degree[g1][z] * by_degree[g2][z]:
                            out.append(Violation(
                                "psi-bilinear", (str(g1), str(g2), z),
                                f"psi({g12},{z}) != psi({g1},{z})*psi({g2},{z})"))
        return out

    def quantum_dimension_from_generators(self, z: ZElem, conductor: int) -> CycScalar | None:
        if self.qdim_generators is None:
            return None
        out = CycScalar.one(conductor)
        for gen_val, c in zip(self.qdim_generators, self.reduce(z)):
            out = out * gen_val ** c
        return out


# ---------------------------------------------------------------------------
# the datum proper
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SBlock:
    row_degree: Degree
    col_degree: Degree
    matrix: ExactMatrix
    row_labels: tuple[str, ...] = ()
    col_labels: tuple[str, ...] = ()


@dataclass(frozen=True)
class ModularDatum:
    conductor: int
    grading: GradingSpec
    translation: TranslationSpec
    degrees: tuple[Degree, ...]
    index_sets: dict[Degree, tuple[str, ...]]
    dims: dict[Degree, tuple[CycScalar, ...]]
    twists: dict[Degree, tuple[CycScalar, ...]]
    sprime: tuple[SBlock, ...]
    orbit_count: int | None = None
    dual_involution: dict[Degree, tuple[int, ...]] = field(default_factory=dict)
    fusion: tuple = ()
    extra: dict = field(default_factory=dict)

    def block(self, g: Degree, h: Degree) -> SBlock | None:
        for b in self.sprime:
            if b.row_degree == g and b.col_degree == h:
                return b
        return None

    def negate(self, g: Degree) -> Degree:
        return self.grading.negate(g)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def validate_datum(datum: ModularDatum) -> list[Violation]:
    out: list[Violation] = []
    out.extend(datum.grading.validate())
    out.extend(datum.translation.validate(datum.conductor, datum.grading))
    for g in datum.degrees:
        labels = datum.index_sets.get(g)
        if labels is None:
            out.append(Violation("index-set-present", (str(g),),
                                 "listed degree has no index set"))
            continue
        for name, table in (("dims", datum.dims), ("twists", datum.twists)):
            vals = table.get(g)
            if vals is None:
                out.append(Violation(f"{name}-present", (str(g),),
                                     f"listed degree has no {name}"))
                continue
            if len(vals) != len(labels):
                out.append(Violation(f"{name}-aligned", (str(g),),
                                     f"{name} length {len(vals)} != index set size {len(labels)}"))
        for i, d in enumerate(datum.dims.get(g, ())):
            if d.is_zero:
                out.append(Violation("dims-nonzero", (str(g), labels[i] if i < len(labels) else i),
                                     "modified dimension must be nonzero"))
        for i, t in enumerate(datum.twists.get(g, ())):
            if t.try_inverse() is None:
                out.append(Violation("twists-invertible", (str(g), labels[i] if i < len(labels) else i),
                                     f"twist {t} is not invertible in the scalar ring"))
    for bi, b in enumerate(datum.sprime):
        if b.row_degree in datum.index_sets and b.matrix.rows != len(datum.index_sets[b.row_degree]):
            out.append(Violation("block-shape", (bi, str(b.row_degree)),
                                 "block row count does not match the row degree's index set"))
        if b.col_degree in datum.index_sets and b.matrix.cols != len(datum.index_sets[b.col_degree]):
            out.append(Violation("block-shape", (bi, str(b.col_degree)),
                                 "block column count does not match the column degree's index set"))
        if b.row_degree == b.col_degree and b.col_degree in datum.dims:
            s = b.matrix.scale_columns(list(datum.dims[b.col_degree]))
            if not s.is_symmetric():
                bad = next((i, j) for i in range(s.rows) for j in range(s.cols)
                           if s[i, j] != s[j, i])
                out.append(Violation("modified-S-symmetric", (str(b.row_degree),) + bad,
                                     "the modified S-matrix S_g must be symmetric"))
    for g, inv in datum.dual_involution.items():
        if g in datum.index_sets and sorted(inv) != list(range(len(datum.index_sets[g]))):
            out.append(Violation("dual-involution", (str(g),),
                                 "dual involution must be a permutation of the index set"))
    return out


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------

SCHEMA_ID = "relmod-datum/1"


def _need(obj: dict, key: str, path: str):
    if key not in obj:
        raise DatumSchemaError(f"{path}.{key}", "missing required field")
    return obj[key]


def _scalar(text, conductor: int, path: str) -> CycScalar:
    if not isinstance(text, str):
        raise DatumSchemaError(path, f"expected a scalar string, got {type(text).__name__}")
    try:
        return parse_scalar(text, conductor)
    except ScalarParseError as exc:
        raise DatumSchemaError(path, str(exc)) from None


def loads_datum(doc: dict) -> ModularDatum:
    if not isinstance(doc, dict):
        raise DatumSchemaError("$", "document must be a JSON object")
    if doc.get("schema") != SCHEMA_ID:
        raise DatumSchemaError("schema", f"expected {SCHEMA_ID!r}, got {doc.get('schema')!r}")
    conductor = _need(doc, "conductor", "$")
    if not isinstance(conductor, int) or conductor < 1:
        raise DatumSchemaError("conductor", "expected a positive integer")

    gobj = _need(doc, "grading", "$")
    small_obj = gobj.get("small_symmetric", {"kind": "torsion"})
    kind = small_obj.get("kind")
    if kind not in ("list", "torsion"):
        raise DatumSchemaError("grading.small_symmetric.kind", "expected 'list' or 'torsion'")
    elements = tuple(
        degree_from_json(e, f"grading.small_symmetric.elements[{i}]")
        for i, e in enumerate(small_obj.get("elements", [])))
    grading = GradingSpec(
        cyclic_factors=tuple(gobj.get("cyclic_factors", [])),
        has_generic_torus=bool(gobj.get("has_generic_torus", True)),
        small=SmallSubset(kind, elements))

    tobj = _need(doc, "translation", "$")
    factors = tuple(tobj.get("cyclic_factors", []))
    qobj = tobj.get("quantum_dimension", {})
    gens = qobj.get("generator_values")
    if gens is not None:
        if len(gens) != len(factors):
            raise DatumSchemaError("translation.quantum_dimension.generator_values",
                                   "one value per cyclic factor required")
        gens = tuple(_scalar(v, conductor, f"translation.quantum_dimension.generator_values[{i}]")
                     for i, v in enumerate(gens))
    table = []
    for i, row in enumerate(qobj.get("table", [])):
        elem = tuple(_need(row, "element", f"translation.quantum_dimension.table[{i}]"))
        val = _scalar(_need(row, "value", f"translation.quantum_dimension.table[{i}]"),
                      conductor, f"translation.quantum_dimension.table[{i}].value")
        table.append((elem, val))
    psi = []
    for i, row in enumerate(tobj.get("psi", [])):
        deg = degree_from_json(_need(row, "degree", f"translation.psi[{i}]"),
                               f"translation.psi[{i}].degree")
        elem = tuple(_need(row, "element", f"translation.psi[{i}]"))
        val = _scalar(_need(row, "value", f"translation.psi[{i}]"),
                      conductor, f"translation.psi[{i}].value")
        psi.append((deg, elem, val))
    translation = TranslationSpec(
        cyclic_factors=factors, qdim_generators=gens, qdim_table=tuple(table),
        psi=tuple(psi), no_self_extension=tobj.get("no_self_extension"))

    degrees = tuple(degree_from_json(d, f"degrees[{i}]")
                    for i, d in enumerate(_need(doc, "degrees", "$")))

    index_sets: dict[Degree, tuple[str, ...]] = {}
    dims: dict[Degree, tuple[CycScalar, ...]] = {}
    twists: dict[Degree, tuple[CycScalar, ...]] = {}
    for key, labels in _need(doc, "index_sets", "$").items():
        try:
            g = degrees[int(key)]
        except (ValueError, IndexError):
            raise DatumSchemaError(f"index_sets.{key}", "key must index into 'degrees'") from None
        index_sets[g] = tuple(str(x) for x in labels)
    for name, store in (("dims", dims), ("twists", twists)):
        for key, vals in doc.get(name, {}).items():
            try:
                g = degrees[int(key)]
            except (ValueError, IndexError):
                raise DatumSchemaError(f"{name}.{key}", "key must index into 'degrees'") from None
            store[g] = tuple(_scalar(v, conductor, f"{name}.{key}[{i}]")
                             for i, v in enumerate(vals))

    blocks = []
    for i, bobj in enumerate(doc.get("sprime", [])):
        rd = degree_from_json(_need(bobj, "row_degree", f"sprime[{i}]"), f"sprime[{i}].row_degree")
        cd = degree_from_json(_need(bobj, "col_degree", f"sprime[{i}]"), f"sprime[{i}].col_degree")
        ent = _need(bobj, "entries", f"sprime[{i}]")
        if not ent or not isinstance(ent, list):
            raise DatumSchemaError(f"sprime[{i}].entries", "expected a non-empty row list")
        rows = [[_scalar(v, conductor, f"sprime[{i}].entries[{r}][{c}]")
                 for c, v in enumerate(row)] for r, row in enumerate(ent)]
        blocks.append(SBlock(rd, cd, ExactMatrix.from_rows(rows, conductor),
                             tuple(bobj.get("row_labels", [])), tuple(bobj.get("col_labels", []))))

    dual = {}
    for key, perm in doc.get("dual_involution", {}).items():
        try:
            g = degrees[int(key)]
        except (ValueError, IndexError):
            raise DatumSchemaError(f"dual_involution.{key}", "key must index into 'degrees'") from None
        dual[g] = tuple(int(p) for p in perm)

    orbit_count = doc.get("orbit_count")
    if orbit_count is not None and (not isinstance(orbit_count, int) or orbit_count < 0):
        raise DatumSchemaError("orbit_count", "expected a non-negative integer")

    datum = ModularDatum(
        conductor=conductor, grading=grading, translation=translation,
        degrees=degrees, index_sets=index_sets, dims=dims, twists=twists,
        sprime=tuple(blocks), orbit_count=orbit_count, dual_involution=dual,
        fusion=tuple(doc.get("fusion", [])), extra=doc.get("extra", {}))
    violations = validate_datum(datum)
    if violations:
        raise DatumInvariantError(violations)
    return datum


def load_datum(path: str) -> ModularDatum:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DatumSchemaError("$", f"not valid JSON: {exc}") from None
    return loads_datum(doc)


def dumps_datum(datum: ModularDatum) -> dict:
    deg_index = {g: i for i, g in enumerate(datum.degrees)}
    doc: dict = {
        "schema": SCHEMA_ID,
        "conductor": datum.conductor,
        "grading": {
            "cyclic_factors": list(datum.grading.cyclic_factors),
            "has_generic_torus": datum.grading.has_generic_torus,
            "small_symmetric": {
                "kind": datum.grading.small.kind,
                "elements": [degree_to_json(d) for d in datum.grading.small.elements],
            },
        },
        "translation": {
            "cyclic_factors": list(datum.translation.cyclic_factors),
            "quantum_dimension": {},
            "psi": [{"degree": degree_to_json(d), "element": list(z), "value": str(v)}
                    for d, z, v in datum.translation.psi],
        },
        "degrees": [degree_to_json(d) for d in datum.degrees],
        "index_sets": {str(deg_index[g]): list(v) for g, v in datum.index_sets.items()},
        "dims": {str(deg_index[g]): [str(x) for x in v] for g, v in datum.dims.items()},
        "twists": {str(deg_index[g]): [str(x) for x in v] for g, v in datum.twists.items()},
        "sprime": [
            {
                "row_degree": degree_to_json(b.row_degree),
                "col_degree": degree_to_json(b.col_degree),
                "entries": [[str(e) for e in b.matrix.row(i)] for i in range(b.matrix.rows)],
                **({"row_labels": list(b.row_labels)} if b.row_labels else {}),
                **({"col_labels": list(b.col_labels)} if b.col_labels else {}),
            }
            for b in datum.sprime
        ],
    }
    if datum.translation.qdim_generators is not None:
        doc["translation"]["quantum_dimension"]["generator_values"] = [
            str(v) for v in datum.translation.qdim_generators]
    if datum.translation.qdim_table:
        doc["translation"]["quantum_dimension"]["table"] = [
            {"element": list(z), "value": str(v)} for z, v in datum.translation.qdim_table]
    if datum.translation.no_self_extension is not None:
        doc["translation"]["no_self_extension"] = datum.translation.no_self_extension
    if datum.orbit_count is not None:
        doc["orbit_count"] = datum.orbit_count
    if datum.dual_involution:
        doc["dual_involution"] = {str(deg_index[g]): list(p)
                                  for g, p in datum.dual_involution.items()}
    if datum.fusion:
        doc["fusion"] = list(datum.fusion)
    if datum.extra:
        doc["extra"] = datum.extra
    return doc


def save_datum(datum: ModularDatum, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(dumps_datum(datum), fh, indent=2, sort_keys=True)
        fh.write("\n")


# ---------------------------------------------------------------------------
# derived data
# ---------------------------------------------------------------------------

def modified_S(datum: ModularDatum, g: Degree, h: Degree | None = None) -> ExactMatrix:
    """The modified S-matrix S_{g,h}: the S' block right-scaled by diag(d(V_j))."""
    if h is None:
        h = g
    if g not in datum.degrees and h not in datum.degrees:
        raise KeyError(f"unknown degree {g}")
    b = datum.block(g, h)
    if b is None:
        raise KeyError(f"no S' block for degrees ({g}, {h})")
    if h not in datum.dims:
        raise KeyError(f"no modified dimensions recorded for column degree {h}")
    return b.matrix.scale_columns(list(datum.dims[h]))


def kirby_color(datum: ModularDatum, g: Degree) -> list[tuple[str, CycScalar]]:
    """Formal combination sum_i d(V_i) V_i for a generic degree g."""
    if not datum.grading.is_generic(g):
        raise ValueError(f"non-generic degree {g}: the Kirby color requires g outside X")
    if g not in datum.index_sets or g not in datum.dims:
        raise KeyError(f"degree {g} has no recorded index set / dims")
    return list(zip(datum.index_sets[g], datum.dims[g]))
