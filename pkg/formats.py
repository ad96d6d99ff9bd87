"""
JSON file formats. Every model validates a file with pydantic and converts
to and from the in-memory objects with ``to_domain`` / ``from_domain``.
"""
import json
import logging
from typing import Any, Dict, List, Literal, Optional, Tuple, Type, TypeVar, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from complexes import PolygonalComplex, SimplicialComplex
from constructions import VoltageAssignment
from cubical import CubeQuotientComplex
from enumeration import CosetTable, Derivation, RSetReport, Witness
from homology import HomologyProfile
from permutations import perm_from_one_based
from presentations import Presentation

logger = logging.getLogger(__name__)

M = TypeVar("M", bound=BaseModel)


class FormatError(ValueError):
    """
    A file that is not valid JSON or does not match its format.

    Attributes
    ----------
    path : str
    problems : list of (location, message)
        The location is a dotted pydantic field path, or ``line L column C``
        for JSON syntax errors.
    """

    def __init__(self, path: str, problems: List[Tuple[str, str]]):
        self.path = path
        self.problems = problems
        super().__init__(f"{path}: " + "; ".join(f"{loc}: {msg}" for loc, msg in problems))


def _labels(values: Any) -> Any:
    if isinstance(values, list):
        return [_labels(v) for v in values]
    return str(values) if isinstance(values, (int, str)) else values


class _FileModel(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


# -- complexes ------------------------------------------------------------------

class ComplexFile(_FileModel):
    vertices: List[str]
    maximal_simplices: List[List[str]] = Field(default_factory=list)
    loops: Dict[str, List[List[str]]] = Field(default_factory=dict)

    @field_validator("vertices", "maximal_simplices", mode="before")
    @classmethod
    def _stringify(cls, v):
        return _labels(v)

    def to_domain(self, close: bool = True) -> SimplicialComplex:
        return SimplicialComplex(self.vertices, self.maximal_simplices, close=close)

    @classmethod
    def from_domain(cls, c: SimplicialComplex, loops: Dict[str, List[List[str]]] = None) -> "ComplexFile":
        return cls(vertices=list(c.vertices),
                   maximal_simplices=[list(c.labels(s)) for s in c.maximal_simplices()],
                   loops=loops or {})


class PolygonalFile(_FileModel):
    """Faces are cyclic lists of ``[edge, sign]``; an edge is its index or its name."""
    vertices: List[str]
    edges: List[Tuple[str, str]]
    faces: List[List[Tuple[Union[int, str], int]]] = Field(default_factory=list)
    edge_names: List[str] = Field(default_factory=list)
    face_names: List[str] = Field(default_factory=list)

    @field_validator("vertices", "edges", mode="before")
    @classmethod
    def _stringify(cls, v):
        return _labels(v)

    @field_validator("faces")
    @classmethod
    def _signs(cls, faces):
        for face in faces:
            for _, sign in face:
                if sign not in (1, -1):
                    raise ValueError(f"orientation sign must be +1 or -1, got {sign}")
        return faces

    def to_domain(self) -> PolygonalComplex:
        names = self.edge_names or [f"e{i}" for i in range(len(self.edges))]
        faces = []
        for face in self.faces:
            word = []
            for e, sign in face:
                if isinstance(e, str):
                    if e not in names:
                        raise ValueError(f"face refers to unknown edge {e!r}")
                    e = names.index(e)
                word.append((e, sign))
            faces.append(tuple(word))
        return PolygonalComplex(tuple(self.vertices), tuple(self.edges), tuple(faces),
                                edge_names=tuple(self.edge_names), face_names=tuple(self.face_names))

    @classmethod
    def from_domain(cls, pc: PolygonalComplex) -> "PolygonalFile":
        return cls(vertices=list(pc.vertices), edges=[list(e) for e in pc.edges],
                   faces=[[[e, s] for e, s in f] for f in pc.faces],
                   edge_names=list(pc.edge_names), face_names=list(pc.face_names))


# -- voltages -------------------------------------------------------------------

class VoltageEdge(_FileModel):
    from_: str = Field(alias="from")
    to: str
    perm: List[int]

    @field_validator("from_", "to", mode="before")
    @classmethod
    def _stringify(cls, v):
        return _labels(v)


class VoltageFile(_FileModel):
    degree: int = Field(ge=1)
    edges: List[VoltageEdge] = Field(default_factory=list)

    @model_validator(mode="after")
    def _perm_lengths(self):
        for e in self.edges:
            if len(e.perm) != self.degree:
                raise ValueError(f"edge {e.from_}->{e.to}: permutation has {len(e.perm)} entries, degree is {self.degree}")
        return self

    def to_domain(self, L: SimplicialComplex) -> VoltageAssignment:
        return VoltageAssignment.from_one_based(L, self.degree, [(e.from_, e.to, e.perm) for e in self.edges])

    @classmethod
    def from_domain(cls, rho: VoltageAssignment) -> "VoltageFile":
        return cls(degree=rho.degree, edges=[VoltageEdge(from_=x, to=y, perm=p) for x, y, p in rho.edges()])


# -- presentations --------------------------------------------------------------

class PresentationFile(_FileModel):
    """Relators are lists of signed 1-based generator indices, or words like ``"a b^-1"``."""
    generators: List[str]
    relators: List[Union[List[int], str]] = Field(default_factory=list)
    text: Optional[str] = None

    def to_domain(self) -> Presentation:
        p = Presentation(tuple(self.generators))
        return p.with_relators(p.parse_word(r) if isinstance(r, str) else r for r in self.relators)

    @classmethod
    def from_domain(cls, p: Presentation) -> "PresentationFile":
        return cls(generators=list(p.generators), relators=[list(r) for r in p.relators], text=str(p))


class DeckFile(_FileModel):
    """Projection of a cover onto its base and the deck transformations as vertex maps."""
    projection: Dict[str, str]
    maps: List[Dict[str, str]] = Field(default_factory=list)


# -- homology -------------------------------------------------------------------

class GroupEntry(_FileModel):
    rank: int = Field(ge=0)
    torsion: List[int] = Field(default_factory=list)


class HomologyFile(_FileModel):
    """Groups from degree -1 upwards when ``reduced``, else from degree 0."""
    ring: str
    reduced: bool = True
    groups: List[GroupEntry]

    def to_domain(self) -> HomologyProfile:
        return HomologyProfile.from_json(self.model_dump())

    @classmethod
    def from_domain(cls, profile: HomologyProfile) -> "HomologyFile":
        return cls.model_validate(profile.to_json())


# -- enumeration ----------------------------------------------------------------

class CosetTableFile(_FileModel):
    status: Literal["complete", "inconclusive"]
    generators: List[str]
    index: Optional[int] = None
    rows: List[List[int]] = Field(default_factory=list)
    limit: Optional[int] = None
    live: Optional[int] = None

    @classmethod
    def from_domain(cls, p: Presentation, result) -> "CosetTableFile":
        if isinstance(result, CosetTable):
            return cls(status="complete", generators=list(p.generators), index=result.index, rows=result.rows())
        return cls(status="inconclusive", generators=list(p.generators), limit=result.limit, live=result.used)


class FactorEntry(_FileModel):
    conjugator: List[int]
    relator: int = Field(ge=1)
    sign: Literal[1, -1]


class DerivationEntry(_FileModel):
    factors: List[FactorEntry]


class WitnessEntry(_FileModel):
    degree: int
    images: List[List[int]]
    word: List[int]


class RSetFile(_FileModel):
    budget: int
    words: List[List[int]]
    positives: Dict[int, DerivationEntry] = Field(default_factory=dict)
    negatives: Dict[int, WitnessEntry] = Field(default_factory=dict)
    unknown: List[int] = Field(default_factory=list)

    def to_domain(self) -> RSetReport:
        positives = {n: Derivation([(tuple(f.conjugator), f.relator, f.sign) for f in d.factors])
                     for n, d in self.positives.items()}
        negatives = {n: Witness(w.degree, [perm_from_one_based(q) for q in w.images], tuple(w.word))
                     for n, w in self.negatives.items()}
        return RSetReport(self.budget, [tuple(w) for w in self.words], positives, negatives, list(self.unknown))

    @classmethod
    def from_domain(cls, report: RSetReport) -> "RSetFile":
        return cls.model_validate(report.as_dict())


# -- verification ---------------------------------------------------------------

class CheckRecord(_FileModel):
    id: str
    anchor: str
    group: str = ""
    status: Literal["pass", "fail", "inconclusive"]
    observed: Any = None
    expected: Any = None
    runtime: float = 0.0
    detail: str = ""


class VerificationReport(_FileModel):
    seed: int
    budget_scale: float = 1.0
    checks: List[CheckRecord] = Field(default_factory=list)

    @model_validator(mode="after")
    def _unique_ids(self):
        ids = [c.id for c in self.checks]
        if len(set(ids)) != len(ids):
            raise ValueError("check ids must be unique")
        return self

    def counts(self) -> Dict[str, int]:
        out = {"pass": 0, "fail": 0, "inconclusive": 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    @property
    def failed(self) -> bool:
        return any(c.status == "fail" for c in self.checks)

    def summary(self) -> str:
        lines = [f"{c.status.upper():<12} {c.id:<28} {c.runtime:7.2f}s  {c.anchor}" for c in self.checks]
        counts = self.counts()
        lines.append(f"{counts['pass']} passed, {counts['fail']} failed, {counts['inconclusive']} inconclusive")
        return "\n".join(lines)


# -- cube complexes -------------------------------------------------------------

class FacetEntry(_FileModel):
    face: List[str]
    side: Literal["bottom", "top"]
    sign: Literal[1, -1]


class CubeCellEntry(_FileModel):
    dimension: int
    simplex: List[str]
    facets: List[FacetEntry] = Field(default_factory=list)


class CubeComplexFile(_FileModel):
    complex: List[str]
    cells: List[CubeCellEntry]

    def to_domain(self) -> CubeQuotientComplex:
        L = SimplicialComplex(self.complex, [c.simplex for c in self.cells if c.simplex])
        t = CubeQuotientComplex(L)
        if CubeComplexFile.from_domain(t) != self:
            raise ValueError("cell list does not match the cube complex of its simplices")
        return t

    @classmethod
    def from_domain(cls, t: CubeQuotientComplex) -> "CubeComplexFile":
        return cls.model_validate(t.to_json())


# -- reading and writing --------------------------------------------------------

def read_json(path: str) -> Any:
    with open(path, "r") as f:
        text = f.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(path, [(f"line {exc.lineno} column {exc.colno}", exc.msg)]) from None


def validate(model: Type[M], data: Any, path: str = "<data>") -> M:
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        problems = [(".".join(str(x) for x in e["loc"]) or "<root>", e["msg"]) for e in exc.errors()]
        raise FormatError(path, problems) from None


def load(model: Type[M], path: str) -> M:
    result = validate(model, read_json(path), path)
    logger.debug(f"read {model.__name__} from {path}")
    return result


def dumps(model: BaseModel) -> str:
    return model.model_dump_json(indent=2, by_alias=True, exclude_none=True)


def write(model: BaseModel, path: str) -> None:
    with open(path, "w") as f:
        f.write(dumps(model) + "\n")
    logger.info(f"wrote {type(model).__name__} to {path}")
