"""Pydantic models and shared enums for all commands."""

from __future__ import annotations

import os
import re
from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field, computed_field, field_validator, model_validator


# === Enums ===


class GraphFormat(str, Enum):
    PLAIN = "plain"
    WEIGHTED = "weighted"
    DECORATED = "decorated"
    MIXED = "mixed"


class VertexClass(str, Enum):
    SOURCE = "source"
    TARGET = "target"
    PASSING = "passing"
    GENERIC = "generic"
    UNIVALENT_OUT = "univalent_out"
    UNIVALENT_IN = "univalent_in"


class Membership(str, Enum):
    SOURCED = "sourced"
    TARGETED = "targeted"
    ST = "st"
    S_PLUS_T = "s_plus_t"
    ORIENTED = "oriented"
    WHEELED_ONLY = "wheeled_only"


class EdgeKind(str, Enum):
    SOLID = "solid"
    S_DOTTED = "s"
    T_DOTTED = "t"
    WAVY = "wavy"


class Decoration(str, Enum):
    """Symbolic bi-weights; the first letter is the out-weight, `o` stands for infinity."""

    INF_INF = "oo"
    INF_ZERO = "o0"
    ZERO_INF = "0o"
    ZERO_ZERO = "00"

    @property
    def out_inf(self) -> bool:
        return self.value[0] == "o"

    @property
    def in_inf(self) -> bool:
        return self.value[1] == "o"

    @classmethod
    def of(cls, out_inf: bool, in_inf: bool) -> "Decoration":
        return cls(("o" if out_inf else "0") + ("o" if in_inf else "0"))


class FieldChoice(str, Enum):
    RATIONAL = "rational"
    GF32003 = "gf32003"


class VerifyTarget(str, Enum):
    D2 = "d2"
    CHAINMAP = "chainmap"
    DEGREE_BOUND = "degree-bound"


class ChainMapName(str, Enum):
    F = "f"
    B = "b"
    FS = "fs"
    FT = "ft"
    A = "a"
    A_PLUS_B = "aplusb"
    CONE_D2 = "cone-d2"
    ST_EXACTNESS = "st-exactness"
    B_CORRUPT = "b-corrupt"
    F_CORRUPT = "f-corrupt"


# === Validation Patterns ===

FLAVOR_NAMES = (
    "cfGC",
    "GC",
    "b2GC",
    "cfdGC",
    "dGC",
    "dGC^s",
    "dGC^t",
    "dGC^st",
    "dGC^s+t",
    "dGC^or",
    "dGC/s",
    "dGC/t",
    "dGC/st",
    "dGC^wheeled",
    "fwGC",
    "qGC",
    "tGC",
    "mixed",
)
FLAVOR_PATTERN = re.compile(r"^(b2|cf|q|t|fw)?d?GC(\^(s\+t|st|s|t|or|wheeled)|/(st|s|t))?$|^mixed$")


def validate_flavor(value: str) -> str:
    """Validate a complex name (e.g. GC, dGC, dGC/s, dGC^wheeled)."""
    if not FLAVOR_PATTERN.match(value) or value not in FLAVOR_NAMES:
        raise ValueError(f"Invalid flavor: {value}. Expected one of: {', '.join(FLAVOR_NAMES)}")
    return value


def default_workers() -> int:
    """Worker count from GCX_THREADS, else the available parallelism."""
    raw = os.environ.get("GCX_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


# === Configuration ===


class RunConfig(BaseModel):
    """Everything a single command run needs."""

    flavor: str = Field(default="dGC", description="Complex name")
    k: Optional[int] = Field(default=None, description="Dimension parameter of the complex")
    p: Optional[int] = Field(default=None, description="Degree shift p, with k = p+q+1")
    q: Optional[int] = Field(default=None, description="Degree shift q, with k = p+q+1")
    v: Optional[int] = Field(default=None, ge=1, description="Exact vertex count (enumerate)")
    e: Optional[int] = Field(default=None, ge=0, description="Exact edge count (enumerate)")
    v_max: int = Field(default=6, ge=1, le=12, description="Largest vertex count in the window")
    e_max: int = Field(default=9, ge=0, le=16, description="Largest edge count in the window")
    cap: int = Field(default=3, ge=2, description="Weight cap W for bi-weighted expansions")
    b: Optional[int] = Field(default=None, ge=0, description="Loop number")
    degree_min: Optional[int] = None
    degree_max: Optional[int] = None
    i_max: Optional[int] = Field(default=None, ge=1, description="Largest loop graph (b2GC)")
    allow_tadpoles: bool = False
    allow_multiedges: bool = True
    field: FieldChoice = FieldChoice.RATIONAL
    output: Optional[str] = Field(default=None, description="Output file path")
    sms_dir: Optional[str] = Field(default=None, description="Directory for SMS matrix dumps")
    workers: int = Field(default_factory=default_workers, ge=1)

    @field_validator("flavor")
    @classmethod
    def check_flavor(cls, v: str) -> str:
        return validate_flavor(v)

    @model_validator(mode="after")
    def resolve_k(self) -> "RunConfig":
        if self.p is not None or self.q is not None:
            if self.p is None or self.q is None:
                raise ValueError("p and q must be given together")
            derived = self.p + self.q + 1
            if self.k is not None and self.k != derived:
                raise ValueError(f"k={self.k} disagrees with p+q+1={derived}")
            self.k = derived
        if self.k is None:
            raise ValueError("either k or both p and q are required")
        return self

    @property
    def prime(self) -> Optional[int]:
        return 32003 if self.field == FieldChoice.GF32003 else None


class ChainMapRequest(RunConfig):
    """A chain-map or identity check on a window."""

    name: ChainMapName
    k: Optional[int] = 3
    v_max: int = Field(default=3, ge=1, le=8)
    e_max: int = Field(default=5, ge=0, le=10)


class GrtRequest(BaseModel):
    """Options of the tetrahedron-class computation; k is fixed to 3."""

    field: FieldChoice = FieldChoice.RATIONAL
    emit_derivations: bool = False
    m: int = Field(default=1, ge=1, description="Outgoing legs of the derivation template")
    n: int = Field(default=1, ge=1, description="Incoming legs of the derivation template")
    lifts: bool = True


# === Response Models ===


class Warning(BaseModel):
    """Non-fatal warning."""

    code: str
    message: str


class ErrorDetail(BaseModel):
    """Error details for failed requests."""

    code: str
    message: str
    field: Optional[str] = None
    suggestions: Optional[list[str]] = None


class GraphListData(BaseModel):
    """Enumerated graph classes."""

    flavor: str
    k: int
    v: int
    e: int
    count: int
    graphs: list[str]
    output: Optional[str] = None


class DegreeRow(BaseModel):
    """One degree of a cohomology table."""

    degree: int
    dim: int = Field(ge=0)
    rank_out: int = Field(ge=0, description="rank of d leaving this degree")
    rank_in: int = Field(ge=0, description="rank of d entering this degree")
    dim_h: int = Field(ge=0)


class CohomologyReport(BaseModel):
    """Cohomology dimensions of one complex on a window of degrees."""

    flavor: str
    k: int
    b: int
    field: FieldChoice = FieldChoice.RATIONAL
    lower_bound_ranks: bool = False
    rows: list[DegreeRow] = Field(default_factory=list)
    sms_files: list[str] = Field(default_factory=list)

    def dim_h(self, degree: int) -> int:
        for row in self.rows:
            if row.degree == degree:
                return row.dim_h
        return 0


class LoopGraphRow(BaseModel):
    """Cohomology contributed by the loop graph with i edges."""

    i: int
    degree: int
    nonzero: bool
    dim_h: int


class LoopGraphReport(BaseModel):
    flavor: str = "b2GC"
    k: int
    rows: list[LoopGraphRow] = Field(default_factory=list)


class D2Report(BaseModel):
    """Termwise check of d∘d = 0."""

    flavor: str
    k: int
    v_max: int
    e_max: int
    checked: int
    failures: list[str] = Field(default_factory=list)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return not self.failures


class ChainMapReport(BaseModel):
    """Result of verifying that a map commutes with the differentials."""

    name: str
    k: int
    v_max: int
    e_max: int
    checked: int
    passed: bool
    witnesses: list[str] = Field(default_factory=list)


class DegreeBoundReport(BaseModel):
    k: int
    b: int
    max_degree: int
    attained_degree: Optional[int] = None
    generators: int
    verified_empty_above: bool


class RankReport(BaseModel):
    rows: int
    cols: int
    rank: int
    field: FieldChoice = FieldChoice.RATIONAL
    lower_bound: bool = False


class DerivationSummand(BaseModel):
    coefficient: int
    graph: str
    hairs: str


class DerivationTemplate(BaseModel):
    """One (m, n) instance of the derivation attached to a lifted cycle."""

    name: str
    m: int = Field(ge=1)
    n: int = Field(ge=1)
    summands: list[DerivationSummand]


class GrtReport(BaseModel):
    """The tetrahedron-class computation in the sourced-and-targeted complex."""

    a_basis: list[str]
    x_basis: list[str]
    matrix_sms: str
    rank: int
    rank_mod_p: Optional[int] = None
    row_signs: list[int]
    col_signs: list[int]
    matrix_matches: bool
    alpha_s: dict[str, str]
    alpha_s_closed: bool
    alpha_s_in_image: bool
    alpha_t_closed: bool
    alpha_t_in_image: bool
    difference_in_image: bool
    lift_s_ok: Optional[bool] = None
    lift_t_ok: Optional[bool] = None
    derivations: list[DerivationTemplate] = Field(default_factory=list)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        lifts = [ok for ok in (self.lift_s_ok, self.lift_t_ok) if ok is not None]
        return (
            self.matrix_matches
            and self.alpha_s_closed
            and self.alpha_t_closed
            and not self.alpha_s_in_image
            and not self.alpha_t_in_image
            and not self.difference_in_image
            and all(lifts)
        )


# === Generic Response Wrapper ===


class ApiResponse(BaseModel):
    """Standard response wrapper."""

    success: bool
    data: Optional[dict] = None
    warnings: list[Warning] = Field(default_factory=list)
    error: Optional[ErrorDetail] = None
    api_version: str = "0.1.0"
