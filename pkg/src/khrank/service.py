"""Service layer: typed requests and responses over the core operations.

The handlers are plain functions; the FastAPI app exposes them over HTTP
and the command line calls them in process, so both fronts share one
contract and one set of error messages.
"""

from __future__ import annotations

from typing import List, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .alexander import lemma_bound_report
from .braid import BraidWord
from .classify import classify_by_rank, verify_table
from .dataset import builtin_entries, builtin_table_text, get_entry, parse_lines
from .khovanov import kh_ranks
from .linkdiag import LinkDiagram, axis_link, braid_closure

__all__ = [
    "AlexRequest", "AlexResponse", "BurauRequest", "BurauResponse",
    "CheckOut", "ClassifyRequest", "ClassifyResponse", "KhRequest",
    "KhResponse", "VerifyRequest", "VerifyResponse", "app", "alex_report",
    "burau_report", "classify_report", "create_app", "kh_report",
    "resolve_link_spec", "verify_report",
]


def resolve_link_spec(spec: str) -> LinkDiagram:
    """A diagram from `pd:`, `braid:`, `axis:` or `name:` notation."""
    prefix, sep, payload = spec.partition(":")
    if not sep:
        raise ValueError(
            f"link spec {spec!r} must start with pd:, braid:, axis:, or name:")
    if prefix == "pd":
        return LinkDiagram.parse(payload)
    if prefix == "braid":
        return braid_closure(BraidWord.parse(payload))
    if prefix == "axis":
        return axis_link(BraidWord.parse(payload))
    if prefix == "name":
        try:
            return get_entry(payload).diagram()
        except KeyError as exc:
            raise ValueError(str(exc.args[0])) from None
    raise ValueError(
        f"unknown link spec prefix {prefix!r}; "
        "use pd:, braid:, axis:, or name:")


class KhRequest(BaseModel):
    link: str
    reduced: bool = False
    mirror: bool = False
    max_crossings: Optional[int] = Field(default=None, ge=0)


class KhResponse(BaseModel):
    name: Optional[str] = None
    components: int
    total: int
    reduced_total: int
    bigraded: List[List[int]]
    reduced_bigraded: Optional[List[List[int]]] = None


def kh_report(req: KhRequest) -> KhResponse:
    diagram = resolve_link_spec(req.link)
    if req.mirror:
        diagram = diagram.mirror()
    ranks = kh_ranks(diagram, max_crossings=req.max_crossings)
    return KhResponse(
        name=ranks.name,
        components=ranks.components,
        total=ranks.total,
        reduced_total=ranks.reduced_total,
        bigraded=[list(t) for t in ranks.bigraded],
        reduced_bigraded=([list(t) for t in ranks.reduced_bigraded]
                          if req.reduced else None),
    )


class BurauRequest(BaseModel):
    braid: str


class BurauResponse(BaseModel):
    braid: str
    strands: int
    size: int
    entries: List[List[str]]  # Laurent polynomials in t, printed


def burau_report(req: BurauRequest) -> BurauResponse:
    word = BraidWord.parse(req.braid)
    matrix = word.burau()
    entries = [[e.format(yname="t") for e in row] for row in matrix.rows]
    return BurauResponse(braid=word.format(), strands=word.strands,
                         size=len(entries), entries=entries)


class AlexRequest(BaseModel):
    braid: str


class AxisFormOut(BaseModel):
    a: int
    f: List[str]


class AlexResponse(BaseModel):
    braid: str
    strands: int
    delta: str
    torres: bool
    axis_form: AxisFormOut
    stat: int
    flags: List[str]


def alex_report(req: AlexRequest) -> AlexResponse:
    report = lemma_bound_report(BraidWord.parse(req.braid))
    return AlexResponse(
        braid=report["braid"],
        strands=report["strands"],
        delta=report["delta"],
        torres=report["torres"],
        axis_form=AxisFormOut(**report["axis_form"]),
        stat=report["stat"],
        flags=list(report["flags"]),
    )


class ClassifyRequest(BaseModel):
    link: str
    max_crossings: Optional[int] = Field(default=None, ge=0)


class ClassifyResponse(BaseModel):
    name: Optional[str] = None
    components: int
    total: int
    reduced_total: int
    parity_ok: bool
    lower_bound_ok: bool
    batson_ok: Optional[bool] = None
    rank_class: str
    flags: List[str]
    caveat: str


def classify_report(req: ClassifyRequest) -> ClassifyResponse:
    diagram = resolve_link_spec(req.link)
    rep = classify_by_rank(diagram, max_crossings=req.max_crossings)
    return ClassifyResponse(**rep.to_dict())


class VerifyRequest(BaseModel):
    table_text: Optional[str] = None  # None selects the builtin table
    jobs: Optional[int] = Field(default=None, ge=1)
    max_crossings: Optional[int] = Field(default=None, ge=0)


class CheckOut(BaseModel):
    check: str
    description: str
    status: str
    counterexamples: List[str]


class VerifyResponse(BaseModel):
    entries: int
    all_pass: bool
    checks: List[CheckOut]


def verify_report(req: VerifyRequest) -> VerifyResponse:
    if req.table_text is None:
        entries = builtin_entries()
    else:
        entries = parse_lines(req.table_text)
    report = verify_table(entries, jobs=req.jobs,
                          max_crossings=req.max_crossings)
    d = report.to_dict()
    return VerifyResponse(entries=d["entries"], all_pass=d["all_pass"],
                          checks=[CheckOut(**c) for c in d["checks"]])


def create_app() -> FastAPI:
    app = FastAPI(title="khrank",
                  description="Khovanov rank reports, Burau matrices, "
                              "Alexander polynomials, and link-table checks")

    def run(handler, req):
        try:
            return handler(req)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    @app.post("/kh", response_model=KhResponse)
    def kh(req: KhRequest) -> KhResponse:
        return run(kh_report, req)

    @app.post("/burau", response_model=BurauResponse)
    def burau(req: BurauRequest) -> BurauResponse:
        return run(burau_report, req)

    @app.post("/alex", response_model=AlexResponse)
    def alex(req: AlexRequest) -> AlexResponse:
        return run(alex_report, req)

    @app.post("/classify", response_model=ClassifyResponse)
    def classify(req: ClassifyRequest) -> ClassifyResponse:
        return run(classify_report, req)

    @app.post("/verify-table", response_model=VerifyResponse)
    def verify(req: VerifyRequest) -> VerifyResponse:
        return run(verify_report, req)

    @app.get("/table")
    def table() -> dict:
        return {"format": "one JSON object per line",
                "text": builtin_table_text()}

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok"}

    return app


app = create_app()
