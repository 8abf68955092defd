"""HTTP service exposing the proof tools.

Endpoints wrap the core package one-to-one: checking and interpreting
proofs, running the execution formula, normalizing with a rewrite trace,
and launching the verification suites.  Request and response bodies are
pydantic models; matrices travel in the documented JSON form (dom/cod wire
type lists plus a row-major entry grid over "0", "p", "1").
"""

from __future__ import annotations

from importlib import resources

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .cutelim import Strategy, normalize
from .exec_formula import ex, sigma_of
from .formula import ParseError, FormulaError, fmt, parse, polarity
from .goi import Mode, UnitUnsupported, interp
from .intrel import IntMor, adjoint_add, adjoint_strip, finrel, is_pos, mpobj
from .proof import RuleViolation, check, format_proof, is_focused, parse_proof
from .relcore import RelError, TokenError, Window, fold_eval
from . import verify as verify_mod

app = FastAPI(
    title="mllp-goi",
    description="Polarized proof checking, cut elimination and the "
                "two-layered relational execution formula.",
    version="0.1.0",
)


class CheckRequest(BaseModel):
    proof: str = Field(description="proof term in the .mllp grammar")


class SequentInfo(BaseModel):
    text: str
    gamma: list[str]
    delta: list[list[str]]
    focused: bool
    cut_free: bool


class CheckResponse(BaseModel):
    sequent: SequentInfo


class FormulaRequest(BaseModel):
    text: str


class FormulaResponse(BaseModel):
    formula: str
    polarity: str


class MatrixJson(BaseModel):
    dom: list[str]
    cod: list[str]
    entries: list[list[str]]


class InterpRequest(BaseModel):
    proof: str
    mode: str = "rel"


class InterpResponse(BaseModel):
    sequent: SequentInfo
    upper: MatrixJson
    lower: MatrixJson
    layout: dict


class ExecResponse(BaseModel):
    sequent: SequentInfo
    upper: MatrixJson
    lower: MatrixJson


class NormalizeRequest(BaseModel):
    proof: str
    strategy: str = "leftmost"
    trace: bool = False


class TraceStep(BaseModel):
    redex: str
    proof: str


class NormalizeResponse(BaseModel):
    normal_form: str
    sequent: SequentInfo
    steps: int
    trace: list[TraceStep] = []


class VerifyRequest(BaseModel):
    kind: str = Field(description="invariance | focus | converse")
    max_size: int = 6
    atoms: list[str] = ["X", "Y"]
    mode: str = "rel"
    strategy: str = "leftmost"
    reports: bool = False


class LawsRequest(BaseModel):
    seed: int = 0
    samples: int = 1000
    window: int = 16
    n_alpha: int = 0
    intrel_samples: int = 500


class SuiteResponse(BaseModel):
    kind: str
    total: int
    passed: bool
    failures: list[dict]
    elapsed: float
    detail: dict = {}
    reports: list[dict] | None = None


class FoldRequest(BaseModel):
    proof: str
    token: int
    window: int = 16
    n_alpha: int = 0
    mode: str = "rel"


class FoldResponse(BaseModel):
    outputs: list[int]


_DOMAIN_ERRORS = (ParseError, FormulaError, RuleViolation, UnitUnsupported,
                  RelError, TokenError, ValueError)


def _guard(fn):
    try:
        return fn()
    except _DOMAIN_ERRORS as e:
        raise HTTPException(status_code=400,
                            detail={"error": type(e).__name__, "message": str(e)})


def _mode(name: str) -> Mode:
    try:
        return Mode(name)
    except ValueError:
        raise HTTPException(status_code=400,
                            detail={"error": "Mode",
                                    "message": f"unknown mode {name!r}"})


def _strategy(name: str) -> Strategy:
    try:
        return Strategy(name)
    except ValueError:
        raise HTTPException(status_code=400,
                            detail={"error": "Strategy",
                                    "message": f"unknown strategy {name!r}"})


def _sequent_info(p) -> SequentInfo:
    s = check(p)
    return SequentInfo(
        text=str(s),
        gamma=[fmt(f) for f in s.gamma],
        delta=[[fmt(a), fmt(b)] for a, b in s.delta],
        focused=is_focused(s),
        cut_free=not s.delta,
    )


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/formula/parse", response_model=FormulaResponse)
def formula_parse(req: FormulaRequest) -> FormulaResponse:
    def run():
        f = parse(req.text)
        return FormulaResponse(formula=fmt(f), polarity=polarity(f).value)
    return _guard(run)


@app.post("/check", response_model=CheckResponse)
def check_proof(req: CheckRequest) -> CheckResponse:
    def run():
        return CheckResponse(sequent=_sequent_info(parse_proof(req.proof)))
    return _guard(run)


@app.post("/interp", response_model=InterpResponse)
def interp_proof(req: InterpRequest) -> InterpResponse:
    def run():
        p = parse_proof(req.proof)
        ip = interp(p, _mode(req.mode))
        return InterpResponse(
            sequent=_sequent_info(p),
            upper=MatrixJson(**ip.upper.to_json()),
            lower=MatrixJson(**ip.lower.to_json()),
            layout=ip.layout.to_json(),
        )
    return _guard(run)


@app.post("/exec", response_model=ExecResponse)
def exec_proof(req: InterpRequest) -> ExecResponse:
    def run():
        p = parse_proof(req.proof)
        ip, sigma = sigma_of(p, _mode(req.mode))
        up, low = ex(ip, sigma)
        return ExecResponse(
            sequent=_sequent_info(p),
            upper=MatrixJson(**up.to_json()),
            lower=MatrixJson(**low.to_json()),
        )
    return _guard(run)


@app.post("/normalize", response_model=NormalizeResponse)
def normalize_proof(req: NormalizeRequest) -> NormalizeResponse:
    def run():
        p = parse_proof(req.proof)
        nf, steps = normalize(p, _strategy(req.strategy))
        trace = [TraceStep(redex=r.label(), proof=format_proof(q))
                 for r, q in steps] if req.trace else []
        return NormalizeResponse(
            normal_form=format_proof(nf),
            sequent=_sequent_info(nf),
            steps=len(steps),
            trace=trace,
        )
    return _guard(run)


@app.post("/verify", response_model=SuiteResponse)
def verify_endpoint(req: VerifyRequest) -> SuiteResponse:
    mode = _mode(req.mode)
    if req.kind == "invariance":
        res = verify_mod.invariance_suite(req.max_size, req.atoms, mode,
                                          _strategy(req.strategy),
                                          collect_reports=req.reports)
    elif req.kind == "focus":
        res = verify_mod.focus_suite(req.max_size, req.atoms, mode,
                                     collect_reports=req.reports)
    elif req.kind == "converse":
        res = verify_mod.converse_suite(req.max_size, req.atoms, mode,
                                        collect_reports=req.reports)
    else:
        raise HTTPException(status_code=400,
                            detail={"error": "Verify",
                                    "message": f"unknown kind {req.kind!r}"})
    return SuiteResponse(**res.to_json())


@app.post("/laws", response_model=list[SuiteResponse])
def laws_endpoint(req: LawsRequest) -> list[SuiteResponse]:
    def run():
        laws = verify_mod.laws_suite(req.seed, req.samples, req.window, req.n_alpha)
        cat = verify_mod.intrel_suite(req.seed, req.intrel_samples)
        return [SuiteResponse(**laws.to_json()), SuiteResponse(**cat.to_json())]
    return _guard(run)


@app.post("/fold", response_model=FoldResponse)
def fold_endpoint(req: FoldRequest) -> FoldResponse:
    def run():
        p = parse_proof(req.proof)
        ip = interp(p, _mode(req.mode))
        out = fold_eval(ip.upper, req.token, Window(req.window, req.n_alpha))
        return FoldResponse(outputs=sorted(out))
    return _guard(run)


@app.get("/intrel-demo")
def intrel_demo() -> dict:
    """The shift adjunction on a small concrete object: a morphism, its
    positive transpose, and the round trip."""
    a = mpobj({"a0", "a1"}, {"x0"}, {"a0"}, {"x0"})
    b = mpobj({"b0"}, {"y0", "y1"}, {"b0"}, {"y1"})
    plain = IntMor(a, b,
                   finrel(a.aplus, a.aminus, {("a1", "x0")}),
                   finrel(a.aplus, b.aplus, {("a0", "b0")}),
                   finrel(b.aminus, a.aminus, {("y1", "x0")}),
                   finrel(b.aminus, b.aplus, set()))
    demo = adjoint_add(plain)
    stripped = adjoint_strip(demo, b)
    return {
        "object": {"plus": sorted(a.aplus), "minus": sorted(a.aminus),
                   "mp_plus": sorted(a.mp_plus), "mp_minus": sorted(a.mp_minus)},
        "transpose": demo.to_json(),
        "transpose_is_positive": is_pos(demo),
        "round_trip": stripped.to_json(),
    }


@app.get("/corpus")
def corpus_list() -> dict:
    files = resources.files("mllp_goi").joinpath("corpus")
    return {"proofs": sorted(f.name for f in files.iterdir()
                             if f.name.endswith(".mllp"))}


@app.get("/corpus/{name}")
def corpus_get(name: str) -> dict:
    files = resources.files("mllp_goi").joinpath("corpus")
    target = files.joinpath(name)
    if not name.endswith(".mllp") or "/" in name or not target.is_file():
        raise HTTPException(status_code=404, detail={"error": "Corpus",
                                                     "message": name})
    return {"name": name, "proof": target.read_text().strip()}
