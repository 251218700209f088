"""HTTP front end: every operation as a POST endpoint with exact-rational JSON."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..errors import BlowupCyclesError
from . import handlers
from . import schemas as S


def create_app() -> FastAPI:
    app = FastAPI(
        title="blowup-cycles",
        description=(
            "Exact computations in the numerical cycle class groups of blow-ups of "
            "projective space at points: cone membership with certificates, cone and "
            "section maps, reflection-group orbits, generation-status queries, and the "
            "quadric-model certificates. All rationals are exact 'p/q' strings."
        ),
        version=S.SCHEMA_VERSION,
    )

    @app.exception_handler(BlowupCyclesError)
    async def _domain_error(_: Request, exc: BlowupCyclesError):
        return JSONResponse(
            status_code=422,
            content=S.ErrorResponse(detail=str(exc), error_type=type(exc).__name__).model_dump(),
        )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "schema_version": S.SCHEMA_VERSION}

    @app.post("/decompose", response_model=S.DecomposeResponse)
    def decompose(req: S.DecomposeRequest):
        return handlers.decompose(req)

    @app.post("/intersect", response_model=S.IntersectResponse)
    def intersect(req: S.IntersectRequest):
        return handlers.intersect(req)

    @app.post("/pair", response_model=S.PairResponse)
    def pair(req: S.PairRequest):
        return handlers.pair(req)

    @app.post("/top-self", response_model=S.TopSelfResponse)
    def top_self(req: S.TopSelfRequest):
        return handlers.top_self(req)

    @app.post("/cone", response_model=S.ConeResponse)
    def cone(req: S.ConeRequest):
        return handlers.cone(req)

    @app.post("/section", response_model=S.SectionResponse)
    def section(req: S.SectionRequest):
        return handlers.section(req)

    @app.post("/reduce-span", response_model=S.ReduceSpanResponse)
    def reduce_span(req: S.ReduceSpanRequest):
        return handlers.reduce_span(req)

    @app.post("/cremona-orbit", response_model=S.OrbitResponse)
    def cremona_orbit(req: S.OrbitRequest):
        return handlers.cremona_orbit(req)

    @app.post("/group-type", response_model=S.GroupTypeResponse)
    def group_type(req: S.GroupTypeRequest):
        return handlers.group_type(req)

    @app.post("/status", response_model=S.StatusResponse)
    def status(req: S.StatusRequest):
        return handlers.status(req)

    @app.post("/shgh-dim", response_model=S.ShghResponse)
    def shgh_dim(req: S.ShghRequest):
        return handlers.shgh_dim(req)

    @app.post("/certify-ddelta", response_model=S.CertifyResponse)
    def certify_ddelta(req: S.CertifyRequest):
        return handlers.certify_ddelta(req)

    @app.post("/pushforward-q", response_model=S.PushforwardResponse)
    def pushforward_q(req: S.PushforwardRequest):
        return handlers.pushforward_q(req)

    @app.post("/named-class", response_model=S.NamedClassResponse)
    def named_class(req: S.NamedClassRequest):
        return handlers.named_class(req)

    return app


app = create_app()
