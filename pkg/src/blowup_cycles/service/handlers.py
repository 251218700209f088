"""Request handlers: one function per operation, shared by the HTTP app and the CLI."""

from __future__ import annotations

from fractions import Fraction

from .. import catalog, conemaps, lineargen, shgh, weyl
from ..classgroup import (
    CycleClass,
    degree_pairing,
    exceptional_class,
    intersect_divisor,
    top_self_intersection,
)
from ..errors import InvalidClass, InvalidDims
from ..grammar import format_class, parse_combination
from . import schemas as S


def _membership_response(verdict: lineargen.MembershipVerdict, cycle: CycleClass) -> S.DecomposeResponse:
    if verdict.member:
        assert verdict.witness is not None
        return S.DecomposeResponse(
            member=True,
            span_size=verdict.span_size,
            cycle=S.ClassOut.from_cycle(cycle),
            decomposition=[
                S.DecompositionTermModel(generator=gen.label, coefficient=coeff)
                for gen, coeff in verdict.witness.terms
            ],
            linear_degree=verdict.witness.linear_degree,
        )
    assert verdict.violation is not None
    v = verdict.violation
    return S.DecomposeResponse(
        member=False,
        span_size=verdict.span_size,
        cycle=S.ClassOut.from_cycle(cycle),
        violation=S.ViolationModel(
            name=v.name, description=v.describe(), lhs=v.lhs, rhs=v.rhs, index=v.index
        ),
    )


def decompose(req: S.DecomposeRequest) -> S.DecomposeResponse:
    ambient = req.ambient.to_ambient()
    cycle = req.cycle.to_cycle(ambient, req.dim)
    s = req.span_size if req.span_size is not None else req.dim + 1
    if s < 1:
        raise InvalidDims(f"span size must be >= 1, got {s}")
    v = (cycle.degree,) + cycle.multiplicities
    verdict = lineargen.simplex_cone_membership(v, s)
    return _membership_response(verdict, cycle)


def intersect(req: S.IntersectRequest) -> S.IntersectResponse:
    ambient = req.ambient.to_ambient()
    divisor = req.divisor.to_cycle(ambient, ambient.n - 1)
    cycle = req.cycle.to_cycle(ambient, req.cycle_dim)
    return S.IntersectResponse(result=S.ClassOut.from_cycle(intersect_divisor(divisor, cycle)))


def pair(req: S.PairRequest) -> S.PairResponse:
    ambient = req.ambient.to_ambient()
    divisor = req.divisor.to_cycle(ambient, ambient.n - 1)
    curve = req.curve.to_cycle(ambient, 1)
    return S.PairResponse(value=degree_pairing(divisor, curve))


def top_self(req: S.TopSelfRequest) -> S.TopSelfResponse:
    ambient = req.ambient.to_ambient()
    divisor = req.divisor.to_cycle(ambient, ambient.n - 1)
    return S.TopSelfResponse(value=top_self_intersection(divisor))


def cone(req: S.ConeRequest) -> S.ConeResponse:
    ambient = req.ambient.to_ambient()
    cycle = req.cycle.to_cycle(ambient, req.dim)
    result = conemaps.cone_class(cycle)
    return S.ConeResponse(
        result=S.ClassOut.from_cycle(result),
        vertex_zero_text=format_class(result, vertex_zero=True),
    )


def section(req: S.SectionRequest) -> S.SectionResponse:
    ambient = req.ambient.to_ambient()
    cycle = req.cycle.to_cycle(ambient, req.dim, vertex_zero=req.vertex_zero_labels)
    return S.SectionResponse(result=S.ClassOut.from_cycle(conemaps.section_class(cycle)))


def reduce_span(req: S.ReduceSpanRequest) -> S.ReduceSpanResponse:
    ambient = req.ambient.to_ambient()
    cycle = req.cycle.to_cycle(ambient, req.dim)
    outcome = conemaps.span_reduction(cycle)
    if isinstance(outcome, conemaps.LinearVerdict):
        return S.ReduceSpanResponse(
            linearly_generated=True,
            generator=S.ClassOut.from_cycle(outcome.generator),
            reason=outcome.reason,
        )
    return S.ReduceSpanResponse(linearly_generated=False, reduced=S.ClassOut.from_cycle(outcome))


def cremona_orbit(req: S.OrbitRequest) -> S.OrbitResponse:
    ambient = req.ambient.to_ambient()
    if req.start is not None:
        start = req.start.to_cycle(ambient, ambient.n - 1)
    else:
        start = exceptional_class(ambient, 1, ambient.n - 1)
    resume = None
    if req.resume is not None:
        resume = [
            (
                CycleClass.from_multiplicities(
                    ambient, ambient.n - 1, rec.degree, rec.multiplicities
                ),
                rec.word_length,
            )
            for rec in req.resume
        ]
    result = weyl.orbit_enumerate(
        start, req.max_word_length, degree_cap=req.degree_cap, resume=resume
    )
    records = None
    if req.include_records:
        records = [
            S.OrbitRecordModel(
                degree=rec.cycle.degree,
                multiplicities=list(rec.cycle.multiplicities),
                word_length=rec.word_length,
            )
            for rec in result.records
        ]
    return S.OrbitResponse(
        count=result.count,
        max_degree=result.max_degree,
        closed=result.closed,
        max_word_length=result.max_word_length,
        records=records,
    )


def group_type(req: S.GroupTypeRequest) -> S.GroupTypeResponse:
    gt = weyl.group_type(req.n, req.r)
    return S.GroupTypeResponse(kind=gt.kind, value=gt.value, infinite=gt.infinite)


def status(req: S.StatusRequest) -> S.StatusResponse:
    from ..classgroup import ConfigTag

    st = catalog.status(req.n, req.r, req.k, ConfigTag.parse(req.config))
    return S.StatusResponse(
        linear=st.linear,
        finite=st.finite,
        assumption=st.assumption,
        citations=[S.CitationModel(rule=c.rule, statement=c.statement) for c in st.citations],
        notes=list(st.notes),
    )


def shgh_dim(req: S.ShghRequest) -> S.ShghResponse:
    count = shgh.shgh_expected_dim(shgh.PlanarSystem(req.degree, tuple(req.multiplicities)))
    return S.ShghResponse(
        value=count.value, applicable=count.applicable, degree_margin=count.degree_margin
    )


def certify_ddelta(req: S.CertifyRequest) -> S.CertifyResponse:
    report = shgh.certify_null_ray(shgh.NullRayParams(req.delta, req.delta_prime))
    return S.CertifyResponse(
        passed=report.passed,
        checks=[
            S.CertificateCheckModel(name=c.name, passed=c.passed, values=list(c.values))
            for c in report.checks
        ],
    )


def _quadric_from_request(q: S.QuadricClassIn) -> shgh.QuadricClass:
    if q.basis not in (shgh.RULING_BASIS, shgh.PLANAR_BASIS):
        raise InvalidClass(f"basis must be 'ruling' or 'planar', got {q.basis!r}")
    if (q.text is None) == (q.coefficients is None):
        raise InvalidClass("give the quadric class exactly one way: text or coefficients")
    if q.coefficients is not None:
        return shgh.QuadricClass(q.basis, tuple(q.coefficients))
    symbols = shgh._RULING_SYMBOLS if q.basis == shgh.RULING_BASIS else shgh._PLANAR_SYMBOLS
    table = {name: i for i, name in enumerate(symbols)}
    coeffs = parse_combination(q.text, table, 11)
    return shgh.QuadricClass(q.basis, tuple(coeffs))


def pushforward_q(req: S.PushforwardRequest) -> S.PushforwardResponse:
    x = _quadric_from_request(req.cycle)
    return S.PushforwardResponse(
        source_planar=list(shgh.to_planar(x).coeffs),
        source_ruling=list(shgh.to_ruling(x).coeffs),
        result=S.ClassOut.from_cycle(shgh.pushforward_to_x39(x)),
    )


def named_class(req: S.NamedClassRequest) -> S.NamedClassResponse:
    cycle = catalog.named_class(req.name, **req.params)
    membership = None
    if cycle.dim >= 1:
        verdict = lineargen.is_linearly_generated_class(cycle)
        membership = _membership_response(verdict, cycle)
    return S.NamedClassResponse(result=S.ClassOut.from_cycle(cycle), membership=membership)
