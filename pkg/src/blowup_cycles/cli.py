"""Command-line client.

Each subcommand builds the same request model the HTTP service accepts, runs it
in process (or against a remote service with --url), and renders the response
as a table or as versioned JSON.  Exit codes: 0 success, 1 negative verdict
(not a member / certificate failed), 2 errors.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction

import click

from .classgroup import format_rational
from .errors import BlowupCyclesError
from .grammar import parse_ambient_spec
from .service import handlers
from .service import schemas as S

FORMAT_ENVVAR = "BLOWUP_CYCLES_FORMAT"
URL_ENVVAR = "BLOWUP_CYCLES_URL"

_ROUTES = {
    "decompose": (handlers.decompose, "/decompose", S.DecomposeResponse),
    "intersect": (handlers.intersect, "/intersect", S.IntersectResponse),
    "pair": (handlers.pair, "/pair", S.PairResponse),
    "top-self": (handlers.top_self, "/top-self", S.TopSelfResponse),
    "cone": (handlers.cone, "/cone", S.ConeResponse),
    "section": (handlers.section, "/section", S.SectionResponse),
    "reduce-span": (handlers.reduce_span, "/reduce-span", S.ReduceSpanResponse),
    "cremona-orbit": (handlers.cremona_orbit, "/cremona-orbit", S.OrbitResponse),
    "group-type": (handlers.group_type, "/group-type", S.GroupTypeResponse),
    "status": (handlers.status, "/status", S.StatusResponse),
    "shgh-dim": (handlers.shgh_dim, "/shgh-dim", S.ShghResponse),
    "certify-ddelta": (handlers.certify_ddelta, "/certify-ddelta", S.CertifyResponse),
    "pushforward-q": (handlers.pushforward_q, "/pushforward-q", S.PushforwardResponse),
    "named-class": (handlers.named_class, "/named-class", S.NamedClassResponse),
}


@click.group()
@click.option("--json", "as_json", is_flag=True, help="Emit machine-readable JSON.")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["table", "json"]),
    envvar=FORMAT_ENVVAR,
    default="table",
    show_default=True,
    help=f"Output format (env {FORMAT_ENVVAR}).",
)
@click.option("--url", envvar=URL_ENVVAR, default=None, help=f"Run against a remote service (env {URL_ENVVAR}).")
@click.pass_context
def main(ctx, as_json, fmt, url):
    """Exact cycle-class computations on blow-ups of projective space."""
    ctx.ensure_object(dict)
    ctx.obj["json"] = as_json or fmt == "json"
    ctx.obj["url"] = url


def _fail(message: str) -> "click.ClickException":
    exc = click.ClickException(message)
    exc.exit_code = 2
    return exc


def _run(ctx, command: str, request):
    handler, path, response_cls = _ROUTES[command]
    url = ctx.obj.get("url")
    try:
        if url:
            import httpx

            resp = httpx.post(
                url.rstrip("/") + path, json=request.model_dump(mode="json"), timeout=600.0
            )
            if resp.status_code != 200:
                raise _fail(f"service returned {resp.status_code}: {resp.text}")
            return response_cls.model_validate(resp.json())
        return handler(request)
    except BlowupCyclesError as exc:
        raise _fail(f"{type(exc).__name__}: {exc}")


def _emit(ctx, command: str, response, table_lines, exit_code: int = 0):
    if ctx.obj["json"]:
        payload = {"command": command, **response.model_dump(mode="json")}
        click.echo(json.dumps(payload, indent=2))
    else:
        for line in table_lines:
            click.echo(line)
    if exit_code:
        sys.exit(exit_code)


def _rat(value: str) -> Fraction:
    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"not an exact rational: {value!r}")


def _ambient_options(fn):
    fn = click.option("--ambient", "ambient_spec", default=None,
                      help="Shorthand 'n=4,r=7,dim=2,config=very-general'.")(fn)
    fn = click.option("--config", default=None, help="Point configuration tag.")(fn)
    fn = click.option("-r", "--points", "r", type=int, default=None, help="Number of blown-up points.")(fn)
    fn = click.option("-n", "--dim-ambient", "n", type=int, default=None, help="Projective space dimension.")(fn)
    return fn


def _resolve_ambient(n, r, config, ambient_spec, dim=None):
    if ambient_spec is not None:
        ambient, spec_dim = parse_ambient_spec(ambient_spec)
        if n is not None or r is not None or config is not None:
            raise click.BadParameter("--ambient replaces -n / -r / --config")
        return S.AmbientModel.from_ambient(ambient), dim if dim is not None else spec_dim
    if n is None or r is None:
        raise click.BadParameter("give -n and -r (or --ambient)")
    model = S.AmbientModel(n=n, r=r, config=config or "very-general")
    return model, dim


def _class_line(out: S.ClassOut, label="class") -> list[str]:
    mults = ", ".join(format_rational(b) for b in out.multiplicities)
    return [
        f"{label}: {out.text}",
        f"  dim {out.dim} on n={out.ambient.n},r={out.ambient.r}",
        f"  point-multiplicity form ({format_rational(out.degree)}; {mults})",
    ]


# ---------------------------------------------------------------------------


@main.command()
@_ambient_options
@click.option("--dim", type=int, required=False, help="Cycle dimension k.")
@click.option("-s", "--span-size", type=int, default=None, help="Override the span size (default k+1).")
@click.argument("cycle")
@click.pass_context
def decompose(ctx, n, r, config, ambient_spec, dim, span_size, cycle):
    """Decide and certify membership in the cone of linear cycle classes."""
    ambient, dim = _resolve_ambient(n, r, config, ambient_spec, dim)
    if dim is None:
        raise click.BadParameter("give --dim (or dim= in --ambient)")
    req = S.DecomposeRequest(ambient=ambient, dim=dim, cycle=S.ClassIn(text=cycle), span_size=span_size)
    out = _run(ctx, "decompose", req)
    lines = _class_line(out.cycle)
    if out.member:
        lines.append(f"member of the linear cone at span size {out.span_size}: yes")
        for term in out.decomposition:
            lines.append(f"  {format_rational(term.coefficient)} * {term.generator}")
        lines.append(f"  total plane degree {format_rational(out.linear_degree)}")
    else:
        lines.append(f"member of the linear cone at span size {out.span_size}: no")
        lines.append(f"  violated: {out.violation.description}")
    _emit(ctx, "decompose", out, lines, exit_code=0 if out.member else 1)


@main.command()
@_ambient_options
@click.option("--divisor", required=True, help="Divisor class, e.g. '2H - E1 - E2'.")
@click.option("--cycle", required=True, help="Cycle class to intersect.")
@click.option("--cycle-dim", type=int, required=True, help="Dimension of the cycle class.")
@click.pass_context
def intersect(ctx, n, r, config, ambient_spec, divisor, cycle, cycle_dim):
    """Intersect a divisor class with a cycle class."""
    ambient, _ = _resolve_ambient(n, r, config, ambient_spec)
    req = S.IntersectRequest(
        ambient=ambient, divisor=S.ClassIn(text=divisor), cycle=S.ClassIn(text=cycle), cycle_dim=cycle_dim
    )
    out = _run(ctx, "intersect", req)
    _emit(ctx, "intersect", out, _class_line(out.result, "intersection"))


@main.command()
@_ambient_options
@click.option("--divisor", required=True)
@click.option("--curve", required=True)
@click.pass_context
def pair(ctx, n, r, config, ambient_spec, divisor, curve):
    """Intersection number of a divisor class with a curve class."""
    ambient, _ = _resolve_ambient(n, r, config, ambient_spec)
    req = S.PairRequest(ambient=ambient, divisor=S.ClassIn(text=divisor), curve=S.ClassIn(text=curve))
    out = _run(ctx, "pair", req)
    _emit(ctx, "pair", out, [f"pairing = {format_rational(out.value)}"])


@main.command(name="top-self")
@_ambient_options
@click.argument("divisor")
@click.pass_context
def top_self(ctx, n, r, config, ambient_spec, divisor):
    """n-fold self-intersection of a divisor class."""
    ambient, _ = _resolve_ambient(n, r, config, ambient_spec)
    req = S.TopSelfRequest(ambient=ambient, divisor=S.ClassIn(text=divisor))
    out = _run(ctx, "top-self", req)
    _emit(ctx, "top-self", out, [f"top self-intersection = {format_rational(out.value)}"])


@main.command()
@_ambient_options
@click.option("--dim", type=int, required=False)
@click.argument("cycle")
@click.pass_context
def cone(ctx, n, r, config, ambient_spec, dim, cycle):
    """Class of the cone over a cycle (new vertex shown as E0)."""
    ambient, dim = _resolve_ambient(n, r, config, ambient_spec, dim)
    if dim is None:
        raise click.BadParameter("give --dim (or dim= in --ambient)")
    req = S.ConeRequest(ambient=ambient, dim=dim, cycle=S.ClassIn(text=cycle))
    out = _run(ctx, "cone", req)
    lines = [f"cone class: {out.vertex_zero_text}   (vertex labelled E0)"]
    lines += _class_line(out.result, "same class, 1-based labels")
    _emit(ctx, "cone", out, lines)


@main.command()
@_ambient_options
@click.option("--dim", type=int, required=False, help="Dimension of the cone class.")
@click.argument("cycle")
@click.pass_context
def section(ctx, n, r, config, ambient_spec, dim, cycle):
    """Hyperplane section of a cone class (input uses E0 for the vertex)."""
    ambient, dim = _resolve_ambient(n, r, config, ambient_spec, dim)
    if dim is None:
        raise click.BadParameter("give --dim (or dim= in --ambient)")
    req = S.SectionRequest(ambient=ambient, dim=dim, cycle=S.ClassIn(text=cycle))
    out = _run(ctx, "section", req)
    _emit(ctx, "section", out, _class_line(out.result, "section"))


@main.command(name="reduce-span")
@_ambient_options
@click.option("--dim", type=int, required=False)
@click.argument("cycle")
@click.pass_context
def reduce_span(ctx, n, r, config, ambient_spec, dim, cycle):
    """Reduce a class on degenerate points (collinear / span-dim:m) to their span."""
    ambient, dim = _resolve_ambient(n, r, config, ambient_spec, dim)
    if dim is None:
        raise click.BadParameter("give --dim (or dim= in --ambient)")
    req = S.ReduceSpanRequest(ambient=ambient, dim=dim, cycle=S.ClassIn(text=cycle))
    out = _run(ctx, "reduce-span", req)
    if out.linearly_generated:
        lines = ["linearly generated: yes", f"  {out.reason}"]
        lines += _class_line(out.generator, "spanning generator")
    else:
        lines = ["reduced to the span:"]
        lines += _class_line(out.reduced, "class")
    _emit(ctx, "reduce-span", out, lines)


@main.command(name="cremona-orbit")
@_ambient_options
@click.option("--start", default=None, help="Starting divisor class (default E1).")
@click.option("--max-word-length", type=int, required=True)
@click.option("--degree-cap", default=None, help="Discard images above this degree.")
@click.option("--resume", "resume_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Continue from a previous orbit dump.")
@click.option("--dump", "dump_path", type=click.Path(dir_okay=False), default=None,
              help="Write the orbit as 'degree;m_1,...,m_r;word_length' lines.")
@click.pass_context
def cremona_orbit(ctx, n, r, config, ambient_spec, start, max_word_length, degree_cap, resume_path, dump_path):
    """Breadth-first orbit of a divisor class under the reflection group."""
    ambient, _ = _resolve_ambient(n, r, config, ambient_spec)
    resume = None
    if resume_path:
        from .classgroup import Ambient, ConfigTag
        from .weyl import parse_orbit_dump

        amb = ambient.to_ambient()
        with open(resume_path) as fh:
            records = parse_orbit_dump(fh, amb)
        resume = [
            S.OrbitRecordModel(
                degree=c.degree, multiplicities=list(c.multiplicities), word_length=wl
            )
            for c, wl in records
        ]
    req = S.OrbitRequest(
        ambient=ambient,
        start=S.ClassIn(text=start) if start else None,
        max_word_length=max_word_length,
        degree_cap=_rat(degree_cap) if degree_cap else None,
        resume=resume,
        include_records=True,
    )
    out = _run(ctx, "cremona-orbit", req)
    if dump_path:
        with open(dump_path, "w") as fh:
            for rec in out.records:
                mults = ",".join(format_rational(b) for b in rec.multiplicities)
                fh.write(f"{format_rational(rec.degree)};{mults};{rec.word_length}\n")
    lines = [
        f"orbit elements found: {out.count}",
        f"max H-degree: {format_rational(out.max_degree)}",
        f"closed (full orbit reached): {out.closed}",
        f"word-length bound: {out.max_word_length}",
    ]
    if dump_path:
        lines.append(f"dump written to {dump_path}")
    _emit(ctx, "cremona-orbit", out, lines)


@main.command(name="group-type")
@click.option("-n", "--dim-ambient", "n", type=int, required=True)
@click.option("-r", "--points", "r", type=int, required=True)
@click.pass_context
def group_type(ctx, n, r):
    """Finite / affine / indefinite type of the reflection group."""
    out = _run(ctx, "group-type", S.GroupTypeRequest(n=n, r=r))
    _emit(ctx, "group-type", out, [
        f"type: {out.kind}",
        f"1/2 + 1/(n+1) + 1/(r-n-1) = {format_rational(out.value)}",
        f"infinite: {out.infinite}",
    ])


@main.command()
@click.option("-n", "--dim-ambient", "n", type=int, required=True)
@click.option("-r", "--points", "r", type=int, required=True)
@click.option("-k", "--cycle-dim", "k", type=int, required=True)
@click.option("--config", default="very-general", show_default=True)
@click.pass_context
def status(ctx, n, r, k, config):
    """Linear / finite generation status of the cone of k-cycles."""
    out = _run(ctx, "status", S.StatusRequest(n=n, r=r, k=k, config=config))
    lines = [
        f"linearly generated: {out.linear}",
        f"finitely generated: {out.finite}"
        + (f" (assuming {out.assumption})" if out.assumption else ""),
    ]
    for cit in out.citations:
        lines.append(f"  [{cit.rule}] {cit.statement}")
    for note in out.notes:
        lines.append(f"  note: {note}")
    _emit(ctx, "status", out, lines)


def _parse_mults(text: str) -> list[int]:
    out = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "x" in chunk:
            value, count = chunk.split("x", 1)
            out.extend([int(value)] * int(count))
        else:
            out.append(int(chunk))
    return out


@main.command(name="shgh-dim")
@click.option("-d", "--degree", type=int, required=True)
@click.option("-m", "--mults", required=True, help="Multiplicities, e.g. '18x10' or '3,2,2,1'.")
@click.pass_context
def shgh_dim(ctx, degree, mults):
    """Virtual section count for a planar system with assigned multiplicities."""
    req = S.ShghRequest(degree=degree, multiplicities=_parse_mults(mults))
    out = _run(ctx, "shgh-dim", req)
    _emit(ctx, "shgh-dim", out, [
        f"virtual count = {out.value}",
        f"counting hypothesis applies: {out.applicable} (degree margin {out.degree_margin})",
    ])


@main.command(name="certify-ddelta")
@click.option("--delta", required=True)
@click.option("--delta-prime", required=True)
@click.pass_context
def certify_ddelta(ctx, delta, delta_prime):
    """Exact extremality certificate for the null-ray divisor family on the quadric."""
    req = S.CertifyRequest(delta=_rat(delta), delta_prime=_rat(delta_prime))
    out = _run(ctx, "certify-ddelta", req)
    lines = []
    for check in out.checks:
        vals = ", ".join(f"{k} = {format_rational(v)}" for k, v in check.values)
        lines.append(f"{'pass' if check.passed else 'FAIL'}  {check.name}: {vals}")
    lines.append(f"overall: {'pass' if out.passed else 'FAIL'}")
    _emit(ctx, "certify-ddelta", out, lines, exit_code=0 if out.passed else 1)


@main.command(name="pushforward-q")
@click.option("--basis", type=click.Choice(["planar", "ruling"]), default="planar", show_default=True)
@click.argument("cycle")
@click.pass_context
def pushforward_q(ctx, basis, cycle):
    """Push a curve class on the quadric model forward to the 9-point blow-up of P^3."""
    req = S.PushforwardRequest(cycle=S.QuadricClassIn(basis=basis, text=cycle))
    out = _run(ctx, "pushforward-q", req)
    lines = _class_line(out.result, "pushforward")
    _emit(ctx, "pushforward-q", out, lines)


@main.command(name="named-class")
@click.argument("name")
@click.option("-P", "--param", "params", multiple=True, help="Integer parameter, e.g. -P n=3 -P r=9.")
@click.pass_context
def named_class(ctx, name, params):
    """Construct a catalogued example class and test its linear generation."""
    parsed = {}
    for p in params:
        if "=" not in p:
            raise click.BadParameter(f"expected key=value, got {p!r}")
        key, value = p.split("=", 1)
        parsed[key.strip()] = int(value)
    req = S.NamedClassRequest(name=name, params=parsed)
    out = _run(ctx, "named-class", req)
    lines = _class_line(out.result, name)
    if out.membership is not None:
        verdict = "yes" if out.membership.member else "no"
        lines.append(f"spanned by linear classes (span size {out.membership.span_size}): {verdict}")
        if not out.membership.member:
            lines.append(f"  violated: {out.membership.violation.description}")
    _emit(ctx, "named-class", out, lines)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("blowup_cycles.service.app:app", host=host, port=port)


if __name__ == "__main__":
    main()
