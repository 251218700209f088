"""Textual grammar for classes and ambient specifications.

    class  := term (('+'|'-') term)*
    term   := [integer|rational ['*']] symbol
    symbol := 'H' | 'E' index          (cycle classes, indices 1..r)

An ellipsis between two terms with the same coefficient and sign fills in the
intermediate indices, so ``57H - 18E1 - ... - 18E10`` expands to all ten
exceptional terms.  Rational coefficients are written ``p/q`` with no decimal
point.  The same machinery parses curve classes on the quadric model in either
of its two bases (symbols h, e0..e9 and r1, r2, f1..f9).

Ambient specifications read ``n=4,r=7,dim=2,config=very-general``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping

from .classgroup import Ambient, ConfigTag, CycleClass, make_class
from .errors import ClassSyntaxError, InvalidAmbient

_TOKEN = re.compile(
    r"""\s*(?:
        (?P<ellipsis>\.\.\.)
      | (?P<sign>[+-])
      | (?P<number>\d+(?:\s*/\s*\d+)?)
      | (?P<star>\*)
      | (?P<word>[A-Za-z]+\d*)
      | (?P<bad>\S)
    )""",
    re.VERBOSE,
)


def _tokenize(text: str):
    tokens = []
    for m in _TOKEN.finditer(text):
        kind = m.lastgroup
        if kind == "bad":
            raise ClassSyntaxError(f"unexpected character {m.group()!r}", m.start(kind))
        tokens.append((kind, m.group(kind), m.start(kind)))
    return tokens


_WORD_SPLIT = re.compile(r"^([A-Za-z]+)(\d*)$")


def parse_combination(text: str, symbols: Mapping[str, int], size: int) -> list[Fraction]:
    """Parse a signed linear combination of named symbols into a coefficient vector.

    ``symbols`` maps each symbol name to its slot; repeated symbols accumulate.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ClassSyntaxError("empty class expression", 0)

    # first pass: a flat list of terms and ellipsis markers, each with its sign
    items: list[tuple] = []
    pos = 0
    first = True
    while pos < len(tokens):
        sign = None
        if tokens[pos][0] == "sign":
            sign = -1 if tokens[pos][1] == "-" else 1
            pos += 1
        if pos < len(tokens) and tokens[pos][0] == "ellipsis":
            items.append(("ellipsis", sign, tokens[pos][2]))
            pos += 1
            first = False
            continue
        if not first and sign is None:
            at = tokens[pos][2] if pos < len(tokens) else tokens[-1][2]
            raise ClassSyntaxError("expected '+' or '-' between terms", at)
        coeff = Fraction(1)
        if pos < len(tokens) and tokens[pos][0] == "number":
            coeff = Fraction(tokens[pos][1].replace(" ", ""))
            pos += 1
            if pos < len(tokens) and tokens[pos][0] == "star":
                pos += 1
        if pos >= len(tokens) or tokens[pos][0] != "word":
            at = tokens[pos][2] if pos < len(tokens) else tokens[-1][2] + 1
            raise ClassSyntaxError("expected a symbol name", at)
        word = tokens[pos][1]
        if word not in symbols:
            raise ClassSyntaxError(f"unknown symbol {word!r}", tokens[pos][2])
        items.append(("term", 1 if sign is None else sign, coeff, word, tokens[pos][2]))
        pos += 1
        first = False

    # second pass: accumulate coefficients, expanding ellipses between terms
    coeffs = [Fraction(0)] * size
    prev_term = None
    pending: tuple | None = None
    for item in items:
        if item[0] == "ellipsis":
            if prev_term is None or pending is not None:
                raise ClassSyntaxError("ellipsis with no preceding term", item[2])
            pending = item
            continue
        _, sign, coeff, word, at = item
        if pending is not None:
            if pending[1] is not None and pending[1] != sign:
                raise ClassSyntaxError("ellipsis sign does not match the following term", at)
            _expand_ellipsis(coeffs, symbols, prev_term, (sign, coeff, word, at))
            pending = None
        coeffs[symbols[word]] += sign * coeff
        prev_term = (sign, coeff, word, at)
    if pending is not None:
        raise ClassSyntaxError("dangling ellipsis", pending[2])
    return coeffs


def _expand_ellipsis(coeffs, symbols, before, after):
    """Fill the symbols strictly between two indexed terms of equal coefficient."""
    sign_b, coeff_b, word_b, at_b = before
    sign_a, coeff_a, word_a, at_a = after
    if (sign_b, coeff_b) != (sign_a, coeff_a):
        raise ClassSyntaxError("ellipsis endpoints must have the same coefficient", at_a)
    mb = _WORD_SPLIT.match(word_b)
    ma = _WORD_SPLIT.match(word_a)
    if not mb or not ma or mb.group(1) != ma.group(1) or not mb.group(2) or not ma.group(2):
        raise ClassSyntaxError("ellipsis endpoints must be indexed symbols of the same family", at_a)
    prefix = mb.group(1)
    lo, hi = int(mb.group(2)), int(ma.group(2))
    if lo >= hi:
        raise ClassSyntaxError("ellipsis endpoints must have increasing indices", at_a)
    for idx in range(lo + 1, hi):
        name = f"{prefix}{idx}"
        if name not in symbols:
            raise ClassSyntaxError(f"ellipsis passes through unknown symbol {name!r}", at_a)
        coeffs[symbols[name]] += sign_a * coeff_a


def class_symbols(r: int, vertex_zero: bool = False) -> dict[str, int]:
    """Symbol table for classes on a blow-up with r points.

    Default labels are H, E1..Er.  With ``vertex_zero`` the first exceptional
    slot is labelled E0 (the cone vertex) and the rest E1..E(r-1), matching the
    display convention of the cone and section commands.
    """
    table = {"H": 0}
    if vertex_zero:
        for i in range(r):
            table[f"E{i}"] = i + 1
    else:
        for i in range(1, r + 1):
            table[f"E{i}"] = i
    return table


def parse_class(text: str, ambient: Ambient, dim: int, vertex_zero: bool = False) -> CycleClass:
    """Parse the textual grammar into a class of the given dimension."""
    try:
        coeffs = parse_combination(text, class_symbols(ambient.r, vertex_zero), ambient.rank)
    except ClassSyntaxError as exc:
        if "unknown symbol 'E" in exc.message:
            lo = 0 if vertex_zero else 1
            hi = ambient.r - 1 if vertex_zero else ambient.r
            raise ClassSyntaxError(
                f"exceptional index out of range {lo}..{hi}: {exc.message}", exc.position
            ) from exc
        raise
    return make_class(ambient, dim, coeffs)


def format_class(cycle: CycleClass, vertex_zero: bool = False) -> str:
    """Canonical text for a class; inverse of parse_class up to normal form."""
    from .classgroup import format_terms

    names = sorted(class_symbols(cycle.ambient.r, vertex_zero).items(), key=lambda kv: kv[1])
    return format_terms([(cycle.coeffs[slot], name) for name, slot in names])


def parse_ambient_spec(text: str) -> tuple[Ambient, int | None]:
    """Parse 'n=4,r=7,dim=2,config=very-general'; dim and config are optional."""
    fields: dict[str, str] = {}
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise InvalidAmbient(f"expected key=value in ambient spec, got {chunk!r}")
        key, value = chunk.split("=", 1)
        key = key.strip()
        if key in fields:
            raise InvalidAmbient(f"repeated key {key!r} in ambient spec")
        fields[key] = value.strip()
    unknown = set(fields) - {"n", "r", "dim", "config"}
    if unknown:
        raise InvalidAmbient(f"unknown ambient keys {sorted(unknown)}")
    if "n" not in fields or "r" not in fields:
        raise InvalidAmbient("ambient spec needs at least n=... and r=...")
    try:
        n = int(fields["n"])
        r = int(fields["r"])
        dim = int(fields["dim"]) if "dim" in fields else None
    except ValueError as exc:
        raise InvalidAmbient(f"non-integer value in ambient spec {text!r}") from exc
    config = ConfigTag.parse(fields["config"]) if "config" in fields else None
    ambient = Ambient(n, r, config) if config is not None else Ambient(n, r)
    return ambient, dim
