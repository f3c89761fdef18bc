"""Text grammar for integral two-forms.

    form := term (('+'|'-') term)*
    term := [uint '*']? gen '^' gen
    gen  := ('x'|'y') uint        (subscript in 1..g)

Whitespace-insensitive.  Parsing, printing and expansion to multivectors;
printing folds negative signs into the generator order (u^v = -v^u) so the
canonical text always matches the grammar.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exterior import AlgebraContext, MultiVector


class FormParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class FormTerm:
    sign: int
    coefficient: int
    left: tuple[str, int]
    right: tuple[str, int]


@dataclass(frozen=True)
class FormExpression:
    source: str
    terms: tuple[FormTerm, ...]
    g: int

    def to_multivector(self, ctx: AlgebraContext) -> MultiVector:
        if ctx.g != self.g:
            raise ValueError("context dimension differs from the parsed form")
        out = ctx.zero()
        for t in self.terms:
            u = _generator(ctx, t.left)
            v = _generator(ctx, t.right)
            out = out + (t.sign * t.coefficient) * (u * v)
        return out

    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for idx, t in enumerate(self.terms):
            left, right, sign = t.left, t.right, t.sign
            if sign < 0 and left != right:
                left, right = right, left
                sign = 1
            body = f"{_gen_text(left)}^{_gen_text(right)}"
            if t.coefficient != 1:
                body = f"{t.coefficient}*{body}"
            if idx == 0:
                parts.append(body if sign > 0 else f"{body}")
            else:
                parts.append(("+ " if sign > 0 else "- ") + body)
        return " ".join(parts)


def _generator(ctx: AlgebraContext, gen: tuple[str, int]) -> MultiVector:
    kind, i = gen
    return ctx.x(i) if kind == "x" else ctx.y(i)


def _gen_text(gen: tuple[str, int]) -> str:
    return f"{gen[0]}{gen[1]}"


def parse_form(text: str, g: int) -> FormExpression:
    """Parse a two-form in the grammar above; errors carry the position."""
    terms = []
    pos = 0
    n = len(text)

    def skip_ws(p):
        while p < n and text[p].isspace():
            p += 1
        return p

    def parse_uint(p):
        q = p
        while q < n and text[q].isdigit():
            q += 1
        if q == p:
            raise FormParseError("expected a number", p)
        return int(text[p:q]), q

    def parse_gen(p):
        p = skip_ws(p)
        if p >= n or text[p] not in "xy":
            raise FormParseError("expected a generator x<i> or y<i>", p)
        kind = text[p]
        value, q = parse_uint(p + 1)
        if not 1 <= value <= g:
            raise FormParseError(f"generator subscript {value} out of range 1..{g}", p)
        return (kind, value), q

    def parse_term(p, sign):
        p = skip_ws(p)
        coefficient = 1
        if p < n and text[p].isdigit():
            coefficient, p = parse_uint(p)
            p = skip_ws(p)
            if p >= n or text[p] != "*":
                raise FormParseError("expected '*' after coefficient", p)
            p += 1
        if coefficient < 1:
            raise FormParseError("coefficient must be positive", p)
        left, p = parse_gen(p)
        p = skip_ws(p)
        if p >= n or text[p] != "^":
            raise FormParseError("expected '^' between generators", p)
        right, p = parse_gen(p + 1)
        terms.append(FormTerm(sign, coefficient, left, right))
        return p

    pos = skip_ws(pos)
    if pos >= n:
        raise FormParseError("empty form", pos)
    pos = parse_term(pos, 1)
    while True:
        pos = skip_ws(pos)
        if pos >= n:
            break
        if text[pos] == "+":
            pos = parse_term(pos + 1, 1)
        elif text[pos] == "-":
            pos = parse_term(pos + 1, -1)
        else:
            raise FormParseError(f"unexpected character {text[pos]!r}", pos)
    return FormExpression(text, tuple(terms), g)


def form_text_from_coordinates(ctx: AlgebraContext, coords) -> str:
    """Grammar text for a two-form with nonnegative integer coordinates."""
    parts = []
    for mask, coeff in zip(ctx.blades(2), coords):
        coeff = int(coeff)
        if not coeff:
            continue
        i, j = (k for k in range(ctx.n_generators) if mask >> k & 1)
        body = f"{ctx.generator_name(i + 1)}^{ctx.generator_name(j + 1)}"
        if coeff != 1:
            body = f"{coeff}*{body}"
        parts.append(body)
    return " + ".join(parts) if parts else "0"
