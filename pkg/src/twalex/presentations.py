"""Deficiency-one group presentations with abelianization weights.

Text grammar::

    gens: x0 x1 x2 ; rels: x0 x1 x0^-1 x2^-1 , x1 x2 x1^-1 x0^-1

Whitespace (including newlines) is free.  A relator may also be written as an
equation ``u = v``; it is stored as the relator ``u v^-1``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .group_algebra import Word, exponent_sum, format_word

_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_LETTER = re.compile(r"([A-Za-z][A-Za-z0-9_]*)(?:\^(-?\d+))?")


class PresentationError(ValueError):
    """Malformed or invalid presentation."""


class PresentationSyntaxError(PresentationError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Presentation:
    generator_names: tuple[str, ...]
    relators: tuple[Word, ...]
    deleted_generator: str = ""
    epsilon: tuple[int, ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        names = tuple(self.generator_names)
        object.__setattr__(self, "generator_names", names)
        object.__setattr__(self, "relators", tuple(Word(r) for r in self.relators))
        if not names:
            raise PresentationError("presentation needs at least one generator")
        if len(set(names)) != len(names):
            raise PresentationError("duplicate generator names")
        for n in names:
            if not _NAME.fullmatch(n):
                raise PresentationError(f"invalid generator name {n!r}")
        if not self.deleted_generator:
            object.__setattr__(self, "deleted_generator", names[0])
        elif self.deleted_generator not in names:
            raise PresentationError(f"deleted generator {self.deleted_generator!r} is not a generator")
        eps = tuple(self.epsilon) if self.epsilon else (1,) * len(names)
        if len(eps) != len(names):
            raise PresentationError("one epsilon weight is needed per generator")
        object.__setattr__(self, "epsilon", eps)
        if len(names) != len(self.relators) + 1:
            raise PresentationError(
                f"deficiency must be one: {len(names)} generators, {len(self.relators)} relators"
            )
        for i, r in enumerate(self.relators):
            for g, _ in r:
                if not 0 <= g < len(names):
                    raise PresentationError(f"relator {i + 1} uses undeclared generator index {g}")
            s = exponent_sum(r, eps)
            if s:
                raise PresentationError(
                    f"relator {i + 1} ({format_word(r, names)}) has weighted exponent sum {s} != 0"
                )

    @property
    def num_generators(self) -> int:
        return len(self.generator_names)

    def index(self, name: str) -> int:
        try:
            return self.generator_names.index(name)
        except ValueError:
            raise PresentationError(f"unknown generator {name!r}") from None

    def with_deleted(self, name: str) -> "Presentation":
        self.index(name)
        return Presentation(self.generator_names, self.relators, name, self.epsilon, self.name)

    def word(self, text: str) -> Word:
        from .group_algebra import parse_word

        return parse_word(text, self.generator_names)

    def describe(self) -> str:
        return self.name or render(self)


def render(p: Presentation) -> str:
    rels = " , ".join(format_word(r, p.generator_names) for r in p.relators)
    return f"gens: {' '.join(p.generator_names)} ; rels: {rels}".rstrip()


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def where(self, pos: int | None = None) -> tuple[int, int]:
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def error(self, msg: str, pos: int | None = None):
        return PresentationSyntaxError(msg, *self.where(pos))

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, lit: str):
        self.skip()
        if not self.text.startswith(lit, self.pos):
            raise self.error(f"expected {lit!r}")
        self.pos += len(lit)

    def peek(self, lit: str) -> bool:
        self.skip()
        return self.text.startswith(lit, self.pos)

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)

    def letter(self):
        self.skip()
        m = _LETTER.match(self.text, self.pos)
        if not m:
            return None
        start = self.pos
        self.pos = m.end()
        return m.group(1), int(m.group(2) or 1), start


def parse(text: str, name: str = "") -> Presentation:
    """Parse the ``gens: ... ; rels: ...`` grammar, or a JSON document."""
    if text.lstrip().startswith("{"):
        return from_json(json.loads(text), name=name)
    sc = _Scanner(text)
    sc.expect("gens:")
    gens: list[str] = []
    while True:
        sc.skip()
        m = _NAME.match(sc.text, sc.pos)
        if not m or sc.text.startswith("rels:", sc.pos):
            break
        gens.append(m.group(0))
        sc.pos = m.end()
    if not gens:
        raise sc.error("expected at least one generator name")
    sc.expect(";")
    sc.expect("rels:")
    index = {g: i for i, g in enumerate(gens)}

    def word() -> list:
        letters = []
        while True:
            tok = sc.letter()
            if tok is None:
                return letters
            gname, exp, start = tok
            if gname not in index:
                raise sc.error(f"undeclared generator {gname!r}", start)
            letters.extend(Word.generator(index[gname], exp))

    rels: list[Word] = []
    if not sc.at_end():
        while True:
            start = sc.pos
            lhs = word()
            if sc.peek("="):
                sc.pos += 1
                rhs = word()
                rel = Word(lhs) * Word(rhs).inverse()
            else:
                rel = Word(lhs)
            if not lhs:
                raise sc.error("expected a relator", start)
            rels.append(rel)
            if sc.at_end():
                break
            if not sc.peek(","):
                raise sc.error("expected ',' or end of input")
            sc.pos += 1
    return Presentation(tuple(gens), tuple(rels), name=name)


def from_json(doc: Mapping, name: str = "") -> Presentation:
    """Structured form: ``{"generators": [...], "relators": [[["x0", 1], ...], ...]}``.

    Relators may also be given as word strings.  Optional keys:
    ``deleted_generator``, ``epsilon`` (list or name -> weight map), ``name``.
    """
    try:
        gens = [str(g) for g in doc["generators"]]
        raw_rels = doc.get("relators", [])
    except (KeyError, TypeError) as exc:
        raise PresentationError(f"presentation JSON needs 'generators': {exc}") from None
    index = {g: i for i, g in enumerate(gens)}
    rels = []
    for i, r in enumerate(raw_rels):
        if isinstance(r, str):
            from .group_algebra import parse_word

            try:
                rels.append(parse_word(r, gens))
            except ValueError as exc:
                raise PresentationError(f"relator {i + 1}: {exc}") from None
            continue
        letters = []
        for pair in r:
            try:
                gname, exp = pair
                exp = int(exp)
            except (TypeError, ValueError):
                raise PresentationError(f"relator {i + 1}: bad letter {pair!r}") from None
            if gname not in index:
                raise PresentationError(f"relator {i + 1}: undeclared generator {gname!r}")
            letters.extend(Word.generator(index[gname], exp))
        rels.append(Word(letters))
    eps = doc.get("epsilon") or ()
    if isinstance(eps, Mapping):
        eps = tuple(int(eps.get(g, 1)) for g in gens)
    return Presentation(
        tuple(gens),
        tuple(rels),
        deleted_generator=doc.get("deleted_generator", "") or "",
        epsilon=tuple(int(e) for e in eps),
        name=doc.get("name", name) or name,
    )


def to_json(p: Presentation) -> dict:
    doc = {
        "generators": list(p.generator_names),
        "relators": [[[p.generator_names[g], e] for g, e in r] for r in p.relators],
        "deleted_generator": p.deleted_generator,
        "epsilon": list(p.epsilon),
    }
    if p.name:
        doc["name"] = p.name
    return doc


_BUILTINS = {
    # x0 x1 = x2 x0 and x1 x2 = x0 x1, each moved to one side
    "trefoil": "gens: x0 x1 x2 ; rels: x0 x1 x0^-1 x2^-1 , x1 x2 x1^-1 x0^-1",
    # two-bridge form w a w^-1 = b with w = a^-1 b a b^-1
    "figure8": "gens: a b ; rels: a^-1 b a b^-1 a b a^-1 b^-1 a b^-1",
}


def builtin(name: str) -> Presentation:
    try:
        text = _BUILTINS[name]
    except KeyError:
        raise PresentationError(
            f"unknown builtin presentation {name!r} (known: {', '.join(sorted(_BUILTINS))})"
        ) from None
    return parse(text, name=name)


def builtin_names() -> list[str]:
    return sorted(_BUILTINS)


def _conjugation_shape(r: Sequence) -> bool:
    # w x_a w^-1 x_b^-1: last letter inverse, and the rest is a conjugate of a generator
    if len(r) < 2 or r[-1][1] != -1:
        return False
    body = list(r[:-1])
    if len(body) % 2 == 0:
        return False
    mid = len(body) // 2
    w, xa, w_inv = body[:mid], body[mid], body[mid + 1:]
    if xa[1] != 1:
        return False
    return Word(w).inverse() == Word(w_inv)


def is_wirtinger(p: Presentation) -> bool:
    """Every relator is ``w x_a w^-1 x_b^-1``, up to inversion and cyclic rotation, and all weights are 1."""
    if any(e != 1 for e in p.epsilon):
        return False
    for r in p.relators:
        forms = (list(r), list(r.inverse()))
        if not any(_conjugation_shape(ls[k:] + ls[:k]) for ls in forms for k in range(len(ls))):
            return False
    return True
