"""Free-group words, the integral group ring Z[F], and Fox derivatives.

A word is a tuple of letters ``(generator_index, exponent)`` with exponent
``+1`` or ``-1``, always freely reduced.  Group ring elements are immutable
maps from words to nonzero integers.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Sequence

Letter = tuple[int, int]

_TOKEN = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


class Word(tuple):
    """A freely reduced word in the generators ``x_0, x_1, ...``."""

    __slots__ = ()

    def __new__(cls, letters: Iterable[Letter] = ()):
        stack: list[Letter] = []
        for gen, exp in letters:
            if exp not in (1, -1):
                raise ValueError(f"letter exponent must be +1 or -1, got {exp}")
            if stack and stack[-1][0] == gen and stack[-1][1] == -exp:
                stack.pop()
            else:
                stack.append((int(gen), exp))
        return super().__new__(cls, stack)

    @classmethod
    def generator(cls, index: int, exponent: int = 1) -> "Word":
        if exponent == 0:
            return cls()
        sign = 1 if exponent > 0 else -1
        return cls([(index, sign)] * abs(exponent))

    def __mul__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return Word(tuple.__add__(self, other))

    def inverse(self) -> "Word":
        return Word((g, -e) for g, e in reversed(self))

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else self.inverse()
        out = Word()
        for _ in range(abs(n)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return len(self) == 0

    def generators(self) -> set[int]:
        return {g for g, _ in self}

    def __repr__(self):
        return f"Word({format_word(self)!r})"


def reduce(letters: Iterable[Letter]) -> Word:
    return Word(letters)


def mul(u: Word, v: Word) -> Word:
    return u * v


def inv(u: Word) -> Word:
    return u.inverse()


def exponent_sum(w: Sequence[Letter], weights: Sequence[int] | None = None) -> int:
    """Weighted exponent sum; with unit weights this is the abelianization."""
    if weights is None:
        return sum(e for _, e in w)
    return sum(weights[g] * e for g, e in w)


class GroupRingElement:
    """An element of Z[F]: a finite integer combination of reduced words."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Word, int] | Iterable[tuple[Word, int]] = ()):
        acc: dict[Word, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            w = w if isinstance(w, Word) else Word(w)
            acc[w] = acc.get(w, 0) + c
        self._terms = {w: c for w, c in acc.items() if c}
        self._hash = None

    @classmethod
    def from_word(cls, w: Word, coeff: int = 1) -> "GroupRingElement":
        return cls({w: coeff})

    @classmethod
    def one(cls) -> "GroupRingElement":
        return cls({Word(): 1})

    @classmethod
    def zero(cls) -> "GroupRingElement":
        return cls()

    @property
    def terms(self) -> dict[Word, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = GroupRingElement({Word(): other})
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    @staticmethod
    def _coerce(x) -> "GroupRingElement":
        if isinstance(x, GroupRingElement):
            return x
        if isinstance(x, Word):
            return GroupRingElement({x: 1})
        if isinstance(x, int):
            return GroupRingElement({Word(): x})
        raise TypeError(f"cannot coerce {type(x).__name__} to a group ring element")

    def __add__(self, other):
        other = self._coerce(other)
        return GroupRingElement(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        acc: dict[Word, int] = {}
        for u, a in self._terms.items():
            for v, b in other._terms.items():
                w = u * v
                acc[w] = acc.get(w, 0) + a * b
        return GroupRingElement(acc)

    def __rmul__(self, other):
        return self._coerce(other) * self

    def augmentation(self) -> int:
        return sum(self._terms.values())

    def __repr__(self):
        return f"GroupRingElement({format_element(self)!r})"


def fox_derivative(w, j: int) -> GroupRingElement:
    """Fox partial derivative with respect to generator ``j``.

    For a word this walks left to right using the product rule: a letter
    ``x_j`` contributes the current prefix, ``x_j^-1`` contributes minus the
    prefix times ``x_j^-1``.  Ring elements are handled by linearity.
    """
    if isinstance(w, GroupRingElement):
        out = GroupRingElement()
        for word, c in w.items():
            out = out + GroupRingElement({v: c * a for v, a in fox_derivative(word, j).items()})
        return out
    if not isinstance(w, Word):
        w = Word(w)
    acc: dict[Word, int] = {}
    prefix = Word()
    for letter in w:
        g, e = letter
        if g == j:
            if e == 1:
                acc[prefix] = acc.get(prefix, 0) + 1
            else:
                key = prefix * Word([letter])
                acc[key] = acc.get(key, 0) - 1
        prefix = prefix * Word([letter])
    return GroupRingElement(acc)


def parse_word(text: str, names: Sequence[str]) -> Word:
    """Parse ``x0 x1 x0^-1`` style text against the given generator names.

    Integer exponents other than -1 are expanded (``x0^3`` is ``x0 x0 x0``).
    """
    index = {n: i for i, n in enumerate(names)}
    letters: list[Letter] = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"malformed letter {tok!r}")
        name, exp = m.group(1), int(m.group(2) or 1)
        if name not in index:
            raise ValueError(f"undeclared generator {name!r}")
        letters.extend(Word.generator(index[name], exp))
    return Word(letters)


def format_word(w: Sequence[Letter], names: Sequence[str] | None = None) -> str:
    if not w:
        return "1"
    out = []
    for g, e in w:
        name = names[g] if names is not None else f"x{g}"
        out.append(name if e == 1 else f"{name}^-1")
    return " ".join(out)


def format_element(e: GroupRingElement, names: Sequence[str] | None = None) -> str:
    if not e:
        return "0"
    parts = []
    for w, c in sorted(e.items(), key=lambda wc: (len(wc[0]), wc[0])):
        body = format_word(w, names)
        if body == "1":
            parts.append(str(c))
        elif c == 1:
            parts.append(body)
        elif c == -1:
            parts.append(f"-{body}")
        else:
            parts.append(f"{c}*{body}")
    return " + ".join(parts).replace("+ -", "- ")
