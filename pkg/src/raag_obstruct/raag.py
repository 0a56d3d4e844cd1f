"""Words in right-angled Artin groups.

A word is a sequence of syllables ``(vertex, exponent)`` over a defining
graph. Two syllables commute when their vertices are adjacent. The normal
form used here cancels and merges syllables that can be shuffled next to
each other, then takes the lexicographically least shuffle of the result,
so two words are equal in the group iff their normal forms coincide.
"""

from __future__ import annotations

import re

from .graph import GraphError, SimplicialGraph


class AmbientMismatch(ValueError):
    pass


def _reduce(G, syllables):
    out = []
    for v, e in syllables:
        if e == 0:
            continue
        # walk left over syllables that commute with v; stop at the first
        # blocker or at a syllable on v itself, which absorbs this one
        i = len(out) - 1
        while i >= 0:
            u = out[i][0]
            if u == v:
                break
            if not G.adjacent(u, v):
                i = -1
                break
            i -= 1
        if i >= 0:
            total = out[i][1] + e
            if total:
                out[i] = (v, total)
            else:
                del out[i]
        else:
            out.append((v, e))
    return out


def _lex_least(G, syllables):
    rest = list(syllables)
    out = []
    while rest:
        best = None
        for j, (v, _) in enumerate(rest):
            if all(G.adjacent(u, v) for u, _ in rest[:j]):
                if best is None or v < rest[best][0]:
                    best = j
        out.append(rest.pop(best))
    return out


class RaagWord:
    """An element of A(Γ) written as syllables; compare via :meth:`normal_form`."""

    __slots__ = ("ambient", "syllables")

    def __init__(self, ambient: SimplicialGraph, syllables=()):
        syl = []
        for v, e in syllables:
            v, e = int(v), int(e)
            if not 0 <= v < ambient.n:
                raise GraphError(f"generator {v} is not a vertex of the ambient graph")
            if e == 0:
                raise ValueError("syllable exponents must be nonzero")
            syl.append((v, e))
        self.ambient = ambient
        self.syllables = tuple(syl)

    @classmethod
    def generator(cls, ambient, v, e=1):
        return cls(ambient, [(v, e)])

    @classmethod
    def identity(cls, ambient):
        return cls(ambient)

    @classmethod
    def parse(cls, ambient: SimplicialGraph, text: str):
        """Parse ``"a^1 b^-2"``; a bare ``a`` means ``a^1``, ``""`` or ``"1"`` the identity."""
        text = text.strip()
        if text in ("", "1"):
            return cls(ambient)
        syl = []
        for tok in text.split():
            m = re.fullmatch(r"([^\s^]+)(?:\^([+-]?\d+))?", tok)
            if not m:
                raise ValueError(f"bad syllable {tok!r}")
            syl.append((ambient.vertex(m.group(1)), int(m.group(2) or 1)))
        return cls(ambient, syl)

    def format(self) -> str:
        return " ".join(f"{self.ambient.label(v)}^{e}" for v, e in self.syllables)

    def _check(self, other):
        if self.ambient != other.ambient:
            raise AmbientMismatch("words live over different defining graphs")

    def __mul__(self, other):
        self._check(other)
        return RaagWord(self.ambient, _reduce(self.ambient, self.syllables + other.syllables))

    def inverse(self):
        return RaagWord(self.ambient, [(v, -e) for v, e in reversed(self.syllables)])

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** -k
        result = RaagWord(self.ambient)
        base = self.normal_form()
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result.normal_form()

    def normal_form(self):
        G = self.ambient
        return RaagWord(G, _lex_least(G, _reduce(G, self.syllables)))

    def is_identity(self) -> bool:
        return not _reduce(self.ambient, self.syllables)

    def exponent_sum(self, v: int) -> int:
        return sum(e for u, e in self.syllables if u == v)

    def __eq__(self, other):
        if not isinstance(other, RaagWord):
            return NotImplemented
        return self.ambient == other.ambient and self.syllables == other.syllables

    def __hash__(self):
        return hash(self.syllables)

    def __len__(self):
        return len(self.syllables)

    def __repr__(self):
        return f"RaagWord({self.format() or '1'})"


def normal_form(w: RaagWord) -> RaagWord:
    return w.normal_form()


def support(w: RaagWord) -> frozenset:
    """Vertices occurring in a reduced word for ``w``."""
    return frozenset(v for v, _ in _reduce(w.ambient, w.syllables))


def commutator(w1: RaagWord, w2: RaagWord) -> RaagWord:
    w1._check(w2)
    return (w1 * w2 * w1.inverse() * w2.inverse()).normal_form()


def commutes(w1: RaagWord, w2: RaagWord) -> bool:
    return commutator(w1, w2).is_identity()


def equal(w1: RaagWord, w2: RaagWord) -> bool:
    w1._check(w2)
    return (w1 * w2.inverse()).is_identity()
