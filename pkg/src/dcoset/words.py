"""Freely reduced words in a free group of finite rank.

A letter is a nonzero int: ``i`` is the i-th generator, ``-i`` its inverse.
A word is a tuple of letters.  All public operations return reduced words.

The compact text format writes generator ``i`` as the i-th lowercase ASCII
letter and its inverse in uppercase; the identity prints as ``"1"``.
"""
from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import UnknownLetter

Letter = int
Word = tuple[int, ...]

IDENTITY: Word = ()
MAX_COMPACT_RANK = 26


@dataclass(frozen=True)
class Alphabet:
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"rank must be >= 1, got {self.rank}")

    @property
    def letters(self) -> range:
        return range(1, self.rank + 1)

    def parse(self, text: str) -> Word:
        return parse(text, self.rank)

    def contains(self, w: Sequence[Letter]) -> bool:
        return all(0 < abs(x) <= self.rank for x in w)


def reduce(letters: Iterable[Letter]) -> Word:
    out: list[int] = []
    for x in letters:
        if x == 0:
            raise UnknownLetter("letter index 0")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def is_reduced(w: Sequence[Letter]) -> bool:
    return all(w[i] != -w[i + 1] for i in range(len(w) - 1)) and 0 not in w


def invert(w: Sequence[Letter]) -> Word:
    return tuple(-x for x in reversed(w))


def concat(*words: Sequence[Letter]) -> Word:
    out: list[int] = []
    for w in words:
        for x in w:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return tuple(out)


def conjugate(g: Sequence[Letter], w: Sequence[Letter]) -> Word:
    """Return g w g^-1."""
    return concat(g, w, invert(g))


def parse(text: str, rank: int | None = None) -> Word:
    """Parse the compact format; whitespace is ignored, "1" and "" are the identity."""
    s = "".join(text.split())
    if s == "1":
        return IDENTITY
    out = []
    for ch in s:
        if ch not in string.ascii_letters:
            raise UnknownLetter(f"unexpected character {ch!r} in {text!r}")
        idx = string.ascii_lowercase.index(ch.lower()) + 1
        if rank is not None and idx > rank:
            raise UnknownLetter(f"letter {ch!r} exceeds rank {rank}")
        out.append(idx if ch.islower() else -idx)
    return reduce(out)


def format_word(w: Sequence[Letter]) -> str:
    if not w:
        return "1"
    chars = []
    for x in w:
        if abs(x) > MAX_COMPACT_RANK:
            raise UnknownLetter(f"letter {x} has no compact encoding")
        ch = string.ascii_lowercase[abs(x) - 1]
        chars.append(ch if x > 0 else ch.upper())
    return "".join(chars)


def parse_list(text: str, rank: int | None = None) -> list[Word]:
    """Comma-separated generator list; identity entries are dropped."""
    out = []
    for part in text.split(","):
        if not part.strip():
            continue
        w = parse(part, rank)
        if w:
            out.append(w)
    return out


def format_list(words: Iterable[Sequence[Letter]]) -> str:
    return ",".join(format_word(w) for w in words) or "1"


def max_letter(words: Iterable[Sequence[Letter]]) -> int:
    return max((abs(x) for w in words for x in w), default=0)
