"""Separability certificates, their verifier, and a bounded brute-force oracle.

A certificate packages an instance ``(H, g, K, f)`` with a finite cover M and
claims that the coset Mf misses HgK.  The vertices of M are the right cosets
of M, so the claim is a finite orbit computation: collect the cosets M.h.g.k
and check that M.f is not among them.  The verifier re-derives everything
from the raw data and never trusts the code that built the cover.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import MalformedCertificate
from .graph import LabeledGraph, coset_orbit, is_complete, is_member, read, subgroup_core
from .words import Word, concat, format_word, invert, is_reduced, parse, reduce

CLAIM = "f_not_in_HgK"


@dataclass(frozen=True)
class Certificate:
    rank: int
    H: tuple[Word, ...]
    K: tuple[Word, ...]
    g: Word
    f: Word
    cover: LabeledGraph
    claim: str = CLAIM

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "H": [format_word(w) for w in self.H],
            "K": [format_word(w) for w in self.K],
            "g": format_word(self.g),
            "f": format_word(self.f),
            "claim": self.claim,
            "cover": self.cover.to_json(),
        }


def _check_words(words: Sequence[Word], rank: int) -> None:
    for w in words:
        if not is_reduced(w) or any(abs(x) > rank for x in w):
            raise MalformedCertificate(f"bad word {w!r} for rank {rank}")


def _check(c: Certificate) -> None:
    if c.claim != CLAIM:
        raise MalformedCertificate(f"unknown claim {c.claim!r}")
    if c.rank < 1 or c.cover.rank != c.rank:
        raise MalformedCertificate("cover rank does not match certificate rank")
    _check_words([*c.H, *c.K, c.g, c.f], c.rank)
    if not is_complete(c.cover):
        raise MalformedCertificate("cover is not complete")
    letters = range(1, c.rank + 1)
    if len(coset_orbit(c.cover, {c.cover.basepoint}, [(x,) for x in letters])) != c.cover.n:
        raise MalformedCertificate("cover is not connected")


def verify_certificate(c: Certificate) -> bool:
    """True iff the cover's coset of f lies outside the orbit of the cosets M.h.g.k."""
    _check(c)
    m = c.cover
    orbit = coset_orbit(m, {m.basepoint}, c.H)
    orbit = {read(m, v, c.g) for v in orbit}
    orbit = coset_orbit(m, orbit, c.K)
    return read(m, m.basepoint, c.f) not in orbit


def encode(c: Certificate) -> bytes:
    return (json.dumps(c.to_json(), sort_keys=True, separators=(",", ":")) + "\n").encode()


def decode(data: bytes | str) -> Certificate:
    try:
        obj = json.loads(data)
        rank = int(obj["rank"])
        c = Certificate(
            rank=rank,
            H=tuple(parse(w, rank) for w in obj["H"]),
            K=tuple(parse(w, rank) for w in obj["K"]),
            g=parse(obj["g"], rank),
            f=parse(obj["f"], rank),
            cover=LabeledGraph.from_json(obj["cover"]),
            claim=obj["claim"],
        )
    except (ValueError, KeyError, TypeError) as exc:
        raise MalformedCertificate(str(exc)) from exc
    _check(c)
    return c


def closed_words(core: LabeledGraph, bound: int):
    """Reduced words of length <= bound reading closed at the basepoint, shortest first."""
    start = core.basepoint
    queue = deque([(start, ())])
    while queue:
        v, w = queue.popleft()
        if v == start:
            yield w
        if len(w) == bound:
            continue
        for x, _, u in core.neighbours(v):
            if w and w[-1] == -x:
                continue
            queue.append((u, w + (x,)))


def brute_witness(H, g, K, f, bound: int, rank: int) -> tuple[Word, Word] | None:
    """Search for (h, k) with f = h g k, k ranging over K-words of length <= bound."""
    hsub = subgroup_core(H, rank)
    ksub = subgroup_core(K, rank)
    g, f = reduce(g), reduce(f)
    tail = invert(g)
    for k in closed_words(ksub.core, bound):
        h = concat(f, invert(k), tail)
        if is_member(hsub, h):
            return h, k
    return None


def brute_member(H, g, K, f, bound: int, rank: int) -> bool:
    return brute_witness(H, g, K, f, bound, rank) is not None
