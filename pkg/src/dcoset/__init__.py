"""Double cosets HgK in free groups: Stallings graphs, finite-cover completion,
exact membership, and checkable finite-index separators."""
from .certify import Certificate, brute_member, decode, encode, verify_certificate
from .completion import complete, hall_witness
from .double_coset import member, separability_witness
from .graph import LabeledGraph, Subgroup, subgroup_core
from .words import Alphabet, format_word, parse

__all__ = [
    "Alphabet",
    "Certificate",
    "LabeledGraph",
    "Subgroup",
    "brute_member",
    "complete",
    "decode",
    "encode",
    "format_word",
    "hall_witness",
    "member",
    "parse",
    "separability_witness",
    "subgroup_core",
    "verify_certificate",
]
