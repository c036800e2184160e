"""Meldable heaps built from half-ordered binary trees: tournaments, one-pass
and eager binomial queues, rank-pairing heaps, and the tools to check them."""

from .core import (DeadHandleError, DuplicateIdError, EmptyHeapError, HeapError,
                   KindMismatchError, MeldableHeap, Node, UnsupportedOperation)
from .binomial import EagerBinomialQueue, OnePassBinomialQueue
from .pairing import PairingHeap
from .rpheap import POLICIES, RankPairingHeap, RankRule
from .tournament import TournamentHeap

__version__ = "0.1.0"

KINDS = ("rp1", "rp2", "bq-onepass", "bq-eager", "tournament", "pairing",
         "variantA:<b>", "capped:<d>")


def make_heap(kind: str, policy: str | None = None, verify: bool = True) -> MeldableHeap:
    """Return a new empty heap of the named kind.

    ``policy`` picks the delete-min match order of rank-pairing heaps.
    """
    if kind == "rp1":
        return RankPairingHeap("type1", policy, verify)
    if kind == "rp2":
        return RankPairingHeap("type2", policy, verify)
    name, _, arg = kind.partition(":")
    if name in ("variantA", "capped") and arg:
        try:
            n = int(arg)
        except ValueError:
            raise ValueError(f"unknown structure {kind!r}") from None
        rule = RankRule(name, b=n) if name == "variantA" else RankRule(name, d=n)
        return RankPairingHeap(rule, policy, verify)
    if policy is not None:
        raise ValueError(f"{kind} takes no match policy")
    simple = {
        "bq-onepass": OnePassBinomialQueue,
        "bq-eager": EagerBinomialQueue,
        "tournament": TournamentHeap,
        "pairing": PairingHeap,
    }
    if kind not in simple:
        raise ValueError(f"unknown structure {kind!r}")
    return simple[kind](verify)


def heap_factory(kind: str, policy: str | None = None, verify: bool = True):
    """Zero-argument constructor for ``kind``, validated once up front."""
    make_heap(kind, policy, verify)
    return lambda: make_heap(kind, policy, verify)


__all__ = [
    "make_heap", "heap_factory", "KINDS", "POLICIES", "RankRule",
    "RankPairingHeap", "OnePassBinomialQueue", "EagerBinomialQueue",
    "TournamentHeap", "PairingHeap", "MeldableHeap", "Node",
    "HeapError", "DeadHandleError", "DuplicateIdError", "KindMismatchError",
    "UnsupportedOperation", "EmptyHeapError",
]
