"""Partition of data hyperedges by signature, built once per data hypergraph."""

from __future__ import annotations

import hashlib
import json
import os

from hypermatch.errors import IndexCacheError
from hypermatch.hypergraph import Hypergraph, Signature, signature_of

__all__ = ["SignatureIndex", "build_index", "lookup", "save_index", "load_index", "content_hash"]

_CACHE_VERSION = 1


class SignatureIndex:
    """Signature of every data hyperedge plus buckets ``signature -> ids``.

    Buckets are ascending id tuples and appear in order of their smallest id.
    """

    __slots__ = ("edge_signatures", "buckets")

    def __init__(self, edge_signatures, buckets):
        self.edge_signatures: tuple[Signature, ...] = tuple(edge_signatures)
        self.buckets: dict[Signature, tuple[int, ...]] = dict(buckets)

    def lookup(self, sig: Signature) -> tuple[int, ...]:
        return self.buckets.get(tuple(sig), ())

    def __len__(self) -> int:
        return len(self.edge_signatures)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SignatureIndex):
            return NotImplemented
        return self.edge_signatures == other.edge_signatures and list(
            self.buckets.items()
        ) == list(other.buckets.items())

    def __repr__(self) -> str:
        return f"SignatureIndex(|E|={len(self)}, buckets={len(self.buckets)})"


def build_index(h: Hypergraph) -> SignatureIndex:
    sigs = [signature_of(h, edge) for edge in h.edges]
    buckets: dict[Signature, list[int]] = {}
    for i, sig in enumerate(sigs):
        buckets.setdefault(sig, []).append(i)
    return SignatureIndex(sigs, {k: tuple(v) for k, v in buckets.items()})


def lookup(idx: SignatureIndex, sig: Signature) -> tuple[int, ...]:
    return idx.lookup(sig)


def content_hash(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def save_index(idx: SignatureIndex, path: str | os.PathLike, key: str) -> None:
    """Write ``idx`` as JSON tagged with ``key`` (usually :func:`content_hash`)."""
    payload = {
        "version": _CACHE_VERSION,
        "key": key,
        "edge_signatures": [list(s) for s in idx.edge_signatures],
        "buckets": [[list(sig), list(ids)] for sig, ids in idx.buckets.items()],
    }
    tmp = f"{os.fspath(path)}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, separators=(",", ":"))
    os.replace(tmp, path)


def load_index(path: str | os.PathLike, key: str) -> SignatureIndex:
    """Read an index cache; raise :class:`IndexCacheError` if stale or corrupt."""
    try:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
    except (OSError, ValueError) as exc:
        raise IndexCacheError(f"cannot read index cache {path}: {exc}") from exc
    if payload.get("version") != _CACHE_VERSION or payload.get("key") != key:
        raise IndexCacheError(f"index cache {path} does not match the data file")
    try:
        sigs = [tuple(s) for s in payload["edge_signatures"]]
        buckets = {tuple(sig): tuple(ids) for sig, ids in payload["buckets"]}
    except (KeyError, TypeError) as exc:
        raise IndexCacheError(f"malformed index cache {path}") from exc
    return SignatureIndex(sigs, buckets)
