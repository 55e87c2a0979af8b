"""Versioned binary container for built indexes.

One file holds a JSON manifest plus named binary sections (little-endian
int64 arrays or raw bytes) with a payload digest, so a corrupted or
truncated file is rejected at load. Only primary payloads are persisted
(sets, text, suffix array, interval tables); derived structures are
rebuilt deterministically on load, which keeps the container portable and
query outputs bit-exact across save/load.
"""

from __future__ import annotations

import hashlib
import json
import struct
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .backends import DEFAULT_MEM_BUDGET, BackendKind, SmallUniverse, parse_backend
from .errors import FormatError
from .sets import IntSet, SetCollection, parse_collection

MAGIC = b"GIDX"
FORMAT_VERSION = 1

KINDS = ("ssi", "gapped-set", "gapped-string", "jumbled", "smallest-shift")

_SEC_I64 = 0
_SEC_RAW = 1


@dataclass
class Artifact:
    """A built (or loaded) index: manifest plus the primary payload."""

    kind: str
    backend: BackendKind
    mem_budget: int
    manifest: dict
    collection: Optional[SetCollection] = None
    text: Optional[bytes] = None
    sections: dict = field(default_factory=dict)


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _encode_sections(sections: dict) -> bytes:
    out = [struct.pack("<I", len(sections))]
    for name, value in sections.items():
        blob = value.astype("<i8").tobytes() if isinstance(value, np.ndarray) else bytes(value)
        tag = _SEC_I64 if isinstance(value, np.ndarray) else _SEC_RAW
        encoded_name = name.encode()
        out.append(struct.pack("<H", len(encoded_name)))
        out.append(encoded_name)
        out.append(struct.pack("<BQ", tag, len(blob)))
        out.append(blob)
    return b"".join(out)


def _decode_sections(blob: bytes) -> dict:
    view = memoryview(blob)
    off = 0

    def take(n: int) -> memoryview:
        nonlocal off
        if off + n > len(view):
            raise FormatError("container truncated inside a section")
        chunk = view[off : off + n]
        off += n
        return chunk

    (count,) = struct.unpack("<I", take(4))
    sections = {}
    for _ in range(count):
        (name_len,) = struct.unpack("<H", take(2))
        name = bytes(take(name_len)).decode()
        tag, length = struct.unpack("<BQ", take(9))
        data = bytes(take(length))
        if tag == _SEC_I64:
            sections[name] = np.frombuffer(data, dtype="<i8").astype(np.int64)
        elif tag == _SEC_RAW:
            sections[name] = data
        else:
            raise FormatError(f"unknown section tag {tag}")
    if off != len(view):
        raise FormatError("trailing bytes after the last section")
    return sections


def save_artifact(path: str, artifact: Artifact) -> None:
    payload = _encode_sections(artifact.sections)
    manifest = dict(artifact.manifest)
    manifest["payload_digest"] = _digest(payload)
    manifest_blob = json.dumps(manifest, sort_keys=True).encode()
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<I", FORMAT_VERSION))
        fh.write(struct.pack("<Q", len(manifest_blob)))
        fh.write(manifest_blob)
        fh.write(payload)


def load_artifact(path: str, mem_budget: int = DEFAULT_MEM_BUDGET) -> Artifact:
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:4] != MAGIC:
        raise FormatError(f"{path}: not a gapindex container (bad magic)")
    (version,) = struct.unpack("<I", data[4:8])
    if version != FORMAT_VERSION:
        raise FormatError(f"{path}: unsupported container version {version}")
    (mlen,) = struct.unpack("<Q", data[8:16])
    manifest_blob = data[16 : 16 + mlen]
    payload = data[16 + mlen :]
    try:
        manifest = json.loads(manifest_blob)
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: bad manifest JSON: {e}") from None
    if manifest.get("payload_digest") != _digest(payload):
        raise FormatError(f"{path}: payload digest mismatch (corrupted file)")
    sections = _decode_sections(payload)
    kind = manifest.get("kind")
    if kind not in KINDS:
        raise FormatError(f"{path}: unknown artifact kind {kind!r}")
    backend = parse_backend(manifest["backend"], manifest.get("delta", 0.5))
    artifact = Artifact(
        kind=kind,
        backend=backend,
        mem_budget=mem_budget,
        manifest=manifest,
        sections=sections,
    )
    if "set_elements" in sections:
        artifact.collection = _sections_to_collection(sections)
    if "text" in sections:
        artifact.text = bytes(sections["text"])
    return artifact


def _collection_to_sections(c: SetCollection) -> dict:
    offsets = [0]
    elements: list[int] = []
    for s in c.sets:
        elements.extend(s.elements)
        offsets.append(len(elements))
    return {
        "universe": np.array([c.universe], dtype=np.int64),
        "set_offsets": np.array(offsets, dtype=np.int64),
        "set_elements": np.array(elements, dtype=np.int64),
    }


def _sections_to_collection(sections: dict) -> SetCollection:
    universe = int(sections["universe"][0])
    offsets = sections["set_offsets"]
    elements = sections["set_elements"]
    sets = []
    for idx in range(len(offsets) - 1):
        chunk = elements[offsets[idx] : offsets[idx + 1]]
        sets.append(IntSet(id=idx + 1, elements=tuple(int(v) for v in chunk)))
    return SetCollection(sets=tuple(sets), universe=universe)


def _base_manifest(kind: str, backend: BackendKind, source: bytes) -> dict:
    manifest = {
        "format_version": FORMAT_VERSION,
        "kind": kind,
        "backend": backend.name,
        "source_digest": _digest(source),
        "counters": {},
    }
    if isinstance(backend, SmallUniverse):
        manifest["delta"] = backend.delta
    return manifest


def build_artifact(
    kind: str,
    source: bytes,
    backend: BackendKind,
    mem_budget: int = DEFAULT_MEM_BUDGET,
) -> Artifact:
    """Parse and validate a source file, build the index once to collect
    accounting counters and trip every guard, and assemble the payload."""
    if kind not in KINDS:
        raise FormatError(f"unknown artifact kind {kind!r} (expected one of {KINDS})")
    manifest = _base_manifest(kind, backend, source)
    counters = manifest["counters"]
    artifact = Artifact(kind=kind, backend=backend, mem_budget=mem_budget, manifest=manifest)

    if kind in ("ssi", "gapped-set", "smallest-shift"):
        collection = parse_collection(source.decode())
        artifact.collection = collection
        artifact.sections = _collection_to_sections(collection)
        counters["total_size"] = collection.total_size
        counters["k"] = collection.k
        counters["universe"] = collection.universe
        if kind == "ssi":
            built = make_backend(artifact)
            counters["backend_bytes"] = built.space_bytes()
        elif kind == "gapped-set":
            index = make_gapped_index(artifact)
            counters["stored_elements"] = index.total_elements
            counters["levels"] = index.max_level
        else:
            index = make_shift_index(artifact)
            counters["large_sets"] = len(index.large_ids)
            counters["threshold"] = index.threshold
    elif kind == "gapped-string":
        if not source:
            raise FormatError("text source is empty")
        index = make_string_index_from_text(source, backend, mem_budget)
        n = len(source)
        counters["n"] = n
        counters["set_elements"] = index.set_elements
        counters["set_elements_bound"] = n * n.bit_length()
        counters["levels"] = index.gapped.max_level
        artifact.text = source
        artifact.sections = {
            "text": source,
            "sa": np.array(index.suffixes.sa, dtype=np.int64),
            "lcp": np.array(index.suffixes.lcp, dtype=np.int64),
        }
        artifact.sections.update(
            _collection_to_sections(index.collection)
        )
    elif kind == "jumbled":
        if not source:
            raise FormatError("text source is empty")
        index = make_jumbled_index_from_text(source, backend, mem_budget)
        counters["n"] = index.n
        counters["sigma"] = index.sigma
        artifact.text = source
        artifact.sections = {
            "text": source,
            "alphabet": bytes(index.alphabet),
        }
    return artifact


def make_backend(artifact: Artifact):
    from .backends import build_backend

    return build_backend(artifact.collection, artifact.backend, artifact.mem_budget)


def make_reporting_index(artifact: Artifact):
    from .reporting import build_reporting_index

    return build_reporting_index(artifact.collection, artifact.backend, artifact.mem_budget)


def make_gapped_index(artifact: Artifact):
    from .gapped import build_gapped_index

    return build_gapped_index(artifact.collection, artifact.backend, artifact.mem_budget)


def make_shift_index(artifact: Artifact):
    from .smallest_shift import build_smallest_shift

    return build_smallest_shift(artifact.collection)


def make_string_index_from_text(text: bytes, backend: BackendKind, mem_budget: int):
    from .textindex import build_gapped_string_index

    return build_gapped_string_index(text, backend, mem_budget)


def make_string_index(artifact: Artifact):
    index = make_string_index_from_text(artifact.text, artifact.backend, artifact.mem_budget)
    stored = artifact.sections.get("sa")
    if stored is not None and tuple(int(v) for v in stored) != index.suffixes.sa:
        raise FormatError("persisted suffix array disagrees with the text")
    if artifact.collection is not None:
        rebuilt = [s.elements for s in index.collection.sets]
        loaded = [s.elements for s in artifact.collection.sets]
        if rebuilt != loaded:
            raise FormatError("persisted interval set tables disagree with the text")
    return index


def make_jumbled_index_from_text(text: bytes, backend: BackendKind, mem_budget: int):
    from .jumbled import build_jumbled_index

    alphabet = sorted(set(text))
    if not alphabet:
        raise FormatError("text source is empty")
    return build_jumbled_index(text, alphabet, backend, mem_budget)


def make_jumbled_index(artifact: Artifact):
    return make_jumbled_index_from_text(artifact.text, artifact.backend, artifact.mem_budget)
