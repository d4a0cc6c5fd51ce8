"""Model checkpoint container.

Layout (version 1)::

    QOEREP-CKPT 1\\n
    <header: one line of JSON, keys sorted>\\n
    <array payloads: little-endian float64, row-major, concatenated>

The header records ``arch``, ``vocab_size``, ``embedding_dim``,
``hidden_size``, ``max_len``, ``mask_stop``, ``embedding_trainable``,
``vocab_sha256`` and, for each array, its ``name``, ``shape`` and byte
``offset`` into the payload.  The embedding matrix is stored under the name
``embedding``.  Writing is deterministic: equal parameters give equal bytes.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .embedding import EmbeddingMatrix, Vocabulary
from .errors import ParseError, ValidationError
from .model import ModelParams

MAGIC = b"QOEREP-CKPT 1\n"
FORMAT_VERSION = 1


def save_checkpoint(params: ModelParams, path: str | Path, max_len: int, vocab: Vocabulary | None = None) -> None:
    arrays = [("embedding", params.embedding.values)] + sorted(params.weights.items())
    entries, payload, offset = [], [], 0
    for name, arr in arrays:
        data = np.ascontiguousarray(arr, dtype="<f8").tobytes()
        entries.append({"name": name, "shape": list(arr.shape), "offset": offset})
        payload.append(data)
        offset += len(data)
    header = {
        "format_version": FORMAT_VERSION,
        "arch": params.arch,
        "vocab_size": params.embedding.vocab_size,
        "embedding_dim": params.embedding.dim,
        "hidden_size": params.hidden_size,
        "max_len": max_len,
        "mask_stop": params.mask_stop,
        "embedding_trainable": params.embedding.trainable,
        "vocab_sha256": vocab.digest() if vocab is not None else None,
        "arrays": entries,
    }
    with Path(path).open("wb") as handle:
        handle.write(MAGIC)
        handle.write(json.dumps(header, sort_keys=True).encode("utf-8") + b"\n")
        for chunk in payload:
            handle.write(chunk)


def load_checkpoint(path: str | Path, vocab: Vocabulary | None = None) -> tuple[ModelParams, dict]:
    """Read a checkpoint; returns ``(params, header)``.

    When ``vocab`` is given its digest must match the one recorded at
    training time.
    """
    raw = Path(path).read_bytes()
    if not raw.startswith(MAGIC):
        raise ParseError("not a qoerep checkpoint (bad magic)", path=str(path))
    end = raw.index(b"\n", len(MAGIC))
    try:
        header = json.loads(raw[len(MAGIC) : end])
    except json.JSONDecodeError as exc:
        raise ParseError(f"corrupt checkpoint header ({exc.msg})", line=2, path=str(path)) from exc
    if header.get("format_version") != FORMAT_VERSION:
        raise ParseError(f"unsupported checkpoint version {header.get('format_version')}", path=str(path))
    body = raw[end + 1 :]
    arrays = {}
    for entry in header["arrays"]:
        shape = tuple(entry["shape"])
        n = int(np.prod(shape)) * 8
        chunk = body[entry["offset"] : entry["offset"] + n]
        if len(chunk) != n:
            raise ParseError(f"truncated payload for {entry['name']}", path=str(path))
        arrays[entry["name"]] = np.frombuffer(chunk, dtype="<f8").reshape(shape).astype(np.float64)
    if vocab is not None and header["vocab_sha256"] not in (None, vocab.digest()):
        raise ValidationError("vocabulary does not match the one this checkpoint was trained with")
    emb = EmbeddingMatrix(arrays.pop("embedding"), header["embedding_trainable"])
    params = ModelParams(header["arch"], header["hidden_size"], emb, arrays, header["mask_stop"])
    return params, header
