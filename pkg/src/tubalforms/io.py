"""The ``htj-v1`` JSON container for complex hypermatrices.

``data`` interleaves real and imaginary parts over the column-major
linearization of the full shape. Floats are written with ``repr`` precision,
so a write/read round trip is exact.
"""
from __future__ import annotations

import json
from math import prod

import numpy as np

FORMAT_TAG = "htj-v1"


class HTJFormatError(ValueError):
    """The file is not a valid htj-v1 document."""


def to_htj(A) -> dict:
    A = np.asarray(A, dtype=np.complex128)
    flat = A.reshape(-1, order="F")
    data = np.empty(2 * flat.size)
    data[0::2] = flat.real
    data[1::2] = flat.imag
    return {"format": FORMAT_TAG, "order": A.ndim, "shape": list(A.shape), "data": data.tolist()}


def from_htj(doc) -> np.ndarray:
    if not isinstance(doc, dict) or doc.get("format") != FORMAT_TAG:
        raise HTJFormatError(f"missing or wrong format tag (expected {FORMAT_TAG!r})")
    try:
        shape = tuple(int(s) for s in doc["shape"])
        order = int(doc["order"])
        data = np.asarray(doc["data"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise HTJFormatError(f"malformed document: {exc}") from exc
    if order != len(shape) or any(s < 0 for s in shape):
        raise HTJFormatError(f"order {order} does not match shape {list(shape)}")
    if data.ndim != 1 or data.size != 2 * prod(shape):
        raise HTJFormatError(f"data has {data.size} numbers, expected {2 * prod(shape)}")
    return (data[0::2] + 1j * data[1::2]).reshape(shape, order="F")


def write_htj(path, A) -> None:
    with open(path, "w") as fh:
        json.dump(to_htj(A), fh)


def read_htj(path) -> np.ndarray:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise HTJFormatError(f"{path}: not valid JSON ({exc})") from exc
    return from_htj(doc)
