"""Binary strings, block decomposition, and warping-path validation.

A binary string is represented as a read-only 1-D ``uint8`` numpy array
with values in {0, 1} and length >= 1; :func:`bits` is the validating
constructor and every public function accepts anything it can coerce
(``"0110"``, a list of ints, an existing array).

A *block* is a maximal run of equal symbols.  :class:`BlockProfile`
(first symbol + run lengths) is the compressed view that all the fast
algorithms operate on; the original string is reconstructible from it.
The *condensation* of a string collapses every block to one symbol, so
its length equals the block count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

BitsLike = Union[str, Sequence[int], np.ndarray]


class ContractError(ValueError):
    """A documented precondition was violated by the caller."""


def bits(s: BitsLike) -> np.ndarray:
    """Coerce ``s`` to a validated, read-only uint8 bit vector.

    Accepts a '0'/'1' text string, any integer sequence, or a numpy
    array.  Rejects empty inputs and values outside {0, 1}.
    """
    if isinstance(s, str):
        try:
            raw = np.frombuffer(s.encode("ascii"), np.uint8)
        except UnicodeEncodeError:
            raise ContractError(f"not a binary string: {s!r}") from None
        arr = raw - np.uint8(ord("0"))
    else:
        arr = np.asarray(s)
        if arr.dtype == np.bool_:
            arr = arr.astype(np.uint8)
        if not np.issubdtype(arr.dtype, np.integer):
            raise ContractError(f"bits must be integers, got dtype {arr.dtype}")
    if arr.ndim != 1:
        raise ContractError("bits must be one-dimensional")
    if arr.size == 0:
        raise ContractError("binary strings must be nonempty")
    if arr.min() < 0 or arr.max() > 1:
        raise ContractError("bits must all be 0 or 1")
    out = arr.astype(np.uint8)
    if out is arr or out.base is not None:
        out = out.copy()
    out.setflags(write=False)
    return out


def to_text(b: BitsLike) -> str:
    """Render a bit vector as a '0'/'1' string."""
    arr = bits(b)
    return (arr + np.uint8(ord("0"))).tobytes().decode("ascii")


@dataclass(frozen=True)
class BlockProfile:
    """First symbol plus the run length of every block, in order."""

    first: int
    sizes: np.ndarray  # int64, read-only, every entry >= 1

    @property
    def count(self) -> int:
        """Number of blocks == condensation length."""
        return int(self.sizes.shape[0])

    @property
    def length(self) -> int:
        return int(self.sizes.sum())

    @property
    def last(self) -> int:
        """Symbol of the final block."""
        return self.first ^ ((self.count - 1) & 1)

    def condensation(self) -> np.ndarray:
        return condensed_string(self.first, self.count)


def block_profile(s: BitsLike) -> BlockProfile:
    """Decompose ``s`` into its block profile."""
    b = bits(s)
    breaks = np.flatnonzero(b[1:] != b[:-1]) + 1
    bounds = np.concatenate(([0], breaks, [b.shape[0]]))
    sizes = np.diff(bounds).astype(np.int64)
    sizes.setflags(write=False)
    return BlockProfile(int(b[0]), sizes)


def condense(s: BitsLike) -> np.ndarray:
    """Collapse every block of ``s`` to a single symbol."""
    b = bits(s)
    keep = np.concatenate(([True], b[1:] != b[:-1]))
    out = b[keep].copy()
    out.setflags(write=False)
    return out


def condensed_string(first: int, length: int) -> np.ndarray:
    """The alternating string of the given length starting with ``first``."""
    if first not in (0, 1):
        raise ContractError(f"first symbol must be 0 or 1, got {first!r}")
    if length < 1:
        raise ContractError(f"length must be >= 1, got {length}")
    out = np.empty(length, np.uint8)
    out[0::2] = first
    out[1::2] = 1 - first
    out.setflags(write=False)
    return out


def as_profile(s: BitsLike | BlockProfile) -> BlockProfile:
    """Accept a string in any form, or pass an existing profile through."""
    if isinstance(s, BlockProfile):
        return s
    return block_profile(s)


_STEPS = {(1, 0), (0, 1), (1, 1)}


def validate_warping_path(path: Iterable[tuple[int, int]], m: int, n: int) -> bool:
    """True iff ``path`` is a valid warping path of order m x n.

    Checks the three defining conditions: starts at (1, 1), ends at
    (m, n), and every step advances by (1,0), (0,1) or (1,1).
    """
    pairs = [(int(i), int(j)) for i, j in path]
    if not pairs:
        return False
    if pairs[0] != (1, 1) or pairs[-1] != (m, n):
        return False
    for (i0, j0), (i1, j1) in zip(pairs, pairs[1:]):
        if (i1 - i0, j1 - j0) not in _STEPS:
            return False
    return True


def parse_strings(text: str) -> list[np.ndarray]:
    """Parse the one-string-per-line text format.

    Blank lines are ignored; anything else must consist of '0'/'1' only.
    """
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        try:
            out.append(bits(stripped))
        except ContractError as exc:
            raise ContractError(f"line {lineno}: {exc}") from None
    return out
