"""Square Boolean matrices under (OR, AND) and digraph powers."""

from __future__ import annotations

from typing import Iterable

import numpy as np

from src.core.digraph import Digraph


class BooleanMatrix:
    """Immutable n×n matrix over {0,1} with Boolean semiring product.

    Backed by a read-only numpy bool array. ``fingerprint()`` packs each row
    into bytes and is used as the hash key when scanning power sequences.
    """

    __slots__ = ("_data", "_fp")

    def __init__(self, data: np.ndarray):
        arr = np.array(data, dtype=bool, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"BooleanMatrix must be square, got shape {arr.shape}")
        arr.setflags(write=False)
        self._data = arr
        self._fp: bytes | None = None

    # -- constructors --

    @classmethod
    def zeros(cls, n: int) -> "BooleanMatrix":
        return cls(np.zeros((n, n), dtype=bool))

    @classmethod
    def identity(cls, n: int) -> "BooleanMatrix":
        return cls(np.eye(n, dtype=bool))

    @classmethod
    def ones(cls, n: int) -> "BooleanMatrix":
        return cls(np.ones((n, n), dtype=bool))

    @classmethod
    def from_support(cls, n: int, entries: Iterable[tuple[int, int]]) -> "BooleanMatrix":
        arr = np.zeros((n, n), dtype=bool)
        for i, j in entries:
            arr[i, j] = True
        return cls(arr)

    # -- access --

    @property
    def n(self) -> int:
        return self._data.shape[0]

    @property
    def data(self) -> np.ndarray:
        return self._data

    def __getitem__(self, key: tuple[int, int]) -> bool:
        return bool(self._data[key])

    def support(self) -> frozenset[tuple[int, int]]:
        return frozenset((int(i), int(j)) for i, j in np.argwhere(self._data))

    def count_ones(self) -> int:
        return int(self._data.sum())

    def fingerprint(self) -> bytes:
        if self._fp is None:
            self._fp = np.packbits(self._data, axis=1).tobytes()
        return self._fp

    # -- algebra --

    def __matmul__(self, other: "BooleanMatrix") -> "BooleanMatrix":
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")
        # (AB)_ij = OR_k (A_ik AND B_kj)
        prod = self._data.astype(np.intp) @ other._data.astype(np.intp)
        return BooleanMatrix(prod > 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BooleanMatrix):
            return NotImplemented
        return self.n == other.n and self.fingerprint() == other.fingerprint()

    def __hash__(self) -> int:
        return hash((self.n, self.fingerprint()))

    def __repr__(self) -> str:
        return f"BooleanMatrix(n={self.n}, ones={self.count_ones()})"


def adjacency_matrix(d: Digraph) -> BooleanMatrix:
    """Entry (u, v) = 1 iff (u, v) is an arc of d."""
    return BooleanMatrix.from_support(d.n, d.arcs)


def matrix_power(a: BooleanMatrix, m: int) -> BooleanMatrix:
    """Boolean m-th power by repeated squaring (m >= 1)."""
    if m < 1:
        raise ValueError(f"exponent must be >= 1, got {m}")
    result: BooleanMatrix | None = None
    base = a
    while m:
        if m & 1:
            result = base if result is None else result @ base
        m >>= 1
        if m:
            base = base @ base
    assert result is not None
    return result


def power_digraph(d: Digraph, m: int) -> Digraph:
    """D^m: arc (u, v) iff v is an m-step prey of u. Loops are permitted."""
    support = matrix_power(adjacency_matrix(d), m).support()
    return Digraph(d.n, support, d.labels, allow_loops=True)
