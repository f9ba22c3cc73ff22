"""Constraint systems ``A.T @ u <= B``, configurations and nullspace reduction.

Column ``i`` of ``A`` is the normal of constraint ``i``. The first ``n_hard``
constraints are hard and must be enforced by every configuration.
"""
from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DimensionError, NonFiniteError


@dataclass(frozen=True)
class ConstraintSet:
    A: np.ndarray
    B: np.ndarray
    n_hard: int = 0

    def __post_init__(self):
        A = np.array(self.A, dtype=float)
        if A.ndim == 1:
            A = A.reshape(1, -1)
        B = np.array(self.B, dtype=float).reshape(-1)
        if A.ndim != 2 or A.shape[1] != B.shape[0]:
            raise DimensionError(f"A has shape {A.shape} but B has {B.shape[0]} entries")
        if B.shape[0] < 1:
            raise DimensionError("need at least one constraint")
        if not (0 <= self.n_hard <= B.shape[0]):
            raise DimensionError(f"n_hard={self.n_hard} out of range for c={B.shape[0]}")
        if not (np.all(np.isfinite(A)) and np.all(np.isfinite(B))):
            raise NonFiniteError("constraint data must be finite")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "n_hard", int(self.n_hard))

    @property
    def m(self) -> int:
        return self.A.shape[0]

    @property
    def c(self) -> int:
        return self.A.shape[1]

    @property
    def hard_mask(self) -> np.ndarray:
        mask = np.zeros(self.c, dtype=bool)
        mask[: self.n_hard] = True
        return mask

    def all_ones(self) -> "Configuration":
        return Configuration(np.ones(self.c, dtype=bool))

    def hard_only(self) -> "Configuration":
        return Configuration(self.hard_mask)

    def to_text(self) -> str:
        buf = io.StringIO()
        buf.write(f"{self.m} {self.c} {self.n_hard}\n")
        for row in self.A:
            buf.write(" ".join(repr(float(v)) for v in row) + "\n")
        buf.write(" ".join(repr(float(v)) for v in self.B) + "\n")
        return buf.getvalue()

    @classmethod
    def from_text(cls, text: str) -> "ConstraintSet":
        tokens = text.split()
        if len(tokens) < 3:
            raise ValueError("constraint file needs a header 'm c n_hard'")
        m, c, n_hard = (int(t) for t in tokens[:3])
        body = tokens[3:]
        if len(body) != m * c + c:
            raise DimensionError(f"expected {m * c + c} numbers after header, got {len(body)}")
        vals = np.array([float(t) for t in body])
        return cls(vals[: m * c].reshape(m, c), vals[m * c:], n_hard)


@dataclass(frozen=True)
class Configuration:
    """Boolean vector of enforced constraints."""

    bits: np.ndarray

    def __post_init__(self):
        bits = np.array(self.bits).astype(bool).reshape(-1)
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)

    def __len__(self):
        return self.bits.shape[0]

    def __eq__(self, other):
        return isinstance(other, Configuration) and np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash(self.bits.tobytes())

    @property
    def enforced(self) -> np.ndarray:
        return np.flatnonzero(self.bits)

    @property
    def n_enforced(self) -> int:
        return int(self.bits.sum())

    def with_bit(self, i: int, value: bool) -> "Configuration":
        bits = self.bits.copy()
        bits[i] = value
        return Configuration(bits)

    def respects(self, cs: ConstraintSet) -> bool:
        return bool(np.all(self.bits[: cs.n_hard]))

    def __repr__(self):
        return "Configuration(" + "".join("1" if b else "0" for b in self.bits) + ")"


@dataclass(frozen=True)
class NullspaceBasis:
    N: np.ndarray
    BA: np.ndarray

    @property
    def k(self) -> int:
        return self.N.shape[1]


def nullspace_basis(cs: ConstraintSet, rotation: Optional[np.ndarray] = None) -> NullspaceBasis:
    """Orthonormal basis of ker(A) from an SVD, with ``BA = N.T @ B``.

    Singular values at or below ``1e-9 * max(1, sigma_max)`` count as zero.
    Each column is signed so that its largest-magnitude entry is positive.
    ``rotation`` (k x k orthogonal) replaces ``N`` by ``N @ rotation``; it only
    exists to check that results do not depend on the basis choice.
    """
    A = cs.A
    c = cs.c
    _, s, Vt = np.linalg.svd(A, full_matrices=True)
    tol = 1e-9 * max(1.0, float(s[0]) if s.size else 0.0)
    rank = int(np.sum(s > tol))
    N = Vt[rank:].T.copy()
    for j in range(N.shape[1]):
        i = int(np.argmax(np.abs(N[:, j])))
        if N[i, j] < 0:
            N[:, j] = -N[:, j]
    if rotation is not None:
        N = N @ np.asarray(rotation, dtype=float)
    N = N.reshape(c, -1)
    return NullspaceBasis(N, N.T @ cs.B)


def mask(cs: ConstraintSet, P: Configuration):
    """Columns of A and entries of B for the enforced constraints, in order."""
    if len(P) != cs.c:
        raise DimensionError(f"configuration has {len(P)} bits, expected {cs.c}")
    return cs.A[:, P.bits], cs.B[P.bits]

