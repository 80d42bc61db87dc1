"""Signed permutation matrices compatible with a zero pattern."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .somodel import ZeroPattern


@dataclass(frozen=True, order=True)
class SignedPerm:
    """Row ``i`` carries ``signs[i]`` in column ``perm[i]`` (0-based internally)."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError(f"not a permutation: {self.perm}")
        if len(self.signs) != len(self.perm) or any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be a +-1 vector of the same length")

    @property
    def n(self) -> int:
        return len(self.perm)

    def matrix(self) -> list[list[int]]:
        m = [[0] * self.n for _ in range(self.n)]
        for i, (j, s) in enumerate(zip(self.perm, self.signs)):
            m[i][j] = s
        return m

    def det(self) -> int:
        d = perm_sign(self.perm)
        for s in self.signs:
            d *= s
        return d

    def __neg__(self) -> "SignedPerm":
        return SignedPerm(self.perm, tuple(-s for s in self.signs))

    @classmethod
    def from_matrix(cls, m) -> "SignedPerm":
        perm, signs = [], []
        for row in m:
            nz = [(j, v) for j, v in enumerate(row) if v != 0]
            if len(nz) != 1 or nz[0][1] not in (1, -1):
                raise ValueError("not a signed permutation matrix")
            perm.append(nz[0][0])
            signs.append(int(nz[0][1]))
        return cls(tuple(perm), tuple(signs))

    def key(self) -> str:
        """Compact text: 1-based images with signs, e.g. ``+2 -1 +4 +3``."""
        return " ".join(f"{'+' if s > 0 else '-'}{j + 1}" for j, s in zip(self.perm, self.signs))


def perm_sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def cycle_type(sp: SignedPerm | Sequence[int]) -> tuple[int, ...]:
    """Cycle lengths of the underlying permutation, in decreasing order."""
    perm = sp.perm if isinstance(sp, SignedPerm) else tuple(sp)
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            out.append(length)
    return tuple(sorted(out, reverse=True))


def perms_in_pattern(zp: ZeroPattern) -> list[tuple[int, ...]]:
    """Permutations (0-based) whose support avoids the pattern."""
    return [
        p
        for p in itertools.permutations(range(zp.n))
        if all((i + 1, p[i] + 1) not in zp.zeros for i in range(zp.n))
    ]


def signed_perms_in_pattern(zp: ZeroPattern, det_sign: int = 1) -> list[SignedPerm]:
    """All signed permutation matrices avoiding ``zp`` with the given determinant."""
    if zp.n > 6:
        raise ValueError("brute force limited to n <= 6")
    if det_sign not in (1, -1):
        raise ValueError("det_sign must be +1 or -1")
    out = []
    for p in itertools.permutations(range(zp.n)):
        if any((i + 1, p[i] + 1) in zp.zeros for i in range(zp.n)):
            continue
        for signs in itertools.product((1, -1), repeat=zp.n):
            sp = SignedPerm(p, signs)
            if sp.det() == det_sign:
                out.append(sp)
    return sorted(out)


def antipodal_pairs(sps: Iterable[SignedPerm]) -> list[tuple[SignedPerm, SignedPerm]]:
    """Partition into {M, -M}; raises if the input is not closed under negation."""
    items = sorted(set(sps))
    pool = set(items)
    pairs = []
    for sp in items:
        if sp not in pool:
            continue
        neg = -sp
        if neg not in pool:
            raise ValueError(f"negation of {sp.key()} missing from the input")
        pool.discard(sp)
        pool.discard(neg)
        pairs.append((sp, neg))
    return pairs


def cycle_type_census(sps: Iterable[SignedPerm]) -> dict[tuple[int, ...], int]:
    """Number of distinct underlying permutations per cycle type."""
    perms = {sp.perm for sp in sps}
    return dict(sorted(Counter(cycle_type(p) for p in perms).items(), reverse=True))
