"""Avoidance classes: membership, generating-tree enumeration, counting,
and slot shading grids.

A class is given by a finite basis of forbidden patterns; membership is
avoidance of every basis element.  Enumeration walks the generating tree
that inserts a new maximum into each member — sound because deleting the
maximum of a member yields a member, and duplicate-free because every
child has a unique parent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Union

from .perm_core import (
    Permutation,
    Slot,
    _contains_any,
    _contains_pinned,
    _insert_raw,
    parse_permutation,
)
from .decomposition import _is_simple


@dataclass(frozen=True)
class PermClass:
    """An avoidance class described by its basis.

    The basis is normalised on construction: duplicates are dropped, any
    element containing another basis element is dropped (minimality), and
    the rest are sorted by (length, values) so equal classes compare equal.
    """

    basis: tuple[Permutation, ...]

    def __post_init__(self) -> None:
        items = sorted(set(self.basis), key=lambda b: (len(b), b.values))
        if not items:
            raise ValueError("a class needs a non-empty basis")
        minimal = [
            b
            for b in items
            if not any(o is not b and len(o) <= len(b) and _contains_any(o.values, b.values) for o in items)
        ]
        object.__setattr__(self, "basis", tuple(minimal))

    @classmethod
    def of(cls, *items: Union[str, Permutation]) -> "PermClass":
        """Build a class from permutations or their text forms."""
        return cls(tuple(p if isinstance(p, Permutation) else parse_permutation(p) for p in items))

    def __str__(self) -> str:
        return "Av(" + ", ".join(str(b) for b in self.basis) + ")"


def avoids(p: Permutation, c: PermClass) -> bool:
    """True iff no basis element of ``c`` occurs in ``p``."""
    return _avoids_raw(p.values, c)


def _avoids_raw(vals: tuple[int, ...], c: PermClass) -> bool:
    n = len(vals)
    for b in c.basis:
        bv = b.values
        if len(bv) <= n and _contains_any(bv, vals):
            return False
    return True


def _class_levels(c: PermClass, max_len: int) -> Iterator[list[tuple[int, ...]]]:
    """Members of ``c`` as raw value tuples, one list per length 1..max_len.

    Children are generated by inserting the new maximum at every position;
    the incremental membership test only has to look for basis occurrences
    that use the new entry, pinned at the basis element's own maximum.
    """
    basis = [(b.values, max(range(len(b)), key=b.values.__getitem__)) for b in c.basis]
    level = [(1,)] if all(len(bv) > 1 for bv, _ in basis) else []
    yield level
    for n in range(2, max_len + 1):
        relevant = [(bv, t) for bv, t in basis if len(bv) <= n]
        nxt = []
        for parent in level:
            for q in range(n):
                child = parent[:q] + (n,) + parent[q:]
                for bv, t in relevant:
                    if _contains_pinned(bv, child, t, q):
                        break
                else:
                    nxt.append(child)
        yield nxt
        level = nxt


def enumerate_class(c: PermClass, max_len: int) -> Iterator[Permutation]:
    """Yield every member of ``c`` of length 1..max_len, grouped by length,
    each exactly once.  Memory stays bounded by one length level."""
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    for level in _class_levels(c, max_len):
        for vals in level:
            yield Permutation(vals)


def enumerate_simples(c: PermClass, max_len: int) -> list[Permutation]:
    """All simple members of ``c`` with length <= max_len."""
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    out = []
    for level in _class_levels(c, max_len):
        out.extend(Permutation(vals) for vals in level if _is_simple(vals))
    return out


def count_profile(c: PermClass, max_len: int) -> list[tuple[int, int, int]]:
    """Per-length (length, member_count, simple_count) rows."""
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    rows = []
    for n, level in enumerate(_class_levels(c, max_len), start=1):
        simple = sum(1 for vals in level if _is_simple(vals))
        rows.append((n, len(level), simple))
    return rows


def _insertion_creates(c: PermClass, child: tuple[int, ...], q: int) -> bool:
    """Does the entry at 0-based position ``q`` of ``child`` complete a
    basis occurrence?  Valid when ``child`` minus that entry avoids ``c``."""
    n = len(child)
    for b in c.basis:
        bv = b.values
        k = len(bv)
        if k > n:
            continue
        if k >= 7:
            if _contains_any(bv, child):
                return True
            continue
        for t in range(k):
            if _contains_pinned(bv, child, t, q):
                return True
    return False


class ShadingGrid:
    """The (n+1) x (n+1) slot grid of a class member, marking the slots
    whose insertion would create a forbidden pattern.

    Cells are computed on demand and cached; ``blocked`` materialises the
    whole grid.
    """

    def __init__(self, host: Permutation, pclass: PermClass):
        self.host = host
        self.pclass = pclass
        self._cells: dict[Slot, bool] = {}
        self._blocked: Optional[frozenset[Slot]] = None

    def is_blocked(self, slot: Slot) -> bool:
        n = len(self.host)
        if not (1 <= slot.pos_slot <= n + 1 and 1 <= slot.val_slot <= n + 1):
            raise ValueError(f"slot {slot} outside the {n + 1}x{n + 1} grid")
        hit = self._cells.get(slot)
        if hit is None:
            child = _insert_raw(self.host.values, slot.pos_slot, slot.val_slot)
            hit = _insertion_creates(self.pclass, child, slot.pos_slot - 1)
            self._cells[slot] = hit
        return hit

    @property
    def blocked(self) -> frozenset[Slot]:
        if self._blocked is None:
            n = len(self.host)
            self._blocked = frozenset(
                slot
                for ps in range(1, n + 2)
                for vs in range(1, n + 2)
                if self.is_blocked(slot := Slot(ps, vs))
            )
        return self._blocked

    def __repr__(self) -> str:
        return f"ShadingGrid(host={self.host}, class={self.pclass})"


def shading_grid(p: Permutation, c: PermClass) -> ShadingGrid:
    """The shading grid of a member ``p`` of ``c``; non-members are rejected
    because the grid's meaning presumes membership."""
    if not avoids(p, c):
        raise ValueError(f"{p} is not a member of {c}")
    return ShadingGrid(p, c)
