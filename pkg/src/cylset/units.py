"""Finite-window sequence-set units.

A unit is a finite set of sequences sharing one window of coordinate
indices.  Off-window coordinates are treated as carrying one unspecified
constant shared by every sequence of the unit, so cylindrification along an
off-window index is the identity and terms may only mention window indices.
Fresh coordinates are materialised explicitly with `extend_window`.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator


@dataclass(frozen=True, order=True)
class Sequence:
    """A finite-window assignment of base elements to coordinate indices."""

    window: tuple[int, ...]
    values: tuple[int, ...]

    def __post_init__(self):
        if any(self.window[k] >= self.window[k + 1] for k in range(len(self.window) - 1)):
            raise ValueError(f"window must be strictly increasing, got {self.window}")
        if len(self.window) != len(self.values):
            raise ValueError("one value per window index required")
        if any(v < 0 for v in self.values) or any(i < 0 for i in self.window):
            raise ValueError("indices and base elements are natural numbers")

    def __getitem__(self, i: int) -> int:
        try:
            return self.values[self.window.index(i)]
        except ValueError:
            raise KeyError(f"index {i} outside window {self.window}") from None

    def update(self, i: int, u: int) -> "Sequence":
        """The sequence agreeing with this one except that index i maps to u."""
        pos = self.window.index(i) if i in self.window else -1
        if pos < 0:
            raise ValueError(f"cannot update off-window index {i}")
        vals = self.values[:pos] + (u,) + self.values[pos + 1:]
        return Sequence(self.window, vals)

    def extended(self, new: Iterable[tuple[int, int]]) -> "Sequence":
        pairs = sorted(list(zip(self.window, self.values)) + list(new))
        return Sequence(tuple(i for i, _ in pairs), tuple(v for _, v in pairs))

    def dropped(self, i: int) -> tuple[int, ...]:
        """Values with coordinate i removed; the key for the eqv_i classes."""
        pos = self.window.index(i)
        return self.values[:pos] + self.values[pos + 1:]

    def range_values(self) -> frozenset[int]:
        return frozenset(self.values)

    def __str__(self):
        return "(" + ",".join(str(v) for v in self.values) + ")"


def seq(window: Iterable[int], values: Iterable[int]) -> Sequence:
    return Sequence(tuple(window), tuple(values))


def eqv_i(f: Sequence, g: Sequence, i: int) -> bool:
    """True iff f and g agree at every index other than i."""
    if f.window != g.window:
        raise ValueError("sequences live in different windows")
    if i not in f.window:
        raise ValueError(f"index {i} outside window {f.window}")
    return f.dropped(i) == g.dropped(i)


def eqv_gamma(f: Sequence, g: Sequence, gamma: Iterable[int]) -> bool:
    """True iff f and g agree on every window index outside gamma."""
    if f.window != g.window:
        raise ValueError("sequences live in different windows")
    gamma = set(gamma)
    return all(
        fv == gv
        for i, fv, gv in zip(f.window, f.values, g.values)
        if i not in gamma
    )


class ClassTag(enum.Enum):
    CRS = "Crs"
    D = "D"
    G = "G"
    GS = "Gs"


@dataclass(frozen=True)
class Unit:
    """A finite set of sequences over one shared window."""

    window: tuple[int, ...]
    sequences: tuple[Sequence, ...]

    def __post_init__(self):
        for f in self.sequences:
            if f.window != self.window:
                raise ValueError(f"sequence {f} does not match window {self.window}")
        if any(self.sequences[k] >= self.sequences[k + 1] for k in range(len(self.sequences) - 1)):
            object.__setattr__(self, "sequences", tuple(sorted(set(self.sequences))))

    def __iter__(self) -> Iterator[Sequence]:
        return iter(self.sequences)

    def __len__(self) -> int:
        return len(self.sequences)

    def __contains__(self, f: Sequence) -> bool:
        return f in set(self.sequences)

    def as_set(self) -> frozenset[Sequence]:
        return frozenset(self.sequences)

    def position(self, f: Sequence) -> int:
        """Index of f in the canonical (sorted) sequence order."""
        return self.sequences.index(f)


def unit(window: Iterable[int], seqs: Iterable[Iterable[int]]) -> Unit:
    w = tuple(sorted(window))
    return Unit(w, tuple(sorted({seq(w, v) for v in seqs})))


def full_square(window: Iterable[int], base: Iterable[int]) -> Unit:
    """All functions from the window into the base."""
    w = tuple(sorted(window))
    b = sorted(set(base))
    return Unit(w, tuple(sorted(Sequence(w, vals) for vals in product(b, repeat=len(w)))))


def base(v: Unit) -> frozenset[int]:
    """Union of the ranges of all member sequences."""
    out: set[int] = set()
    for f in v:
        out |= f.range_values()
    return frozenset(out)


def _diag_closed(v: Unit) -> bool:
    members = v.as_set()
    for f in v:
        for i in v.window:
            for j in v.window:
                if f.update(i, f[j]) not in members:
                    return False
    return True


def _range_blocks(v: Unit) -> list[frozenset[int]]:
    """Connected components of base elements under "appear in one sequence"."""
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f in v:
        vals = list(f.range_values())
        for x in vals:
            parent.setdefault(x, x)
        for x in vals[1:]:
            rx, r0 = find(x), find(vals[0])
            if rx != r0:
                parent[rx] = r0
    blocks: dict[int, set[int]] = {}
    for x in parent:
        blocks.setdefault(find(x), set()).add(x)
    return [frozenset(b) for b in sorted(blocks.values(), key=min)]


def classify(v: Unit) -> frozenset[ClassTag]:
    """Class membership flags for the unit.

    Every unit is Crs.  D requires closure under f(i/f(j)) for window
    indices.  G holds when the unit is the union of the full squares over
    the blocks of its shared-range partition, and Gs additionally asks for
    pairwise disjoint square bases.
    """
    tags = {ClassTag.CRS}
    if _diag_closed(v):
        tags.add(ClassTag.D)
    blocks = _range_blocks(v)
    members = v.as_set()
    squares_full = all(
        len(block) ** len(v.window) <= len(v)
        and all(s in members for s in full_square(v.window, block))
        for block in blocks
    )
    if squares_full:
        tags.add(ClassTag.G)
        total = sum(len(b) for b in blocks)
        distinct = len(frozenset().union(*blocks)) if blocks else 0
        if total == distinct:
            tags.add(ClassTag.GS)
    return frozenset(tags)


def diagonalization_closure(v: Unit) -> Unit:
    """Smallest superset closed under f(i/f(j)) for window indices."""
    members = set(v.sequences)
    work = list(v.sequences)
    while work:
        f = work.pop()
        for i in v.window:
            for j in v.window:
                g = f.update(i, f[j])
                if g not in members:
                    members.add(g)
                    work.append(g)
    return Unit(v.window, tuple(sorted(members)))


def extend_window(v: Unit, new: Iterable[tuple[int, int]]) -> Unit:
    """Give every sequence the stated constant value at each new index."""
    new = list(new)
    if not new:
        return v
    fresh = [i for i, _ in new]
    if len(set(fresh)) != len(fresh) or any(i in v.window for i in fresh):
        raise ValueError(f"new indices {fresh} collide with window {v.window}")
    window = tuple(sorted(v.window + tuple(fresh)))
    return Unit(window, tuple(sorted(f.extended(new) for f in v)))


def add_sequence(v: Unit, f: Sequence) -> Unit:
    if f.window != v.window:
        raise ValueError("sequence window does not match unit window")
    if f in v:
        return v
    return Unit(v.window, tuple(sorted(v.sequences + (f,))))


def _fresh_naturals(used: Iterable[int], n: int) -> list[int]:
    used = set(used)
    out: list[int] = []
    candidate = 0
    while len(out) < n:
        if candidate not in used:
            out.append(candidate)
        candidate += 1
    return out


def fresh_base(v: Unit, n: int) -> list[int]:
    """The n smallest base elements not used anywhere in the unit."""
    return _fresh_naturals(base(v), n)


def fresh_indices(v: Unit, gamma: Iterable[int], n: int) -> list[int]:
    """The n smallest indices outside both the window and gamma."""
    return _fresh_naturals(set(v.window) | set(gamma), n)


def enumerate_units(
    window: Iterable[int], base_size: int, max_seqs: int, tag: ClassTag = ClassTag.CRS
) -> Iterator[Unit]:
    """All units over base {0..base_size-1} with at most max_seqs sequences
    carrying the tag, by size then lexicographically."""
    if base_size < 1:
        raise ValueError("base_size must be at least 1")
    square = full_square(window, range(base_size))
    w = square.window
    for size in range(min(max_seqs, len(square)) + 1):
        for combo in combinations(square.sequences, size):
            u = Unit(w, combo)
            if tag in classify(u):
                yield u


def set_partitions(items: list[int]) -> Iterator[list[list[int]]]:
    """All partitions of `items` into nonempty blocks, deterministic order."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1:]


def disjoint_squares_unit(window: Iterable[int], blocks: Iterable[Iterable[int]]) -> Unit:
    """Union of the full squares over pairwise disjoint base blocks."""
    blocks = [sorted(set(b)) for b in blocks]
    seen: set[int] = set()
    for b in blocks:
        if seen & set(b):
            raise ValueError("blocks must be pairwise disjoint")
        seen |= set(b)
    w = tuple(sorted(window))
    members: set[Sequence] = set()
    for b in blocks:
        members |= set(full_square(w, b).sequences)
    return Unit(w, tuple(sorted(members)))


# --- JSON unit files ----------------------------------------------------

def unit_to_dict(v: Unit) -> dict:
    return {"window": list(v.window), "sequences": [list(f.values) for f in v]}


def unit_from_dict(data: dict) -> Unit:
    try:
        window = data["window"]
        seqs = data["sequences"]
    except (KeyError, TypeError):
        raise ValueError("unit JSON needs 'window' and 'sequences' fields") from None
    return unit(window, seqs)


def load_unit(path: str) -> Unit:
    with open(path) as fh:
        return unit_from_dict(json.load(fh))


def save_unit(v: Unit, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(unit_to_dict(v), fh)
        fh.write("\n")
