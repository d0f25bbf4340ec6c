"""Evaluation of cylindric terms in full set algebras over units.

The same homomorphic evaluator serves two carrier shapes: power sets of a
unit's sequences, and the mapped algebra whose carrier is the full square
over a finite window plus one extra point relabelled onto the identity
sequence.  Axiom and equation checkers take any such handle, so they act as
refuters over sampled instances, never as provers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Mapping

from .terms import And, Cyl, Diag, Not, One, Or, Term, Var, Zero, index_set, variables
from .units import ClassTag, Sequence, Unit, enumerate_units

# Variable index -> subset of the carrier.
Evaluation = dict[int, frozenset]


@lru_cache(maxsize=None)
def _cyl_partition(v: Unit, i: int) -> dict[tuple[int, ...], frozenset[Sequence]]:
    classes: dict[tuple[int, ...], set[Sequence]] = {}
    for f in v:
        classes.setdefault(f.dropped(i), set()).add(f)
    return {k: frozenset(s) for k, s in classes.items()}


class UnitAlgebra:
    """Operation handle for the power-set algebra over a unit."""

    def __init__(self, v: Unit):
        self.unit = v
        self.universe = v.as_set()
        self.indices = v.window

    def diag(self, i: int, j: int) -> frozenset[Sequence]:
        if i == j:
            return self.universe
        if i not in self.unit.window or j not in self.unit.window:
            raise ValueError(f"distinct diagonal indices {i},{j} must lie in the window")
        return frozenset(f for f in self.unit if f[i] == f[j])

    def cyl(self, i: int, x: frozenset[Sequence]) -> frozenset[Sequence]:
        if i not in self.unit.window:
            raise ValueError(f"cylindrification index {i} outside window {self.unit.window}")
        part = _cyl_partition(self.unit, i)
        out: set[Sequence] = set()
        for key in {f.dropped(i) for f in x}:
            out |= part[key]
        return frozenset(out)


def diagonal(v: Unit, i: int, j: int) -> frozenset[Sequence]:
    """All sequences of the unit whose i-th and j-th values coincide."""
    return UnitAlgebra(v).diag(i, j)


def cylindrify(v: Unit, i: int, x: Iterable[Sequence]) -> frozenset[Sequence]:
    """All sequences differing from some member of x at most at coordinate i."""
    x = frozenset(x)
    if not x <= v.as_set():
        raise ValueError("cylindrified set must be a subset of the unit")
    return UnitAlgebra(v).cyl(i, x)


class _ExtraPoint:
    __slots__ = ()

    def __repr__(self):
        return "p'"


P_PRIME = _ExtraPoint()


class MappedUnitAlgebra:
    """Full square over window {0..n-1} plus an extra point sharing the
    identity sequence's cylinders.

    The extra point p' is relabelled onto the identity sequence p when
    cylinders are computed, yet it belongs to no diagonal d_ij with i != j.
    The result satisfies the cylindric postulates while containing a nonzero
    element disjoint from every diagonal over indices >= 2.
    """

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("mapped algebra needs a window of at least two indices")
        self.n = n
        self.identity = tuple(range(n))
        self.grid = tuple(sorted(product(range(n), repeat=n)))
        self.universe = frozenset(self.grid) | {P_PRIME}
        self.indices = tuple(range(n))
        self._partitions: dict[int, dict] = {}
        self._diags: dict[tuple[int, int], frozenset] = {}

    def h(self, q):
        return self.identity if q is P_PRIME else q

    def _check_index(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise ValueError(f"index {i} outside window 0..{self.n - 1}")

    def diag(self, i: int, j: int) -> frozenset:
        self._check_index(i)
        self._check_index(j)
        if i == j:
            return self.universe
        if (i, j) not in self._diags:
            self._diags[(i, j)] = frozenset(q for q in self.grid if q[i] == q[j])
        return self._diags[(i, j)]

    def _partition(self, i: int) -> dict:
        if i not in self._partitions:
            classes: dict[tuple, set] = {}
            for q in self.universe:
                hq = self.h(q)
                classes.setdefault(hq[:i] + hq[i + 1:], set()).add(q)
            self._partitions[i] = {k: frozenset(s) for k, s in classes.items()}
        return self._partitions[i]

    def cyl(self, i: int, x: frozenset) -> frozenset:
        self._check_index(i)
        part = self._partition(i)
        out: set = set()
        for q in x:
            hq = self.h(q)
            out |= part[hq[:i] + hq[i + 1:]]
        return frozenset(out)


def _eval(alg, t: Term, iota: Mapping[int, frozenset]) -> frozenset:
    if isinstance(t, Var):
        return iota[t.k]
    if isinstance(t, Zero):
        return frozenset()
    if isinstance(t, One):
        return alg.universe
    if isinstance(t, Diag):
        return alg.diag(t.i, t.j)
    if isinstance(t, Not):
        return alg.universe - _eval(alg, t.t, iota)
    if isinstance(t, And):
        return _eval(alg, t.t1, iota) & _eval(alg, t.t2, iota)
    if isinstance(t, Or):
        return _eval(alg, t.t1, iota) | _eval(alg, t.t2, iota)
    if isinstance(t, Cyl):
        return alg.cyl(t.i, _eval(alg, t.t, iota))
    raise TypeError(f"not a term: {t!r}")


def evaluate(t: Term, v: Unit, iota: Mapping[int, frozenset]) -> frozenset[Sequence]:
    """Interpretation of `t` in the power-set algebra over `v` under `iota`."""
    missing = index_set(t) - set(v.window)
    if missing:
        raise ValueError(f"term mentions off-window indices {sorted(missing)}")
    unassigned = variables(t) - set(iota)
    if unassigned:
        raise ValueError(f"unassigned variables {sorted(unassigned)}")
    members = v.as_set()
    for k, val in iota.items():
        if not frozenset(val) <= members:
            raise ValueError(f"evaluation of x{k} is not a subset of the unit")
    return _eval(UnitAlgebra(v), t, iota)


def satisfies(v: Unit, f: Sequence, iota: Mapping[int, frozenset], t: Term) -> bool:
    """True iff f belongs to the interpretation of t in P(v) under iota."""
    if f not in v:
        raise ValueError("focus sequence does not belong to the unit")
    return f in evaluate(t, v, iota)


def mapped_eval(t: Term, alg: MappedUnitAlgebra, iota: Mapping[int, frozenset]) -> frozenset:
    """Interpretation of `t` in the mapped algebra under `iota`."""
    for i in index_set(t):
        alg._check_index(i)
    unassigned = variables(t) - set(iota)
    if unassigned:
        raise ValueError(f"unassigned variables {sorted(unassigned)}")
    return _eval(alg, t, iota)


# --- evaluation helpers --------------------------------------------------

def _sort_key(q):
    if isinstance(q, Sequence):
        return (0, q.window, q.values)
    if q is P_PRIME:
        return (2,)
    return (1, q)


def sorted_universe(alg) -> list:
    return sorted(alg.universe, key=_sort_key)


def subset_from_mask(elems: list, mask: int) -> frozenset:
    return frozenset(e for k, e in enumerate(elems) if mask >> k & 1)


def all_subsets(alg) -> list[frozenset]:
    elems = sorted_universe(alg)
    return [subset_from_mask(elems, mask) for mask in range(1 << len(elems))]


def sample_subsets(alg, count: int, seed: int = 0) -> list[frozenset]:
    """Deterministic pseudo-random subsets of the carrier."""
    elems = sorted_universe(alg)
    rng = random.Random(f"subsets:{seed}")
    return [subset_from_mask(elems, rng.getrandbits(len(elems))) for _ in range(count)]


def evaluation_from_dict(v: Unit, data: Mapping[str, list[int]]) -> Evaluation:
    """Decode {"x0": [positions]} with positions into the sorted sequence list."""
    iota: Evaluation = {}
    for name, positions in data.items():
        if not name.startswith("x") or not name[1:].isdigit():
            raise ValueError(f"bad variable name {name!r}; expected x0, x1, ...")
        k = int(name[1:])
        try:
            iota[k] = frozenset(v.sequences[p] for p in positions)
        except IndexError:
            raise ValueError(
                f"{name} lists a position outside 0..{len(v) - 1}"
            ) from None
    return iota


def evaluation_to_dict(v: Unit, iota: Mapping[int, frozenset]) -> dict[str, list[int]]:
    return {
        f"x{k}": sorted(v.position(f) for f in val)
        for k, val in sorted(iota.items())
    }


# --- check reports -------------------------------------------------------

@dataclass
class CheckFailure:
    law: str
    witness: dict

    def to_dict(self) -> dict:
        return {"law": self.law, "witness": self.witness}


@dataclass
class CheckReport:
    checked: int = 0
    failures: list[CheckFailure] = field(default_factory=list)
    exhaustive: bool = True
    notes: str = ""

    @property
    def ok(self) -> bool:
        return not self.failures

    def count(self, n: int = 1) -> None:
        self.checked += n

    def fail(self, law: str, **witness) -> None:
        self.failures.append(CheckFailure(law, witness))

    def merge(self, other: "CheckReport") -> "CheckReport":
        self.checked += other.checked
        self.failures.extend(other.failures)
        self.exhaustive = self.exhaustive and other.exhaustive
        if other.notes:
            self.notes = f"{self.notes}; {other.notes}" if self.notes else other.notes
        return self


def _describe(x) -> object:
    if isinstance(x, frozenset):
        return sorted(str(e) for e in x)
    return str(x)


# --- postulate and equation checkers -------------------------------------

def _element_pairs(elems: list[frozenset]) -> list[tuple[frozenset, frozenset]]:
    if len(elems) <= 32:
        return [(x, y) for x in elems for y in elems]
    rotated = elems[1:] + elems[:1]
    return list(zip(elems, rotated))


def check_ca_axioms(alg, elems: Iterable[frozenset], indices: Iterable[int] | None = None) -> CheckReport:
    """Check the cylindric postulates over the sampled elements and indices."""
    report = CheckReport()
    idx = tuple(indices) if indices is not None else tuple(alg.indices)
    elems = [frozenset(x) for x in elems]
    top = alg.universe
    empty = frozenset()
    pairs = [(i, j) for i in idx for j in idx if i != j]
    triples = [(i, j, k) for i in idx for j in idx for k in idx if k != i and k != j]
    epairs = _element_pairs(elems)

    for x, y in epairs:
        report.count()
        if (x | y != y | x) or (x & (top - x) != empty) or (top - (x & y) != (top - x) | (top - y)):
            report.fail("CA0", x=_describe(x), y=_describe(y))
    for i in idx:
        report.count()
        if alg.cyl(i, empty) != empty:
            report.fail("CA1", i=i)
    for x in elems:
        for i in idx:
            report.count()
            cx = alg.cyl(i, x)
            if x | cx != cx:
                report.fail("CA2", i=i, x=_describe(x))
    for x, y in epairs:
        for i in idx:
            report.count()
            if alg.cyl(i, x & alg.cyl(i, y)) != alg.cyl(i, x) & alg.cyl(i, y):
                report.fail("CA3", i=i, x=_describe(x), y=_describe(y))
    for x in elems:
        for i, j in pairs:
            if i > j:
                continue
            report.count()
            if alg.cyl(i, alg.cyl(j, x)) != alg.cyl(j, alg.cyl(i, x)):
                report.fail("CA4", i=i, j=j, x=_describe(x))
    for i in idx:
        report.count()
        if alg.diag(i, i) != top:
            report.fail("CA5", i=i)
    for i, j, k in triples:
        report.count()
        if alg.diag(i, j) != alg.cyl(k, alg.diag(i, k) & alg.diag(k, j)):
            report.fail("CA6", i=i, j=j, k=k)
    for x in elems:
        for i, j in pairs:
            report.count()
            dij = alg.diag(i, j)
            if alg.cyl(i, dij & x) & alg.cyl(i, dij & (top - x)) != empty:
                report.fail("CA7", i=i, j=j, x=_describe(x))
    return report


def check_eq_laws(v: Unit, max_exhaustive_subsets: int = 64, samples: int = 64, seed: int = 0) -> CheckReport:
    """Check the seven unit-algebra equations over subsets of the unit."""
    alg = UnitAlgebra(v)
    if (1 << len(v)) <= max_exhaustive_subsets:
        elems = all_subsets(alg)
        exhaustive = True
    else:
        elems = sample_subsets(alg, samples, seed)
        exhaustive = False
    report = CheckReport(exhaustive=exhaustive)
    top = alg.universe
    empty = frozenset()
    idx = v.window
    pairs = [(i, j) for i in idx for j in idx if i != j]
    epairs = _element_pairs(elems)

    for i in idx:
        report.count()
        if alg.cyl(i, empty) != empty:
            report.fail("Eq1", i=i)
        report.count()
        if alg.diag(i, i) != top:
            report.fail("Eq6", i=i)
    for x in elems:
        for i in idx:
            report.count()
            cx = alg.cyl(i, x)
            if x & cx != x:
                report.fail("Eq2", i=i, x=_describe(x))
            report.count()
            if alg.cyl(i, top - cx) != top - cx:
                report.fail("Eq5", i=i, x=_describe(x))
        for i, j in pairs:
            report.count()
            dij = alg.diag(i, j)
            if alg.cyl(i, x & dij) & dij != x & dij:
                report.fail("Eq7", i=i, j=j, x=_describe(x))
    for x, y in epairs:
        for i in idx:
            report.count()
            if alg.cyl(i, x & alg.cyl(i, y)) != alg.cyl(i, x) & alg.cyl(i, y):
                report.fail("Eq3", i=i, x=_describe(x), y=_describe(y))
            report.count()
            if alg.cyl(i, x | y) != alg.cyl(i, x) | alg.cyl(i, y):
                report.fail("Eq4", i=i, x=_describe(x), y=_describe(y))
    return report


# --- bounded validity search ---------------------------------------------

@dataclass(frozen=True)
class SearchBounds:
    window_size: int
    base_size: int
    max_seqs: int
    max_eval_subsets: int = 4096


@dataclass
class Counterexample:
    unit: Unit
    focus: Sequence
    evaluation: Evaluation


@dataclass
class ValidityResult:
    counterexample: Counterexample | None
    exhaustive: bool
    units_checked: int
    evaluations_checked: int

    @property
    def found(self) -> bool:
        return self.counterexample is not None


def _iter_evaluations(v: Unit, m: int, max_eval_subsets: int, seed_tag: str) -> tuple[Iterator[Evaluation], bool]:
    total = 1 << len(v)
    seqs = v.sequences

    def from_masks(masks: tuple[int, ...]) -> Evaluation:
        return {
            k: frozenset(s for b, s in enumerate(seqs) if masks[k] >> b & 1)
            for k in range(m)
        }

    if total <= max_eval_subsets:
        return (from_masks(masks) for masks in product(range(total), repeat=m)), True
    rng = random.Random(seed_tag)
    samples = (tuple(rng.randrange(total) for _ in range(m)) for _ in range(max_eval_subsets))
    return (from_masks(masks) for masks in samples), False


def _scan_chunk(args) -> tuple[tuple | None, int, int, bool]:
    chunk, lhs, rhs, m, max_eval_subsets, seed = args
    units_checked = 0
    evals_checked = 0
    exhaustive = True
    for idx, v in chunk:
        units_checked += 1
        evals, full = _iter_evaluations(v, m, max_eval_subsets, f"validity:{seed}:{idx}")
        exhaustive = exhaustive and full
        for iota in evals:
            evals_checked += 1
            left = evaluate(lhs, v, iota)
            right = evaluate(rhs, v, iota)
            diff = left ^ right
            if diff:
                return (idx, v, min(diff), iota), units_checked, evals_checked, exhaustive
    return None, units_checked, evals_checked, exhaustive


def _chunks(items: list, size: int) -> list[list]:
    return [items[k:k + size] for k in range(0, len(items), size)]


def bounded_validity(
    lhs: Term,
    rhs: Term,
    tag: ClassTag,
    bounds: SearchBounds,
    m: int | None = None,
    seed: int = 0,
    workers: int = 1,
) -> ValidityResult:
    """Search tagged units within bounds for a point separating lhs from rhs.

    Returns the least counterexample in enumeration order, or reports the
    search space exhausted.  Exhaustion within bounds is not a validity
    proof; the report flags whether evaluation spaces were fully enumerated.
    """
    if lhs == rhs:
        return ValidityResult(None, True, 0, 0)
    window = tuple(range(bounds.window_size))
    outside = (index_set(lhs) | index_set(rhs)) - set(window)
    if outside:
        raise ValueError(f"terms mention indices {sorted(outside)} beyond the window bound")
    if m is None:
        m = 1 + max(variables(lhs) | variables(rhs), default=-1)

    units = list(enumerate_units(window, bounds.base_size, bounds.max_seqs, tag))
    indexed = list(enumerate(units))

    if workers <= 1:
        hit, n_units, n_evals, exhaustive = _scan_chunk((indexed, lhs, rhs, m, bounds.max_eval_subsets, seed))
        if hit:
            _, v, focus, iota = hit
            return ValidityResult(Counterexample(v, focus, iota), exhaustive, n_units, n_evals)
        return ValidityResult(None, exhaustive, n_units, n_evals)

    import multiprocessing

    chunk_size = max(1, len(indexed) // (workers * 4) or 1)
    tasks = [(c, lhs, rhs, m, bounds.max_eval_subsets, seed) for c in _chunks(indexed, chunk_size)]
    with multiprocessing.get_context("fork").Pool(workers) as pool:
        results = pool.map(_scan_chunk, tasks)
    n_units = 0
    n_evals = 0
    exhaustive = True
    for hit, units_checked, evals_checked, full in results:
        n_units += units_checked
        n_evals += evals_checked
        exhaustive = exhaustive and full
        if hit:
            _, v, focus, iota = hit
            return ValidityResult(Counterexample(v, focus, iota), exhaustive, n_units, n_evals)
    return ValidityResult(None, exhaustive, n_units, n_evals)
