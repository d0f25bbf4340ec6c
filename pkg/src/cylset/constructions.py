"""Witness and splitting constructions, each returning a checkable certificate.

Every split produced here is verified by independent re-evaluation before it
is returned: the verifier only calls the term evaluator on the certificate's
embedded units and evaluations, so a certificate stands on its own.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .terms import (
    And,
    Cyl,
    Diag,
    Not,
    Or,
    Term,
    Var,
    all_choice_functions,
    atom_term,
    conj,
    escape_term,
    guarded_term,
    guarded_twin_term,
    index_set,
    parse_term,
    render_term,
    signed_var,
    splitter_term,
    subterms,
    twin_guard_term,
    twin_term,
)
from .units import (
    ClassTag,
    Sequence,
    Unit,
    add_sequence,
    base,
    disjoint_squares_unit,
    enumerate_units,
    eqv_gamma,
    eqv_i,
    extend_window,
    fresh_base,
    fresh_indices,
    set_partitions,
    unit_to_dict,
)
from .semantics import (
    CheckReport,
    Evaluation,
    MappedUnitAlgebra,
    P_PRIME,
    SearchBounds,
    UnitAlgebra,
    all_subsets,
    bounded_validity,
    check_ca_axioms,
    check_eq_laws,
    evaluate,
    evaluation_from_dict,
    evaluation_to_dict,
    mapped_eval,
    sample_subsets,
    satisfies,
)
from .units import seq, unit, unit_from_dict


# --- split certificates ---------------------------------------------------

@dataclass
class SplitHalf:
    unit: Unit
    focus: Sequence
    evaluation: Evaluation


@dataclass
class SplitCertificate:
    """Two witnessed halves showing `original` is not an atom.

    The negative half satisfies original . -splitter, the positive half
    original . splitter.  The halves may live in different units; refuting
    atomhood only needs each half nonzero somewhere in the class.  Builder
    context (source unit, the branching sequence, the added point) rides
    along so invariance checks can replay the construction.
    """

    original: Term
    splitter: Term
    fresh: tuple[int, int]
    branch: str
    pivot: int
    negative: SplitHalf
    positive: SplitHalf
    source_unit: Unit | None = None
    source_eval: Evaluation | None = None
    via: Sequence | None = None
    new_point: Sequence | None = None


def verify_certificate(cert: SplitCertificate) -> bool:
    """Re-check both halves by evaluation alone."""
    neg = And(cert.original, Not(cert.splitter))
    pos = And(cert.original, cert.splitter)
    try:
        return satisfies(
            cert.negative.unit, cert.negative.focus, cert.negative.evaluation, neg
        ) and satisfies(
            cert.positive.unit, cert.positive.focus, cert.positive.evaluation, pos
        )
    except ValueError:
        return False


def certificate_to_dict(cert: SplitCertificate) -> dict:
    def half(h: SplitHalf) -> dict:
        return {
            "unit": unit_to_dict(h.unit),
            "focus": list(h.focus.values),
            "evaluation": evaluation_to_dict(h.unit, h.evaluation),
        }

    return {
        "original": render_term(cert.original),
        "splitter": render_term(cert.splitter),
        "fresh": list(cert.fresh),
        "branch": cert.branch,
        "pivot": cert.pivot,
        "negative": half(cert.negative),
        "positive": half(cert.positive),
    }


def certificate_from_dict(data: dict) -> SplitCertificate:
    def half(d: dict) -> SplitHalf:
        u = unit_from_dict(d["unit"])
        return SplitHalf(u, seq(u.window, d["focus"]), evaluation_from_dict(u, d["evaluation"]))

    return SplitCertificate(
        original=parse_term(data["original"]),
        splitter=parse_term(data["splitter"]),
        fresh=(data["fresh"][0], data["fresh"][1]),
        branch=data.get("branch", ""),
        pivot=data.get("pivot", 0),
        negative=half(data["negative"]),
        positive=half(data["positive"]),
    )


# --- singleton witnesses and the atom census -------------------------------

def singleton_witness(m: int, q: Iterable[int]) -> tuple[Unit, Sequence, Evaluation]:
    """One-sequence unit whose constant sequence satisfies atom_term(m, q)."""
    if m < 1:
        raise ValueError("witness needs at least one generator (m >= 1)")
    q = tuple(q)
    w = seq((0, 1), (0, 0))
    v = Unit((0, 1), (w,))
    nu: Evaluation = {
        k: (frozenset((w,)) if q[k] == 1 else frozenset()) for k in range(m)
    }
    return v, w, nu


def separation_suite(m: int) -> CheckReport:
    """Certify 2^m pairwise separated nonzero atom terms via their witnesses."""
    if not 1 <= m <= 3:
        raise ValueError("separation suite supports 1 <= m <= 3")
    report = CheckReport()
    choices = all_choice_functions(m)
    witnesses = {q: singleton_witness(m, q) for q in choices}
    for q in choices:
        v, w, nu = witnesses[q]
        report.count()
        if not satisfies(v, w, nu, atom_term(m, q)):
            report.fail("witness-satisfies-own-atom", q=list(q))
    for q in choices:
        v, w, nu = witnesses[q]
        for other in choices:
            if other == q:
                continue
            report.count()
            if satisfies(v, w, nu, atom_term(m, other)):
                report.fail("witness-separates-atoms", q=list(q), other=list(other))
    return report


# --- zero-dimensionality within bounds -------------------------------------

def zero_dim_check(
    m: int,
    q: Iterable[int],
    i: int,
    j: int,
    bounds: SearchBounds,
    tag: ClassTag = ClassTag.D,
    seed: int = 0,
    workers: int = 1,
) -> CheckReport:
    """Bounded search for a unit separating the (0,1)- and (i,j)-guarded
    signed generator products."""
    if i == j:
        raise ValueError("guard indices must differ")
    q = tuple(q)
    lhs = atom_term(m, q)
    rhs = conj([signed_var(k, q[k]) for k in range(m)] + [Not(escape_term(i, j))])
    result = bounded_validity(lhs, rhs, tag, bounds, m=m, seed=seed, workers=workers)
    report = CheckReport(
        checked=result.evaluations_checked,
        exhaustive=result.exhaustive,
        notes=f"{tag.value}-tagged units, window {bounds.window_size}, "
        f"base {bounds.base_size}, <= {bounds.max_seqs} sequences; "
        "exhaustion within bounds is not a validity proof",
    )
    if result.found:
        ce = result.counterexample
        report.fail(
            "guard-swap-separation",
            unit=unit_to_dict(ce.unit),
            focus=list(ce.focus.values),
            evaluation=evaluation_to_dict(ce.unit, ce.evaluation),
            lhs=render_term(lhs),
            rhs=render_term(rhs),
        )
    return report


# --- atom splitting over diagonal-closed classes ----------------------------

def _escape_candidates(v: Unit, f: Sequence, pivot: int) -> list[Sequence]:
    return [h for h in v if eqv_i(h, f, pivot) and h[0] != h[1]]


def _carry(iota: Evaluation, ext: list[tuple[int, int]]) -> Evaluation:
    if not ext:
        return {k: frozenset(val) for k, val in iota.items()}
    return {k: frozenset(s.extended(ext) for s in val) for k, val in iota.items()}


def split_atom_diag(
    v: Unit, f: Sequence, iota: Evaluation, tau: Term, pivot: int | None = None
) -> SplitCertificate:
    """Split tau . c0 -d01 into two nonzero halves by adjoining one point.

    Picks the two smallest indices outside the term's index set plus {0,1};
    missing ones are materialised as constant columns so the branching
    sequence lands on the diagonal there (the pair-equal branch), while
    pre-existing columns may branch either way.  The pivot argument forces
    which of coordinates 0/1 carries the outer cylindrification; by default
    pivot 0 is tried first and always suffices.
    """
    target = And(tau, escape_term(0, 1))
    if not satisfies(v, f, iota, target):
        raise ValueError("focus must satisfy tau . c0 -d01 in the unit")
    gamma = index_set(tau) | {0, 1}
    i, j = _smallest_outside(gamma, 2)
    pivots = (0, 1) if pivot is None else (pivot,)
    for p in pivots:
        for g in _escape_candidates(v, f, p):
            cert = _diag_certificate(v, f, iota, target, gamma, i, j, p, g)
            if cert is not None:
                return cert
    raise ValueError(
        f"no splitting certificate: focus admits no c{pivots[0]}-escape from d01"
    )


def _smallest_outside(avoid: Iterable[int], n: int) -> tuple[int, ...]:
    avoid = set(avoid)
    out: list[int] = []
    k = 0
    while len(out) < n:
        if k not in avoid:
            out.append(k)
        k += 1
    return tuple(out)


def _diag_certificate(
    v: Unit,
    f: Sequence,
    iota: Evaluation,
    target: Term,
    gamma: frozenset[int],
    i: int,
    j: int,
    p: int,
    g: Sequence,
) -> SplitCertificate | None:
    ext = [(k, g[1 - p]) for k in (i, j) if k not in v.window]
    v1 = extend_window(v, ext)
    f1 = f.extended(ext)
    g1 = g.extended(ext)
    iota1 = _carry(iota, ext)
    domain = sorted(set(iota1) | {0})

    if g1[i] == g1[j]:
        branch = "pair-equal"
        sign = -1
        inside = frozenset(h for h in v1 if h[i] == h[j])
        # g1[0] != g1[1], so one of them escapes g1[j]; prefer the pivot side.
        source = p if g1[p] != g1[j] else 1 - p
        new_point = g1.update(i, g1[source])
    else:
        branch = "pair-distinct"
        sign = 1
        inside = frozenset(h for h in v1 if h[i] != h[j])
        new_point = g1.update(i, g1[j])

    v2 = add_sequence(v1, new_point)
    empty: frozenset = frozenset()
    eval1: Evaluation = {k: iota1.get(k, empty) & inside for k in domain}
    eval2: Evaluation = {k: eval1[k] | {new_point} for k in domain}
    cert = SplitCertificate(
        original=target,
        splitter=splitter_term(i, j, sign, p),
        fresh=(i, j),
        branch=branch,
        pivot=p,
        negative=SplitHalf(v2, f1, eval1),
        positive=SplitHalf(v2, f1, eval2),
        source_unit=v1,
        source_eval=iota1,
        via=g1,
        new_point=new_point,
    )
    return cert if verify_certificate(cert) else None


# --- splitting arbitrary nonzero terms over arbitrary units -----------------

def split_any_crs(v: Unit, f: Sequence, iota: Evaluation, tau: Term) -> SplitCertificate:
    """Split any witnessed nonzero term using two models and a fresh diagonal.

    Two fresh coordinates are appended as one constant column, putting the
    focus on the new diagonal; a relabelled copy of its neighbourhood moves
    two brand-new base elements into those coordinates, leaving the diagonal
    while satisfaction of the term is preserved.
    """
    if not satisfies(v, f, iota, tau):
        raise ValueError("focus must satisfy the term in the unit")
    gamma = index_set(tau)
    i, j = fresh_indices(v, gamma, 2)
    const = min(base(v), default=0)
    ext = [(i, const), (j, const)]
    v1 = extend_window(v, ext)
    f1 = f.extended(ext)
    iota1 = _carry(iota, ext)

    a, b = fresh_base(v1, 2)

    def star(h: Sequence) -> Sequence:
        return h.update(i, a).update(j, b)

    neighbours = [h for h in v1 if eqv_gamma(h, f1, gamma)]
    v_star = Unit(v1.window, tuple(sorted(star(h) for h in neighbours)))
    f_star = star(f1)
    iota_star: Evaluation = {
        k: frozenset(star(h) for h in val if eqv_gamma(h, f1, gamma))
        for k, val in iota1.items()
    }
    cert = SplitCertificate(
        original=tau,
        splitter=Diag(i, j),
        fresh=(i, j),
        branch="fresh-base",
        pivot=0,
        negative=SplitHalf(v_star, f_star, iota_star),
        positive=SplitHalf(v1, f1, iota1),
        source_unit=v1,
        source_eval=iota1,
        via=f1,
    )
    if not verify_certificate(cert):
        raise RuntimeError("relabelled split failed verification; this is a bug")
    return cert


# --- invariance checks over a certificate's subterm closure -----------------

def check_split_invariance(cert: SplitCertificate) -> CheckReport:
    """Biconditional satisfaction checks replaying the certificate's build.

    For the adjoin-a-point splits: restricting the evaluation to the branch
    region and adding the new point must both leave satisfaction of every
    subterm unchanged on sequences agreeing with the branching sequence off
    the fresh coordinates.  For the relabelled split: the starred copy must
    satisfy exactly the same subterms.
    """
    report = CheckReport()
    gamma = index_set(cert.original)
    sigmas = [t for t in dict.fromkeys(subterms(cert.original)) if index_set(t) <= gamma]
    if cert.branch == "fresh-base":
        v1, iota1, f1 = cert.positive.unit, cert.positive.evaluation, cert.positive.focus
        v_star, iota_star, f_star = (
            cert.negative.unit,
            cert.negative.evaluation,
            cert.negative.focus,
        )
        i, j = cert.fresh
        a, b = f_star[i], f_star[j]
        for h in v1:
            if not eqv_gamma(h, f1, gamma):
                continue
            h_star = h.update(i, a).update(j, b)
            for sigma in sigmas:
                report.count()
                if satisfies(v1, h, iota1, sigma) != satisfies(v_star, h_star, iota_star, sigma):
                    report.fail(
                        "relabel-invariance", term=render_term(sigma), h=str(h)
                    )
    else:
        v1, iota, g = cert.source_unit, cert.source_eval, cert.via
        v2 = cert.negative.unit
        eval1, eval2 = cert.negative.evaluation, cert.positive.evaluation
        for h in v1:
            if not eqv_gamma(h, g, gamma):
                continue
            for sigma in sigmas:
                report.count()
                ref = satisfies(v1, h, iota, sigma)
                if (
                    satisfies(v2, h, eval1, sigma) != ref
                    or satisfies(v2, h, eval2, sigma) != ref
                ):
                    report.fail(
                        "restrict-adjoin-invariance", term=render_term(sigma), h=str(h)
                    )
    return report


# --- split corpora ----------------------------------------------------------

@dataclass
class SplitInstance:
    unit: Unit
    focus: Sequence
    evaluation: Evaluation
    term: Term


def diag_split_corpus(min_size: int = 50) -> list[SplitInstance]:
    """Deterministic (unit, focus, evaluation, term) instances satisfying
    tau . c0 -d01, engineered to hit both split branches."""
    instances: list[SplitInstance] = []
    guard = escape_term(0, 1)

    # Window {0,1}: fresh columns get appended, forcing the pair-equal branch.
    two_window = [u for u in enumerate_units((0, 1), 2, 4) if len(u)]
    for v in two_window:
        iota = {0: v.as_set()}
        sat = evaluate(And(Var(0), guard), v, iota)
        if sat:
            instances.append(SplitInstance(v, min(sat), iota, Var(0)))
    # Variable-free and join-shaped targets on a few of the same units.
    for v in two_window:
        iota = {0: frozenset()}
        sat = evaluate(guard, v, iota)
        if sat:
            instances.append(SplitInstance(v, min(sat), iota, Or(Var(0), Not(Var(0)))))
        if len(instances) >= min_size // 2 + 8:
            break

    # Window {0,1,2,3}: columns 2,3 pre-exist, so both branches can fire.
    for v in enumerate_units((0, 1, 2, 3), 2, 2):
        if len(instances) >= min_size + 12:
            break
        if not len(v):
            continue
        iota = {0: v.as_set()}
        sat = evaluate(And(Var(0), guard), v, iota)
        if sat:
            instances.append(SplitInstance(v, min(sat), iota, Var(0)))
    if len(instances) < min_size:
        raise RuntimeError(f"corpus too small: {len(instances)} < {min_size}")
    return instances


def crs_split_corpus(min_size: int = 50) -> list[SplitInstance]:
    """Witnessed nonzero terms, including every atom term for m <= 2."""
    instances: list[SplitInstance] = []
    for m in (1, 2):
        for q in all_choice_functions(m):
            v, w, nu = singleton_witness(m, q)
            instances.append(SplitInstance(v, w, nu, atom_term(m, q)))
    for v in enumerate_units((0, 1), 2, 4):
        if not len(v):
            continue
        full = v.as_set()
        first = frozenset((v.sequences[0],))
        candidates: list[tuple[Term, Evaluation]] = [
            (Var(0), {0: full}),
            (Not(Var(0)), {0: frozenset()}),
            (Cyl(0, Var(0)), {0: first}),
            (And(Var(0), Diag(0, 1)), {0: full}),
            (Or(Var(0), Not(Var(0))), {0: first}),
        ]
        for term, iota in candidates:
            sat = evaluate(term, v, iota)
            if sat:
                instances.append(SplitInstance(v, min(sat), iota, term))
    if len(instances) < min_size:
        raise RuntimeError(f"corpus too small: {len(instances)} < {min_size}")
    return instances


def _run_instances(args) -> tuple[list[SplitCertificate], CheckReport]:
    instances, splitter = args
    certs: list[SplitCertificate] = []
    report = CheckReport()
    for inst in instances:
        report.count()
        try:
            cert = splitter(inst.unit, inst.focus, inst.evaluation, inst.term)
        except (ValueError, RuntimeError) as err:
            report.fail("split-construction-failed", term=render_term(inst.term), error=str(err))
            continue
        if not verify_certificate(cert):
            report.fail("certificate-rejected", term=render_term(inst.term))
        certs.append(cert)
    return certs, report


def run_split_corpus(
    instances: list[SplitInstance],
    splitter: Callable[[Unit, Sequence, Evaluation, Term], SplitCertificate],
    workers: int = 1,
) -> tuple[list[SplitCertificate], CheckReport]:
    """Apply a split construction across a corpus, verifying every certificate.

    Instances are independent; with workers > 1 they are chunked across
    processes and the results merged in corpus order.
    """
    if workers <= 1 or len(instances) < 2 * workers:
        return _run_instances((instances, splitter))
    import multiprocessing

    step = max(1, len(instances) // (workers * 4))
    tasks = [(instances[k:k + step], splitter) for k in range(0, len(instances), step)]
    with multiprocessing.get_context("fork").Pool(workers) as pool:
        results = pool.map(_run_instances, tasks)
    certs: list[SplitCertificate] = []
    report = CheckReport()
    for chunk_certs, chunk_report in results:
        certs.extend(chunk_certs)
        report.merge(chunk_report)
    return certs, report


# --- the mapped witness algebra ---------------------------------------------

def mapped_witness(n: int, ca_samples: int = 200, seed: int = 0) -> tuple[MappedUnitAlgebra, CheckReport]:
    """Build the mapped algebra and verify the guarded-generator facts.

    Sets a to the singleton of the identity sequence, checks the twin's
    value, cylinder agreement, both diagonal bounds, fullness of the guard,
    the guarded value, its disjointness from every d_ij with 2 <= i < j, and
    spot-checks the cylindric postulates on seeded random subsets.
    """
    if not 2 <= n <= 4:
        raise ValueError("mapped witness supports 2 <= n <= 4")
    alg = MappedUnitAlgebra(n)
    report = CheckReport(notes=f"carrier size {len(alg.universe)}")
    a = frozenset((alg.identity,))
    iota = {0: a}

    report.count()
    twin_val = mapped_eval(twin_term(), alg, iota)
    if twin_val != frozenset((P_PRIME,)):
        report.fail("twin-value", expected="{p'}", got=sorted(map(str, twin_val)))
    for i in (0, 1):
        report.count()
        if alg.cyl(i, a) != alg.cyl(i, twin_val):
            report.fail("cylinder-agreement", i=i)
    d01 = alg.diag(0, 1)
    for i, k in ((0, 1), (1, 0)):
        report.count()
        ck = alg.cyl(k, a)
        if not alg.cyl(i, d01 & ck) & ck <= d01:
            report.fail("diagonal-bound", i=i, k=k)
    report.count()
    chi_val = mapped_eval(twin_guard_term(), alg, iota)
    if chi_val != alg.universe:
        report.fail("guard-not-full", missing=len(alg.universe - chi_val))
    report.count()
    tau_val = mapped_eval(guarded_term(), alg, iota)
    if tau_val != a:
        report.fail("guarded-value", expected=sorted(map(str, a)), got=sorted(map(str, tau_val)))
    for i in range(2, n):
        for j in range(i + 1, n):
            report.count()
            if tau_val & alg.diag(i, j):
                report.fail("diagonal-not-avoided", i=i, j=j)
    report.count()
    if mapped_eval(guarded_twin_term(), alg, iota) != twin_val & chi_val:
        report.fail("guarded-twin-mismatch")
    ca = check_ca_axioms(alg, sample_subsets(alg, ca_samples, seed))
    ca.exhaustive = False
    ca.notes = f"postulates spot-checked on {ca_samples} seeded subsets"
    report.merge(ca)
    return alg, report


# --- the twin equation system and its exhaustive refutation -----------------

@dataclass
class TwinReport:
    """Per-equation breakdown of the twin system for a pair (x, y)."""

    disjoint: bool
    nonzero: bool
    cylinders_equal: tuple[bool, bool]
    diagonal_bounds: tuple[bool, bool]

    @property
    def holds(self) -> bool:
        return (
            self.disjoint
            and self.nonzero
            and all(self.cylinders_equal)
            and all(self.diagonal_bounds)
        )


def twin_system_holds(alg, x: frozenset, y: frozenset) -> TwinReport:
    """Check: x.y = 0, x != 0, c_i x = c_i y for i in {0,1}, and both
    diagonal bounds c_i(d01 . c_k x) . c_k x <= d01 for {i,k} = {0,1}."""
    d01 = alg.diag(0, 1)
    c0x = alg.cyl(0, x)
    c1x = alg.cyl(1, x)
    return TwinReport(
        disjoint=not (x & y),
        nonzero=bool(x),
        cylinders_equal=(c0x == alg.cyl(0, y), c1x == alg.cyl(1, y)),
        diagonal_bounds=(
            alg.cyl(0, d01 & c1x) & c1x <= d01,
            alg.cyl(1, d01 & c0x) & c0x <= d01,
        ),
    )


def _gs2_units(max_base: int) -> list[Unit]:
    units: list[Unit] = []
    for b in range(1, max_base + 1):
        for blocks in set_partitions(list(range(b))):
            units.append(disjoint_squares_unit((0, 1), blocks))
    return units


def _twin_chunk(args) -> tuple[int, list[tuple[int, int]]]:
    v, lo, hi = args
    alg = UnitAlgebra(v)
    subsets = all_subsets(alg)
    checked = 0
    holding: list[tuple[int, int]] = []
    for xm in range(lo, hi):
        x = subsets[xm]
        for ym, y in enumerate(subsets):
            checked += 1
            if twin_system_holds(alg, x, y).holds:
                holding.append((xm, ym))
    return checked, holding


def refute_twins_in_gs2(max_base: int, workers: int = 1) -> CheckReport:
    """Exhaustively confirm the twin system fails for every subset pair of
    every disjoint-square unit over window {0,1} with base <= max_base."""
    report = CheckReport(notes=f"disjoint-square units with base <= {max_base}")
    tasks: list[tuple[Unit, int, int]] = []
    for v in _gs2_units(max_base):
        n_subsets = 1 << len(v)
        if workers > 1 and n_subsets >= 256:
            step = n_subsets // (workers * 4) or n_subsets
            tasks.extend((v, lo, min(lo + step, n_subsets)) for lo in range(0, n_subsets, step))
        else:
            tasks.append((v, 0, n_subsets))

    if workers > 1:
        import multiprocessing

        with multiprocessing.get_context("fork").Pool(workers) as pool:
            results = pool.map(_twin_chunk, tasks)
    else:
        results = [_twin_chunk(t) for t in tasks]

    for (v, _, _), (checked, holding) in zip(tasks, results):
        report.count(checked)
        alg = UnitAlgebra(v)
        subsets = all_subsets(alg)
        for xm, ym in holding:
            report.fail(
                "twin-system-held-in-gs2",
                unit=unit_to_dict(v),
                x=sorted(map(str, subsets[xm])),
                y=sorted(map(str, subsets[ym])),
            )
    return report


# --- replication suites -------------------------------------------------

def suite_atom_census() -> CheckReport:
    report = CheckReport()
    for m in (1, 2, 3):
        report.merge(separation_suite(m))
    return report


def suite_zero_dim(seed: int = 0, workers: int = 1) -> CheckReport:
    bounds = SearchBounds(window_size=4, base_size=2, max_seqs=4, max_eval_subsets=16)
    report = CheckReport()
    for m in (1, 2):
        for q in all_choice_functions(m):
            report.merge(zero_dim_check(m, q, 2, 3, bounds, ClassTag.D, seed, workers))
    # The same search over arbitrary units must separate the two guards.
    crs = zero_dim_check(1, (1,), 2, 3, bounds, ClassTag.CRS, seed, workers)
    report.count(crs.checked)
    if crs.ok:
        report.fail("expected-crs-counterexample-missing")
    return report


def suite_split_diag(workers: int = 1) -> CheckReport:
    instances = diag_split_corpus()
    certs, report = run_split_corpus(instances, split_atom_diag, workers)
    branches = {c.branch for c in certs}
    if not {"pair-equal", "pair-distinct"} <= branches:
        report.fail("branch-coverage", seen=sorted(branches))
    for cert in certs:
        report.merge(check_split_invariance(cert))
    return report


def suite_split_crs(workers: int = 1) -> CheckReport:
    instances = crs_split_corpus()
    certs, report = run_split_corpus(instances, split_any_crs, workers)
    for cert in certs:
        report.merge(check_split_invariance(cert))
    return report


def suite_mapped_witness(ca_samples: int = 1000, seed: int = 0) -> CheckReport:
    _, report = mapped_witness(4, ca_samples, seed)
    return report


def suite_twin_system(max_base: int = 2, workers: int = 1) -> CheckReport:
    alg = MappedUnitAlgebra(4)
    iota = {0: frozenset((alg.identity,))}
    tau_val = mapped_eval(guarded_term(), alg, iota)
    eta_val = mapped_eval(guarded_twin_term(), alg, iota)
    report = CheckReport()
    report.count()
    if not twin_system_holds(alg, tau_val, eta_val).holds:
        report.fail("twin-system-rejected-in-witness")
    report.merge(refute_twins_in_gs2(max_base, workers))
    return report


def suite_equations() -> CheckReport:
    report = CheckReport()
    for v in enumerate_units((0, 1), 2, 16):
        report.merge(check_eq_laws(v))
    # The commutation postulate must fail on the documented three-sequence unit.
    v = unit((0, 1), [(0, 0), (1, 0), (1, 1)])
    ca = check_ca_axioms(UnitAlgebra(v), all_subsets(UnitAlgebra(v)))
    report.count(ca.checked)
    if not any(f.law == "CA4" for f in ca.failures):
        report.fail("expected-ca4-counterexample-missing")
    return report


REPLICATION_SUITES: dict[str, Callable[..., CheckReport]] = {
    "atom-census": lambda **kw: suite_atom_census(),
    "zero-dim": lambda **kw: suite_zero_dim(seed=kw.get("seed", 0), workers=kw.get("workers", 1)),
    "split-diag": lambda **kw: suite_split_diag(workers=kw.get("workers", 1)),
    "split-crs": lambda **kw: suite_split_crs(workers=kw.get("workers", 1)),
    "mapped-witness": lambda **kw: suite_mapped_witness(seed=kw.get("seed", 0)),
    "twin-system": lambda **kw: suite_twin_system(
        max_base=kw.get("max_base", 2), workers=kw.get("workers", 1)
    ),
    "equations": lambda **kw: suite_equations(),
}


def replicate(suite: str = "all", **kw) -> list[tuple[str, CheckReport]]:
    """Run one named replication suite, or all of them in order."""
    if suite == "all":
        names = list(REPLICATION_SUITES)
    elif suite in REPLICATION_SUITES:
        names = [suite]
    else:
        raise ValueError(f"unknown suite {suite!r}; pick from {sorted(REPLICATION_SUITES)} or 'all'")
    return [(name, REPLICATION_SUITES[name](**kw)) for name in names]
