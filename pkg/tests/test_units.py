import json

import pytest
from hypothesis import given, strategies as st

from cylset.semantics import evaluate
from cylset.terms import parse_term
from cylset.units import (
    ClassTag,
    Unit,
    add_sequence,
    base,
    classify,
    diagonalization_closure,
    disjoint_squares_unit,
    enumerate_units,
    eqv_gamma,
    eqv_i,
    extend_window,
    fresh_base,
    fresh_indices,
    full_square,
    seq,
    set_partitions,
    unit,
    unit_from_dict,
    unit_to_dict,
)

SQ22 = full_square((0, 1), (0, 1))


class TestSequence:
    def test_update(self):
        f = seq((0, 1), (0, 1))
        assert f.update(0, 1) == seq((0, 1), (1, 1))

    def test_update_noop(self):
        f = seq((0, 1), (0, 1))
        assert f.update(1, 1) == f

    def test_update_off_window(self):
        with pytest.raises(ValueError):
            seq((0, 1), (0, 1)).update(5, 0)

    def test_eqv_i(self):
        f, g = seq((0, 1), (0, 1)), seq((0, 1), (1, 1))
        assert eqv_i(f, g, 0)
        assert not eqv_i(f, seq((0, 1), (0, 0)), 0)
        assert eqv_i(f, f, 0) and eqv_i(f, f, 1)

    def test_eqv_i_window_mismatch(self):
        with pytest.raises(ValueError):
            eqv_i(seq((0, 1), (0, 1)), seq((0, 2), (0, 1)), 0)

    def test_eqv_gamma(self):
        f, g = seq((0, 1), (0, 1)), seq((0, 1), (1, 1))
        assert eqv_gamma(f, g, {0})
        assert not eqv_gamma(f, seq((0, 1), (1, 0)), {0})
        assert eqv_gamma(f, seq((0, 1), (1, 0)), {0, 1})

    @given(st.permutations([0, 1, 2]))
    def test_window_must_be_sorted(self, perm):
        if perm == [0, 1, 2]:
            seq(perm, (0, 0, 0))
        else:
            with pytest.raises(ValueError):
                seq(perm, (0, 0, 0))


class TestBaseAndClassify:
    def test_base_examples(self):
        assert base(unit((0, 1), [(0, 1)])) == {0, 1}
        assert base(unit((0, 1), [])) == frozenset()
        assert base(unit((0, 1), [(0, 0), (2, 2)])) == {0, 2}

    def test_two_disjoint_points(self):
        v = unit((0, 1), [(0, 0), (1, 1)])
        assert classify(v) == {ClassTag.CRS, ClassTag.D, ClassTag.G, ClassTag.GS}

    def test_non_diagonalizable_singleton(self):
        assert classify(unit((0, 1), [(0, 1)])) == {ClassTag.CRS}

    def test_full_square(self):
        assert classify(SQ22) == {ClassTag.CRS, ClassTag.D, ClassTag.G, ClassTag.GS}

    def test_empty_unit(self):
        assert classify(unit((0, 1), [])) == {
            ClassTag.CRS,
            ClassTag.D,
            ClassTag.G,
            ClassTag.GS,
        }

    def test_constant_singletons_are_everything(self):
        for c in (0, 1):
            v = unit((0, 1, 2), [(c, c, c)])
            assert classify(v) >= {ClassTag.D, ClassTag.G, ClassTag.GS}

    def test_class_chain_over_small_units(self):
        # Gs implies G implies D implies Crs on every unit with base <= 2
        # and window of size <= 3.
        for window in [(0,), (0, 1), (0, 1, 2)]:
            square_size = 2 ** len(window)
            for v in enumerate_units(window, 2, square_size):
                tags = classify(v)
                if ClassTag.GS in tags:
                    assert ClassTag.G in tags
                if ClassTag.G in tags:
                    assert ClassTag.D in tags
                assert ClassTag.CRS in tags


class TestClosure:
    def test_closure_of_off_diagonal_point(self):
        v = diagonalization_closure(unit((0, 1), [(0, 1)]))
        assert v == unit((0, 1), [(0, 1), (0, 0), (1, 1)])

    def test_closure_of_square_is_identity(self):
        assert diagonalization_closure(SQ22) == SQ22

    def test_closure_of_empty(self):
        v = unit((0, 1), [])
        assert diagonalization_closure(v) == v

    def test_idempotent_monotone_and_d_tagged(self):
        for v in enumerate_units((0, 1), 2, 4):
            closed = diagonalization_closure(v)
            assert diagonalization_closure(closed) == closed
            assert v.as_set() <= closed.as_set()
            assert ClassTag.D in classify(closed)


class TestWindowSurgery:
    def test_extend_window(self):
        v = extend_window(unit((0, 1), [(0, 1)]), [(2, 0)])
        assert v == unit((0, 1, 2), [(0, 1, 0)])

    def test_extend_window_empty(self):
        v = unit((0, 1), [(0, 1)])
        assert extend_window(v, []) == v

    def test_extend_window_collision(self):
        with pytest.raises(ValueError):
            extend_window(unit((0, 1), [(0, 1)]), [(1, 0)])

    def test_constant_extension_preserves_satisfaction(self):
        terms = [parse_term(s) for s in ("x0 . -c0 -d01", "c0 x0 + d01", "c1 -x0")]
        pairs = [(2, 0), (3, 1)]
        for v in enumerate_units((0, 1), 2, 4):
            if not len(v):
                continue
            iota = {0: frozenset(list(v)[:1])}
            ext = extend_window(v, pairs)
            carried = {0: frozenset(s.extended(pairs) for s in iota[0])}
            for t in terms:
                got = {f.values[:2] for f in evaluate(t, ext, carried)}
                want = {f.values for f in evaluate(t, v, iota)}
                assert got == want

    def test_add_sequence_idempotent(self):
        v = unit((0, 1), [(0, 1)])
        f = seq((0, 1), (0, 1))
        assert add_sequence(v, f) == v
        g = seq((0, 1), (1, 1))
        assert add_sequence(v, g) == unit((0, 1), [(0, 1), (1, 1)])

    def test_fresh_base(self):
        assert fresh_base(unit((0, 1), [(0, 1)]), 2) == [2, 3]

    def test_fresh_indices(self):
        assert fresh_indices(unit((0, 1), [(0, 1)]), {0, 1}, 2) == [2, 3]
        assert fresh_indices(unit((0, 1), [(0, 1)]), {2}, 2) == [3, 4]


class TestEnumeration:
    def test_tiny_enumeration(self):
        got = list(enumerate_units((0, 1), 1, 1))
        assert got == [unit((0, 1), []), unit((0, 1), [(0, 0)])]

    def test_gs_enumeration(self):
        got = list(enumerate_units((0, 1), 2, 16, ClassTag.GS))
        assert SQ22 in got
        assert unit((0, 1), [(0, 0), (1, 1)]) in got
        assert unit((0, 1), [(0, 1)]) not in got

    def test_crs_count(self):
        assert sum(1 for _ in enumerate_units((0, 1), 2, 16)) == 16

    def test_no_duplicates_and_deterministic(self):
        a = list(enumerate_units((0, 1), 2, 16, ClassTag.D))
        b = list(enumerate_units((0, 1), 2, 16, ClassTag.D))
        assert a == b
        assert len(a) == len(set(a))

    def test_singletons_require_diagonal_closure(self):
        for v in enumerate_units((0, 1), 2, 1, ClassTag.D):
            if len(v) == 1:
                f = v.sequences[0]
                assert f[0] == f[1]
                assert classify(v) >= {ClassTag.D, ClassTag.G, ClassTag.GS}


class TestPartitions:
    def test_counts(self):
        assert len(list(set_partitions([0]))) == 1
        assert len(list(set_partitions([0, 1]))) == 2
        assert len(list(set_partitions([0, 1, 2]))) == 5

    def test_disjoint_squares(self):
        v = disjoint_squares_unit((0, 1), [[0, 1], [2]])
        assert len(v) == 5
        assert classify(v) >= {ClassTag.G, ClassTag.GS}
        with pytest.raises(ValueError):
            disjoint_squares_unit((0, 1), [[0, 1], [1, 2]])


class TestJson:
    def test_round_trip(self):
        v = unit((0, 1), [(0, 1), (1, 1)])
        data = unit_to_dict(v)
        assert data == {"window": [0, 1], "sequences": [[0, 1], [1, 1]]}
        assert unit_from_dict(json.loads(json.dumps(data))) == v

    def test_malformed(self):
        with pytest.raises(ValueError):
            unit_from_dict({"sequences": [[0, 1]]})


class TestUnitValidation:
    def test_window_mismatch(self):
        with pytest.raises(ValueError):
            Unit((0, 1), (seq((0, 2), (0, 1)),))

    def test_duplicates_collapse(self):
        v = unit((0, 1), [(0, 1), (0, 1)])
        assert len(v) == 1
