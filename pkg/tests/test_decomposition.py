"""Intervals, simplicity, components, and the decomposition tree."""

from __future__ import annotations

import itertools

import pytest

from permdeflate.perm_core import Permutation, apply_symmetry, parse_permutation, SYMMETRY_ORDER
from permdeflate.decomposition import (
    IntervalSpan,
    is_simple,
    maximal_intervals,
    proper_intervals,
    quadrants,
    sd_measure,
    substitution_decompose,
    sum_components,
    _is_decomposable,
)

P = parse_permutation


def all_perms(n):
    return [Permutation(q) for q in itertools.permutations(range(1, n + 1))]


def oracle_intervals(p: Permutation) -> list[tuple[int, int, int, int]]:
    """Independent reference: test every box for the contiguity property."""
    vals = p.values
    n = len(vals)
    out = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if j - i + 1 == n:
                continue
            window = vals[i - 1 : j]
            lo, hi = min(window), max(window)
            if hi - lo == j - i:
                out.append((i, j, lo, hi))
    return out


def test_proper_intervals_examples():
    assert [(s.pos_lo, s.pos_hi, s.val_lo, s.val_hi) for s in proper_intervals(P("4371265"))] == [
        (1, 2, 3, 4),
        (4, 5, 1, 2),
        (6, 7, 5, 6),
    ]
    assert proper_intervals(P("2413")) == []
    assert [(s.pos_lo, s.pos_hi) for s in proper_intervals(P("123"))] == [(1, 2), (2, 3)]


def test_proper_intervals_match_oracle_to_7():
    for n in range(1, 8):
        for p in all_perms(n):
            got = [(s.pos_lo, s.pos_hi, s.val_lo, s.val_hi) for s in proper_intervals(p)]
            assert got == sorted(oracle_intervals(p))


def test_is_simple_examples_and_convention():
    assert is_simple(P("2413"))
    assert is_simple(P("1")) and is_simple(P("12")) and is_simple(P("21"))
    assert not any(is_simple(p) for p in all_perms(3))
    assert not is_simple(P("4371265"))


def test_simple_counts_to_6():
    counts = [sum(1 for p in all_perms(n) if is_simple(p)) for n in range(1, 7)]
    assert counts == [1, 2, 0, 2, 6, 46]


def test_simplicity_is_symmetry_invariant_to_7():
    for n in range(1, 8):
        for p in all_perms(n):
            base = is_simple(p)
            assert all(is_simple(apply_symmetry(p, s)) == base for s in SYMMETRY_ORDER)


def test_sum_components():
    assert [str(c) for c in sum_components(P("123456"), "direct")] == ["1"] * 6
    assert [str(c) for c in sum_components(P("6753241"), "skew")] == ["1 2", "1", "2 1 3", "1"]
    assert len(sum_components(P("2413"), "direct")) == 1
    with pytest.raises(ValueError):
        sum_components(P("123"), "sideways")


def test_substitution_decompose_examples():
    t = substitution_decompose(P("4371265"))
    assert t.skeleton == P("2413")
    assert [str(c.reinflate()) for c in t.children] == ["2 1", "1", "1 2", "2 1"]

    t = substitution_decompose(P("2413"))
    assert t.skeleton == P("2413") and all(c.is_leaf for c in t.children)

    t = substitution_decompose(P("123"))
    assert t.skeleton == P("12")
    assert t.children[0].is_leaf
    assert t.children[1].reinflate() == P("12")


def test_decompose_reinflates_and_is_canonical_to_8():
    for n in range(1, 9):
        for p in all_perms(n):
            t = substitution_decompose(p)
            assert t.reinflate() == p
            if t.is_leaf:
                assert len(p) == 1
                continue
            skel = t.skeleton
            if len(skel) > 2:
                assert is_simple(skel)
            else:
                kind = "direct" if skel == P("12") else "skew"
                # first child indecomposable of the matching kind
                assert len(sum_components(t.children[0].reinflate(), kind)) == 1


def test_inflate_then_decompose_recovers_blocks():
    import random

    from permdeflate.perm_core import inflate

    rng = random.Random(11)
    simples = [p for n in (4, 5, 6) for p in all_perms(n) if is_simple(p)]
    for _ in range(60):
        skeleton = rng.choice(simples)
        parts = []
        for _ in range(len(skeleton)):
            m = rng.randint(1, 3)
            parts.append(Permutation(tuple(rng.sample(range(1, m + 1), m))))
        whole = inflate(skeleton, parts)
        tree = substitution_decompose(whole)
        assert tree.skeleton == skeleton
        assert [c.reinflate() for c in tree.children] == parts


def test_maximal_intervals_examples():
    assert [(s.pos_lo, s.pos_hi) for s in maximal_intervals(P("4371265"))] == [
        (1, 2),
        (3, 3),
        (4, 5),
        (6, 7),
    ]
    assert [(s.pos_lo, s.pos_hi) for s in maximal_intervals(P("2413"))] == [
        (1, 1),
        (2, 2),
        (3, 3),
        (4, 4),
    ]
    assert [(s.pos_lo, s.pos_hi) for s in maximal_intervals(P("25173486"))] == [
        (1, 1),
        (2, 2),
        (3, 3),
        (4, 4),
        (5, 6),
        (7, 7),
        (8, 8),
    ]
    with pytest.raises(ValueError, match="not well-defined"):
        maximal_intervals(P("123"))
    with pytest.raises(ValueError, match="not well-defined"):
        maximal_intervals(P("2134"))


def test_maximal_intervals_partition_positions_to_8():
    for n in range(1, 9):
        for p in all_perms(n):
            if _is_decomposable(p.values):
                continue
            covered = []
            for s in maximal_intervals(p):
                covered.extend(range(s.pos_lo, s.pos_hi + 1))
            assert covered == list(range(1, n + 1))


def test_sd_measure():
    for p in ("2413", "3142", "25314", "1"):
        assert sd_measure(P(p)) == 0
    assert sd_measure(P("4371265")) == 3
    assert sd_measure(P("25173486")) == 1
    with pytest.raises(ValueError):
        sd_measure(P("123"))


def test_sd_zero_iff_simple_to_8():
    for n in range(1, 9):
        for p in all_perms(n):
            if _is_decomposable(p.values):
                continue
            assert (sd_measure(p) == 0) == is_simple(p)


def test_quadrants_examples():
    view = quadrants(P("25173486"), IntervalSpan(5, 6, 3, 4))
    assert [v for _, v in view.beta] == [2, 1]
    assert [v for _, v in view.gamma] == [5, 7]
    assert [v for _, v in view.delta] == [8, 6]
    assert view.epsilon == ()

    view = quadrants(P("4371265"), IntervalSpan(4, 5, 1, 2))
    assert view.beta == () and view.epsilon == ()

    p = P("2413")
    for i, v in enumerate(p.values, start=1):
        view = quadrants(p, IntervalSpan(i, i, v, v))
        total = len(view.beta) + len(view.gamma) + len(view.delta) + len(view.epsilon)
        assert total == len(p) - 1


def test_quadrants_rejects_non_intervals():
    with pytest.raises(ValueError):
        quadrants(P("2413"), IntervalSpan(1, 2, 2, 4))
    with pytest.raises(ValueError):
        quadrants(P("2413"), IntervalSpan(1, 4, 1, 4))
