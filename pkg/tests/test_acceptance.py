"""Acceptance criteria 1-11; a PASS/FAIL line per criterion is printed in
the terminal summary."""
import itertools
import random
import time

import pytest

from conolly.analysis import fit_conolly, frequency, gf_coefficients, ConollySignature, ratio_estimate
from conolly.ceiling import (ceiling_sequence, check_conditions, check_p1, check_p2_kappa,
                             formal_satisfy_oracle, min_initial_conditions,
                             seeded_ceiling_spec)
from conolly.engine import evaluate
from conolly.notation import RecursionSpec, parse
from conolly.reference import all_table_pairs, canonical_recursion, definitional_sequence
from conolly.search import SearchConfig, run_search
from conolly.transforms import (WeaveInput, check_interleaving, interleave_order_multiplying,
                                perturb, satisfies, shift_alpha_zero, weave_fixed_order)
from conolly import trees

CONOLLY_20 = [1, 2, 2, 3, 4, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8, 9, 10, 10, 11, 12]


def criterion(num, title):
    return pytest.mark.criterion(num, title)


@criterion(1, "Conolly ground truth, 20 values, < 1 ms")
def test_conolly_ground_truth():
    spec = parse("<0;1:1;2>[1,2]")
    best = float("inf")
    for _ in range(50):
        t0 = time.perf_counter()
        res = evaluate(spec, 20)
        best = min(best, time.perf_counter() - t0)
    assert res.alive
    assert res.values == CONOLLY_20
    assert best < 1e-3


@criterion(2, "two Conolly recursions agree to 1e5; tree L agrees to 2000; < 5 s")
def test_two_conolly_recursions_and_tree_count():
    t0 = time.perf_counter()
    a = evaluate(parse("<0;1:1;2>[1,2]"), 100_000)
    b = evaluate(parse("<0;2:3;5>[1,2,2,3,4]"), 100_000)
    L = trees.L_sequence(2000)
    elapsed = time.perf_counter() - t0
    assert a.alive and b.alive
    assert a.values == b.values
    assert L[1:] == a.values[:2000]
    assert elapsed < 5


@criterion(3, "canonical recursions for all 20 pairs to 2000; M agrees to 1500")
@pytest.mark.parametrize("pair", all_table_pairs(4), ids=lambda x: f"{x.alpha},{x.beta}")
def test_canonical_recursions(pair):
    ref = definitional_sequence(pair.alpha, pair.beta, 2000)
    res = evaluate(canonical_recursion(pair.alpha, pair.beta), 2000)
    assert res.alive
    assert res.values == ref
    assert trees.M_sequence(pair.alpha, pair.beta, 1500)[1:] == ref[:1500]


def _box(p, s_hi, off_hi):
    offs = list(itertools.product(range(1, off_hi + 1), repeat=p))
    for s in range(s_hi + 1):
        for t in range(s_hi + 1):
            for a in offs:
                for b in offs:
                    yield RecursionSpec.from_lists([(s, a), (t, b)])


@pytest.mark.slow
@criterion(4, "ceiling conditions agree with the substitution oracle on both boxes, < 10 min")
def test_ceiling_oracle_equivalence():
    t0 = time.perf_counter()
    counts = {}
    for p, s_hi in ((1, 6), (2, 5)):
        total = sat = 0
        for spec in _box(p, s_hi, 13):
            verdict = check_conditions(spec, p).satisfied
            assert verdict == formal_satisfy_oracle(spec, p), str(spec)
            if p == 1:
                assert check_p1(spec) == verdict, str(spec)
            else:
                assert (check_p2_kappa(spec) is not None) == verdict, str(spec)
            total += 1
            sat += verdict
        counts[p] = (total, sat)
    assert counts[1][0] == 7 * 7 * 13 * 13
    assert counts[2][0] == 6 * 6 * 169 * 169
    assert counts[1][1] > 0 and counts[2][1] > 0
    assert time.perf_counter() - t0 < 600


def _sample_satisfying(p, k, rng):
    out = set()
    while len(out) < k:
        s, t = rng.randint(0, 2 * p + 3), rng.randint(0, 2 * p + 3)
        a = sorted(rng.randint(1, 6 * p + 1) for _ in range(p))
        b = sorted(rng.randint(1, 6 * p + 1) for _ in range(p))
        spec = RecursionSpec.from_lists([(s, a), (t, b)])
        if check_conditions(spec, p).satisfied:
            out.add(spec)
    return sorted(out, key=RecursionSpec.key)


@criterion(5, "seeding c ceiling values yields ceil(n/2p) to 1e4, p = 1, 2, 3")
@pytest.mark.parametrize("p", [1, 2, 3])
def test_seeded_ceiling_recursions(p):
    rng = random.Random(1000 + p)
    target = ceiling_sequence(2 * p, 10_000)
    for spec in _sample_satisfying(p, 50, rng):
        c = min_initial_conditions(spec, p)
        res = evaluate(spec.with_initial(target[:c]), 10_000)
        assert res.alive, (str(spec), res.death)
        assert res.values == target, str(spec)


def _family(t, a_sets, b_sets):
    """Expand a set-notation row into sorted (s, t, a-tuple, b-tuple) keys."""
    out = set()
    for a in itertools.product(*a_sets):
        for b in itertools.product(*b_sets):
            out.add((0, t, tuple(sorted(a)), tuple(sorted(b))))
    return out


ORDER2_TABLES = {
    (-2, 3): [
        (1, [[1], [3]], [[2], [4]], 1),
        (3, [[2], [3]], [[4], [7, 8, 9]], 3),
        (3, [[2, 3, 4], [4, 5, 6]], [[2, 3], [9]], 18),
        (5, [[2, 3, 4], [4, 5, 6]], [[7, 8, 9], [9, 10, 11]], 81),
    ],
    (0, 2): [
        (1, [[1, 2], [2, 3]], [[1], [4]], 4),
        (2, [[1, 2], [2, 3]], [[3, 4], [4, 5]], 16),
        (4, [[3, 4], [4, 5]], [[3], [10]], 4),
        (6, [[3, 4], [4, 5]], [[9, 10], [10, 11]], 16),
    ],
    (2, 1): [
        (1, [[1], [1]], [[2], [2]], 1),
        (1, [[1, 2], [2, 3]], [[1], [2]], 4),
        (2, [[1, 2], [2, 3]], [[1], [5, 6]], 8),
        (2, [[1, 2], [2, 3]], [[2], [4, 5]], 8),
        (3, [[1, 2], [2, 3]], [[4, 5], [5, 6]], 16),
    ],
}
EXPECTED_COUNTS = {(-2, 3): 103, (0, 2): 40, (2, 1): 37}


@criterion(6, "order-2 search reproduces the 103 / 40 / 37 listed recursions")
@pytest.mark.parametrize("pair", [(-2, 3), (0, 2), (2, 1)], ids=str)
def test_order2_search(pair):
    expected = set()
    for t, a_sets, b_sets, size in ORDER2_TABLES[pair]:
        rows = _family(t, a_sets, b_sets)
        assert len(rows) == size
        expected |= rows
    assert len(expected) == EXPECTED_COUNTS[pair]
    t0 = time.perf_counter()
    hits = run_search(SearchConfig(2, *pair))
    assert time.perf_counter() - t0 < 1800
    got = {(h.key[0], h.key[1], h.key[2], h.key[3]) for h in hits}
    assert len(hits) == EXPECTED_COUNTS[pair]
    assert got == expected
    for h in hits[:5]:
        vals = evaluate(h.spec, 1000).values
        assert fit_conolly(frequency(vals)) == ConollySignature(*pair)


@criterion(7, "order-1 (0,1) search finds only the two Conolly recursions")
def test_order1_search():
    hits = run_search(SearchConfig(1, 0, 1))
    assert [str(h.spec.without_initial()) for h in hits] == ["<0;1:1;2>", "<0;2:3;5>"]


@criterion(8, "weave, interleave, perturb and shift transforms")
def test_transforms():
    spec, woven = weave_fixed_order(WeaveInput(parse("<1;1:3;3>"), [(0, 0, 0, 0), (1, 1, 1, 2)]), 100_000)
    assert str(spec.without_initial()) == "<2;2:6;6>"
    assert satisfies(spec, woven[:5000]) is None
    assert evaluate(spec, 5000).values == woven[:5000]
    even = ratio_estimate(woven, modulus=2, residue=0)
    assert abs(float(even.ratio) - 0.5) < 1e-2
    assert all(v == 0 for v in woven[0::2])

    conolly = parse("<0;1:1;2>[1,2]")
    for m in (2, 3):
        out = interleave_order_multiplying(conolly, m)
        assert check_interleaving(conolly, out, m, 1000).is_interleaving
        assert fit_conolly(frequency(evaluate(out, 3000).values)) == ConollySignature(0, m)
    out, report = perturb(conolly, 2, (-1, 0), (0, 1))
    assert str(out.without_initial()) == "<0;2,3:2;3,4>"
    assert report.is_interleaving
    assert fit_conolly(frequency(evaluate(out, 2000).values)) == ConollySignature(0, 2)

    cur = seeded_ceiling_spec(parse("<0;1:2;3>"), 1)
    for x in range(11):
        assert str(cur.without_initial()) == f"<{x};{2 * x + 1}:{x + 2};{2 * x + 3}>"
        assert formal_satisfy_oracle(cur, 1)
        assert check_conditions(cur, 1).satisfied
        assert evaluate(cur, 2000).values == ceiling_sequence(2, 2000)
        cur = shift_alpha_zero(cur, 2)


@criterion(9, "difference strings match Conolly differences; 0F_k = D_k0")
def test_difference_strings():
    assert trees.verify_diff_identity(1 << 14)
    for k in range(2, 13):
        assert "0" + trees.diff_string_F(k) == trees.diff_string_D(k) + "0"


@pytest.mark.slow
@criterion(10, "pruning contracts for T and U, worked examples")
def test_pruning_contracts():
    L = trees.L_sequence(1000)
    for n in range(6, 1001):
        pruned = trees.prune_T(trees.build_T(n))
        assert pruned.n == n - L[n - 2]
        assert trees.same_structure(pruned, trees.build_T(pruned.n)), n
    for pair in all_table_pairs(4):
        a, b = pair.alpha, pair.beta
        M = trees.M_sequence(a, b, 1000)
        for n in range(4 * a + 5 * b + 1, 1001):
            pruned = trees.prune_U(trees.build_U(a, b, n))
            assert pruned.n == n - sum(M[n - 2 * j + 1] for j in range(1, pair.order_p + 1))
            assert trees.same_structure(pruned, trees.build_U(a, b, pruned.n)), (a, b, n)
    assert trees.prune_T(trees.build_T(20)).n == 10
    assert trees.count_leaves_M(trees.build_U(2, 1, 17)) == 5
    assert trees.prune_U(trees.build_U(2, 1, 17)).n == 8
    assert trees.prune_U(trees.build_U(-2, 3, 12)).n == 4


@criterion(11, "generating function matches the definitional sequences to degree 512")
def test_generating_function():
    for pair in all_table_pairs(4):
        sig = ConollySignature(pair.alpha, pair.beta)
        assert gf_coefficients(sig, 512) == definitional_sequence(pair.alpha, pair.beta, 512)
