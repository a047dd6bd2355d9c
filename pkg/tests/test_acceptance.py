"""Acceptance criteria, one test per criterion with a printed verdict line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS/FAIL
line per criterion.  Tolerances are pinned here and nowhere else.
"""

import math
import random
from contextlib import contextmanager

import netfuncap as nf
from netfuncap.codes import INFEASIBLE

from conftest import random_dag

LOG2_3 = math.log2(3)
LOG2_5 = math.log2(5)
DIAMOND_LIMIT = 2 / (1 + LOG2_3)
TOL = 1e-9


@contextmanager
def criterion(label):
    try:
        yield
    except BaseException:
        print(f"[acceptance] {label}: FAIL")
        raise
    print(f"[acceptance] {label}: PASS")


def _net(name, **params):
    spec, f = nf.builtin_example(name, params or None)
    return nf.compile_network(spec), f


def test_01_reverse_butterfly_certification():
    with criterion("01 reverse-butterfly certification"):
        net, f = _net("N2")
        value, _ = nf.min_cut_f(net, f)
        assert abs(value - 2 / LOG2_3) <= TOL
        assert abs(nf.lower_bound_symmetric(net, f) - 2 / LOG2_3) <= TOL
        report = nf.bounds_report(net, f, tol=TOL)
        assert report.certified


def test_02_line3_tree_capacity():
    with criterion("02 three-source line"):
        net, f = _net("N3")
        assert nf.tree_rate_bound(net, f) == 0.5
        assert nf.min_cut_f(net, f)[0] == 0.5
        code = nf.tree_code(net, f, 1, 2)
        assert nf.verify_code(net, f, code).ok
        assert abs(nf.steiner_packing(net).value - 1.0) <= 1e-6
        assert abs(nf.lower_bound_arith_sum(net, 2, 3) - 1 / LOG2_5) <= TOL


def test_03_steiner_packing_values():
    with criterion("03 Steiner packing values"):
        n2, _ = _net("N2")
        diamond, _ = _net("diamond")
        assert abs(nf.steiner_packing(n2).value - 1.5) <= 1e-6
        assert abs(nf.steiner_packing(diamond).value - 1.0) <= 1e-6


def test_04_diamond_gap():
    with criterion("04 diamond gap"):
        net, f = _net("diamond")
        assert nf.min_cut_f(net, f)[0] == 1.0
        code = nf.diamond_code(2)
        assert (code.k, code.n) == (2, 3)
        outcome = nf.verify_code(net, f, code)
        assert outcome.ok and outcome.checked_count == 64
        assert nf.search_code(net, f, 1, 1) is INFEASIBLE
        assert not nf.diamond_counting_feasible(1, 1)
        report = nf.bounds_report(net, f, tol=TOL)
        assert abs(report.best_lower - DIAMOND_LIMIT) <= TOL
        assert report.best_lower < report.upper - TOL
        assert not report.certified


def test_05_diamond_rate_trend():
    with criterion("05 diamond rate trend"):
        rates = [nf.diamond_code(k).rate for k in (2, 4, 8, 16)]
        assert all(a <= b + 1e-12 for a, b in zip(rates, rates[1:]))
        assert all(r <= DIAMOND_LIMIT + 1e-12 for r in rates)
        assert DIAMOND_LIMIT - rates[-1] < 0.05


def test_06_parity_witness():
    with criterion("06 reverse-butterfly parity witness"):
        net, _ = _net("N2")
        f = nf.mod_sum(2, 2, 2)
        code = nf.reverse_butterfly_xor_code()
        outcome = nf.verify_code(net, f, code)
        assert outcome.ok and outcome.checked_count == 16
        assert code.rate == 2.0
        assert nf.min_cut_f(net, f)[0] == 2.0


def test_07_footprint_closed_forms():
    with criterion("07 footprint closed forms"):
        for q in (2, 3):
            for s in (1, 2, 3, 4):
                subsets = [
                    tuple(i + 1 for i in range(s) if mask >> i & 1)
                    for mask in range(1, 2**s)
                ]
                arith = nf.arithmetic_sum(s, q)
                for index_set in subsets:
                    assert (
                        nf.footprint_size(arith, index_set)
                        == (q - 1) * len(index_set) + 1
                    )
                for r in range(2, q + 1):
                    mod = nf.mod_sum(s, q, r)
                    for index_set in subsets:
                        assert nf.footprint_size(mod, index_set) == r
                big = nf.maximum(s, q)
                for index_set in subsets:
                    assert nf.footprint_size(big, index_set) == q
                ident = nf.identity(s, q)
                for index_set in subsets:
                    assert nf.footprint_size(ident, index_set) == q ** len(
                        index_set
                    )


def test_08_lambda_classification():
    with criterion("08 lambda classification"):
        for q in (2, 3, 4):
            for s in (2, 3, 4):
                assert nf.lambda_exponential_index(nf.identity(s, q)) == 1.0
                assert nf.lambda_bounded_index(nf.maximum(s, q)) == 1.0
                for r in range(2, q + 1):
                    f = nf.mod_sum(s, q, r)
                    expected = nf.functions.log_base(r, q)
                    assert nf.lambda_bounded_index(f) == expected


def test_09_relay_gap_family():
    with criterion("09 relay gap family"):
        for M in range(1, 5):
            for L in range(1, 4):
                net = nf.compile_network(nf.build_NML(M, L))
                f = nf.arithmetic_sum(M, 2)
                closed, _ = nf.mincut_NML_closed_form(M, L)
                assert abs(nf.min_cut_f(net, f)[0] - closed) <= TOL
        caps = [nf.rate_upper_NML(M, 2) for M in (3, 7, 15, 31)]
        assert all(a > b for a, b in zip(caps, caps[1:]))
        assert all(c >= 1 for c in caps)


def test_10_appendix_suite():
    with criterion("10 appendix lemma suite"):
        rng = random.Random(1729)
        for _ in range(100):
            k = rng.randint(2, 4)
            n = rng.randint(1, k - 1)
            M = rng.randint(1, 3)
            family = nf.random_family(rng, k, M, n)
            assert nf.check_invariance(nf.compress(family))
            assert nf.check_sumset_shrink(family)
            assert nf.check_downward_closure(family)
            assert nf.lemma_A2_check(family, n)
        for k in range(1, 4):
            for M in range(1, 4):
                for delta in (0.25, 1 / 3, 0.5, 1.0):
                    assert nf.product_min_bound(k, M, delta)[2]
        for k in range(1, 21):
            for step in range(1, 11):
                assert nf.check_hamming_count(k, 0.05 * step)[2]


def test_11_consistency_sweep():
    with criterion("11 consistency sweep"):
        nets = [
            _net("N2")[0],
            _net("N3")[0],
            _net("diamond")[0],
            _net("single_edge")[0],
            nf.compile_network(nf.build_NML(2, 1)),
        ]
        rng = random.Random(20100809)
        nets.extend(random_dag(rng, max_edges=10, max_sources=3) for _ in range(50))
        for net in nets:
            s = net.num_sources
            for f in (
                nf.arithmetic_sum(s, 2),
                nf.mod_sum(s, 2, 2),
                nf.maximum(s, 2),
            ):
                report = nf.bounds_report(net, f, tol=TOL)
                for entry in report.lowers + report.achievable:
                    assert entry.value <= report.upper + TOL
                _check_cut_equivalence(net)
                if nf.is_multi_edge_tree(net):
                    k, n = nf.best_tree_rate_pair(net, f, max_n=3)
                    if 2 ** (k * s) <= 2**12:
                        code = nf.tree_code(net, f, k, n)
                        assert nf.verify_code(net, f, code).ok
        # corpus codes
        n2, _ = _net("N2")
        assert nf.verify_code(
            n2, nf.mod_sum(2, 2, 2), nf.reverse_butterfly_xor_code()
        ).ok
        diamond, fd = _net("diamond")
        assert nf.verify_code(diamond, fd, nf.diamond_code(2)).ok
        n3, f3 = _net("N3")
        assert nf.verify_code(n3, f3, nf.tree_code(n3, f3, 1, 2)).ok


def _check_cut_equivalence(net):
    for tree in nf.enumerate_steiner_trees(net):
        tree_net = nf.tree_subnetwork(net, tree)
        for tree_cut in nf.enumerate_cuts(tree_net):
            lifted = frozenset(
                e
                for i in tree_cut.separated
                for e in net.out_edges(net.sources[i - 1])
            )
            lifted_cut = nf.classify_cut(net, lifted)
            assert lifted_cut is not None
            assert lifted_cut.separated == tree_cut.separated
