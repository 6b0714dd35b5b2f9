"""Acceptance suite: one test per criterion, summarized at the end of the run."""

import random
import time

import pytest

import oracles
from zerosum.groups import enumerate_abelian_groups, make_group
from zerosum.labeling import (
    RootedTree,
    complete_multipartite,
    connected_graphs,
    cycle,
    distance_magic_multipartite,
    group_irregularity_strength,
    irregular_search,
    path,
    predicted_sg,
    random_k_tree,
    star,
    verify_antimagic,
    verify_distance_magic,
    antimagic_label_ktree,
    ConstructionUnavailable,
)
from zerosum.orthomorphism import (
    complete_mapping_search,
    construct_from_triples,
    cycle_type_str,
    is_orthomorphism,
)
from zerosum.partitions import integer_partitions
from zerosum.skolem import find_skolem_sequence, is_skolem_sequence, r_skolem_cyclic, skolem_partition
from zerosum.solver import RealizationInstance, Status, realize_partition, verify_partition
from zerosum.zspp import (
    check_4zspp,
    check_mixed_23,
    check_one_involution,
    check_zeng,
    has_x_zspp,
    solve_zero_sum,
    triple_pair_vectors,
)


def groups(lo, hi, pred=lambda G: True):
    return [G for n in range(lo, hi + 1) for G in enumerate_abelian_groups(n) if pred(G)]


class Timer:
    def __enter__(self):
        self.t = time.perf_counter()
        return self

    def __exit__(self, *exc):
        pass

    @property
    def elapsed(self):
        return time.perf_counter() - self.t


@pytest.mark.criterion(1, "2-ZSPP holds iff |I| in {0,3}, all groups of order 3..16")
def test_criterion_01_zeng(report):
    with Timer() as t:
        rows = check_zeng(16, min_order=3)
    bad = [str(r.group) for r in rows if not r.matches_expected]
    report(f"{len(rows)} groups, {len(bad)} mismatches, {t.elapsed:.1f}s")
    assert len(rows) == sum(len(enumerate_abelian_groups(n)) for n in range(3, 17))
    assert not bad
    assert t.elapsed < 300


@pytest.mark.criterion(2, "(Z_2)^n has 3-ZSPP for n = 2, 3, 4")
def test_criterion_02_elementary(report):
    with Timer() as t:
        for n in (2, 3, 4):
            v = has_x_zspp(make_group([2] * n), 3)
            report(f"(Z2)^{n}: {v.status}, {v.witness_count} size vectors realized")
            assert v.holds is True
    assert t.elapsed < 60


@pytest.mark.criterion(3, "4-ZSPP for every group with |I| > 1, order <= 16")
def test_criterion_03_4zspp(report):
    gs = groups(2, 16, lambda G: G.involution_count > 1)
    with Timer() as t:
        rows = [check_4zspp(G) for G in gs]
    report(f"{len(rows)} groups: " + ", ".join(str(r.group) for r in rows) + f"; {t.elapsed:.1f}s")
    assert all(r.holds is True for r in rows)
    assert t.elapsed < 600


@pytest.mark.criterion(4, "mixed 2/3 sizes realizable iff |I| in {3, |G*|}, |I| > 1, order <= 16")
def test_criterion_04_mixed(report):
    gs = groups(2, 16, lambda G: G.involution_count > 1)
    with Timer() as t:
        rows = [check_mixed_23(G) for G in gs]
    for r in rows:
        if r.holds is False:
            report(f"{r.group}: fails on {r.counterexample}")
    assert all(r.matches_expected for r in rows)
    bad = {r.group.moduli: r for r in rows}[(2, 2, 4)]
    assert bad.holds is False and bad.counterexample is not None
    assert bad.counterexample.count(2) <= len(bad.group.r_set()) // 2
    report(f"{len(rows)} groups checked, {t.elapsed:.1f}s")
    assert t.elapsed < 600


@pytest.mark.criterion(5, "one involution: 3/2-set splits for even cyclic 4..20; parts >= 4 for |I| = 1, order <= 16")
def test_criterion_05_one_involution(report):
    with Timer() as t:
        for n in range(4, 21, 2):
            G = make_group([n])
            vecs = triple_pair_vectors(n)
            assert all(solve_zero_sum(G, v, "R1").feasible for v in vecs), n
        report(f"cyclic Z4..Z20: all (3^m, 2^l) vectors realized")
        gs = groups(2, 16, lambda G: G.involution_count == 1)
        for G in gs:
            assert check_one_involution(G).parts_ge4.holds is True, G
        report(f"parts >= 4 hold for {', '.join(map(str, gs))}; {t.elapsed:.1f}s")
    assert t.elapsed < 300


@pytest.mark.criterion(6, "Skolem sequences and partitions")
def test_criterion_06_skolem(report):
    with Timer() as t:
        assert is_skolem_sequence([4, 2, 3, 2, 4, 3, 1, 1])
        for n in (2, 3):
            assert find_skolem_sequence(n) is None
            assert not oracles.skolem_sequence_exists(n)
        odd = groups(3, 27, lambda G: G.involution_count == 0)
        for G in odd:
            assert skolem_partition(G, "star").feasible, G
        report(f"nonzero elements partitioned for all {len(odd)} odd-order groups up to 27")
        got = []
        for m in (14, 20, 26, 32):
            v = r_skolem_cyclic(m)
            assert v.status is not Status.UNKNOWN
            got.append("yes" if v.feasible else "no")
        report(f"R partitions for Z14, Z20, Z26, Z32: {', '.join(got)}; {t.elapsed:.1f}s")
        assert got == ["no", "no", "yes", "yes"]
    assert t.elapsed < 300


@pytest.mark.criterion(7, "orthomorphisms built from zero-sum triples")
def test_criterion_07_construction(report):
    with Timer() as t:
        for moduli in ([7], [13], [2, 2, 7]):
            G = make_group(moduli)
            cert = construct_from_triples(G)
            assert is_orthomorphism(cert.phi) is not None
            assert cert.theta.images[0] == 0
            assert cert.theta_cycles == (1,) + (3,) * ((G.order - 1) // 3)
            report(f"{G}: theta {cycle_type_str(cert.theta_cycles)}, phi {cycle_type_str(cert.phi_cycles)}")
        Z7 = make_group([7])
        cert = construct_from_triples(Z7, [(1, 2, 4), (3, 5, 6)])
        assert cert.phi_cycles == (1, 2, 2, 2)
    assert t.elapsed < 60


@pytest.mark.criterion(8, "complete mappings exist iff |I| != 1, order <= 9")
def test_criterion_08_hall_paige(report):
    yes, no = [], []
    with Timer() as t:
        for G in groups(2, 9):
            v = complete_mapping_search(G)
            assert v.exists is not None
            assert v.exists == (G.involution_count != 1), G
            (yes if v.exists else no).append(str(G))
    report(f"exist: {', '.join(yes)}")
    report(f"none:  {', '.join(no)}; {t.elapsed:.1f}s")
    assert set(yes) == {"Z3", "Z5", "Z7", "Z9", "Z3xZ3", "Z2xZ2", "Z2xZ4", "Z2xZ2xZ2"}
    assert set(no) == {"Z2", "Z4", "Z6", "Z8"}
    assert t.elapsed < 600


@pytest.mark.criterion(9, "group irregularity strength formula")
def test_criterion_09_sg(report):
    with Timer() as t:
        assert group_irregularity_strength(path(4)) == 4
        assert group_irregularity_strength(cycle(5)) == 5
        assert group_irregularity_strength(path(6)) == 7
        count = 0
        for n in (3, 4, 5):
            for g in connected_graphs(n):
                assert group_irregularity_strength(g) == predicted_sg(g), g
                count += 1
    report(f"P4=4, C5=5, P6=7; formula matches on all {count} connected graphs of order 3..5; {t.elapsed:.1f}s")
    assert t.elapsed < 900


@pytest.mark.criterion(10, "no Z_6-irregular labeling for order-6 graphs, by plain enumeration")
def test_criterion_10_z6(report):
    Z6 = make_group([6])
    names = []
    with Timer() as t:
        for name, g in [("P6", path(6)), ("K1,5", star(5)), ("C6", cycle(6)),
                        ("K3,3", complete_multipartite([3, 3])[0])]:
            v = irregular_search(Z6, g, sum_cut=False)
            assert v.status is Status.INFEASIBLE, name
            names.append(f"{name} ({v.nodes} nodes)")
    report(", ".join(names) + f"; {t.elapsed:.1f}s")
    assert len(names) >= 3
    assert t.elapsed < 300


@pytest.mark.criterion(11, "distance magic labelings of complete multipartite graphs")
def test_criterion_11_distance_magic(report):
    Z7 = make_group([7])
    r = distance_magic_multipartite(Z7, [1, 3, 3])
    assert r.magic_constant.is_zero()
    assert [[x.coords[0] for x in p] for p in r.parts] == [[0], [1, 2, 4], [3, 5, 6]]
    assert verify_distance_magic(Z7, [1, 3, 3], r.labels) == Z7.zero
    report("Z7 K_{1,3,3}: classes {0},{1,2,4},{3,5,6}, mu = 0")
    checked = 0
    with Timer() as t:
        for G in groups(2, 8):
            for sizes in integer_partitions(G.order):
                if len(sizes) < 2:
                    continue
                perms, magic, const = oracles.distance_magic_duality(G.moduli, sizes)
                assert (magic == const).all(), (G, sizes)
                r = distance_magic_multipartite(G, sizes)
                assert (r.status is Status.FEASIBLE) == bool(magic.any()), (G, sizes)
                checked += len(perms)
    report(f"duality holds on {checked} bijections over all groups of order <= 8; {t.elapsed:.1f}s")
    assert t.elapsed < 300


@pytest.mark.criterion(12, "antimagic labelings of random 2-trees")
def test_criterion_12_antimagic(report):
    rng = random.Random(2024)
    with Timer() as t:
        for order in (7, 9, 13):
            for G in enumerate_abelian_groups(order):
                ok = 0
                for _ in range(50):
                    tree = random_k_tree(order, 2, rng)
                    labels = antimagic_label_ktree(G, tree, 2)
                    ok += verify_antimagic(G, tree.graph, labels, G.nonzero)
                report(f"{G}: {ok}/50 verified")
                assert ok == 50
        for m in (2, 3):
            G = make_group([2] * m)
            with pytest.raises(ConstructionUnavailable):
                antimagic_label_ktree(G, RootedTree(path(2**m), 0), k=1)
        report("(Z2)^2, (Z2)^3 paths: construction unavailable")
    assert t.elapsed < 120


_ORACLE = {}


def _oracle(G, sizes, domain):
    key = (G.moduli, tuple(sorted(sizes)), tuple(domain))
    if key not in _ORACLE:
        _ORACLE[key] = oracles.zero_sum_partition_exists(G.moduli, sizes, list(domain))
    return _ORACLE[key]


def _random_sizes(rng, total):
    parts = list(integer_partitions(total))
    sizes = list(rng.choice(parts))
    rng.shuffle(sizes)
    return sizes


@pytest.mark.criterion(13, "exact solver agrees with naive enumeration, 200 instances per group of order <= 12")
def test_criterion_13_oracle(report):
    rng = random.Random(13)
    total = feasible = 0
    with Timer() as t:
        for G in groups(2, 12):
            for _ in range(200):
                kind = rng.random()
                if kind < 0.4:
                    dom = list(G.nonzero)
                elif kind < 0.7:
                    dom = list(G.elements)
                else:
                    dom = sorted(rng.sample(G.elements, rng.randint(1, min(G.order, 9))))
                sizes = _random_sizes(rng, len(dom))
                inst = RealizationInstance.zero_sum(G, sizes, dom)
                v = realize_partition(inst)
                assert v.status is not Status.UNKNOWN
                want = _oracle(G, sizes, [e.coords for e in dom])
                assert v.feasible == want, (G, sizes, dom)
                if v.feasible:
                    assert verify_partition(inst, v.witness)
                    feasible += 1
                total += 1
    report(f"{total} instances, {feasible} feasible, 0 disagreements; {t.elapsed:.1f}s")
    assert t.elapsed < 600
