import random

import pytest

from grunits.attacks import attack_benchmark, bench_csv, euclid_attack
from grunits.coeffs import ZZ, Zmod
from grunits.demo import H16, H16_INV, example_6_units
from grunits.errors import MismatchError
from grunits.groupring import GroupRingElement
from grunits.groups import CyclicGroup
from grunits.units import random_cyclic_unit


def test_recovers_example_1_private_key():
    G = CyclicGroup(16)
    report = euclid_attack(GroupRingElement.from_coeffs(G, H16))
    assert report.success
    assert report.recovered.coeffs == H16_INV
    assert "Q" in report.notes


def test_identity_is_trivial():
    G = CyclicGroup(8)
    report = euclid_attack(GroupRingElement.one(G, Zmod(97)).to_dense())
    assert report.success and report.recovered == GroupRingElement.one(G, Zmod(97))


def test_all_random_units_mod_97_are_recovered():
    rng = random.Random(97)
    wins = 0
    for _ in range(100):
        key = random_cyclic_unit(32, Zmod(97), rng)
        report = euclid_attack(key.u)
        wins += report.success and report.recovered == key.inverse
        if report.success:
            assert key.u * report.recovered == GroupRingElement.one(key.group, key.ring)
    assert wins == 100


def test_non_units_are_reported_not_raised():
    report = euclid_attack(GroupRingElement.from_coeffs(CyclicGroup(2), [1, 1]))
    assert not report.success and report.recovered is None
    report = euclid_attack(GroupRingElement.from_coeffs(CyclicGroup(4), [2, 0, 0, 0]))
    assert not report.success


def test_noncyclic_targets_are_refused():
    S, uab, _, _ = example_6_units()
    with pytest.raises(MismatchError, match="cyclic"):
        euclid_attack(uab.u)


def test_benchmark_table():
    rows = attack_benchmark([16, 64, 256], Zmod(97), trials=8, seed=3)
    assert [r.n for r in rows] == [16, 64, 256]
    assert all(r.success_rate == 1.0 for r in rows)
    for small, big in zip(rows, rows[1:]):
        assert big.median_ms * 2 >= small.median_ms
    lines = bench_csv(rows).splitlines()
    assert lines[0] == "n,ring,trials,success_rate,median_ms"
    assert len(lines) == 4 and all(len(l.split(",")) == 5 for l in lines)


def test_benchmark_is_deterministic_apart_from_timing():
    a = attack_benchmark([16], ZZ, trials=3, seed=1)
    b = attack_benchmark([16], ZZ, trials=3, seed=1)
    assert (a[0].n, a[0].success_rate) == (b[0].n, b[0].success_rate) == (16, 1.0)


def test_empty_benchmark():
    assert attack_benchmark([], Zmod(97), trials=5) == []
    assert bench_csv([]) == "n,ring,trials,success_rate,median_ms\n"
