"""Extended-Euclid key recovery against public cyclic group ring keys.

A lone cyclic group ring is R[x]/(x^n - 1); when R is Z or a field the
inverse of a public unit falls out of Euclid's algorithm with no private
information.  ``euclid_attack`` runs it from the adversary's side and
``attack_benchmark`` measures it across sizes.
"""

from __future__ import annotations

import csv
import io
import random
import statistics
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .coeffs import CoefficientRing
from .errors import MismatchError, NotAUnit
from .groupring import GroupRingElement
from .polyinv import inverse_integral, inverse_mod
from .units import random_cyclic_unit


@dataclass
class AttackReport:
    target: str
    success: bool
    recovered: Optional[GroupRingElement] = field(default=None, repr=False)
    elapsed_ms: float = 0.0
    notes: str = ""


def euclid_attack(public: GroupRingElement) -> AttackReport:
    """Try to recover ``public^-1`` from the public element alone."""
    G, ring = public.group, public.ring
    target = f"{G.describe()} over {ring}"
    if not G.is_cyclic:
        raise MismatchError(f"the Euclid attack needs a cyclic group ring, got {G.describe()}")
    start = time.perf_counter()
    try:
        if ring.is_integers:
            v = inverse_integral(public.coeffs, G.order)
            notes = "euclid over Q, integral inverse"
        else:
            v = inverse_mod(public.coeffs, G.order, ring.modulus)
            notes = f"euclid over Z/{ring.modulus}"
    except NotAUnit as exc:
        return AttackReport(target, False, None, (time.perf_counter() - start) * 1e3, str(exc))
    elapsed = (time.perf_counter() - start) * 1e3
    inv = GroupRingElement(G, ring, dense=v)
    if public * inv != GroupRingElement.one(G, ring):
        return AttackReport(target, False, None, elapsed, "candidate failed verification")
    return AttackReport(target, True, inv, elapsed, notes)


@dataclass(frozen=True)
class BenchRow:
    n: int
    ring: str
    trials: int
    success_rate: float
    median_ms: float


def attack_benchmark(sizes: Sequence[int], ring: CoefficientRing, trials: int,
                     seed: int = 0) -> list[BenchRow]:
    """Attack ``trials`` random certified units per size; deterministic given ``seed``."""
    rng = random.Random(seed)
    rows = []
    for n in sizes:
        times, wins = [], 0
        for _ in range(trials):
            key = random_cyclic_unit(n, ring, rng)
            report = euclid_attack(key.u)
            times.append(report.elapsed_ms)
            wins += report.success and report.recovered == key.inverse
        rows.append(BenchRow(n, ring.describe(), trials, wins / trials if trials else 0.0,
                             statistics.median(times) if times else 0.0))
    return rows


def bench_csv(rows: Sequence[BenchRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "ring", "trials", "success_rate", "median_ms"])
    for r in rows:
        writer.writerow([r.n, r.ring, r.trials, f"{r.success_rate:.3f}", f"{r.median_ms:.3f}"])
    return buf.getvalue()
