"""Seeded property suites shared by the CLI ``verify`` command and the tests.

Every suite returns a list of `Check` results; nothing raises on a failed
property, so a report can list every violation at once.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import analysis
from .adversary import distortion, swap_distortion_delta
from .classic import mtf_trace, optimal_list_update
from .core import Configuration, NeverSwap, RequestGraph, Request, UsageError
from .distributed import run_distributed_gread
from .gread import Gread
from .oracle import offline_line_baseline, optimal_offline, replay
from .seeding import stream
from .workloads import random_line_demand


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteReport:
    suite: str
    checks: list[Check] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        out = [f"{'PASS' if c.passed else 'FAIL'} {self.suite}/{c.name} {c.detail}".rstrip() for c in self.checks]
        out.append(f"{'PASS' if self.ok else 'FAIL'} {self.suite} ({self.seconds:.2f}s)")
        return out


def _check(name: str, failures: list, total: int, extra: str = "") -> Check:
    detail = f"{total - len(failures)}/{total} ok"
    if failures:
        detail += f"; first failure: {failures[0]}"
    if extra:
        detail += f"; {extra}"
    return Check(name, not failures, detail)


# --- instance generators ----------------------------------------------------------


def oracle_instances(seed: int, count: int = 500):
    """Random ``(n, sigma)`` pairs with ``n <= 5``, ``m <= 6`` and linear demand."""
    rng = stream(seed, "verify.oracle")
    for _ in range(count):
        n = rng.randint(2, 5)
        m = rng.randint(1, 6)
        yield n, random_line_demand(n, m, rng)


def list_update_instances(seed: int, count: int = 500):
    """Random ``(initial, tau)`` pairs with ``n <= 4`` and ``m <= 6``."""
    rng = stream(seed, "verify.mtf")
    for _ in range(count):
        n = rng.randint(1, 4)
        initial = list(range(n))
        rng.shuffle(initial)
        yield initial, [rng.randrange(n) for _ in range(rng.randint(1, 6))]


def lemma3_triples(seed: int, count: int = 1000):
    """Random ``(configuration, linear graph, swap position)`` with ``n <= 10``."""
    rng = stream(seed, "verify.lemma3")
    for _ in range(count):
        n = rng.randint(2, 10)
        config = Configuration.random(n, rng)
        graph = RequestGraph(n)
        for u, v in random_line_demand(n, rng.randint(1, n - 1), rng, edges=rng.randint(1, n - 1)):
            graph.add_edge(u, v)
        yield config, graph, rng.randint(1, n - 1)


def staircase_instances(seed: int, k: int, count: int = 50):
    rng = stream(seed, f"verify.staircase.{k}")
    for _ in range(count):
        x = [Fraction(rng.randint(0, 20), rng.randint(1, 5)) for _ in range(k)]
        y = [Fraction(rng.randint(0, 20), rng.randint(1, 5)) for _ in range(k)]
        yield analysis.InvolutionInstance.of(x, y)


def distributed_instances(seed: int, count: int = 100):
    rng = stream(seed, "verify.distributed")
    for i in range(count):
        n = rng.randint(2, 64)
        config = Configuration.random(n, rng)
        yield i, n, config, random_line_demand(n, rng.randint(1, 10 * n), rng)


# --- suites -------------------------------------------------------------------


def suite_staircase(seed: int = 0) -> list[Check]:
    weight_bad, count_bad, mult_bad, total = [], [], [], 0
    for k in range(2, 9):
        c = analysis.staircase_constant(k)
        for inst in staircase_instances(seed, k):
            total += 1
            avg = analysis.average_involution_weight(inst)
            if avg < c * inst.x_sum * inst.y_sum:
                weight_bad.append((k, inst))
        enumerated = sum(1 for _ in analysis.involutions(k))
        if enumerated != analysis.telephone(k):
            count_bad.append((k, enumerated))
        if k <= 7:
            m = analysis.pair_multiplicity(k)
            t2, t1 = analysis.telephone(k - 2), analysis.telephone(k - 1)
            if any(m[i][j] != (t1 if i == j else t2) for i in range(k) for j in range(k)):
                mult_bad.append(k)
    lo, hi = analysis.staircase_sweep(10**4)
    return [
        _check("average-weight", weight_bad, total),
        _check("enumeration-count", count_bad, 7),
        _check("pair-multiplicity", mult_bad, 6),
        Check("constant-range", 0.25 <= lo and hi <= 2, f"k*T(k-2)/T(k) in [{lo:.4f}, {hi:.4f}] for k <= 10^4"),
    ]


def suite_recurrences(seed: int = 0) -> list[Check]:
    ok, first = analysis.R_bounds_hold(10**6)
    bad = [n for n in range(1, 21) if Fraction(analysis.telephone(n), analysis.telephone(n - 1)) != analysis.ratio_R(n, exact=True)]
    return [
        Check("R-bounds", ok, "sqrt(n) <= R(n) < 1 + sqrt(n+1) for n <= 10^6" + ("" if ok else f"; fails at {first}")),
        _check("T-ratio", bad, 20),
    ]


def suite_oracle_dominance(seed: int = 0) -> list[Check]:
    dom, rep, total = [], [], 0
    for n, sigma in oracle_instances(seed):
        total += 1
        start = Configuration.identity(n)
        opt = optimal_offline(n, sigma, start)
        players = {"gread": Gread(n, start), "never-swap": NeverSwap(n, start)}
        costs = {}
        for name, p in players.items():
            for u, v in sigma:
                p.request(u, v)
            costs[name] = p.ledger.total
        costs["offline-baseline"] = offline_line_baseline(n, sigma, start).total
        if any(opt.cost > c for c in costs.values()):
            dom.append((n, sigma, opt.cost, costs))
        if replay(start, sigma, opt.witness).total != opt.cost:
            rep.append((n, sigma))
    return [_check("opt-dominates", dom, total), _check("witness-replay", rep, total)]


def suite_mtf4(seed: int = 0) -> list[Check]:
    bad, total, worst = [], 0, Fraction(0)
    for initial, tau in list_update_instances(seed):
        total += 1
        _, mtf = mtf_trace(initial, tau)
        opt = optimal_list_update(len(initial), tau, initial)
        if mtf > 4 * opt:
            bad.append((initial, tau, mtf, opt))
        if opt:
            worst = max(worst, Fraction(mtf, opt))
    return [_check("mtf-within-4-opt", bad, total, f"worst ratio {float(worst):.3f}")]


def suite_lemma3(seed: int = 0) -> list[Check]:
    bound_bad, local_bad, total = [], [], 0
    for config, graph, p in lemma3_triples(seed):
        total += 1
        ell = max(len(c) for c in graph.components())
        delta = swap_distortion_delta(config, graph, p)
        if abs(delta) > 2 * ell:
            bound_bad.append((config, p, delta, ell))
        after = config.copy()
        after.swap_at(p)
        if distortion(after, graph).total - distortion(config, graph).total != delta:
            local_bad.append((config, p))
    return [_check("delta-within-2-ell", bound_bad, total), _check("delta-matches-recount", local_bad, total)]


def suite_distributed_equivalence(seed: int = 0) -> list[Check]:
    eq_bad, route_bad, repeat_bad, total, worst = [], [], [], 0, 0.0
    for i, n, config, sigma in distributed_instances(seed):
        total += 1
        central = Gread(n, config)
        for u, v in sigma:
            central.request(u, v)
        sim = run_distributed_gread(n, sigma, seed=seed + i, config=config)
        if sim.config != central.config or sim.ledger.migration != central.ledger.migration:
            eq_bad.append((n, i))
        for dist, hops in sim.first_routes:
            worst = max(worst, hops / dist)
            if hops > 12 * dist:
                route_bad.append((n, i, dist, hops))
        if any(h != 1 for h in sim.repeat_routes):
            repeat_bad.append((n, i))
    return [
        _check("same-config-and-swaps", eq_bad, total),
        _check("first-route-within-12i", route_bad, total, f"worst hops/i {worst:.2f}"),
        _check("repeat-route-one-hop", repeat_bad, total),
    ]


SUITES: dict[str, Callable[[int], list[Check]]] = {
    "staircase": suite_staircase,
    "recurrences": suite_recurrences,
    "oracle-dominance": suite_oracle_dominance,
    "mtf4": suite_mtf4,
    "lemma3": suite_lemma3,
    "distributed-equivalence": suite_distributed_equivalence,
}


def run_suite(name: str, seed: int = 0) -> SuiteReport:
    try:
        fn = SUITES[name]
    except KeyError:
        raise UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    t0 = time.perf_counter()
    checks = fn(seed)
    return SuiteReport(name, checks, time.perf_counter() - t0)
