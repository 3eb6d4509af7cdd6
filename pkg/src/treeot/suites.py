"""Runnable verification suites behind the ``verify`` CLI subcommand.

Each suite replays a family of identities with fresh randomness (seeded, so
runs are reproducible) and returns a report of per-case records; the CLI
turns the report into JSON and an exit status.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .asymptotics import gamma_asymptotic, interval_mid, verify_inequalities
from .families import (GTable, bundle_from_table, check_functional_equation, srw_closed_form,
                       srw_g_table, srw_return_sequence)
from .lp import FiniteGraph, check_complementary_slackness, verify_duality, w1_lp
from .rational import decimal_string, format_rational
from .regular import (PairGeometry, RadialProfile, build_truncated_tree, radial_measure,
                      w1_radial_flow_formula, w1_radial_formula)
from .series import Series
from .tree import (Measure, assignment_from, good_potential, unique_flow, validate_tree,
                   w1_tree)

DEFAULT_SEED = 20260808

SUITE_NAMES = ("duality", "triple", "series", "inequalities", "oeis", "gamma")


@dataclass
class CaseRecord:
    params: dict
    provenance: str
    passed: bool
    w1: str | None = None
    w1_decimal: str | None = None
    asym: str | None = None
    residual: str | None = None
    detail: str = ""

    def as_dict(self) -> dict:
        doc = {"params": self.params, "provenance": self.provenance, "passed": self.passed}
        if self.w1 is not None:
            doc["w1"] = self.w1
            doc["w1_decimal"] = self.w1_decimal
        if self.asym is not None:
            doc["asym"] = self.asym
            doc["residual"] = self.residual
        if self.detail:
            doc["detail"] = self.detail
        return doc


@dataclass
class RunReport:
    suite: str
    seed: int
    records: list[CaseRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def counts(self) -> tuple[int, int]:
        ok = sum(r.passed for r in self.records)
        return ok, len(self.records)

    def add(self, params: dict, provenance: str, passed: bool,
            w1: Fraction | None = None, asym: Fraction | None = None,
            detail: str = "") -> None:
        self.records.append(CaseRecord(
            params=params, provenance=provenance, passed=passed,
            w1=None if w1 is None else format_rational(w1),
            w1_decimal=None if w1 is None else decimal_string(w1),
            asym=None if asym is None else decimal_string(asym),
            residual=None if asym is None or w1 is None else decimal_string(w1 - asym),
            detail=detail))

    def as_dict(self) -> dict:
        ok, total = self.counts
        return {"suite": self.suite, "seed": self.seed, "passed": self.passed,
                "cases_passed": ok, "cases_total": total,
                "records": [r.as_dict() for r in self.records]}


def random_tree(rng: random.Random, n: int):
    """Uniform labeled tree on n >= 2 vertices from a random code sequence."""
    if n == 2:
        return validate_tree(range(2), [(0, 1)])
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    import heapq

    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return validate_tree(range(n), edges)


def random_measure_pair(rng: random.Random, n: int) -> tuple[Measure, Measure]:
    """Two random rational measures of equal (positive) total mass."""
    while True:
        mu = Measure({v: Fraction(rng.randint(0, 6), rng.randint(1, 8))
                      for v in rng.sample(range(n), rng.randint(1, n))})
        nu = Measure({v: Fraction(rng.randint(0, 6), rng.randint(1, 8))
                      for v in rng.sample(range(n), rng.randint(1, n))})
        if mu.total() and nu.total():
            return mu, nu.scaled(mu.total() / nu.total())


def random_profile(rng: random.Random, max_radius: int) -> RadialProfile:
    """Random finitely supported profile; one in five is a two-shell annulus."""
    if rng.random() < 0.2:
        top = rng.randint(1, max_radius) if max_radius >= 1 else 0
        inner = rng.randint(0, top)
        mass = Fraction(rng.randint(1, 5), rng.randint(1, 6))
        values = [Fraction(0)] * (top + 1)
        values[inner] = mass
        values[top] = mass
        return RadialProfile(tuple(values))
    while True:
        top = rng.randint(0, max_radius)
        values = [Fraction(rng.randint(0, 4), rng.randint(1, 6)) for _ in range(top + 1)]
        if any(values):
            return RadialProfile(tuple(values))


def suite_duality(seed: int = DEFAULT_SEED, cases: int = 150) -> RunReport:
    """Tree route == LP route, optimality certificates, complementary slackness."""
    report = RunReport("duality", seed)
    rng = random.Random(seed)
    for case in range(cases):
        n = rng.randint(2, 12)
        tree = random_tree(rng, n)
        mu, nu = random_measure_pair(rng, n)
        graph = FiniteGraph.from_tree(tree)
        tree_value = w1_tree(tree, mu, nu)
        lp_value, plan = w1_lp(graph, mu, nu)
        phi = good_potential(tree, unique_flow(tree, assignment_from(mu, nu)))
        duality = verify_duality(graph, mu, nu, phi)
        slack = check_complementary_slackness(graph, duality.plan, phi)
        ok = (tree_value == lp_value and duality.optimal_certificate and slack
              and duality.plan.satisfies_marginals(mu, nu))
        report.add({"case": case, "vertices": n}, "lp", ok, w1=lp_value,
                   detail="" if ok else f"tree={tree_value} lp={lp_value} "
                                        f"cert={duality.optimal_certificate} cs={slack}")
    return report


def suite_triple(seed: int = DEFAULT_SEED, cases_per_cell: int = 8) -> RunReport:
    """Vertex-class sum == edge-class sum == tree flow, on random profiles."""
    report = RunReport("triple", seed)
    rng = random.Random(seed)
    for q in (2, 3):
        for d in (1, 2, 3):
            geom = PairGeometry(q, d)
            for case in range(cases_per_cell):
                profile = random_profile(rng, max_radius=4 if q == 2 else 3)
                radius = profile.support_radius + d
                truncation = build_truncated_tree(q, d, radius)
                mu = radial_measure(truncation, truncation.x, profile)
                nu = radial_measure(truncation, truncation.y, profile)
                w_tree = w1_tree(truncation.tree, mu, nu)
                w_classes = w1_radial_formula(profile, geom)
                w_edges = w1_radial_flow_formula(profile, geom)
                ok = w_tree == w_classes == w_edges
                report.add({"q": q, "d": d, "case": case,
                            "profile": [str(x) for x in profile.values]},
                           "formula", ok, w1=w_classes,
                           detail="" if ok else f"tree={w_tree} classes={w_classes} edges={w_edges}")
    return report


def suite_series(seed: int = DEFAULT_SEED, order: int = 24) -> RunReport:
    """Closed form == recurrence table, and the defining functional equation."""
    report = RunReport("series", seed)
    for alpha in (Fraction(0), Fraction(1, 2)):
        for q in (2, 3):
            table = srw_g_table(alpha, q, order)
            bundle = bundle_from_table(table)
            closed = srw_closed_form(alpha, q, order)
            same = (closed.gammas[0] == bundle.gammas[0]
                    and closed.g_at_q == bundle.g_at_q
                    and closed.g1_at_q == bundle.g1_at_q)
            report.add({"alpha": str(alpha), "q": q, "order": order, "check": "closed-vs-table"},
                       "genfun", same)
            holds = check_functional_equation(table, alpha, q)
            report.add({"alpha": str(alpha), "q": q, "order": order, "check": "functional-eq"},
                       "genfun", holds)
            # A perturbed table must be rejected.
            rows = [list(row) for row in table.rows]
            rows[1][2] += Fraction(1, 7)
            broken = GTable(q=q, rows=tuple(tuple(r) for r in rows))
            report.add({"alpha": str(alpha), "q": q, "order": order, "check": "perturbation"},
                       "genfun", not check_functional_equation(broken, alpha, q))
    return report


def suite_inequalities(seed: int = DEFAULT_SEED) -> RunReport:
    """Coefficient ordering chain over the full parameter grid."""
    report = RunReport("inequalities", seed)
    for alpha in (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(9, 10)):
        for d in range(1, 7):
            for q in range(2, 11):
                res = verify_inequalities(alpha, d, q)
                floor_ok = res.ball_floor_equality == ((d, q) == (1, 2))
                report.add({"alpha": str(alpha), "d": d, "q": q}, "formula",
                           res.passed and floor_ok,
                           detail="" if res.passed and floor_ok else str(res.as_dict()))
    return report


def suite_oeis(seed: int = DEFAULT_SEED) -> RunReport:
    """Scaled return-mass integer sequences against their catalogued values."""
    report = RunReport("oeis", seed)
    seq, _ = srw_return_sequence(Fraction(1, 5), 3, 6)
    got = [seq[n] // 4 ** n for n in range(5)]
    rem = all(seq[n] % 4 ** n == 0 for n in range(5))
    ok = rem and got == [1, 1, 5, 13, 53]
    report.add({"alpha": "1/5", "q": 3, "scale": "5^n"}, "genfun", ok,
               detail=f"got {got}")
    seq, _ = srw_return_sequence(Fraction(1, 7), 5, 8)
    got = [seq[n] // 6 ** n for n in range(7)]
    rem = all(seq[n] % 6 ** n == 0 for n in range(7))
    ok = rem and got == [1, 1, 7, 19, 103, 391, 1957]
    report.add({"alpha": "1/7", "q": 5, "scale": "7^n"}, "genfun", ok,
               detail=f"got {got}")
    # Non-lazy q=2 even steps against the closed generating function in x.
    order = 15
    root = Series([1, -8], order=order).sqrt()
    closed = Fraction(4) / (1 + 3 * root)
    seq, base = srw_return_sequence(Fraction(0), 2, 2 * order)
    walks = [Fraction(seq[2 * n], base ** (2 * n)) * 3 ** (2 * n) for n in range(order + 1)]
    ok = walks == [closed[n] for n in range(order + 1)]
    report.add({"alpha": "0", "q": 2, "scale": "3^(2n)", "order": order}, "genfun", ok,
               detail=f"first terms {[str(w) for w in walks[:5]]}")
    return report


def suite_gamma(seed: int = DEFAULT_SEED, order: int = 512) -> RunReport:
    """Return-mass coefficients track their predicted growth within 10%."""
    import mpmath

    report = RunReport("gamma", seed)
    with mpmath.workdps(60):
        for alpha, q in ((Fraction(1, 5), 2), (Fraction(1, 5), 3),
                         (Fraction(0), 2), (Fraction(0), 3)):
            seq, base = srw_return_sequence(alpha, q, order)
            growth = gamma_asymptotic(alpha, q)
            if alpha == 0:
                odd_ok = all(seq[k] == 0 for k in range(1, order, 2))
                report.add({"alpha": str(alpha), "q": q, "check": "odd-zero"}, "genfun", odd_ok)
            deviations = []
            for n in (100, 400):
                exact = mpmath.mpf(seq[n]) / mpmath.mpf(base) ** n
                ratio = exact / interval_mid(growth.leading_term(n))
                deviations.append(abs(ratio - 1))
            ok = deviations[-1] < mpmath.mpf("0.1") and deviations[0] > deviations[-1]
            report.add({"alpha": str(alpha), "q": q, "check": "ratio"}, "genfun", ok,
                       detail=f"|ratio-1| at 100/400 = {float(deviations[0]):.4f}/"
                              f"{float(deviations[1]):.4f}")
    return report


SUITES: dict[str, Callable[..., RunReport]] = {
    "duality": suite_duality,
    "triple": suite_triple,
    "series": suite_series,
    "inequalities": suite_inequalities,
    "oeis": suite_oeis,
    "gamma": suite_gamma,
}


def run_suite(name: str, seed: int = DEFAULT_SEED) -> list[RunReport]:
    if name == "all":
        return [SUITES[key](seed) for key in SUITE_NAMES]
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {('all',) + SUITE_NAMES}")
    return [SUITES[name](seed)]
