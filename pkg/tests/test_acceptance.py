"""Acceptance suite.

Each criterion runs at its stated size and tolerance (all checks here are
exact: zero violations allowed) and prints one PASS/FAIL line; run with
`pytest -s tests/test_acceptance.py` to see the lines.
"""

import random

import pytest

from conftest import random_crystal_digraph
from crystalkit.crystal_core import (
    NEG_INF,
    TElem,
    TensorElem,
    rebracket_left_to_right,
    seminormal_check,
)
from crystalkit.graph_ops import brute_force_head, graph_from_elements, head
from crystalkit.perfect_families import (
    PerfectCoordA,
    bl_elements,
    build_psi_embedding,
    head_set_elements,
    psi_inverse,
)
from crystalkit.root_data import (
    AffineType,
    add_root,
    build_root_data,
    dominant_weights_of_level,
)
from crystalkit.theorem_lab import (
    hw_tensor_bl_graph,
    verify_head_location,
    verify_iso_theorem,
    verify_perfectness,
    verify_psi_bijection,
)


def _line(num, ok, text):
    print(f"ACCEPTANCE {num:>2} {'PASS' if ok else 'FAIL'} {text}")
    assert ok, f"criterion {num}: {text}"


def test_criterion_1_axioms_and_seminormality():
    checked = 0
    ok = True
    for n in (2, 3, 4):
        t = AffineType("A1", n)
        rd = build_root_data(t)
        for l in (1, 2, 3, 4):
            for c in bl_elements(t, l):
                b = PerfectCoordA(t, c)
                for i in range(n + 1):
                    checked += 1
                    if b.wt()[i] != b.phi(i) - b.eps(i):
                        ok = False
                    down = b.f(i)
                    if down is not None and (
                        down.wt() != add_root(rd, b.wt(), i, -1) or down.e(i) != b
                    ):
                        ok = False
                    up = b.e(i)
                    if up is not None and (
                        up.wt() != add_root(rd, b.wt(), i, +1) or up.f(i) != b
                    ):
                        ok = False
                    if not seminormal_check(b, i):
                        ok = False
    _line(1, ok, f"crystal axioms + seminormality, {checked} element-color checks")


def test_criterion_2_perfectness_probes():
    reports = []
    for n in (2, 3, 4):
        t = AffineType("A1", n)
        for l in (1, 2, 3, 4):
            reports.append(verify_perfectness(t, l))
    ok = all(r.passed for r in reports)
    _line(2, ok, f"perfectness probes over {len(reports)} (n,l) grids, zero violations")


def test_criterion_3_head_oracle_equivalence():
    rng = random.Random(0xC0FFEE)
    mismatches = 0
    graphs = 0
    for q in range(50):
        if q < 46:
            size = rng.randrange(20, 900)
            p = rng.uniform(0.1, 0.9)
        else:
            size = rng.randrange(1500, 5001)
            p = rng.uniform(0.05, 0.25)
        g = random_crystal_digraph(rng, size, rng.randrange(1, 5), p)
        graphs += 1
        if head(g) != brute_force_head(g):
            mismatches += 1
    for t, k, l, lam in (
        (AffineType("A1", 2), 1, 2, (1, 0, 0)),
        (AffineType("A1", 2), 1, 3, (0, 0, 1)),
        (AffineType("A1", 2), 2, 3, (1, 1, 0)),
        (AffineType("A1", 3), 1, 2, (1, 0, 0, 0)),
    ):
        g, _ = hw_tensor_bl_graph(t, lam, l, 4)
        graphs += 1
        if head(g) != brute_force_head(g):
            mismatches += 1
    _line(3, mismatches == 0, f"sink-SCC head == definition head on {graphs} graphs")


def test_criterion_4_finite_regular_head_is_everything():
    ok = True
    cases = 0
    for n in (2, 3):
        t = AffineType("A1", n)
        for l in (1, 2, 3):
            g = graph_from_elements(PerfectCoordA(t, c) for c in bl_elements(t, l))
            cases += 1
            if head(g) != frozenset(g.nodes):
                ok = False
    _line(4, ok, f"H(B_l) = B_l exactly on {cases} finite regular crystals")


def test_criterion_5_head_location_grid():
    runs = 0
    ok = True
    for n in (2, 3):
        t = AffineType("A1", n)
        rd = build_root_data(t)
        for (k, l) in ((1, 2), (1, 3), (2, 3)):
            for lam in dominant_weights_of_level(rd, k):
                rep = verify_head_location(t, l, lam, 6)
                runs += 1
                if not rep.passed:
                    ok = False
    _line(5, ok, f"head location + raising-closure + normal-form reach, {runs} runs at depth 6")


ISO_CASES = [
    (AffineType("A1", 2), 1, 2, (1, 0, 0)),
    (AffineType("A1", 2), 1, 3, (0, 0, 1)),
    (AffineType("A1", 2), 2, 3, (1, 1, 0)),
    (AffineType("A1", 3), 1, 2, (1, 0, 0, 0)),
]


@pytest.fixture(scope="module")
def iso_reports():
    out = []
    for t, k, l, lam in ISO_CASES:
        for N in (10, 11, 12):
            out.append(verify_iso_theorem(t, k, l, lam, 8, N=N))
    return out


def test_criterion_6_iso_theorem_end_to_end(iso_reports):
    ok = all(r.passed for r in iso_reports)
    stable = True
    for q in range(0, len(iso_reports), 3):
        trio = iso_reports[q : q + 3]
        profile = {
            (r.counts["left_nodes"], r.counts["right_nodes"],
             r.counts["compared_ball"], r.counts["head_size"], r.passed)
            for r in trio
        }
        if len(profile) != 1:
            stable = False
    _line(
        6,
        ok and stable,
        f"tensor isomorphism on depth-8 balls, {len(iso_reports)} runs"
        " (N, N+1, N+2 stable), zero mismatches",
    )


def test_criterion_7_embedding_construction():
    ok = True
    runs = 0
    for n in (2, 3):
        t = AffineType("A1", n)
        rd = build_root_data(t)
        for (k, l) in ((1, 2), (1, 3), (2, 3)):
            for lam in dominant_weights_of_level(rd, k):
                table = build_psi_embedding(t, k, l, lam)
                runs += 1
                pairs = table.stats["coord_pairing"]
                if not table.is_injective():
                    ok = False
                if sorted(pairs.values()) != head_set_elements(t, l, lam):
                    ok = False
                if any(
                    psi_inverse(t, l, lam, src) != tgt for src, tgt in pairs.items()
                ):
                    ok = False
    _line(7, ok, f"level-shifting embeddings constructed and matched on {runs} runs")


def test_criterion_8_psi_set_bijections_other_families():
    ok = True
    runs = 0
    branch_cover = {"spin_odd": 0, "spin_even": 0, "g_ge": 0, "g_le": 0}
    for family, n in (
        ("A2dual_odd", 3),
        ("B1", 3),
        ("A2dual_even", 2),
        ("D2dual", 2),
        ("C1", 2),
        ("D1", 4),
    ):
        t = AffineType(family, n)
        rd = build_root_data(t)
        for (k, l) in ((1, 2), (1, 3)):
            for lam in dominant_weights_of_level(rd, k):
                rep = verify_psi_bijection(t, k, l, lam)
                runs += 1
                if not rep.passed:
                    ok = False
                if family in ("B1", "D2dual"):
                    branch_cover["spin_odd" if lam[n] % 2 else "spin_even"] += 1
                if family == "D1":
                    if lam[n - 1] >= lam[n]:
                        branch_cover["g_ge"] += 1
                    if lam[n - 1] <= lam[n]:
                        branch_cover["g_le"] += 1
    covered = all(v > 0 for v in branch_cover.values())
    _line(
        8,
        ok and covered,
        f"coordinate bijections for the six other families, {runs} exhaustive runs,"
        f" branch coverage {branch_cover}",
    )


def test_criterion_9_extension_well_definedness(iso_reports):
    ok = all(
        r.counts.get("i0_conflicts") == 0
        and r.counts.get("commutation_failures") == 0
        and r.counts.get("i0_checked", 0) > 0
        for r in iso_reports
    )
    total = sum(r.counts.get("i0_checked", 0) for r in iso_reports)
    _line(9, ok, f"zero choice conflicts / commutation failures over {total} i0 checks")


def test_criterion_10_associativity_and_t_shift():
    rng = random.Random(0xA55)
    pools = {}
    for n in (2, 3):
        t = AffineType("A1", n)
        pools[n] = (
            t,
            [
                PerfectCoordA(t, c)
                for l in (1, 2, 3)
                for c in bl_elements(t, l)
            ],
        )
    failures = 0
    trials = 10_000
    for q in range(trials):
        n = rng.choice((2, 3))
        t, pool = pools[n]
        size = n + 1
        if q % 5 == 0:
            lam = tuple(rng.randrange(-2, 3) for _ in range(size))
            mu = tuple(rng.randrange(-2, 3) for _ in range(size))
            pair = TensorElem(TElem(lam), TElem(mu))
            summed = TElem(tuple(a + b for a, b in zip(lam, mu)))
            if pair.wt() != summed.wt():
                failures += 1
            for i in range(size):
                if pair.eps(i) != NEG_INF or pair.phi(i) != NEG_INF:
                    failures += 1
                if pair.e(i) is not None or pair.f(i) is not None:
                    failures += 1
            continue
        a, b, c = (rng.choice(pool) for _ in range(3))
        if q % 7 == 0:
            b = TElem(tuple(rng.randrange(-1, 2) for _ in range(size)))
        left = TensorElem(TensorElem(a, b), c)
        right = rebracket_left_to_right(left)
        if left.wt() != right.wt():
            failures += 1
        for i in range(size):
            if left.eps(i) != right.eps(i) or left.phi(i) != right.phi(i):
                failures += 1
            for op in ("e", "f"):
                lres = getattr(left, op)(i)
                rres = getattr(right, op)(i)
                if lres is None:
                    if rres is not None:
                        failures += 1
                elif rres != rebracket_left_to_right(lres):
                    failures += 1
    _line(10, failures == 0, f"associativity + one-point tensor shifts, {trials} trials")
