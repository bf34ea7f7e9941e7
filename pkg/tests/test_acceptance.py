"""Acceptance criteria 1-12, all exact.  Each test records one PASS/FAIL line."""
from __future__ import annotations

import itertools
import random
import time
from fractions import Fraction

import pytest

from slp.deform import binomial_matrix_check, deformation_scan, fibration_validate
from slp.lefschetz import (
    enumerate_path_systems,
    factorised_system_sum,
    is_alpha_symmetric,
    middle_form_reduce,
    path_matrix,
    path_system_sum,
    strong_lefschetz_report,
    weak_lefschetz_report,
)
from slp.polyring import bgg_apply, group_elements, lefschetz_determinants, presentation, random_polynomial
from slp.quotient import enumerate_quotient, root_rescaling
from slp.rootsystem import build_root_system, group_order, standard_theta, vscale
from slp.scalar import sign
from slp.tables import (
    SCOPE,
    bipartite_layer,
    middle_form_table,
    middle_legs,
    relative_poset,
    verify_theorem,
)


def test_criterion_01_middle_forms(record):
    details, ok = [], True
    for label in ("H4", "E8"):
        start = time.perf_counter()
        table = middle_form_table(label)
        elapsed = time.perf_counter() - start
        good = all(table["checks"].values()) and table["permutation"] is not None and elapsed < 30
        ok &= good
        details.append(f"{label} matches reference up to permutation, positive definite ({elapsed:.1f}s)")
    record(1, ok, "; ".join(details))
    assert ok


@pytest.mark.xfail(strict=True, reason="E7 weights are 9 with rho_bar the half-sum; 18 is the value of 2*rho_bar")
def test_criterion_02_edge_weights(record):
    e7 = relative_poset("E7")
    weights = {e.weight for e in e7.edges}
    rs = build_root_system("E7")
    e = lambda i: tuple(Fraction(int(k == i - 1)) for k in range(8))
    stated = rs.vector(vscale(9, tuple(a - b + 2 * c for a, b, c in zip(e(8), e(7), e(6)))))
    rho_bar = rs.theta(standard_theta("E7")[0]).rho_bar
    all_equal = len(weights) == 1
    twice = vscale(2, rho_bar) == stated

    rs8 = build_root_system("E8")
    ts = rs8.theta(standard_theta("E8")[0])
    P = enumerate_quotient(rs8, ts, scale=root_rescaling(rs8, ts))
    w8 = {e.weight for e in P.edges}
    heavy_degrees = {P.nodes[e.src].degree for e in P.edges if e.weight == 2}
    height = sum(rs8.coords_in_simple_basis(rs8.highest_root()))
    e8_ok = w8 == {P.field(1), P.field(2)} and heavy_degrees == {28} and height == 29

    value = next(iter(weights))
    literal = all_equal and value == 18 and e8_ok
    record(2, literal,
           f"E7/E6 weights all equal to {value} (stated 18; the stated vector equals 2*rho_bar: {twice}); "
           f"E8/E7 rescaled weights in {{1,2}}, 2 only out of degree 28, h(theta) = {height}: {e8_ok}")
    assert literal


def test_criterion_02_substance():
    # what survives the normalisation: one common weight for E7, and the E8 structure
    e7 = relative_poset("E7")
    assert len({e.weight for e in e7.edges}) == 1
    rs8 = build_root_system("E8")
    ts = rs8.theta(standard_theta("E8")[0])
    P = enumerate_quotient(rs8, ts, scale=root_rescaling(rs8, ts))
    assert {P.nodes[e.src].degree for e in P.edges if e.weight == 2} == {28}


def _criterion_3_facts():
    f4 = relative_poset("F4")
    f4_all = [len(enumerate_path_systems(f4, i)) for i in range(4)]
    f4_perms = [len({p.sigma for p in enumerate_path_systems(f4, i)}) for i in range(4)]
    f4_vd = [enumerate_path_systems(f4, i, vertex_disjoint=True) for i in range(4, 8)]
    f4_vd_ok = all(len(v) == 2 and v[0].weight != v[1].weight for v in f4_vd)

    e7 = relative_poset("E7")
    legs = middle_legs(e7, range(5, 9), 12, 15)

    def uniform(P, degrees):
        return all(len({p.sign * sign(p.weight) for p in enumerate_path_systems(P, i, vertex_disjoint=True)}) == 1
                   for i in degrees)

    e7_uniform = uniform(e7, list(range(5)) + list(range(9, 14)))
    e6_uniform = uniform(relative_poset("E6"), range(9))
    h4 = relative_poset("H4", rescale=True)
    e8 = relative_poset("E8", rescale=True)
    h4_20 = bipartite_layer(h4, 20)["count"]
    e8_24 = bipartite_layer(e8, 24)["count"]
    h4_15 = bipartite_layer(h4, 15)["count"]
    return dict(f4_all=f4_all, f4_perms=f4_perms, f4_vd_ok=f4_vd_ok, legs=legs, e7_uniform=e7_uniform,
                e6_uniform=e6_uniform, h4_20=h4_20, e8_24=e8_24, h4_15=h4_15)


@pytest.fixture(scope="module")
def criterion_3_facts():
    return _criterion_3_facts()


@pytest.mark.xfail(strict=True, reason="literal counts differ: F4 has 49 routings, E7 has 25 middle legs, "
                                       "H4 layer 15 has 2 matchings")
def test_criterion_03_path_counts(record, criterion_3_facts):
    f = criterion_3_facts
    parts = {
        "F4 one path system for i<=3": f["f4_all"] == [1, 1, 1, 1],
        "F4 two vertex-disjoint systems, distinct weights, 4<=i<=7": f["f4_vd_ok"],
        "E7 nine middle legs": f["legs"]["routings"] == 9,
        "E7 uniform sign 0<=i<=4, 9<=i<=13": f["e7_uniform"],
        "E6 uniform sign 0<=i<=8": f["e6_uniform"],
        "H4 layer 20 -> 3, E8 layer 24 -> 5": (f["h4_20"], f["e8_24"]) == (3, 5),
        "H4 layer 15 -> 1": f["h4_15"] == 1,
    }
    failed = [k for k, v in parts.items() if not v]
    record(3, not failed,
           f"failing sub-checks: {failed}; computed F4 systems {f['f4_all']} (one permutation each), "
           f"E7 legs {f['legs']['routings']} routings in {f['legs']['configurations']} endpoint configurations, "
           f"H4 layer 15 has {f['h4_15']} matchings")
    assert not failed


def test_criterion_03_substance(criterion_3_facts):
    f = criterion_3_facts
    assert f["f4_perms"] == [1, 1, 1, 1] and f["f4_vd_ok"]
    assert f["legs"]["configurations"] == 9 and f["legs"]["sign_determined_by_leg"]
    assert f["legs"]["minority_sign_legs"] == 2
    assert f["e7_uniform"] and f["e6_uniform"]
    assert (f["h4_20"], f["e8_24"]) == (3, 5)


def test_criterion_04_quotient_sizes(record):
    expected = {"F4": (24, 15), "E6": (27, 16), "E7": (56, 27), "E8": (240, 57), "H4": (120, 45), "H3": (12, 10)}
    bad = []
    for label, (n, r) in expected.items():
        P = relative_poset(label)
        hist = P.histogram()
        theta = standard_theta(label)[0]
        rs = build_root_system(label)
        # orbit size against |W| / |W_Theta| from the group orders
        sub = rs.theta(theta).subtype_order() if label not in ("E8", "E7") else None
        if sub is not None and group_order(rs.ctype) != n * sub:
            bad.append(label)
        if (len(P), P.r) != (n, r) or hist != hist[::-1]:
            bad.append(label)
    record(4, not bad, "F4/B3 24 r15, E6/D5 27 r16, E7/E6 56 r27, E8/E7 240 r57, H4/H3 120 r45, "
                       f"H3/I2(5) 12 r10; histograms symmetric{'' if not bad else f'; bad: {bad}'}")
    assert not bad


def test_criterion_05_strong_verdicts(record):
    start = time.perf_counter()
    full = ([f"A{n}" for n in range(2, 9)] + [f"B{n}" for n in range(2, 7)] + ["D4", "D5", "D6"]
            + [f"I2({m})" for m in range(3, 13)] + ["H3", "F4", "E6", "E7"])
    failed = [t for t in full if not strong_lefschetz_report(relative_poset(t)).passed]
    for label in ("H4", "E8"):
        P = relative_poset(label)
        mf = middle_form_reduce(P)
        weak = weak_lefschetz_report(P)  # every step 0 <= i < middle, including below 7
        if not (mf.positive_definite and weak.passed and mf.strong_verdict):
            failed.append(label)
    elapsed = time.perf_counter() - start
    record(5, not failed and elapsed < 300,
           f"{len(full)} relative posets by determinants, H4 and E8 by middle form plus weak steps 0..middle "
           f"({elapsed:.1f}s){'' if not failed else f'; failed: {failed}'}")
    assert not failed


LGV_TYPES = ([f"A{n}" for n in range(1, 7)] + [f"B{n}" for n in range(2, 7)] + [f"D{n}" for n in range(4, 7)]
             + ["E6", "F4", "H3", "H4"] + [f"I2({m})" for m in range(3, 16)])
ENUMERATION_BUDGET = 5000


def _orbit_at_most(rs, theta, cap):
    start = rs.theta(theta).rho_bar
    seen, frontier = {start}, [start]
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(rs.rank):
                u = rs.reflect_simple(i, v)
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
                    if len(seen) > cap:
                        return False
        frontier = nxt
    return True


def test_criterion_06_lgv(record):
    posets = degrees = factorised = 0
    bad = []
    for label in LGV_TYPES:
        rs = build_root_system(label)
        for k in range(rs.rank + 1):
            for theta in itertools.combinations(range(rs.rank), k):
                if not _orbit_at_most(rs, theta, 30):
                    continue
                P = enumerate_quotient(rs, theta)
                posets += 1
                zero = P.field.zero()
                for i in range(P.r // 2 + 1):
                    degrees += 1
                    det = path_matrix(P, i, P.r - i).det()
                    total, count = factorised_system_sum(P, i)
                    if count <= ENUMERATION_BUDGET:
                        every = enumerate_path_systems(P, i)
                        if len(every) != count or path_system_sum(every, zero) != total:
                            bad.append((label, theta, i, "enumeration"))
                    else:
                        factorised += 1
                    disjoint = path_system_sum(enumerate_path_systems(P, i, vertex_disjoint=True), zero)
                    if not det == total == disjoint:
                        bad.append((label, theta, i))
    record(6, not bad,
           f"{posets} quotient posets with <= 30 nodes ({len(LGV_TYPES)} types, every Theta), {degrees} degrees; "
           f"all-systems sum enumerated when <= {ENUMERATION_BUDGET} systems, else summed per permutation "
           f"as a product of path sums ({factorised} degrees)")
    assert not bad


def test_criterion_07_oracle_equivalence(record):
    labels = ["A2", "A3", "B2", "B3"] + [f"I2({m})" for m in range(3, 8)]
    bad = []
    for label in labels:
        rs = build_root_system(label)
        pres = presentation(rs)
        P = enumerate_quotient(rs, ())
        by_vec = {g.vector: g for g in pres.elements()}
        rho = rs.rho()
        for i in range(P.r // 2 + 1):
            pm = path_matrix(P, i, P.r - i)
            lm = pres.lefschetz_matrix(rho, i, P.r - i)
            cols = {g: k for k, g in enumerate(pres.elements_of_length(i))}
            rows = {g: k for k, g in enumerate(pres.elements_of_length(P.r - i))}
            for r, rid in enumerate(pm.rows):
                for c, cid in enumerate(pm.cols):
                    if pm.entries[r][c] != lm[rows[by_vec[P.nodes[rid].vector]]][cols[by_vec[P.nodes[cid].vector]]]:
                        bad.append((label, i))
        if not lefschetz_determinants(pres, rho).passed:
            bad.append((label, "strong"))
    a2 = path_matrix(enumerate_quotient(build_root_system("A2"), ()), 0, 3).entries
    ok = not bad and a2 == [[6]]
    record(7, ok, f"path route equals polynomial route entry for entry on {', '.join(labels)}; "
                  f"strong passes; A2 top entry {a2[0][0]}")
    assert ok


def test_criterion_08_bgg(record):
    bad = []
    for label in ("A3", "B2"):
        rs = build_root_system(label)
        length = {g.vector: g.length for g in group_elements(rs)}
        top = rs.positive_count
        sample = [random_polynomial(rs.field, rs.ambient_dim, top, random.Random(seed)) for seed in range(5)]
        reduced: dict = {}
        for k in range(top + 1):
            for w in itertools.product(range(rs.rank), repeat=k):
                v = rs.apply_word(w, rs.rho())
                if length[v] == k:
                    reduced.setdefault(v, []).append(w)
                elif k <= 4 and any(bgg_apply(rs, w, f) for f in sample):
                    bad.append((label, w))
        for v, words in reduced.items():
            for f in sample:
                if len({bgg_apply(rs, w, f) for w in words}) != 1:
                    bad.append((label, words[0]))
    record(8, not bad, "all reduced words agree on 5 seeded polynomials for W(A3) and W(B2); "
                       "non-reduced words of length <= 4 give zero")
    assert not bad


def test_criterion_09_symmetry(record):
    labels = ([f"A{n}" for n in range(2, 9)] + [f"B{n}" for n in range(2, 7)] + ["D4", "D5", "D6"]
              + [f"I2({m})" for m in range(3, 13)] + ["H3", "F4", "E6", "E7", "H4", "E8"])
    bad = [t for t in labels
           if not all(is_alpha_symmetric(P, i) for P in [relative_poset(t)] for i in range(P.r // 2 + 1))]
    record(9, not bad, f"path matrices alpha-symmetric in every degree on {len(labels)} relative posets")
    assert not bad


def test_criterion_10_binomial(record):
    cases = bad = 0
    for m in range(9):
        for n in range(m + 1):
            for i in range((n + m) // 2 + 1):
                check = binomial_matrix_check(n, m, i)
                cases += 1
                bad += not (check.agree and check.nonzero)
    record(10, bad == 0, f"{cases} cases 0 <= n <= m <= 8: binomial matrix = direct product matrix, det != 0")
    assert bad == 0


def test_criterion_11_fibration(record):
    start = time.perf_counter()
    details, ok = [], True
    for label, theta in (("A2", "A1"), ("A3", "A2"), ("B2", "A1")):
        rs = build_root_system(label)
        std, sub = standard_theta(label)
        assert sub == theta
        fd = fibration_validate(rs, std)
        rep = deformation_scan(fd)
        good = (all(fd.checks.values()) and rep.passed and all(p.at0 for p in rep.polynomials)
                and rep.final.passed)
        ok &= good
        details.append(f"{label}/{theta} t0={rep.t0}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 60
    record(11, ok, f"{', '.join(details)}: hypotheses hold, D_k(0) != 0, final element strong ({elapsed:.1f}s)")
    assert ok


def test_criterion_12_scope(record):
    report = verify_theorem(max_rank=8)
    data = report.to_json()
    steps = list(data["steps"])
    ok = report.passed and data["scope"] == SCOPE and "E8" in steps and "never checked directly" in SCOPE
    record(12, ok, f"verify-theorem replays {len(steps)} relative steps up to rank 8 (E8 by middle form); "
                   "the report states that full coinvariant rings of large groups are not checked")
    assert ok
