from __future__ import annotations

from fractions import Fraction

import pytest

from slp.rootsystem import (
    RootSystemError,
    build_root_system,
    group_order,
    parse_type,
    standard_theta,
    vneg,
    vscale,
)
from slp.scalar import sign

# |Phi+| from the classical formulas, independent of the closure enumeration
POSITIVE_COUNTS = {
    "A1": 1, "A2": 3, "A3": 6, "A4": 10, "B2": 4, "B3": 9, "B4": 16, "D4": 12, "D5": 20,
    "E6": 36, "E7": 63, "E8": 120, "F4": 24, "H3": 15, "H4": 60,
    "I2(3)": 3, "I2(5)": 5, "I2(7)": 7, "I2(8)": 8,
}


@pytest.mark.parametrize("label,count", sorted(POSITIVE_COUNTS.items()))
def test_positive_root_counts(label, count):
    rs = build_root_system(label)
    assert rs.positive_count == count
    assert len(rs.roots) == 2 * count


def test_fields():
    assert build_root_system("H3").field.tag == "Q(sqrt5)"
    assert build_root_system("I2(7)").field.degree == 3
    assert build_root_system("E8").field.degree == 1


def test_invalid_types():
    for bad in ["X3", "A0", "D3x", "I2(2)", "B1", ""]:
        with pytest.raises(RootSystemError):
            build_root_system(bad)


@pytest.mark.parametrize("label", ["A3", "B3", "D4", "F4", "H3", "I2(5)", "E6"])
def test_closure_and_coroots(label):
    rs = build_root_system(label)
    roots = set(rs.roots)
    for beta in rs.positive:
        assert rs.coroot_eval(beta, beta) == rs.field(2)
        assert rs.reflect(beta, beta) == vneg(beta)
        for gamma in rs.positive:
            assert rs.reflect(beta, gamma) in roots
            assert rs.reflect(beta, rs.reflect(beta, gamma)) == gamma


@pytest.mark.parametrize("label", ["A3", "B4", "D5", "E7", "F4", "H4", "I2(8)"])
def test_rho_facts(label):
    rs = build_root_system(label)
    rho = rs.rho()
    for a in rs.simple:
        assert rs.coroot_eval(a, rho) == rs.field(1)
        assert rs.reflect(a, rho) == tuple(x - y for x, y in zip(rho, a))
    assert rs.w0(rho) == vneg(rho)
    assert len(rs.longest_word()) == rs.positive_count
    assert rs.weight_from_coroot_values([1] * rs.rank) == rho


def test_coroot_of_non_root_rejected():
    rs = build_root_system("A2")
    with pytest.raises(RootSystemError):
        rs.coroot_eval(vscale(2, rs.rho()), rs.rho())  # rho itself is the highest root of A2


@pytest.mark.parametrize("label", ["A2", "B3", "H3", "I2(5)"])
def test_rho_bar_trivial_cases(label):
    rs = build_root_system(label)
    rho, rho_t, rho_b = rs.theta(()).rho_vectors()
    assert rho_b == rho and not any(rho_t)
    _, _, rho_b = rs.theta(range(rs.rank)).rho_vectors()
    assert not any(rho_b)


def test_rho_bar_e7_over_e6():
    rs = build_root_system("E7")
    theta, label = standard_theta("E7")
    assert label == "E6"
    rho_b = rs.theta(theta).rho_bar
    # coordinates e1..e8; the standard E7 embeds in the E8 lattice
    e = lambda i: tuple(Fraction(int(j == i - 1)) for j in range(8))
    paper_vector = vscale(9, tuple(a - b + 2 * c for a, b, c in zip(e(8), e(7), e(6))))
    # rho_bar is the half-sum over the complement: exactly half of 9(e8 - e7 + 2e6)
    assert vscale(2, rho_b) == rs.vector(paper_vector)
    comp = rs.theta(theta).complement
    assert {rs.coroot_eval(rs.positive[k], rho_b) for k in comp} == {rs.field(9)}
    assert {rs.coroot_eval(rs.positive[k], rs.vector(paper_vector)) for k in comp} == {rs.field(18)}


def test_rho_bar_e8_over_e7_is_multiple_of_highest_root():
    rs = build_root_system("E8")
    theta, _ = standard_theta("E8")
    rho_b = rs.theta(theta).rho_bar
    top = rs.highest_root()
    c = next(x / y for x, y in zip(rho_b, top) if y)
    assert vscale(c, top) == rho_b and sign(c) > 0
    comp = rs.theta(theta).complement
    values = {k: rs.coroot_eval(rs.positive[k], top) for k in comp}
    assert values[rs.positive_index(top)] == 2
    assert all(v == 1 for k, v in values.items() if rs.positive[k] != top)


@pytest.mark.parametrize("label,expected", [
    ("A4", "A3"), ("B3", "B2"), ("D5", "D4"), ("E6", "D5"), ("E7", "E6"), ("E8", "E7"),
    ("F4", "B3"), ("H3", "I2(5)"), ("H4", "H3"), ("I2(7)", "A1"),
])
def test_standard_theta_labels(label, expected):
    assert standard_theta(label)[1] == expected


@pytest.mark.parametrize("label", ["A3", "B3", "H3", "I2(6)", "D4"])
def test_group_order_matches_orbit(label):
    rs = build_root_system(label)
    seen = {rs.rho()}
    frontier = [rs.rho()]
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(rs.rank):
                u = rs.reflect_simple(i, v)
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    assert len(seen) == group_order(parse_type(label))


def test_roots_json_shape():
    data = build_root_system("I2(5)").to_json()
    assert data["type"] == "I2(5)" and data["field"] == "Q(cos5)"
    assert len(data["positive"]) == 5
    assert data["simple"][0][0]["field"] == "Q(cos5)"
    assert len(data["gram"]) == 2
