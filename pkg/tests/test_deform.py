from __future__ import annotations

import pytest

from slp.algebra import PreconditionError, truncated_polynomial
from slp.deform import (
    ParameterError,
    binomial_matrix,
    binomial_matrix_check,
    deformation_scan,
    direct_multiplication_matrix,
    fibration_validate,
    tensor_product_algebra,
)
from slp.rootsystem import build_root_system


def test_binomial_smallest_case():
    check = binomial_matrix_check(1, 1, 0)
    assert check.matrix == check.direct == [[2]]
    assert check.determinant == 2


def test_binomial_first_branch_entries():
    from math import comb

    n, m = 3, 5
    d = n + m
    for i in range(n + 1):
        mat = binomial_matrix(n, m, i)
        for j, row in enumerate(mat):
            for k, x in enumerate(row):
                low = n - i + j - k
                assert x == (comb(d - 2 * i, low) if low >= 0 else 0)


@pytest.mark.parametrize("n,m", [(n, m) for m in range(0, 6) for n in range(0, m + 1)])
def test_binomial_matches_direct(n, m):
    for i in range((n + m) // 2 + 1):
        check = binomial_matrix_check(n, m, i)
        assert check.agree and check.nonzero
        assert check.direct == direct_multiplication_matrix(n, m, i)


def test_binomial_parameters():
    with pytest.raises(ParameterError):
        binomial_matrix(3, 2, 0)
    with pytest.raises(ParameterError):
        binomial_matrix(1, 2, 5)


def test_tensor_product_algebra_precondition():
    W, check = tensor_product_algebra(truncated_polynomial(1), truncated_polynomial(1))
    assert W.dims == [1, 2, 1] and check.passed
    U = truncated_polynomial(2)
    U.elements["X"] = [U.field.zero()]
    with pytest.raises(PreconditionError):
        tensor_product_algebra(U, truncated_polynomial(1))


def test_fibration_a2():
    fd = fibration_validate(build_root_system("A2"), (1,))
    assert fd.rank == 2
    assert (fd.B.dims, fd.F.dims, fd.E.dims) == ([1, 1, 1], [1, 1], [1, 2, 2, 1])
    assert all(fd.checks.values())


def test_fibration_b2():
    fd = fibration_validate(build_root_system("B2"), (0,))
    assert fd.rank == 2
    assert fd.B.dims == [1, 1, 1, 1] and fd.E.dims == [1, 2, 2, 2, 1]
    assert all(fd.checks.values())


@pytest.mark.parametrize("label,theta", [("A2", (1,)), ("B2", (0,)), ("A2", ()), ("A2", (0, 1))])
def test_deformation_scan(label, theta):
    rep = deformation_scan(fibration_validate(build_root_system(label), theta))
    assert rep.passed
    assert all(p.at0 for p in rep.polynomials)
    assert rep.t0 >= 1 and all(p(rep.t0) for p in rep.polynomials)
    data = rep.to_json()
    assert data["final_check"] == "pass"


def test_deformation_a2_values():
    rep = deformation_scan(fibration_validate(build_root_system("A2"), (1,)))
    assert [str(p.at0) for p in rep.polynomials] == ["27/4", "9/4"]
    assert [str(d) for d in rep.tensor_determinants] == ["27/4", "9/4"]
