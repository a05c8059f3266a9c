"""Associative algebras: boundary operator identities, pinned homology values,
H-unitality, and the three-model cyclic comparison.

Pinned numbers in this file were produced by the dense brute-force oracle in
dense_oracle.py (run first, values frozen here); the cheap cases re-run the
oracle inline to guard against drift.
"""

import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import dense_oracle
from exacthom.exactlin import SparseMatrix
from exacthom.complexes import homology, verify_double_complex
from exacthom.assoc_homology import (
    AlgebraAxiomError,
    MissingUnitError,
    StructureConstantAlgebra,
    algebra_from_json,
    algebra_to_json,
    bB_bicomplex,
    bar_boundary,
    bar_complex,
    change_of_basis,
    connes_b_operator,
    connes_quotient_complex,
    cyclic_bicomplex,
    cyclic_group_algebra,
    cyclic_operator,
    connes_report,
    direct_sum,
    dual_numbers,
    field_q,
    h_unitality_report,
    hochschild_boundary,
    hochschild_complex,
    left_unital_two_dim,
    make_algebra,
    matrix_algebra,
    norm_operator,
    random_algebra,
    cyclic_comparison_report,
    tensor_rank,
    tensor_unrank,
    truncated_polynomials,
    zero_multiplication,
)

seeds = st.integers(min_value=0, max_value=5_000)

# oracle-frozen values (dense_oracle.py, see module docstring)
HH_Q = [1, 0, 0, 0, 0]
HH_DUAL = [2, 1, 1, 1]
HH_QXQ = [2, 0, 0, 0]
HH_M2 = [1, 0, 0]
CLAM_DIMS_Q = [1, 0, 1, 0, 1]
CLAM_BETTI_Q = [1, 0, 1, 0, 1]
CLAM_DIMS_DUAL = [2, 1, 4, 4, 8]
CLAM_BETTI_DUAL = [2, 0, 2, 0, 2]
CLAM_BETTI_QXQ = [2, 0, 2, 0]
CLAM_BETTI_LEFT = [1, 0, 1, 0]


def _mult_table(a):
    return {k: dict(v) for k, v in a.mult.items()}


def test_associativity_rejected_with_witness():
    # (e0 e0) e0 = e1 e0 = 0 but e0 (e0 e0) = e0 e1 = e0
    with pytest.raises(AlgebraAxiomError, match=r"\(0,0,0\)"):
        StructureConstantAlgebra(2, {(0, 0): {1: Fraction(1)},
                                     (0, 1): {0: Fraction(1)}})


def test_one_sided_unit_rejected():
    mult = {(0, 0): {0: Fraction(1)}, (0, 1): {1: Fraction(1)}}
    with pytest.raises(AlgebraAxiomError, match="two-sided"):
        StructureConstantAlgebra(2, mult, unit={0: Fraction(1)})


def test_json_roundtrip_and_families():
    a = dual_numbers()
    blob = algebra_to_json(a)
    b = algebra_from_json(blob)
    assert b.mult == a.mult and b.unit == a.unit and b.names == a.names
    assert json.dumps(algebra_to_json(b), sort_keys=True) == \
        json.dumps(blob, sort_keys=True)
    m = make_algebra({"family": "truncated_polynomials", "params": {"m": 3}})
    assert m.dim == 3 and m.is_unital
    with pytest.raises(ValueError, match="unknown algebra family"):
        make_algebra({"family": "nope"})
    # full structure-constant objects are accepted directly
    again = make_algebra(blob)
    assert again.mult == a.mult


def test_left_unital_has_no_stored_unit():
    a = left_unital_two_dim()
    assert not a.is_unital
    # e really is a left unit but not a right one
    assert a.product({0: Fraction(1)}, {1: Fraction(1)}) == {1: Fraction(1)}
    assert a.product({1: Fraction(1)}, {0: Fraction(1)}) == {}


def test_matrix_algebra_and_direct_sum_units():
    m2 = matrix_algebra(2)
    assert m2.unit == {0: Fraction(1), 3: Fraction(1)}
    s = direct_sum(field_q(), dual_numbers())
    assert s.dim == 3 and s.is_unital
    ns = direct_sum(field_q(), zero_multiplication(1))
    assert ns.unit is None


@given(st.integers(min_value=1, max_value=4), st.integers(min_value=0, max_value=80))
def test_tensor_indexing_roundtrip(d, raw):
    idx = raw % d ** 3
    assert tensor_rank(d, tensor_unrank(d, 3, idx)) == idx


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_boundary_and_rotation_identities(seed):
    a = random_algebra(seed)
    d = a.dim
    for n in range(1, 4):
        b_n = hochschild_boundary(a, n)
        bp_n = bar_boundary(a, n)
        t_n = cyclic_operator(d, n)
        n_n = norm_operator(d, n)
        size = d ** (n + 1)
        ident = SparseMatrix.identity(size)
        one_minus = ident - t_n
        # rotation has order n+1 including its sign
        power = ident
        for _ in range(n + 1):
            power = t_n @ power
        assert power == ident, f"rotation order fails at degree {n}"
        assert (one_minus @ n_n).is_zero()
        assert (n_n @ one_minus).is_zero()
        if n >= 2:
            assert (hochschild_boundary(a, n - 1) @ b_n).is_zero()
            assert (bar_boundary(a, n - 1) @ bp_n).is_zero()
            one_minus_prev = (SparseMatrix.identity(d ** n)
                              - cyclic_operator(d, n - 1))
            assert b_n @ one_minus == one_minus_prev @ bp_n
            assert norm_operator(d, n - 1) @ b_n == bp_n @ n_n


@pytest.mark.parametrize("alg", [dual_numbers(), truncated_polynomials(3),
                                 cyclic_group_algebra(3),
                                 direct_sum(field_q(), field_q())])
def test_degree_raising_boundary_identities(alg):
    for n in range(0, 3):
        big_b = connes_b_operator(alg, n)
        assert (connes_b_operator(alg, n + 1) @ big_b).is_zero()
        anti = (hochschild_boundary(alg, n + 1) @ big_b
                + (connes_b_operator(alg, n - 1) @ hochschild_boundary(alg, n)
                   if n >= 1 else SparseMatrix.zeros(alg.dim ** (n + 1),
                                                     alg.dim ** (n + 1))))
        assert anti.is_zero(), f"bB + Bb != 0 at degree {n}"


def test_hochschild_pinned_values():
    # build one degree past the pin so the pinned degrees are all exact
    assert list(homology(hochschild_complex(field_q(), 5)).betti)[:5] == HH_Q
    assert list(homology(hochschild_complex(dual_numbers(), 4)).betti)[:4] == HH_DUAL
    qxq = direct_sum(field_q(), field_q())
    assert list(homology(hochschild_complex(qxq, 4)).betti)[:4] == HH_QXQ
    assert list(homology(hochschild_complex(matrix_algebra(2), 3)).betti)[:3] == HH_M2


def test_oracle_agrees_with_frozen_values():
    one = Fraction(1)
    q = {(0, 0): {0: one}}
    assert dense_oracle.hochschild_betti(q, 1, 4) == HH_Q
    assert dense_oracle.connes_dims(q, 1, 4) == CLAM_DIMS_Q
    assert dense_oracle.connes_betti(q, 1, 4) == CLAM_BETTI_Q
    dual = _mult_table(dual_numbers())
    assert dense_oracle.hochschild_betti(dual, 2, 3) == HH_DUAL
    assert dense_oracle.connes_dims(dual, 2, 4) == CLAM_DIMS_DUAL
    assert dense_oracle.connes_betti(dual, 2, 4) == CLAM_BETTI_DUAL
    left = _mult_table(left_unital_two_dim())
    assert dense_oracle.connes_betti(left, 2, 3) == CLAM_BETTI_LEFT


def test_connes_quotient_pinned_values():
    cq, _ = connes_quotient_complex(field_q(), 5)
    hq = homology(cq)
    assert list(cq.dims)[:5] == CLAM_DIMS_Q
    assert list(hq.betti)[:5] == CLAM_BETTI_Q
    assert hq.flags[-1] == "upper_bound" and set(hq.flags[:-1]) == {"exact"}
    cd, _ = connes_quotient_complex(dual_numbers(), 5)
    hd = homology(cd)
    assert list(cd.dims)[:5] == CLAM_DIMS_DUAL
    assert list(hd.betti)[:5] == CLAM_BETTI_DUAL
    qxq = direct_sum(field_q(), field_q())
    assert connes_report(qxq, 4)["betti"][:4] == CLAM_BETTI_QXQ
    assert connes_report(left_unital_two_dim(), 4)["betti"][:4] == CLAM_BETTI_LEFT


def test_h_unitality_verdicts():
    assert h_unitality_report(field_q(), 4)["verdict"] == "pass"
    assert h_unitality_report(dual_numbers(), 4)["verdict"] == "pass"
    left = h_unitality_report(left_unital_two_dim(), 4)
    assert left["verdict"] == "pass" and left["betti"][:4] == [0, 0, 0, 0]
    zero = h_unitality_report(zero_multiplication(2), 3)
    assert zero["verdict"] == "fail"
    assert zero["first_failure"] == 1


def test_unital_bar_complex_is_acyclic_everywhere():
    h = homology(bar_complex(dual_numbers(), 4))
    assert list(h.betti[:4]) == [0, 0, 0, 0]


def test_cyclic_bicomplexes_are_valid():
    assert verify_double_complex(cyclic_bicomplex(dual_numbers(), 3))["ok"]
    assert verify_double_complex(bB_bicomplex(dual_numbers(), 3))["ok"]
    assert verify_double_complex(
        cyclic_bicomplex(left_unital_two_dim(), 3))["ok"]


def test_bB_requires_unit():
    with pytest.raises(MissingUnitError):
        bB_bicomplex(left_unital_two_dim(), 2)
    with pytest.raises(MissingUnitError):
        bB_bicomplex(zero_multiplication(2), 2)


def test_cyclic_comparison_field():
    rep = cyclic_comparison_report(field_q(), bound=4)
    assert rep["verdict"] == "pass"
    assert rep["quotient_betti"][:4] == CLAM_BETTI_Q[:4]
    assert rep["bB_betti"][:4] == CLAM_BETTI_Q[:4]
    assert all(rep["projection_quasi_iso"].values())


def test_cyclic_comparison_dual_and_left_unital():
    rep = cyclic_comparison_report(dual_numbers(), bound=3)
    assert rep["verdict"] == "pass"
    assert rep["quotient_betti"][:3] == CLAM_BETTI_DUAL[:3]
    left = cyclic_comparison_report(left_unital_two_dim(), bound=3)
    assert left["verdict"] == "pass"
    assert "bB_betti" not in left
    assert left["quotient_betti"][:3] == CLAM_BETTI_LEFT[:3]


@given(seeds)
@settings(max_examples=15, deadline=None)
def test_random_algebra_is_deterministic_and_valid(seed):
    a = random_algebra(seed)
    b = random_algebra(seed)
    assert json.dumps(algebra_to_json(a), sort_keys=True) == \
        json.dumps(algebra_to_json(b), sort_keys=True)
    assert 1 <= a.dim <= 3


def test_change_of_basis_preserves_homology():
    a = dual_numbers()
    g = SparseMatrix.from_dense([[1, 1], [0, 1]])
    b = change_of_basis(a, g)
    assert list(homology(hochschild_complex(b, 4)).betti)[:4] == HH_DUAL
