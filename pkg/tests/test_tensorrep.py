import pytest
from hypothesis import given, settings, strategies as st

from triplecong.errors import BudgetExceeded
from triplecong.gfp import jordan_type
from triplecong.tensorrep import (
    DecompositionSpec,
    TensorVector,
    alt_vector,
    basis_vector,
    build_generator,
    check_generator,
    decompose_closed,
    decompose_rank,
    delta_apply,
    delta_power,
    generator_terms,
    nice_delta_matrix,
    norman_entry,
    norman_matrix,
    tensor_jordan_type,
)
from triplecong.triplesums import Params, enumerate_params

import oracle


def small_params():
    return [t for t in enumerate_params(13) if t.p >= 5]


class TestTensorVector:
    def test_zero_coefficients_dropped(self):
        v = TensorVector(5, 3, 3, {(1, 1): 5, (2, 2): 7})
        assert dict(v.coeffs) == {(2, 2): 2}

    def test_out_of_grid(self):
        with pytest.raises(ValueError):
            TensorVector(5, 3, 3, {(4, 1): 1})

    def test_linear_ops(self):
        a = basis_vector(5, 3, 3, 1, 2)
        b = basis_vector(5, 3, 3, 2, 1)
        s = a + 4 * b
        assert s[(1, 2)] == 1 and s[(2, 1)] == 4
        assert not (s - s)
        assert -a == 4 * a


class TestDelta:
    def test_corner(self):
        assert not delta_apply(basis_vector(5, 4, 4, 1, 1))

    def test_basis_rule(self):
        got = delta_apply(basis_vector(5, 4, 4, 2, 2))
        assert got == basis_vector(5, 4, 4, 1, 2) + basis_vector(5, 4, 4, 2, 1)

    def test_power_zero_and_one(self):
        v = basis_vector(7, 5, 5, 3, 4)
        assert delta_power(v, 0) == v
        assert delta_power(v, 1) == delta_apply(v)
        with pytest.raises(ValueError):
            delta_power(v, -1)

    @settings(max_examples=50, deadline=None)
    @given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 9), st.integers(1, 9), st.data())
    def test_power_matches_path_count(self, p, m, n, data):
        i = data.draw(st.integers(1, m))
        j = data.draw(st.integers(1, n))
        t = data.draw(st.integers(0, m + n))
        got = delta_power(basis_vector(p, m, n, i, j), t)
        assert dict(got.coeffs) == oracle.delta_power_paths({(i, j): 1}, t, p)

    @settings(max_examples=50, deadline=None)
    @given(st.sampled_from(small_params()), st.integers(0, 12))
    def test_bidegree_conservation(self, prm, t):
        y = build_generator(prm)
        image = delta_power(y, t)
        assert image.antidiagonals() <= {2 * prm.p + prm.k - t}


class TestNorman:
    def test_entries(self):
        # C(1, 0) C(3, 0) and C(1, 2) C(1, 0)
        assert norman_entry(2, 2, 5, 1, 4).value == 1
        assert norman_entry(2, 2, 5, 1, 2).value == 0
        assert norman_entry(2, 2, 5, 1, 5).value == 0  # lower index -1
        with pytest.raises(ValueError):
            norman_entry(2, 2, 5, 0, 1)

    def test_negative_upper_index(self):
        # i = 3 > c = 2: C(-1, 1) C(2, 2) = -1
        assert norman_entry(2, 2, 5, 3, 1).value == (oracle.binom(-1, 1) * oracle.binom(2, 2)) % 5 == 4

    @pytest.mark.parametrize("prm", small_params()[:60])
    def test_antidiagonal_gives_generator_coefficients(self, prm):
        p, c, d, k = prm.p, prm.c, prm.d, prm.k
        terms = generator_terms(prm)
        first, second = terms[: c + 1 - k], terms[c + 1 - k :]
        for j, (_, coeff) in enumerate(first, start=1):
            assert norman_entry(c, d, p, c + 2 - k - j, d + j).value == coeff % p
        for j, (_, coeff) in enumerate(second, start=1):
            # opposite sign on the second block
            assert norman_entry(c, d, p, c + d + 2 - k - j, j).value == (-coeff) % p
        rows = {c + 2 - k - j + d + j for j in range(1, c + 2 - k)}
        assert rows == {c + d + 2 - k}

    def test_matrix_shape(self):
        assert norman_matrix(2, 3, 7).shape == (7, 7)


class TestGenerator:
    def test_5221(self):
        y = build_generator(Params(5, 2, 2, 1))
        assert dict(y.coeffs) == {(6, 5): 3, (7, 4): 1, (4, 7): 4, (5, 6): 2}
        assert dict(y.coeffs) == oracle.generator_dict(5, 2, 2, 1)

    @pytest.mark.parametrize("prm", small_params())
    def test_matches_oracle_and_support(self, prm):
        y = build_generator(prm)
        assert dict(y.coeffs) == oracle.generator_dict(prm.p, prm.c, prm.d, prm.k)
        assert y.antidiagonals() <= {2 * prm.p + prm.k}
        vanished = [pos for pos, v in generator_terms(prm) if v % prm.p == 0]
        if not vanished:
            assert len(y.support) == (prm.c + 1 - prm.k) + (prm.d + 1 - prm.k)

    def test_alt_vector(self):
        alt = alt_vector(Params(5, 2, 2, 1))
        assert dict(alt.coeffs) == {(1, 4): 1, (2, 3): 4, (3, 2): 1, (4, 1): 4}
        assert not delta_apply(alt)

    @pytest.mark.parametrize("prm", small_params())
    def test_alt_vector_annihilated(self, prm):
        alt = alt_vector(prm)
        assert len(alt.support) == prm.ell_max
        assert not delta_apply(alt)

    def test_5221_top_image(self):
        prm = Params(5, 2, 2, 1)
        y = oracle.generator_dict(5, 2, 2, 1)
        top = oracle.delta_power_paths(y, 6, 5)
        assert top == {(1, 4): 4, (2, 3): 1, (3, 2): 4, (4, 1): 1}
        assert oracle.delta_power_paths(y, 7, 5) == {}
        assert dict(delta_power(build_generator(prm), 6).coeffs) == top
        assert not delta_power(build_generator(prm), 7)

    @pytest.mark.parametrize("prm", [(5, 2, 2, 1), (5, 2, 3, 1), (7, 3, 3, 2)])
    def test_check_generator_examples(self, prm):
        rep = check_generator(Params(*prm))
        assert rep.passed, rep
        assert rep.span_dim == 2 * prm[0] - (prm[1] + prm[2] - 2 * prm[3] + 1)

    def test_top_coefficients_are_alternating_f1(self):
        for prm in small_params()[:80]:
            t = 2 * prm.p - (prm.c + prm.d - 2 * prm.k + 1) - 1
            top = oracle.delta_power_paths(oracle.generator_dict(prm.p, prm.c, prm.d, prm.k), t, prm.p)
            f1 = oracle.f_sum(prm.p, prm.c, prm.d, prm.k, 1)
            for ell in prm.ells:
                pos = (ell, prm.c + prm.d + 2 - prm.k - ell)
                assert top.get(pos, 0) == ((-1) ** (ell - 1) * f1) % prm.p

    def test_wrong_f1_detected(self):
        prm = Params(5, 2, 2, 1)
        rep = check_generator(prm, f1=1)
        assert not rep.image_matches and not rep.passed

    def test_report_dict(self):
        d = check_generator(Params(5, 2, 2, 1)).to_dict()
        assert d["passed"] and d["span_dim"] == 7 and "c+d+2-k" in d["note"]


class TestDecomposition:
    def test_closed_examples(self):
        assert decompose_closed(5, 2, 2).blocks == (13, 11, 9, 7, 5, 3, 1)
        assert decompose_closed(5, 2, 2).total_dim == 49
        assert decompose_closed(5, 1, 1).blocks == (11, 9, 5, 5, 5, 1)
        assert decompose_closed(5, 1, 1).total_dim == 36

    def test_multiplicity_of_2p(self):
        assert decompose_closed(7, 2, 2).multiplicity(14) == 0
        assert decompose_closed(7, 2, 4).multiplicity(14) == 2

    def test_closed_rejects(self):
        with pytest.raises(ValueError):
            decompose_closed(5, 3, 3)

    def test_rank_examples(self):
        assert decompose_rank(5, 2, 2).blocks == (13, 11, 9, 7, 5, 3, 1)
        assert decompose_rank(5, 1, 1) == decompose_closed(5, 1, 1)

    def test_small_variant(self):
        assert tensor_jordan_type(2, 2, 5).blocks == (3, 1)
        for c in range(1, 4):
            for d in range(c, 6 - c):
                lams = tuple(c + d - 2 * k + 1 for k in range(1, c + 1))
                assert tensor_jordan_type(c, d, 5).blocks == lams

    @pytest.mark.parametrize("p, m, n", [(5, 2, 2), (5, 6, 7), (3, 4, 5), (7, 8, 9)])
    def test_grid_basis_operator_has_same_type(self, p, m, n):
        assert jordan_type(nice_delta_matrix(p, m, n), m * n) == tensor_jordan_type(m, n, p)

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            decompose_rank(13, 6, 7, budget=100)

    def test_spec_from_blocks(self):
        spec = DecompositionSpec.from_blocks([5, 3, 5, 1])
        assert spec.summands == ((5, 2), (3, 1), (1, 1))
        assert spec.to_dict()["total_dim"] == 14
