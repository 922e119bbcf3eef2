from fractions import Fraction as F

import pytest

from qcasim.upower import (
    FamilyError,
    family_bounds,
    family_iter,
    family_poly,
    family_polypower,
    family_powerbase,
    family_upower,
    is_member,
    member_witness,
    parse_family,
)


class TestMembership:
    def test_upower_members(self):
        fam = family_upower()
        assert is_member("a" * 8, fam)
        assert [m for m in range(1, 70) if is_member(m, fam)] == [1, 2, 4, 8, 16, 32, 64]

    def test_upower_min_exponent_one(self):
        fam = family_upower(min_n=1)
        assert not is_member(1, fam)
        assert is_member(2, fam)

    def test_poly_square(self):
        fam = family_poly([0, 0, 1])  # p(n) = n^2
        assert [m for m in range(1, 30) if is_member(m, fam)] == [1, 4, 9, 16, 25]

    def test_poly_with_dip(self):
        # p(n) = n^2 - 4n + 5 dips to 1 at n = 2; the scan must still find
        # small values reached by large-looking polynomials.
        fam = family_poly([5, -4, 1])
        assert is_member(1, fam)  # n = 2
        assert is_member(2, fam)  # n = 1 or 3
        assert member_witness(10, fam) == 5

    def test_poly_constant(self):
        fam = family_poly([7])
        assert is_member(7, fam)
        assert not is_member(8, fam)

    def test_powerbase(self):
        fam = family_powerbase(3)
        assert [m for m in range(1, 100) if is_member(m, fam)] == [3, 9, 27, 81]

    def test_polypower(self):
        fam = family_polypower([0, 1], 3)  # p(n) = n, so values n * 3^n
        assert [m for m in range(1, 100) if is_member(m, fam)] == [3, 18, 81]
        assert not is_member(12, fam)

    def test_iter_upower(self):
        fam = family_iter(2, family_upower(min_n=1))  # values 2^(2^n), n >= 1
        assert is_member(16, fam)
        assert [m for m in range(1, 300) if is_member(m, fam)] == [4, 16, 256]

    def test_non_unary_rejected(self):
        with pytest.raises(FamilyError):
            is_member("ab", family_upower())


class TestValidation:
    def test_nonpositive_polynomial_detected(self):
        fam = family_poly([-3, 1])  # p(1) = -2
        with pytest.raises(FamilyError):
            is_member(5, fam)

    def test_polypower_needs_base_above_two(self):
        with pytest.raises(FamilyError):
            family_polypower([0, 1], 2)

    def test_powerbase_needs_base_two(self):
        with pytest.raises(FamilyError):
            family_powerbase(1)

    def test_iter_does_not_nest(self):
        with pytest.raises(FamilyError):
            family_iter(2, family_iter(2, family_upower()))


class TestParse:
    def test_upower(self):
        assert parse_family("upower").tag == "upower"

    def test_poly(self):
        fam = parse_family("poly:1,0,2")
        assert fam.coeffs == (1, 0, 2)

    def test_polypower(self):
        fam = parse_family("polypower:0,1:3")
        assert fam.coeffs == (0, 1) and fam.base == 3

    def test_iter(self):
        fam = parse_family("iter:2:upower")
        assert fam.base == 2 and fam.inner.tag == "upower"

    @pytest.mark.parametrize("text", ["", "poly", "poly:1,x", "powerbase:one", "mystery:3"])
    def test_malformed(self, text):
        with pytest.raises(FamilyError):
            parse_family(text)


class TestBounds:
    def test_upower_report(self):
        report = family_bounds(family_upower(), k=1, w="a" * 8)
        assert report.marking.startswith("linear")
        assert report.space_bound == "log2(|w|)"
        assert report.error_bound == F(2, 3)
        assert report.member_space == 3

    def test_error_bound_scales_with_k(self):
        assert family_bounds(family_upower(), k=2).error_bound == F(8, 9)

    def test_iter_report_is_geometric(self):
        fam = family_iter(2, family_upower(min_n=1))
        report = family_bounds(fam, k=1, w=16)
        assert report.marking.startswith("geometric")
        assert report.member_space == 4  # final mark value 2^2

    def test_poly_space_bound_mentions_degree(self):
        report = family_bounds(family_poly([0, 0, 1]), k=1)
        assert "1/2" in report.space_bound

    def test_non_member_has_no_member_space(self):
        report = family_bounds(family_upower(), k=1, w="a" * 6)
        assert report.member_space is None
