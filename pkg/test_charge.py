"""
Tests for stability data, central charges and phase comparison
"""
from fractions import Fraction

import pytest

from app.charge import (
    TSD,
    PhaseOrd,
    SplitCharge,
    central_charge,
    charge_at,
    cmp_phase,
    cmp_values,
    is_nondegenerate,
    last_negative_shifts,
    symbolic_charge_at,
    zero_charges,
)
from app.exceptions import DimensionMismatch, InvalidDatum, ZeroCharge
from app.forms import mu_variable
from app.quiver_core import KClass, coxeter_for, exceptional_simple_class, section_quiver, shipped_types


class TestDatum:
    def test_uniform(self, e6):
        tsd = TSD.uniform(e6)
        assert tsd.mu[0] == (Fraction(1, 2),) * 2
        assert tsd.mu_of(2, 4) == Fraction(1, 3)
        assert tsd.is_non_concentrated

    def test_rejects_bad_sum(self, d4):
        with pytest.raises(InvalidDatum, match="Branch 2 sums to 9/10"):
            TSD.create(d4, [["1/2", "1/2"], ["1/2", "2/5"], ["1/2", "1/2"]], 0, 1)

    def test_rejects_non_positive_part(self, d4):
        with pytest.raises(InvalidDatum, match="not positive"):
            TSD.create(d4, [[1, 0], ["1/2", "1/2"], ["1/2", "1/2"]], 0, 1)

    def test_rejects_wrong_branch_count(self, d4):
        with pytest.raises(InvalidDatum):
            TSD.create(d4, [["1/2", "1/2"]], 0, 1)

    @pytest.mark.parametrize("re, im", [(0, 0), (1, -1)])
    def test_rejects_z(self, d4, re, im):
        with pytest.raises(InvalidDatum):
            TSD.uniform(d4, z_re=re, z_im=im)

    def test_with_point_rebuilds_last_parts(self, e6):
        tsd = TSD.uniform(e6).with_point({
            (1, 1): Fraction(1, 4),
            (2, 1): Fraction(1, 2), (2, 2): Fraction(1, 4),
            (3, 1): Fraction(1, 3), (3, 2): Fraction(1, 3),
        })
        assert tsd.mu[0] == (Fraction(1, 4), Fraction(3, 4))
        assert tsd.mu[1][2] == Fraction(1, 4)


class TestCentralCharge:
    @pytest.mark.parametrize("w", shipped_types(), ids=lambda w: w.tag)
    def test_normalization(self, w):
        cox = coxeter_for(w)
        tsd = TSD.uniform(w, z_re=Fraction(1, 3), z_im=2)
        assert central_charge(tsd, cox.delta, cox) == SplitCharge(Fraction(0), Fraction(-1))
        for i, wi in enumerate(w.weights, start=1):
            total = SplitCharge(Fraction(0), Fraction(0))
            for j in range(1, wi + 1):
                z = central_charge(tsd, exceptional_simple_class(cox, i, j), cox)
                if wi > 1:
                    assert z == SplitCharge(Fraction(0), -tsd.mu_of(i, j))
                total = total + z
            if wi > 1:
                assert total == SplitCharge(Fraction(0), Fraction(-1))

    def test_reference_object(self, uniform_e6):
        cox = coxeter_for(uniform_e6.weights)
        z = central_charge(uniform_e6, cox.section_classes["X0"], cox)
        assert z.value(uniform_e6.z) == (0, 1)

    def test_dimension_mismatch(self, uniform_e6):
        with pytest.raises(DimensionMismatch):
            central_charge(uniform_e6, KClass.of([1, 0, 0]))

    def test_e6_x1(self, e6):
        cox = coxeter_for(e6)
        charge = symbolic_charge_at(cox, "X1", 0)
        a1, b1, b3 = mu_variable(e6, 1, 1), mu_variable(e6, 2, 1), mu_variable(e6, 2, 3)
        c1, c3 = mu_variable(e6, 3, 1), mu_variable(e6, 3, 3)
        assert charge.r == Fraction(2, 3)
        assert charge.s.scale(3) == -a1 - (b1 - b3) - (c1 - c3)
        assert charge.scaled_pretty(e6) == "3Z = 2z - a1 - 2*b1 - b2 - 2*c1 - c2 + 2"

    def test_period_shift_adds_kappa_rank(self, uniform_e6):
        cox = coxeter_for(uniform_e6.weights)
        for k in range(-3, 4):
            here = charge_at(uniform_e6, cox, "X1", k)
            later = charge_at(uniform_e6, cox, "X1", k + cox.period)
            assert later.r == here.r
            assert later.s - here.s == -cox.kappa * here.r


class TestPhase:
    @pytest.mark.parametrize(
        "x, y, expected",
        [
            ((1, 1), (0, 1), PhaseOrd.LT),
            ((0, 1), (1, 1), PhaseOrd.GT),
            ((2, 2), (1, 1), PhaseOrd.EQ),
            ((1, 0), (-1, 0), PhaseOrd.LT),
            ((-1, 0), (3, 0), PhaseOrd.GT),
            ((2, 0), (5, 0), PhaseOrd.EQ),
            ((-1, 0), (0, 1), PhaseOrd.GT),
        ],
    )
    def test_cmp_values(self, x, y, expected):
        assert cmp_values(tuple(map(Fraction, x)), tuple(map(Fraction, y))) is expected

    def test_zero_charge(self):
        with pytest.raises(ZeroCharge):
            cmp_values((Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)))

    def test_lower_half_plane(self):
        with pytest.raises(InvalidDatum):
            cmp_values((Fraction(1), Fraction(-1)), (Fraction(1), Fraction(0)))

    def test_cmp_phase(self):
        x = SplitCharge(Fraction(1), Fraction(0))
        y = SplitCharge(Fraction(1), Fraction(-1))
        assert cmp_phase(x, y, (Fraction(0), Fraction(1))) is PhaseOrd.LT
        assert PhaseOrd.LT.value == "Lt"


class TestNondegeneracy:
    def test_upper_half_plane(self, uniform_e6):
        assert is_nondegenerate(uniform_e6)

    def test_integer_point_on_progression(self, d4):
        tsd = TSD.uniform(d4, z_re=-5, z_im=0)
        cox, section = coxeter_for(d4), section_quiver(d4)
        assert not is_nondegenerate(tsd, cox, section)
        zeros = zero_charges(tsd, cox, section)
        assert (10, "P0") in zeros
        for k, label in zeros:
            assert charge_at(tsd, cox, label, k).value(tsd.z) == (0, 0)

    def test_no_zero_charges_off_the_real_line(self, uniform_e6):
        assert zero_charges(uniform_e6) == []

    def test_generic_real_z(self, real_d4):
        cox, section = coxeter_for(real_d4.weights), section_quiver(real_d4.weights)
        assert is_nondegenerate(real_d4, cox, section)
        assert zero_charges(real_d4, cox, section) == []
        for k in range(-30, 31):
            for label in section.vertices:
                assert charge_at(real_d4, cox, label, k).value(real_d4.z) != (0, 0)

    def test_last_negative_shifts(self, real_d4):
        cox, section = coxeter_for(real_d4.weights), section_quiver(real_d4.weights)
        for label in section.vertices:
            for k in last_negative_shifts(real_d4, cox, label):
                assert charge_at(real_d4, cox, label, k).value(real_d4.z)[0] < 0
                assert charge_at(real_d4, cox, label, k + cox.period).value(real_d4.z)[0] > 0
