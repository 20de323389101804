import math

import numpy as np
import pytest
from hypothesis import given
import hypothesis.strategies as st

from models.cases import (ConstantField, Eckart, GeneralizedPT, PoschlTeller, Tabulated, get_case,
                          truncated_landau)
from models.domain import AngularMomentum, RadialGrid, SpectrumEntry, UnitSystem
from models.errors import HyperlandauError, InvalidParameter
from models.gauges import get_gauge


class TestAngularMomentum:

    @pytest.mark.parametrize("text, two_lambda", [("7/2", 7), ("3.5", 7), ("1/2", 1), ("-3/2", -3)])
    def test_parse_half_odd(self, text, two_lambda):
        lam = AngularMomentum.parse(text)
        assert lam.two_lambda == two_lambda
        assert lam.is_physical
        assert lam.value == two_lambda / 2

    @pytest.mark.parametrize("text", ["7", "1/3", "abc", "0"])
    def test_strict_rejects(self, text):
        with pytest.raises(InvalidParameter):
            AngularMomentum.parse(text)

    def test_relaxed_integer(self):
        lam = AngularMomentum.parse("7", relaxed=True)
        assert lam.value == 7
        assert not lam.is_physical
        assert "relaxed" in str(lam)

    def test_relaxed_keeps_half_odd_physical(self):
        assert AngularMomentum.parse("7/2", relaxed=True).is_physical

    def test_even_two_lambda_rejected(self):
        with pytest.raises(InvalidParameter):
            AngularMomentum(4)

    def test_str(self):
        assert str(AngularMomentum(7)) == "7/2"


class TestUnitSystem:

    @pytest.mark.parametrize("R", [0.0, -1.0, float("nan"), float("inf")])
    def test_bad_radius(self, R):
        with pytest.raises(InvalidParameter):
            UnitSystem(R)

    def test_dirac_energy(self):
        assert UnitSystem(2.0).dirac_energy(16.0) == pytest.approx(2.0)

    def test_physical_energy(self):
        # hbar c/300 at one inverse nanometre
        assert UnitSystem(1.0).physical_energy_ev(1.0) == pytest.approx(0.658, rel=1e-3)


class TestRadialGrid:

    @pytest.mark.parametrize("u_min, u_max, n_points", [(0.0, 1.0, 100), (-1.0, 1.0, 100),
                                                        (1.0, 0.5, 100), (1e-3, 1.0, 3),
                                                        (1e-3, float("inf"), 100)])
    def test_invalid(self, u_min, u_max, n_points):
        with pytest.raises(InvalidParameter):
            RadialGrid(u_min, u_max, n_points)

    def test_points(self):
        grid = RadialGrid(1.0, 2.0, 101)
        assert grid.h == pytest.approx(0.01)
        assert grid.points[0] == 1.0
        assert grid.points[-1] == 2.0

    def test_refined_halves_step(self):
        grid = RadialGrid(1e-3, 30.0, 8000)
        assert grid.refined().h == pytest.approx(grid.h / 2)

    def test_half_shifted_reflects_uniformly(self):
        grid = RadialGrid(1e-3, 10.0, 100).half_shifted()
        full = np.concatenate([-grid.points[::-1], grid.points])
        np.testing.assert_allclose(np.diff(full), grid.h)
        assert grid.u_max == 10.0


class TestSpectrumEntry:

    @given(n=st.integers(0, 50), epsilon=st.floats(0, 1e6), R=st.floats(1e-2, 1e2))
    def test_epsilon_round_trip(self, n, epsilon, R):
        entry = SpectrumEntry.from_epsilon(n, epsilon, R)
        assert entry.dirac_energy_plus == -entry.dirac_energy_minus
        assert entry.epsilon_from_energy(R) == pytest.approx(epsilon, rel=1e-9, abs=1e-12)

    def test_negative_epsilon(self):
        with pytest.raises(InvalidParameter):
            SpectrumEntry.from_epsilon(0, -1.0)

    @pytest.mark.parametrize("R", [0.0, -2.0, float("inf")])
    def test_bad_radius(self, R):
        with pytest.raises(InvalidParameter):
            SpectrumEntry.from_epsilon(1, 9.0, R)

    def test_unpaired_energies(self):
        with pytest.raises(InvalidParameter):
            SpectrumEntry(0, 1.0, 1.0, -0.5)


class TestCases:

    def test_get_case(self):
        assert get_case("i", A0=5) == ConstantField(5)
        assert get_case("iv", lambda_prime=0.5, C3=2.0) == GeneralizedPT(0.5, 2.0, 0.0)

    def test_unknown_tag(self):
        with pytest.raises(InvalidParameter, match="Unknown case"):
            get_case("v")

    def test_bad_parameters(self):
        with pytest.raises(InvalidParameter):
            get_case("ii", C1=3)

    def test_eckart_zero_c1(self):
        with pytest.raises(InvalidParameter):
            Eckart(0.5, 0.0, 54.0)

    def test_poschl_teller_zero_c2(self):
        with pytest.raises(InvalidParameter):
            PoschlTeller(0.5, 0.0, 1.0)
        PoschlTeller(0.5, 0.0, 0.0)

    def test_non_finite(self):
        with pytest.raises(InvalidParameter):
            ConstantField(float("nan"))

    def test_errors_are_library_errors(self):
        assert issubclass(InvalidParameter, HyperlandauError)
        assert issubclass(InvalidParameter, ValueError)


class TestTabulated:

    @pytest.mark.parametrize("u, alpha", [((1.0,), (0.0,)),
                                          ((0.0, 1.0), (0.0, 0.0)),
                                          ((1.0, 0.5), (0.0, 0.0)),
                                          ((0.5, 1.0), (0.0, float("nan"))),
                                          ((0.5, 1.0), (0.0,))])
    def test_invalid(self, u, alpha):
        with pytest.raises(InvalidParameter):
            Tabulated(u, alpha)

    def test_from_csv(self, tmp_path):
        path = tmp_path / "gauge.csv"
        path.write_text("u,alpha\n0.5,1.0\n1.0,2.0\n2.0,3.0\n")
        case = Tabulated.from_csv(path)
        assert case.u == (0.5, 1.0, 2.0)
        assert case.alpha == (1.0, 2.0, 3.0)

    def test_from_csv_bad_header(self, tmp_path):
        path = tmp_path / "gauge.csv"
        path.write_text("x,y\n0.5,1.0\n1.0,2.0\n")
        with pytest.raises(InvalidParameter, match="header"):
            Tabulated.from_csv(path)

    def test_from_csv_missing(self, tmp_path):
        with pytest.raises(InvalidParameter):
            Tabulated.from_csv(tmp_path / "missing.csv")

    def test_truncated_landau(self):
        case = truncated_landau(3.0, u0=2.0)
        gauge = get_gauge(case)
        assert gauge.total_flux() == pytest.approx(3.0)
        assert gauge.pole_flux() == pytest.approx(0.0, abs=1e-3)
        # constant field inside, no field outside
        assert gauge.flux(np.array([5.0, 50.0])) == pytest.approx([3.0, 3.0])
        strength = 3.0 / (math.cosh(2.0) - 1)
        assert gauge.flux(1.0) == pytest.approx(strength * (math.cosh(1.0) - 1), rel=1e-4)

    def test_truncated_landau_bad_u0(self):
        with pytest.raises(InvalidParameter):
            truncated_landau(3.0, u0=0.0)
