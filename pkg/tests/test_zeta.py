import io
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from diracxp import specfun, spectrum, zeta
from diracxp.errors import DomainError, NearZeroError, TableError

import oracles

GAMMA_1 = 14.134725141734694

# frozen from the independent high-precision oracle before the main build
ZETA_HALF = -1.4603545088095868
ZETA_HALF_9I = 1.4476424519337558 + 0.19180301276266541j
S_AT_20 = -0.3778003514
S_AT_30 = -0.5648774444
N_SMOOTH_AT_GAMMA_1 = 0.4497471705313089


class TestZetaCriticalLine:
    def test_value_at_origin(self):
        value = zeta.zeta_critical_line(0.0)
        assert value.imag == 0.0
        assert value.real == pytest.approx(ZETA_HALF, abs=1e-12)

    def test_frozen_point(self):
        assert zeta.zeta_critical_line(9.0) == pytest.approx(ZETA_HALF_9I, abs=1e-10)

    def test_conjugation_symmetry(self):
        for energy in (9.0, 33.3, 121.0):
            plus = zeta.zeta_critical_line(energy)
            minus = zeta.zeta_critical_line(-energy)
            assert abs(minus - plus.conjugate()) < 1e-12 * max(1.0, abs(plus))

    def test_accuracy_against_oracle(self):
        for energy in (5.0, 40.0, 111.0, 180.0):
            mine = zeta.zeta_critical_line(energy)
            reference = oracles.zeta_mp(energy)
            assert abs(mine - reference) / abs(reference) < 1e-8

    def test_vanishes_at_refined_ordinate(self):
        refined = oracles.refine_ordinate(
            specfun.riemann_siegel_theta,
            zeta.zeta_critical_line,
            GAMMA_1,
        )
        assert abs(zeta.zeta_critical_line(refined)) < 1e-6

    def test_window_enforced(self):
        with pytest.raises(DomainError, match="window"):
            zeta.zeta_critical_line(250.0)


class TestFluctuation:
    def test_matches_oracle(self):
        assert zeta.s_fluctuation(20.0) == pytest.approx(S_AT_20, abs=1e-9)
        assert zeta.s_fluctuation(30.0) == pytest.approx(S_AT_30, abs=1e-9)

    def test_small_energy_limit(self):
        # under the convention that closes the counting formula,
        # S(E) -> -1 as E -> 0+ (the smooth count starts at 1)
        assert zeta.s_fluctuation(0.05) == pytest.approx(-1.0, abs=0.05)
        assert zeta.s_fluctuation(0.05) == pytest.approx(
            oracles.s_fluctuation_mp(0.05), abs=1e-10
        )

    def test_jump_across_first_ordinate(self):
        below = zeta.s_fluctuation(GAMMA_1 - 0.01)
        above = zeta.s_fluctuation(GAMMA_1 + 0.01)
        assert above - below == pytest.approx(1.0, abs=0.01)

    def test_counting_formula_rounds(self, zero_table):
        for energy in (20.0, 30.0, 50.0):
            n = zeta.n_smooth(energy) + zeta.s_fluctuation(energy)
            assert round(n) == zeta.count_zeros(zero_table, energy)
            assert abs(n - round(n)) < 1e-6

    def test_bounded_at_desk_scale(self):
        values = [zeta.s_fluctuation(5.0 + 95.0 * i / 24 + 0.003) for i in range(25)]
        largest = max(abs(v) for v in values)
        print(f"max |S(E)| over sampled E <= 100: {largest!r}")
        assert largest < 1.0  # observed smallness, not a theorem

    def test_near_zero_rejected(self):
        with pytest.raises(NearZeroError):
            zeta.s_fluctuation(GAMMA_1)

    def test_domain(self):
        with pytest.raises(DomainError):
            zeta.s_fluctuation(0.0)


class TestSmoothCount:
    def test_value_at_zero(self):
        assert zeta.n_smooth(0.0) == 1.0

    def test_value_at_first_ordinate(self):
        # frozen oracle value; the smooth count at gamma_1 sits just under 1/2
        assert zeta.n_smooth(GAMMA_1) == pytest.approx(N_SMOOTH_AT_GAMMA_1, abs=1e-9)

    def test_odd_symmetry_restatement(self):
        for energy in (3.0, 17.0):
            lhs = zeta.n_smooth(energy) - zeta.n_smooth(-energy)
            rhs = 2.0 * specfun.riemann_siegel_theta(energy) / math.pi
            assert lhs == pytest.approx(rhs, abs=1e-12)


class TestZeroTable:
    def test_three_line_input(self):
        table = zeta.load_zero_table("14.134725\n21.022040\n25.010858\n")
        assert len(table) == 3

    def test_empty_input_is_valid(self):
        table = zeta.load_zero_table("")
        assert len(table) == 0

    def test_parse_error_cites_line(self):
        with pytest.raises(TableError, match="line 2") as info:
            zeta.load_zero_table("14.134725\nabc\n", sanity_check=False)
        assert info.value.line == 2

    def test_non_increasing_rejected(self):
        with pytest.raises(TableError, match="exceed"):
            zeta.load_zero_table("14.2\n14.1\n", sanity_check=False)

    def test_comments_and_crlf(self):
        table = zeta.load_zero_table("# header\r\n14.134725\r\n\r\n21.022040\r\n")
        assert len(table) == 2

    def test_sanity_gate(self):
        with pytest.raises(TableError, match="14, 15"):
            zeta.load_zero_table("0.25\n")
        table = zeta.load_zero_table("0.25\n", sanity_check=False)
        assert table.ordinates == (0.25,)

    def test_byte_stream_input(self):
        table = zeta.load_zero_table(io.BytesIO(b"14.134725\n21.022\n"))
        assert len(table) == 2

    def test_round_trip_full_precision(self):
        ordinates = (14.134725141734694, 21.022039638771555, 25.010857580145689)
        table = zeta.ZeroTable(ordinates, source="round trip")
        again = zeta.load_zero_table(zeta.format_zero_table(table), source="round trip")
        assert again.ordinates == ordinates

    @given(
        st.lists(
            st.floats(min_value=0.1, max_value=1e6),
            min_size=1,
            max_size=30,
            unique=True,
        )
    )
    def test_round_trip_property(self, values):
        ordinates = tuple(sorted(values))
        table = zeta.ZeroTable(ordinates)
        again = zeta.load_zero_table(zeta.format_zero_table(table), sanity_check=False)
        assert again.ordinates == ordinates

    def test_shipped_table(self, zero_table):
        assert len(zero_table) == 100
        assert 14.0 < zero_table.ordinates[0] < 15.0


class TestCountZeros:
    def test_below_first(self, zero_table):
        assert zeta.count_zeros(zero_table, 10.0) == 0

    def test_closed_upper_bound(self, zero_table):
        first = zero_table.ordinates[0]
        assert zeta.count_zeros(zero_table, first) == 1

    @given(
        a=st.floats(min_value=0.0, max_value=250.0),
        b=st.floats(min_value=0.0, max_value=250.0),
    )
    def test_monotone(self, zero_table, a, b):
        lo, hi = sorted((a, b))
        assert zeta.count_zeros(zero_table, lo) <= zeta.count_zeros(zero_table, hi)


class TestCompare:
    def test_synthetic_table_staircase_fixed_point(self):
        # calibrate count=1 against a synthetic in-range target; model and
        # table staircases then step together at the first ordinate
        target = spectrum.eigenvalue_at_index(1, 2e-4)
        table = zeta.ZeroTable((target,), source="synthetic")
        u0 = spectrum.calibrate_u0(table, 1)
        config = spectrum.SpectralConfig(u0=u0, e_max=target + 1.0)
        eps = 1e-6
        below = math.floor(spectrum.counting_model(target - eps, config))
        above = math.floor(spectrum.counting_model(target + eps, config))
        assert (below, above) == (0, 1)
        assert zeta.count_zeros(table, target - eps) == 0
        assert zeta.count_zeros(table, target + eps) == 1

    def test_grid_assembly(self, zero_table):
        config = spectrum.SpectralConfig(u0=1e-3, e_max=60.0)
        grid = [20.0, 30.0, 50.0]
        samples = zeta.compare_counting(config, zero_table, grid)
        assert [s.energy for s in samples] == grid
        rms = math.sqrt(
            sum((s.n_model - s.n_table) ** 2 for s in samples) / len(samples)
        )
        print(f"rms(n_model - n_table) on {grid}: {rms!r}")
        for sample in samples:
            assert sample.n_table == zeta.count_zeros(zero_table, sample.energy)
            assert round(sample.n_smooth + sample.s_fluct) == sample.n_table
