"""Tests for the time kernel solver and its tables."""

from fractions import Fraction

import pytest

from toa_correspondence.algebra import Monomial, Series, Space
from toa_correspondence.errors import InvalidOrderError, UnknownSystemError
from toa_correspondence.physics.kernel import (
    QQTerm,
    TimeKernel,
    boundary_conditions,
    delta_table,
    kernel_from_qq,
    kernel_to_qq,
    pde_residual,
    printed_delta_zero,
    solve_time_kernel,
    table_two_coefficient,
)
from toa_correspondence.physics.potential import parse_potential

LAMBDA = {"lambda": 1}


class TestSolveTimeKernel:
    """Tests for the kernel coefficients."""

    def test_free_particle(self, free):
        """V = 0 leaves T = u/4."""
        kernel = solve_time_kernel(free, 12)
        assert kernel.series == Series.term(Fraction(1, 4), Monomial.kernel(u=1))

    def test_seed(self, quartic):
        assert solve_time_kernel(quartic, 0).series == Series.term(
            Fraction(1, 4), Monomial.kernel(u=1)
        )

    def test_linear_first_correction(self, linear):
        """α_{2,2} = μλ/(32ħ²)."""
        kernel = solve_time_kernel(linear, 2)
        alpha = kernel.alpha(2, 2)
        assert alpha == Series.term(
            Fraction(1, 32), Monomial.kernel(u=2, v=2, mu=1, hbar=-2, sym=LAMBDA)
        )

    def test_harmonic_first_correction(self, harmonic):
        """α_{3,2} = μ²ω²/(96ħ²)."""
        kernel = solve_time_kernel(harmonic, 2)
        assert kernel.alpha(3, 2) == Series.term(
            Fraction(1, 96), Monomial.kernel(u=3, v=2, mu=2, hbar=-2, sym={"omega": 2})
        )

    def test_quartic_coefficients(self, quartic):
        """α_{5,2} = μλ/(160ħ²), α_{3,4} = μλ/(192ħ²), α_{9,4} = μ²λ²/(23040ħ⁴)."""
        series = solve_time_kernel(quartic, 4).series
        assert series.coefficient(
            Monomial.kernel(u=5, v=2, mu=1, hbar=-2, sym=LAMBDA)
        ) == Fraction(1, 160)
        assert series.coefficient(
            Monomial.kernel(u=3, v=4, mu=1, hbar=-2, sym=LAMBDA)
        ) == Fraction(1, 192)
        assert series.coefficient(
            Monomial.kernel(u=9, v=4, mu=2, hbar=-4, sym={"lambda": 2})
        ) == Fraction(1, 23040)

    def test_quartic_v_four_column(self, quartic):
        """Only α_{9,4} carries ħ⁻⁴ at v⁴."""
        column = solve_time_kernel(quartic, 4).series.select(lambda m: m.v == 4)
        assert {(m.u, m.hbar) for m, _ in column.items()} == {(3, -2), (9, -4)}

    def test_truncation(self, quartic):
        """No term exceeds the requested v-order."""
        kernel = solve_time_kernel(quartic, 6)
        assert max(m.v for m, _ in kernel.series.items()) == 6

    @pytest.mark.parametrize("order", [-2, 3])
    def test_invalid_order(self, linear, order):
        with pytest.raises(InvalidOrderError):
            solve_time_kernel(linear, order)

    def test_leading_family(self, quartic):
        """Terms with ħ exponent equal to −v are the leading family."""
        kernel = solve_time_kernel(quartic, 4)
        leading = kernel.leading_family()
        assert all(m.hbar + m.v == 0 for m, _ in leading.items())
        assert leading + kernel.corrections() == kernel.series

    @pytest.mark.parametrize("seed", range(8))
    def test_parity_and_hbar_grading(self, random_potential, seed):
        """Every term has an even v power and an even, non-negative ħ + v."""
        kernel = solve_time_kernel(random_potential(seed), 12)
        for monomial, _ in kernel.series.items():
            assert monomial.v % 2 == 0
            assert monomial.hbar + monomial.v >= 0
            assert (monomial.hbar + monomial.v) % 2 == 0


class TestResidual:
    """Tests for the kernel equation residual."""

    @pytest.mark.parametrize("system", ["free", "linear", "harmonic", "quartic"])
    def test_empty_for_benchmarks(self, request, system):
        kernel = solve_time_kernel(request.getfixturevalue(system), 12)
        assert not pde_residual(kernel)

    def test_general_potential(self):
        """A mixed odd and even potential also solves exactly."""
        kernel = solve_time_kernel(parse_potential("a*q + b*q^3 - 1/7*q^6"), 8)
        assert not pde_residual(kernel)

    @pytest.mark.parametrize("seed", range(8))
    def test_random_potentials(self, random_potential, seed):
        """Seeded potentials of degree five or less solve exactly to v¹²."""
        kernel = solve_time_kernel(random_potential(seed), 12)
        assert not pde_residual(kernel)
        assert boundary_conditions(kernel).ok

    def test_corrupted_coefficient_detected(self, linear):
        """Changing α_{2,2} breaks the equation."""
        kernel = solve_time_kernel(linear, 4)
        alpha = Monomial.kernel(u=2, v=2, mu=1, hbar=-2, sym=LAMBDA)
        corrupted = TimeKernel(
            kernel.series + Series.term(Fraction(1, 32), alpha), kernel.order, linear
        )
        assert pde_residual(corrupted)


class TestBoundaryConditions:
    """Tests for T(u, 0) = u/4, T(0, v) = 0 and the diagonal condition."""

    def test_solved_kernel_satisfies_all(self, quartic):
        check = boundary_conditions(solve_time_kernel(quartic, 8))
        assert check.row and check.column and check.composite
        assert check.ok

    def test_wrong_seed_fails(self, free):
        """u/2 violates the row and the diagonal condition."""
        wrong = TimeKernel(Series.term(Fraction(1, 2), Monomial.kernel(u=1)), 0, free)
        check = boundary_conditions(wrong)
        assert not check.row
        assert not check.composite
        assert check.column
        assert not check.ok

    def test_pure_v_term_fails_column(self, free):
        series = Series.term(Fraction(1, 4), Monomial.kernel(u=1)) + Series.term(
            1, Monomial.kernel(v=2)
        )
        assert not boundary_conditions(TimeKernel(series, 2, free)).column


class TestDeltaTable:
    """Tests for the Δ_{m,n} recurrence."""

    def test_first_values(self):
        deltas = delta_table(2)
        assert deltas[(0, 0)] == 1
        assert deltas[(0, 1)] == Fraction(1, 5)
        assert deltas[(1, 2)] == Fraction(1, 6)
        assert deltas[(0, 2)] == Fraction(1, 90)

    def test_outside_domain_is_zero(self):
        deltas = delta_table(3)
        assert deltas[(2, 3)] == 0
        assert deltas[(1, 1)] == 0

    def test_printed_form_is_minus_quarter(self):
        """The printed Γ expression equals −1/4 of the recurrence value."""
        deltas = delta_table(8)
        for n in range(9):
            assert printed_delta_zero(n) == Fraction(-1, 4) * deltas[(0, n)]

    def test_negative_order(self):
        with pytest.raises(InvalidOrderError):
            delta_table(-1)


class TestTableTwo:
    """Tests for the kernel table closed forms against the solver."""

    @pytest.mark.parametrize("system", ["linear", "harmonic"])
    def test_linear_systems(self, request, system):
        """Closed forms hold for k ≤ 10."""
        kernel = solve_time_kernel(request.getfixturevalue(system), 20)
        for k in range(11):
            entry = table_two_coefficient(system, k)
            assert kernel.series.coefficient(entry.monomial) == entry.coefficient

    def test_linear_systems_have_no_other_terms(self, linear, harmonic):
        """Each v-column of a linear system holds a single term."""
        for potential in (linear, harmonic):
            series = solve_time_kernel(potential, 10).series
            columns = [m.v for m, _ in series.items()]
            assert len(columns) == len(set(columns))

    def test_quartic(self, quartic):
        """Δ_{m,n}/(4·8^(n−m)) for n ≤ 6."""
        kernel = solve_time_kernel(quartic, 12)
        for n in range(7):
            for m in range(n // 2 + 1):
                entry = table_two_coefficient("quartic", m, n)
                assert kernel.series.coefficient(entry.monomial) == entry.coefficient

    def test_quartic_needs_valid_index(self):
        with pytest.raises(InvalidOrderError):
            table_two_coefficient("quartic", 2, 3)
        with pytest.raises(InvalidOrderError):
            table_two_coefficient("quartic", 0)

    def test_unknown_system(self):
        with pytest.raises(UnknownSystemError):
            table_two_coefficient("free", 1)
        with pytest.raises(UnknownSystemError):
            table_two_coefficient("sextic", 1)


class TestQQForm:
    """Tests for the (q, q′) rewriting."""

    def test_free_kernel(self, free):
        """u/4 = q/4 + q′/4."""
        terms = kernel_to_qq(solve_time_kernel(free, 0))
        assert terms == [
            QQTerm(1, 0, Fraction(1, 4), Monomial.scalar()),
            QQTerm(0, 1, Fraction(1, 4), Monomial.scalar()),
        ]

    def test_u_squared_v_squared(self):
        """u²v² = (q² − q′²)² has three terms."""
        series = Series.term(1, Monomial.kernel(u=2, v=2))
        terms = {(t.q_exp, t.qp_exp): t.coefficient for t in kernel_to_qq(series)}
        assert terms == {(4, 0): 1, (2, 2): -2, (0, 4): 1}

    def test_inverse(self, quartic):
        """kernel_from_qq undoes kernel_to_qq."""
        kernel = solve_time_kernel(quartic, 6)
        assert kernel_from_qq(kernel_to_qq(kernel)) == kernel.series

    def test_symmetry(self, harmonic):
        """T(q, q′) = T(q′, q) because only even powers of v appear."""
        terms = kernel_to_qq(solve_time_kernel(harmonic, 6))
        table = {(t.q_exp, t.qp_exp, t.monomial): t.coefficient for t in terms}
        for (a, b, monomial), coefficient in table.items():
            assert table[(b, a, monomial)] == coefficient

    def test_result_space(self, linear):
        assert kernel_from_qq(kernel_to_qq(solve_time_kernel(linear, 2))).space is Space.KERNEL
