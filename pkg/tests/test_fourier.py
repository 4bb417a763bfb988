import random
from fractions import Fraction

import numpy as np
import pytest

from statcover import (
    CharSet,
    GroupSet,
    GroupSpec,
    annihilator,
    convolve,
    dft,
    indicator,
    spectrum,
    subgroup_closure,
)
from statcover.fourier import DENSE_TRANSFORM_LIMIT
from statcover.functions import RationalFunc

from oracles import all_coords, char_eval_oracle, dft_oracle

from test_functions import rand_func, as_dict


class TestTransform:
    def test_full_group_indicator(self):
        spec = GroupSpec((2,))
        out = dft(indicator(GroupSet.full(spec))).values
        assert abs(out[0] - 2) < 1e-12 and abs(out[1]) < 1e-12

    def test_point_masses(self):
        spec = GroupSpec((2,))
        at0 = dft(indicator(GroupSet.from_elements(spec, [(0,)]))).values
        at1 = dft(indicator(GroupSet.from_elements(spec, [(1,)]))).values
        assert np.allclose(at0, [1, 1]) and np.allclose(at1, [1, -1])

    def test_trivial_character_value_is_mass(self):
        spec = GroupSpec((3, 4))
        rng = random.Random(2)
        for _ in range(5):
            f = rand_func(spec, rng)
            assert abs(dft(f).values[0] - float(f.mass())) <= 1e-9 * max(
                1.0, float(f.l1_norm())
            )

    @pytest.mark.parametrize("mods", [(2, 3), (4,), (2, 2, 2), (6,), (3, 4)])
    def test_matches_definition_oracle(self, mods):
        spec = GroupSpec(mods)
        rng = random.Random(4)
        for _ in range(4):
            f = rand_func(spec, rng)
            got = dft(f).values
            oracle = dft_oracle(spec.moduli, as_dict(f))
            assert np.allclose(got, oracle, atol=1e-10)

    def test_dense_and_factorized_paths_agree(self):
        # order above the dense limit exercises the per-axis factorization
        spec = GroupSpec((3, 3, 3, 3, 3, 2, 3))
        assert spec.order > DENSE_TRANSFORM_LIMIT
        rng = random.Random(5)
        f = rand_func(spec, rng, max_support=40)
        fast = dft(f).values
        dense = dft(f, force_dense=True).values
        scale = max(1.0, float(np.abs(dense).max()))
        assert float(np.abs(fast - dense).max()) / scale <= 1e-9


class TestParsevalAndConvolution:
    @pytest.mark.parametrize("mods", [(2, 8), (3, 3, 3), (4, 4)])
    def test_parseval(self, mods):
        spec = GroupSpec(mods)
        rng = random.Random(6)
        for _ in range(10):
            f = rand_func(spec, rng, max_support=10)
            if f.is_zero():
                continue
            exact = float(f.l2_norm_sq())
            mean_sq = float((np.abs(dft(f).values) ** 2).mean())
            assert abs(exact - mean_sq) <= 1e-9 * max(1.0, exact)

    @pytest.mark.parametrize("mods", [(2, 8), (3, 3, 3)])
    def test_convolution_theorem(self, mods):
        spec = GroupSpec(mods)
        rng = random.Random(7)
        for _ in range(8):
            f, g = rand_func(spec, rng), rand_func(spec, rng)
            lhs = dft(convolve(f, g)).values
            rhs = dft(f).values * dft(g).values
            scale = max(1.0, float(np.abs(rhs).max()))
            assert float(np.abs(lhs - rhs).max()) / scale <= 1e-9


class TestSpectrum:
    def test_subgroup_indicator(self):
        spec = GroupSpec((2, 2))
        V = GroupSet.from_elements(spec, [(0, 0), (0, 1)])
        out = spectrum(indicator(V), Fraction(1, 2))
        assert sorted(out.indices) == [0, 2]

    def test_trivial_character_always_in(self):
        spec = GroupSpec((5,))
        rng = random.Random(8)
        for _ in range(5):
            f = rand_func(spec, rng)
            f = RationalFunc(spec, tuple(abs(v) for v in f.values))
            if f.is_zero():
                continue
            assert 0 in spectrum(f, Fraction(1)).indices

    def test_full_group_keeps_only_trivial(self):
        spec = GroupSpec((3, 2))
        out = spectrum(indicator(GroupSet.full(spec)), Fraction(1, 2))
        assert sorted(out.indices) == [0]

    def test_zero_function_rejected(self):
        spec = GroupSpec((2,))
        with pytest.raises(ValueError):
            spectrum(RationalFunc.zero(spec), Fraction(1, 2))

    def test_threshold_range(self):
        spec = GroupSpec((2,))
        f = indicator(GroupSet.full(spec))
        with pytest.raises(ValueError):
            spectrum(f, Fraction(0))
        with pytest.raises(ValueError):
            spectrum(f, Fraction(3, 2))


class TestAnnihilator:
    def test_trivial_character_annihilates_everything(self):
        spec = GroupSpec((3, 2))
        out = annihilator(CharSet(spec, frozenset([0])))
        assert len(out) == spec.order

    def test_all_characters_leave_identity(self):
        spec = GroupSpec((2, 4))
        out = annihilator(CharSet(spec, frozenset(range(spec.order))))
        assert sorted(out.indices) == [0]

    def test_subgroup_duality(self):
        spec = GroupSpec((2, 2))
        V = GroupSet.from_elements(spec, [(0, 0), (0, 1)])
        perp = spectrum(indicator(V), Fraction(1))
        assert annihilator(perp) == V

    @pytest.mark.parametrize("mods", [(2, 4), (3, 3), (6, 2), (5,)])
    def test_matches_float_tolerance_oracle(self, mods):
        spec = GroupSpec(mods)
        rng = random.Random(9)
        for _ in range(6):
            chars = frozenset(rng.sample(range(spec.order), rng.randint(1, 4)))
            got = annihilator(CharSet(spec, chars))
            by_float = {
                x
                for x in all_coords(mods)
                if all(
                    abs(char_eval_oracle(mods, spec.element_at(c).coords, x) - 1) < 1e-9
                    for c in chars
                )
            }
            assert {e.coords for e in got} == by_float

    def test_union_intersection(self):
        spec = GroupSpec((2, 2, 2))
        rng = random.Random(10)
        for _ in range(6):
            g1 = CharSet(spec, frozenset(rng.sample(range(8), 2)))
            g2 = CharSet(spec, frozenset(rng.sample(range(8), 2)))
            assert annihilator(g1 | g2) == annihilator(g1) & annihilator(g2)

    def test_result_is_subgroup(self):
        spec = GroupSpec((4, 3))
        rng = random.Random(11)
        for _ in range(5):
            chars = CharSet(spec, frozenset(rng.sample(range(spec.order), 3)))
            out = annihilator(chars)
            assert subgroup_closure(out) == out

    def test_subgroup_enumeration_counts(self):
        # Gaussian binomial totals: 67 subgroups in Z_2^4, 28 in Z_3^3
        from statcover.suites import all_subgroups

        assert len(all_subgroups(GroupSpec((2, 2, 2, 2)), 4)) == 67
        assert len(all_subgroups(GroupSpec((3, 3, 3)), 3)) == 28

    @pytest.mark.parametrize("mods", [(2, 2, 4), (3, 9)])
    def test_spectrum_annihilator_recovers_subgroups(self, mods):
        spec = GroupSpec(mods)
        rng = random.Random(12)
        for _ in range(6):
            gens = [spec.element_at(rng.randrange(spec.order)) for _ in range(2)]
            V = subgroup_closure(GroupSet.from_elements(spec, gens))
            for eps in (Fraction(1, 10), Fraction(1, 2), Fraction(1)):
                assert annihilator(spectrum(indicator(V), eps)) == V
