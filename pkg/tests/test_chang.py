import random
from fractions import Fraction

import pytest

from statcover import (
    GroupSet,
    GroupSpec,
    chang_iterate,
    decrement_check,
    energy_floor_steps,
    generate_instance,
    indicator,
    invariant_set,
    subgroup_closure,
)
from statcover.functions import RationalFunc


class TestInvariantSet:
    def test_subgroup_everything_invariant(self):
        spec = GroupSpec((2, 4))
        V = subgroup_closure(GroupSet.from_elements(spec, [(1, 1)]))
        out = invariant_set(indicator(V), V, (), Fraction(1, 2))
        assert out == V

    def test_point_mass_in_z2(self):
        spec = GroupSpec((2,))
        h = indicator(GroupSet.from_elements(spec, [(0,)]))
        out = invariant_set(h, GroupSet.full(spec), (), Fraction(1))
        assert sorted(out.indices) == [0]

    def test_tiny_kappa_keeps_exact_invariance_only(self):
        spec = GroupSpec((8,))
        A = GroupSet.from_elements(spec, [(0,), (1,), (4,)])
        h = indicator(A)
        out = invariant_set(h, GroupSet.full(spec), (), Fraction(1, 10**9))
        assert sorted(out.indices) == [0]

    def test_zero_h_rejected(self):
        spec = GroupSpec((3,))
        with pytest.raises(ValueError):
            invariant_set(RationalFunc.zero(spec), GroupSet.full(spec), (), Fraction(1))


class TestDecrementCheck:
    def test_halving_example(self):
        spec = GroupSpec((4,))
        h = indicator(GroupSet.from_elements(spec, [(0,), (1,)]))
        new_e, held = decrement_check(h, (), spec.element((1,)), Fraction(1))
        assert new_e == Fraction(3, 2)
        assert held  # 3/2 <= (1 - 1/4) * 2

    def test_invariant_translate_never_decrements(self):
        spec = GroupSpec((2, 2))
        V = subgroup_closure(GroupSet.from_elements(spec, [(1, 0)]))
        h = indicator(V)
        new_e, held = decrement_check(h, (), spec.element((1, 0)), Fraction(1, 2))
        assert new_e == h.l2_norm_sq()
        assert not held

    def test_identity_holds_for_random_steps(self):
        spec = GroupSpec((3, 3))
        rng = random.Random(1)
        for _ in range(10):
            A = generate_instance("random", spec, size=4, seed=rng.getrandbits(30))
            h = indicator(A)
            path = tuple(
                spec.element_at(rng.randrange(spec.order)) for _ in range(rng.randint(0, 2))
            )
            x = spec.element_at(rng.randrange(spec.order))
            # decrement_check itself asserts the parallelogram identity
            new_e, _ = decrement_check(h, path, x, Fraction(1, 2))
            assert new_e >= 0


class TestChangIterate:
    def test_subgroup_immediate_invariance(self):
        spec = GroupSpec((2, 4))
        V = subgroup_closure(GroupSet.from_elements(spec, [(0, 1)]))
        out = chang_iterate(indicator(V), V, Fraction(1, 2), Fraction(1), 5)
        assert out.kind == "invariant"
        assert out.l == 0
        assert out.witnesses == V

    def test_two_point_set_energy_trace(self):
        spec = GroupSpec((4,))
        A = GroupSet.from_elements(spec, [(0,), (1,)])
        out = chang_iterate(indicator(A), A, Fraction(1), Fraction(1), 10)
        assert out.energies[0] == 2
        assert out.energies[1] == Fraction(3, 2)
        shrink = Fraction(3, 4)
        for i in range(len(out.path)):
            assert out.energies[i + 1] <= shrink * out.energies[i]

    def test_decrement_outcome_when_capped(self):
        spec = GroupSpec((3,))
        A = GroupSet.from_elements(spec, [(1,)])
        out = chang_iterate(indicator(A), A, Fraction(1), Fraction(1, 2), 2)
        assert out.kind == "decrement"
        assert out.l == 2
        assert out.witnesses is None
        assert len(out.energies) == 3

    def test_telescoped_bound_exact(self):
        spec = GroupSpec((16,))
        A = generate_instance("random", spec, size=5, seed=3)
        kappa = Fraction(1, 2)
        out = chang_iterate(indicator(A), A, kappa, Fraction(3, 4), 40)
        start = out.energies[0]
        for i, e in enumerate(out.energies):
            assert e <= (1 - kappa / 4) ** i * start

    def test_energy_floor_and_step_cap(self):
        specs = [GroupSpec((16,)), GroupSpec((2, 2, 2, 2)), GroupSpec((3, 3))]
        rng = random.Random(4)
        for spec in specs:
            for _ in range(5):
                A = generate_instance(
                    "random", spec, size=rng.randint(2, 6), seed=rng.getrandbits(30)
                )
                kappa = Fraction(1, 2)
                cap = energy_floor_steps(spec.order, len(A), kappa)
                out = chang_iterate(indicator(A), A, kappa, Fraction(1, 4), cap + 1)
                assert out.kind == "invariant"
                assert out.l <= cap
                floor = Fraction(len(A) ** 2, spec.order)
                assert all(e >= floor for e in out.energies)

    def test_witnesses_reverify(self):
        spec = GroupSpec((3, 3))
        A = generate_instance("random", spec, size=5, seed=5)
        kappa, eta = Fraction(1, 4), Fraction(1, 4)
        cap = energy_floor_steps(spec.order, len(A), kappa)
        out = chang_iterate(indicator(A), A, kappa, eta, cap + 1)
        assert out.kind == "invariant"
        replay = invariant_set(indicator(A), A, out.path, kappa)
        assert replay == out.witnesses
        assert Fraction(len(out.witnesses)) >= eta * len(A)

    def test_validation(self):
        spec = GroupSpec((4,))
        A = GroupSet.from_elements(spec, [(0,), (1,)])
        h = indicator(A)
        with pytest.raises(ValueError):
            chang_iterate(h, A, Fraction(0), Fraction(1, 2), 5)
        with pytest.raises(ValueError):
            chang_iterate(h, A, Fraction(1, 2), Fraction(3, 2), 5)
        with pytest.raises(ValueError):
            chang_iterate(RationalFunc.zero(spec), A, Fraction(1), Fraction(1), 5)
        signed = RationalFunc.from_pairs(spec, {0: 1, 1: -1})
        with pytest.raises(ValueError):
            chang_iterate(signed, A, Fraction(1), Fraction(1), 5)
