import time

import pytest

from dependence_core.errors import FragmentError, GuardError, ModelError, UnsupportedConstructError
from dependence_core.formula_gen import enumerate_formulas, team_atoms
from dependence_core.models import (SDModel, Signature, empty_model, enumerate_models, full_model,
                                    model_at, restrict)
from dependence_core.kripke_semantics import eval_global
from dependence_core.syntax import Fragment, Indep, parse
from dependence_core.team_semantics import (SplitStrategy, TeamEvaluator, downward_closure_counterexamples,
                                            downward_closure_scan, eval_team, flatness_check,
                                            team_fragment_of, transfer_check, transfer_fixtures)

D, I = Fragment.TEAM_D, Fragment.TEAM_I


class TestScenarios:
    @staticmethod
    def test_vertigo(scenario):
        W = scenario("vertigo")
        assert eval_team(W, parse("p | q"))
        assert not eval_team(W, parse("p"))
        assert not eval_team(W, parse("p | ~q"))

    @staticmethod
    def test_boiling(scenario):
        assert eval_team(scenario("boiling"), parse("D(p; q)"))

    @staticmethod
    def test_ovens(scenario):
        oven3, oven4 = scenario("oven3"), scenario("oven4")
        assert not eval_team(oven3, parse("D(p; q)"))
        assert eval_team(oven3, parse("D(p, r; q)"))
        assert not eval_team(oven4, parse("D(p, r; q)"))

    @staticmethod
    def test_sun_and_winter(scenario):
        W = scenario("sun_winter")
        assert not eval_team(W, parse("D(p; q)"))
        assert eval_team(W, parse("D(p; q) | D(p; q)"))

    @staticmethod
    def test_independence(pq):
        assert eval_team(full_model(pq), parse("I(p; ; q)"), I)
        assert not eval_team(SDModel.from_sets(pq, [{"p", "q"}, set()]), parse("I(p; ; q)"), I)

    @staticmethod
    def test_conditional_independence(pqr):
        W = SDModel.from_sets(pqr, [set(), {"p", "r"}, {"q", "r"}, {"p", "q", "r"}])
        assert not eval_team(W, parse("I(p; r; q)"), I)
        completed = SDModel(pqr, W.worlds + (4,))
        assert eval_team(completed, parse("I(p; r; q)"), I)

    @staticmethod
    def test_self_independence_is_constancy(pq):
        constant = SDModel.from_sets(pq, [{"p"}, {"p", "q"}])
        assert eval_team(constant, parse("I(p; ; p)"), I)
        assert not eval_team(full_model(pq), parse("I(p; ; p)"), I)

    @staticmethod
    def test_single_world_satisfies_every_independence_atom(pq):
        atoms = [a for group in team_atoms(I, pq).values() for a in group if isinstance(a, Indep)]
        assert len(atoms) == 36
        for w in range(4):
            W = SDModel(pq, (w,))
            assert all(eval_team(W, atom, I) for atom in atoms)

    @staticmethod
    def test_negation(scenario):
        W = scenario("negation")
        assert eval_team(W, parse("~q"))
        assert not eval_team(W, parse("p"))
        assert not eval_team(W, parse("~p"))

    @staticmethod
    def test_negated_dependence(pq):
        assert eval_team(empty_model(pq), parse("~D(p; q)"))
        for W in enumerate_models(pq, 1):
            assert not eval_team(W, parse("~D(p; q)"))

    @staticmethod
    def test_constants(pq):
        W = full_model(pq)
        assert eval_team(W, parse("#T"))
        assert not eval_team(W, parse("#F"))
        assert eval_team(empty_model(pq), parse("#F"))


class TestEvaluatorCalls:
    @staticmethod
    def test_empty_team_satisfies_everything(pq):
        W = empty_model(pq)
        for fragment in (D, I):
            for phi in enumerate_formulas(fragment, pq, 5):
                assert eval_team(W, phi, fragment)

    @staticmethod
    def test_partition_rejects_independence(pq):
        with pytest.raises(UnsupportedConstructError):
            eval_team(full_model(pq), parse("I(p; ; q)"), I, SplitStrategy.PARTITION)

    @staticmethod
    def test_general_guard():
        W = model_at(Signature.of("pqrs"), (1 << 15) - 1)
        assert len(W) == 15
        with pytest.raises(GuardError):
            eval_team(W, parse("p | q"))
        assert eval_team(W, parse("p | ~p"), D, SplitStrategy.PARTITION)

    @staticmethod
    def test_unknown_symbol(pq):
        with pytest.raises(ModelError):
            eval_team(full_model(pq), parse("r"))

    @staticmethod
    def test_kripke_fragment_rejected(pq):
        with pytest.raises(UnsupportedConstructError):
            eval_team(full_model(pq), parse("C p"), Fragment.LD)

    @staticmethod
    def test_fragment_checked(pq):
        with pytest.raises(FragmentError):
            eval_team(full_model(pq), parse("I(p; ; q)"), D)

    @staticmethod
    def test_team_fragment_of():
        assert team_fragment_of(parse("D(p; q) | p")) is D
        assert team_fragment_of(parse("I(p; ; q)")) is I
        assert team_fragment_of(parse("p & ~q")) is D
        with pytest.raises(FragmentError):
            team_fragment_of(parse("[U]p"))

    @staticmethod
    def test_split_counter(pq):
        evaluator = TeamEvaluator(full_model(pq))
        assert evaluator.satisfies(parse("p | ~p"))
        assert evaluator.splits_tried >= 1

    @staticmethod
    def test_strategies_agree_on_d(pq):
        for phi in enumerate_formulas(D, pq, 6):
            for W in enumerate_models(pq):
                general = eval_team(W, phi, D, SplitStrategy.GENERAL)
                assert general == eval_team(W, phi, D, SplitStrategy.PARTITION)

    @staticmethod
    def test_ten_worlds_is_fast():
        W = model_at(Signature.of("pqrs"), (1 << 10) - 1)
        phi = parse("I(p; ; q) | I(r; ; s)")
        started = time.perf_counter()
        eval_team(W, phi, I)
        assert time.perf_counter() - started < 1.0


class TestLocality:
    @staticmethod
    def test_restriction_keeps_team_truth(pq, pqr):
        cases = [(D, SplitStrategy.PARTITION), (I, SplitStrategy.GENERAL)]
        formulas = {fragment: list(enumerate_formulas(fragment, pq, 6)) for fragment, _ in cases}
        restricted = {}
        for W in enumerate_models(pqr):
            R = restrict(W, pq)
            for fragment, strategy in cases:
                full = TeamEvaluator(W, strategy)
                small = restricted.setdefault((R, strategy), TeamEvaluator(R, strategy))
                for phi in formulas[fragment]:
                    assert full.satisfies(phi) == small.satisfies(phi), (W, phi)


class TestFlatness:
    @staticmethod
    def test_examples(pq):
        assert flatness_check(parse("p | q"), pq)
        assert flatness_check(parse("~p & (q | ~q)"), pq)

    @staticmethod
    def test_exhaustive(pq):
        for phi in enumerate_formulas(Fragment.PL_NNF, pq, 7):
            assert flatness_check(phi, pq)

    @staticmethod
    def test_rejects_dependence_atoms(pq):
        with pytest.raises(FragmentError):
            flatness_check(parse("D(p; q)"), pq)


class TestDownwardClosure:
    @staticmethod
    def test_d_is_downward_closed(pq):
        for phi in enumerate_formulas(D, pq, 6):
            assert downward_closure_scan(phi, pq) is None

    @staticmethod
    def test_independence_is_not(pq):
        phi = parse("I(p; ; q)")
        full = full_model(pq)
        first = downward_closure_scan(phi, pq)
        assert first == (full, SDModel.from_sets(pq, [{"p", "q"}, set()]))
        pairs = list(downward_closure_counterexamples(phi, pq))
        assert (full, SDModel.from_sets(pq, [{"p"}, {"q"}])) in pairs
        assert all(len(U) >= len(first[1]) for _, U in pairs)
        for W, U in pairs:
            assert eval_team(W, phi, I) and not eval_team(U, phi, I)


class TestTransfer:
    @staticmethod
    def test_fixtures(pq):
        U, U_prime = transfer_fixtures(pq)
        assert U == SDModel.from_sets(pq, [{"p"}, set()])
        assert U_prime == SDModel.from_sets(pq, [set()])

    @staticmethod
    def test_examples():
        assert transfer_check(parse("I(p; ; q)"))
        assert transfer_check(parse("~p"))
        assert transfer_check(parse("q | ~q"))

    @staticmethod
    def test_every_small_i_formula_transfers(pq):
        for phi in enumerate_formulas(I, pq, 6):
            assert transfer_check(phi)

    @staticmethod
    def test_kripke_side_does_not_transfer(pq):
        # ~C p is lost on the submodel, so no formula of i expresses it
        U, U_prime = transfer_fixtures(pq)
        assert eval_global(U, parse("~C p"))
        assert not eval_global(U_prime, parse("~C p"))
