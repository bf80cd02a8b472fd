import pytest

from dependence_core.decide import validity
from dependence_core.errors import GuardError
from dependence_core.kripke_semantics import eval_kripke
from dependence_core.models import enumerate_models, full_model
from dependence_core.normal_forms import (TypeNormalForm, dnf_over, split_pairs, type_of_world,
                                          types_over)
from dependence_core.syntax import And, Not, Prop, is_bottom, is_top

p, q = Prop("p"), Prop("q")


class TestTypes:
    @staticmethod
    def test_empty_base():
        types = types_over([])
        assert len(types) == 1
        assert is_top(types[0].formula())

    @staticmethod
    def test_polarity_order():
        assert [t.formula() for t in types_over([p])] == [Not(p), p]
        assert [t.literals() for t in types_over([p, q])][1] == [p, Not(q)]

    @staticmethod
    def test_exactly_one_type_per_world(pq):
        types = [t.formula() for t in types_over([p, q])]
        for W in enumerate_models(pq):
            for w in range(len(W)):
                assert sum(eval_kripke(W, w, chi) for chi in types) == 1

    @staticmethod
    def test_type_of_world(pq):
        W = full_model(pq)
        assert type_of_world(W, 1, [p, q]).formula() == And(p, Not(q))
        assert type_of_world(W, 3, [p, q]).polarity == 3


class TestNormalForms:
    @staticmethod
    def test_count():
        assert len(list(dnf_over([p]))) == 4
        assert len(list(dnf_over([p, q]))) == 16

    @staticmethod
    def test_empty_base():
        forms = [chi.formula() for chi in dnf_over([])]
        assert is_bottom(forms[0])
        assert is_top(forms[1])

    @staticmethod
    def test_guard():
        with pytest.raises(GuardError):
            list(dnf_over([Prop(s) for s in "pqrst"]))

    @staticmethod
    def test_full_form_is_valid():
        assert validity(TypeNormalForm.full([p, q]).formula()).result

    @staticmethod
    def test_out_of_range_polarity():
        with pytest.raises(ValueError):
            TypeNormalForm((p,), (2,))


class TestSplitPairs:
    @staticmethod
    def test_count():
        chi = TypeNormalForm((p, q), (0, 1, 3))
        assert len(list(split_pairs(chi))) == 27
        assert len(list(split_pairs(TypeNormalForm((p,), ())))) == 1

    @staticmethod
    def test_pairs_cover_the_parent():
        chi = TypeNormalForm.full([p, q])
        for pair in split_pairs(chi):
            assert set(pair.left.disjuncts) | set(pair.right.disjuncts) == set(chi.disjuncts)
            assert set(pair.left.disjuncts) <= set(chi.disjuncts)
            assert set(pair.right.disjuncts) <= set(chi.disjuncts)

    @staticmethod
    def test_first_pair_puts_everything_left():
        chi = TypeNormalForm((p,), (0, 1))
        first = next(iter(split_pairs(chi)))
        assert first.left.disjuncts == (0, 1)
        assert first.right.disjuncts == ()
