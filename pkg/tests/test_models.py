import pytest

from dependence_core.errors import GuardError, ModelError
from dependence_core.models import (PointedModel, SDModel, Signature, empty_model, enumerate_models,
                                    enumerate_worlds, format_model, full_model, model_at, model_count,
                                    load_model, parse_model, phi_equivalent, restrict)


class TestSignature:
    @staticmethod
    def test_of_sorts_and_deduplicates():
        assert Signature.of(["q", "p", "q"]) == Signature(("p", "q"))
        assert str(Signature.of("qp")) == "{p,q}"

    @staticmethod
    def test_unsorted_rejected():
        with pytest.raises(ModelError):
            Signature(("q", "p"))

    @staticmethod
    def test_invalid_symbol():
        with pytest.raises(ModelError):
            Signature(("P",))

    @staticmethod
    def test_index_and_union():
        sig = Signature.of("pr")
        assert sig.index("r") == 1
        with pytest.raises(ModelError):
            sig.index("q")
        assert sig.union(Signature.of("q")) == Signature.of("pqr")
        assert Signature.of("p").issubset(sig)


class TestSDModel:
    @staticmethod
    def test_set_equality(pq):
        a = SDModel.from_sets(pq, [{"p"}, set()])
        b = SDModel.from_sets(pq, [set(), {"p"}])
        assert a == b
        assert hash(a) == hash(b)
        assert a.worlds != b.worlds

    @staticmethod
    def test_duplicate_world(pq):
        with pytest.raises(ModelError):
            SDModel.from_sets(pq, [{"p"}, {"p"}])

    @staticmethod
    def test_world_out_of_range(pq):
        with pytest.raises(ModelError):
            SDModel(pq, (4,))

    @staticmethod
    def test_names_and_vectors(pq):
        W = SDModel.from_sets(pq, [{"p", "q"}, set(), {"q"}])
        assert W.names(0) == {"p", "q"}
        assert W.names(1) == frozenset()
        assert W.symbol_vector("q").tolist() == [True, False, True]
        assert W.symbol_vector("r").tolist() == [False, False, False]
        assert W.describe() == "{{p,q},{},{q}}"

    @staticmethod
    def test_submodel(pq):
        W = SDModel.from_sets(pq, [{"p", "q"}, set(), {"q"}])
        assert W.submodel(0b101) == SDModel.from_sets(pq, [{"p", "q"}, {"q"}])
        assert W.submodel(0).is_empty

    @staticmethod
    def test_extend(pq, pqr):
        W = SDModel.from_sets(pq, [{"p"}, {"q"}])
        extended = W.extend(pqr)
        assert extended.signature == pqr
        assert [extended.names(i) for i in range(2)] == [{"p"}, {"q"}]
        with pytest.raises(ModelError):
            extended.extend(pq)

    @staticmethod
    def test_pointed_model(pq):
        W = full_model(pq)
        assert PointedModel(W, 3).point == 3
        with pytest.raises(ModelError):
            PointedModel(W, 4)


class TestRestriction:
    @staticmethod
    def test_restrict_collapses(pqr):
        W = SDModel.from_sets(pqr, [{"p", "q"}, {"p"}, {"p", "r"}])
        R = restrict(W, Signature.of("p"))
        assert R == SDModel.from_sets(["p"], [{"p"}])
        assert len(R) == 1

    @staticmethod
    def test_restrict_keeps_first_occurrence(pqr):
        W = SDModel.from_sets(pqr, [{"q"}, {"p"}, {"q", "r"}])
        assert restrict(W, Signature.of("pq")).worlds == (2, 1)

    @staticmethod
    def test_restrict_is_idempotent(pqr):
        phi = Signature.of("pr")
        for W in enumerate_models(Signature.of("pqr"), 0, 40):
            once = restrict(W, phi)
            assert restrict(once, phi) == once

    @staticmethod
    def test_phi_equivalence_is_an_equivalence(pq):
        phi = Signature.of("p")
        models = list(enumerate_models(pq))
        for a in models:
            assert phi_equivalent(a, a, phi)
            for b in models:
                assert phi_equivalent(a, b, phi) == phi_equivalent(b, a, phi)
                if not phi_equivalent(a, b, phi):
                    continue
                for c in models:
                    if phi_equivalent(b, c, phi):
                        assert phi_equivalent(a, c, phi)


class TestEnumeration:
    @staticmethod
    def test_worlds():
        assert enumerate_worlds(Signature.of("p")) == [0, 1]
        assert len(enumerate_worlds(Signature.of("pqr"))) == 8
        assert enumerate_worlds(Signature()) == [0]

    @staticmethod
    def test_model_count(pq):
        assert model_count(pq) == 16
        assert model_count(Signature()) == 2
        with pytest.raises(GuardError):
            model_count(Signature.of("pqrst"))

    @staticmethod
    def test_models_in_mask_order():
        sig = Signature.of("p")
        assert [W.worlds for W in enumerate_models(sig)] == [(), (0,), (1,), (0, 1)]
        assert [W.worlds for W in enumerate_models(sig, 1, 3)] == [(0,), (1,)]

    @staticmethod
    def test_models_are_distinct(pq):
        models = list(enumerate_models(pq))
        assert len(set(models)) == 16
        assert model_at(pq, 15) == full_model(pq)
        assert model_at(pq, 0) == empty_model(pq)


class TestSdmFiles:
    @staticmethod
    def test_parse(pq):
        W = parse_model("# comment\nsig q p\nw p q\nw -   # empty world\n")
        assert W.signature == pq
        assert W == SDModel.from_sets(pq, [{"p", "q"}, set()])

    @staticmethod
    def test_empty_model():
        W = parse_model("sig p q\n")
        assert W.is_empty

    @staticmethod
    def test_format_round_trip(pq):
        W = SDModel.from_sets(pq, [{"q"}, set(), {"p", "q"}])
        text = format_model(W)
        assert text == "sig p q\nw q\nw -\nw p q\n"
        assert parse_model(text).worlds == W.worlds

    @staticmethod
    @pytest.mark.parametrize("text", [
        "w p\nsig p\n",
        "sig p\nw q\n",
        "sig p\nw p\nw p\n",
        "sig p\nsig q\n",
        "sig p p\n",
        "sig p\nworld p\n",
        "w -\n",
        "",
    ])
    def test_malformed(text):
        with pytest.raises(ModelError):
            parse_model(text)

    @staticmethod
    def test_binary_file(tmp_path):
        path = tmp_path / "bad.sdm"
        path.write_bytes(b"sig p\nw \xff\n")
        with pytest.raises(ModelError):
            load_model(path)

    @staticmethod
    def test_fixture_order(scenario):
        W = scenario("boiling")
        assert W.names(0) == {"p", "q"}
        assert W.names(1) == frozenset()
