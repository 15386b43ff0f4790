import random

import pytest

from alcsim.errors import CyclicTBox, UnsupportedNegation
from alcsim.gen import random_concept
from alcsim.model import (
    ABox,
    And,
    AtLeast,
    Atom,
    Bottom,
    DefKind,
    Definition,
    EMPTY_ABOX,
    Exists,
    Forall,
    KnowledgeBase,
    Not,
    Or,
    TBox,
    Top,
    concept_depth,
    concept_names_in,
    nnf,
    normalize,
    unfold,
)
from alcsim.tableau import equivalent

A, B, C = Atom("A"), Atom("B"), Atom("C")
R, S = "R", "S"


def rand_concepts(count, *, depth=3, seed=0, el_only=False):
    rng = random.Random(seed)
    return [
        random_concept(rng, ("A", "B", "C", "D"), ("R", "S"), depth, el_only)
        for _ in range(count)
    ]


class TestNnf:
    def test_de_morgan(self):
        assert nnf(Not(And((A, B)))) == Or((Not(A), Not(B)))
        assert nnf(Not(Or((A, B)))) == And((Not(A), Not(B)))

    def test_quantifier_duality(self):
        assert nnf(Not(Exists(R, C))) == Forall(R, Not(C))
        assert nnf(Not(Forall(R, C))) == Exists(R, Not(C))

    def test_double_negation(self):
        assert nnf(Not(Not(C))) == C
        assert nnf(Not(Not(Not(A)))) == Not(A)

    def test_constants(self):
        assert nnf(Not(Top())) == Bottom()
        assert nnf(Not(Bottom())) == Top()

    def test_negated_atleast_one_becomes_value_restriction(self):
        assert nnf(Not(AtLeast(1, R))) == Forall(R, Bottom())

    def test_negated_atleast_two_is_an_error(self):
        with pytest.raises(UnsupportedNegation):
            nnf(Not(AtLeast(2, R)))
        with pytest.raises(UnsupportedNegation):
            nnf(Not(Exists(R, AtLeast(3, S))))

    def test_not_only_above_atoms(self):
        def check(c):
            if isinstance(c, Not):
                assert isinstance(c.arg, Atom)
                return
            for child in getattr(c, "args", ()):
                check(child)
            if isinstance(c, (Exists, Forall)):
                check(c.filler)

        for c in rand_concepts(200, seed=11):
            check(nnf(c))

    def test_idempotent(self):
        for c in rand_concepts(200, seed=12):
            once = nnf(c)
            assert nnf(once) == once


class TestUnfold:
    def test_equiv_definition_expands(self):
        tbox = TBox({"Woman": Definition(DefKind.EQUIV,
                                         And((Atom("Human"), Atom("Female"))))})
        assert unfold(Atom("Woman"), tbox) == And((Atom("Human"), Atom("Female")))

    def test_primitives_are_fixed_points(self):
        assert unfold(Atom("P"), TBox({})) == Atom("P")

    def test_partial_definition_gets_marker(self):
        tbox = TBox({"Male": Definition(DefKind.SUBSUMED, Atom("Person"))})
        assert unfold(Atom("Male"), tbox) == And((Atom("Male*"), Atom("Person")))

    def test_recursive_expansion(self):
        tbox = TBox({
            "Woman": Definition(DefKind.EQUIV, And((Atom("Human"), Atom("Female")))),
            "Mother": Definition(DefKind.EQUIV,
                                 And((Atom("Woman"), Exists("HasChild", Top())))),
        })
        unfolded = unfold(Atom("Mother"), tbox)
        assert "Woman" not in concept_names_in(unfolded)
        assert "Mother" not in concept_names_in(unfolded)

    def test_no_defined_names_remain(self, family_kb):
        for name in family_kb.tbox.definitions:
            unfolded = unfold(Atom(name), family_kb.tbox)
            remaining = concept_names_in(unfolded) & set(family_kb.tbox.definitions)
            assert not remaining

    def test_cycle_detected(self):
        tbox = TBox({
            "A": Definition(DefKind.EQUIV, Exists(R, Atom("B"))),
            "B": Definition(DefKind.EQUIV, And((Atom("A"), Atom("C")))),
        })
        with pytest.raises(CyclicTBox):
            unfold(Atom("A"), tbox)


class TestAcyclicity:
    def test_rejects_mutual_recursion(self):
        tbox = TBox({
            "A": Definition(DefKind.EQUIV, Exists(R, Atom("B"))),
            "B": Definition(DefKind.EQUIV, And((Atom("A"), Atom("C")))),
        })
        with pytest.raises(CyclicTBox):
            KnowledgeBase.assemble(tbox, EMPTY_ABOX)

    def test_rejects_self_reference(self):
        tbox = TBox({"A": Definition(DefKind.EQUIV, And((Atom("A"), B)))})
        with pytest.raises(CyclicTBox):
            tbox.check_acyclic()

    def test_accepts_family_tbox(self, family_kb):
        family_kb.tbox.check_acyclic()


class TestNormalize:
    def test_merges_value_restrictions_on_same_role(self):
        c = And((Forall(R, Atom("C1")), Forall(R, Atom("C2"))))
        assert normalize(c) == Forall(R, And((Atom("C1"), Atom("C2"))))

    def test_top_is_conjunction_identity(self):
        assert normalize(And((C, Top()))) == C

    def test_top_absorbs_disjunction(self):
        assert normalize(Or((C, Top()))) == Top()

    def test_bottom_absorbs_conjunction(self):
        assert normalize(And((C, Bottom()))) == Bottom()

    def test_bottom_is_disjunction_identity(self):
        assert normalize(Or((C, Bottom()))) == C

    def test_flattens_and_sorts_and_deduplicates(self):
        c = And((B, And((A, B)), A))
        assert normalize(c) == And((A, B))

    def test_idempotent(self):
        for c in rand_concepts(300, seed=21):
            once = normalize(c)
            assert normalize(once) == once

    def test_preserves_semantics(self):
        # random concepts up to depth 3 over a 4-name signature
        empty = TBox({})
        for c in rand_concepts(60, seed=22):
            assert equivalent(c, normalize(c), empty)

    def test_atleast_kept(self):
        c = Exists(R, AtLeast(2, "HasChild"))
        assert normalize(c) == c


class TestConceptDepth:
    def test_atom_is_zero(self):
        assert concept_depth(A) == 0

    def test_nested_restrictions(self):
        assert concept_depth(Exists(R, Exists(S, A))) == 2

    def test_conjunction_takes_max(self):
        assert concept_depth(And((A, Forall(R, B)))) == 1

    def test_atleast_counts_one(self):
        assert concept_depth(AtLeast(3, R)) == 1
        assert concept_depth(Exists(R, AtLeast(2, S))) == 2

    def test_negation_transparent(self):
        assert concept_depth(Not(A)) == 0


class TestContainers:
    def test_and_requires_two_arguments(self):
        with pytest.raises(ValueError):
            And((A,))

    def test_atleast_requires_positive_count(self):
        with pytest.raises(ValueError):
            AtLeast(0, R)

    def test_abox_collects_individuals(self):
        abox = ABox.from_assertions([("C", "a")], [("R", "a", "b")])
        assert abox.individuals == {"a", "b"}

    def test_signature_covers_tbox_and_abox(self, family_kb):
        sig = family_kb.signature
        assert "Uncle" in sig.concept_names          # occurs only in a body
        assert "HasGrandParent" in sig.role_names
        assert "Nicola" in sig.individuals
        assert len(sig.individuals) == 11
