"""Closed-world canonical interpretation of an ABox.

The domain is exactly the set of named individuals (unique names
assumption: each constant denotes itself), roles hold exactly for the
asserted pairs, and concept-name extensions are the told closure of the
assertions: an individual carries every name reachable from its asserted
names through top-level conjuncts of definitions.  Arbitrary concept
expressions are then evaluated over this finite structure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .model import (
    And,
    AtLeast,
    Atom,
    Bottom,
    ConceptExpr,
    DefKind,
    Exists,
    Forall,
    KnowledgeBase,
    Not,
    Or,
    TBox,
    Top,
)


@dataclass(frozen=True)
class CanonicalModel:
    domain: frozenset[str]
    primitive_ext: Mapping[str, frozenset[str]]
    role_ext: Mapping[str, frozenset[tuple[str, str]]]

    def successors(self, role: str) -> dict[str, frozenset[str]]:
        out: dict[str, set[str]] = {}
        for source, target in self.role_ext.get(role, frozenset()):
            out.setdefault(source, set()).add(target)
        return {s: frozenset(ts) for s, ts in out.items()}


def _top_conjunct_names(c: ConceptExpr) -> frozenset[str]:
    """Concept names reachable through top-level conjunctions only."""
    if isinstance(c, Atom):
        return frozenset((c.name,))
    if isinstance(c, And):
        out: frozenset[str] = frozenset()
        for a in c.args:
            out |= _top_conjunct_names(a)
        return out
    return frozenset()


def told_closure(kb: KnowledgeBase) -> dict[str, frozenset[str]]:
    """Concept names each individual is told to belong to.

    Least fixpoint of: start from the asserted names; whenever N is in
    the set and N is defined (fully or partially) with body D, add every
    name occurring as a top-level conjunct of D.  Disjunctions and role
    restrictions contribute nothing.
    """
    told: dict[str, set[str]] = {a: set() for a in kb.abox.individuals}
    for concept, individual in kb.abox.concept_assertions:
        told[individual].add(concept)

    # conjunct names contributed by each defined name
    contributes = {
        name: _top_conjunct_names(defn.body)
        for name, defn in kb.tbox.definitions.items()
    }

    for names in told.values():
        pending = list(names)
        while pending:
            name = pending.pop()
            for extra in contributes.get(name, frozenset()):
                if extra not in names:
                    names.add(extra)
                    pending.append(extra)
    return {a: frozenset(names) for a, names in told.items()}


def build_canonical(kb: KnowledgeBase) -> CanonicalModel:
    told = told_closure(kb)
    primitive_ext = {
        name: frozenset(a for a, names in told.items() if name in names)
        for name in kb.signature.concept_names
    }
    role_ext: dict[str, set[tuple[str, str]]] = {}
    for role, source, target in kb.abox.role_assertions:
        role_ext.setdefault(role, set()).add((source, target))
    return CanonicalModel(
        domain=kb.abox.individuals,
        primitive_ext=primitive_ext,
        role_ext={r: frozenset(ps) for r, ps in role_ext.items()},
    )


def eval_concept(model: CanonicalModel, tbox: TBox,
                 c: ConceptExpr) -> frozenset[str]:
    """Extension of ``c`` in the canonical model.

    A defined name denotes the union of its told extension and the
    evaluation of its definition body (for full definitions), so asserted
    memberships survive even when the closed-world definition check
    fails.  Value restrictions are vacuously satisfied by individuals
    without successors.
    """
    succ_cache: dict[str, dict[str, frozenset[str]]] = {}

    def successors(role: str, x: str) -> frozenset[str]:
        table = succ_cache.get(role)
        if table is None:
            table = model.successors(role)
            succ_cache[role] = table
        return table.get(x, frozenset())

    def ev(c: ConceptExpr) -> frozenset[str]:
        if isinstance(c, Top):
            return model.domain
        if isinstance(c, Bottom):
            return frozenset()
        if isinstance(c, Atom):
            ext = model.primitive_ext.get(c.name, frozenset())
            defn = tbox.get(c.name)
            if defn is not None and defn.kind is DefKind.EQUIV:
                ext = ext | ev(defn.body)
            return ext
        if isinstance(c, Not):
            return model.domain - ev(c.arg)
        if isinstance(c, And):
            out = ev(c.args[0])
            for a in c.args[1:]:
                out = out & ev(a)
            return out
        if isinstance(c, Or):
            out = ev(c.args[0])
            for a in c.args[1:]:
                out = out | ev(a)
            return out
        if isinstance(c, Exists):
            filler = ev(c.filler)
            return frozenset(
                x for x in model.domain if successors(c.role, x) & filler
            )
        if isinstance(c, Forall):
            filler = ev(c.filler)
            return frozenset(
                x for x in model.domain if successors(c.role, x) <= filler
            )
        if isinstance(c, AtLeast):
            return frozenset(
                x for x in model.domain if len(successors(c.role, x)) >= c.n
            )
        raise TypeError(f"unexpected concept node: {c!r}")

    return ev(c)


def retrieve_canonical(kb: KnowledgeBase, c: ConceptExpr) -> frozenset[str]:
    """Individuals in the canonical extension of ``c``."""
    return eval_concept(build_canonical(kb), kb.tbox, c)
