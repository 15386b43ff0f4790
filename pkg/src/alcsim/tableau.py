"""Open-world tableau reasoning over acyclic TBoxes.

Implements satisfiability, subsumption, equivalence, ABox consistency,
instance checking and entailment-based retrieval for the supported
constructor set (ALC plus unqualified at-least).

Strategy: deterministic rules (conjunction, successor creation, value
propagation, at-least expansion, lazy definition unfolding) run to
saturation before disjunctions are branched depth-first with
chronological backtracking.  Defined names stay in node labels as
literals and are unfolded on demand, and negation is pushed inward one
constructor at a time, so a branch that closes on a name-level clash
never touches the negated body at all.  In particular, the unsupported
negation of an at-least restriction is only an error on branches that
actually have to process it.  No blocking is required: acyclic
definitions bound the expansion depth.

Named nodes (ABox individuals) are pairwise distinct and never merged
(unique names assumption).  An at-least restriction simply creates the
required number of fresh successors; with no at-most constructor there
is nothing to merge.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import UnknownIndividual, UnsupportedNegation
from .model import (
    And,
    AtLeast,
    Atom,
    Bottom,
    BOTTOM,
    ConceptExpr,
    DefKind,
    EMPTY_ABOX,
    Exists,
    Forall,
    KnowledgeBase,
    Not,
    Or,
    TBox,
    TOP,
    marker_name,
)


@dataclass
class ReasonerStats:
    """Monotone counters for one reasoner session."""

    instance_checks: int = 0
    satisfiability_calls: int = 0
    branches_explored: int = 0


@dataclass
class TableauNode:
    id: int
    label: dict[ConceptExpr, None]        # insertion-ordered set
    edges: dict[str, list[int]]
    is_named: bool = False

    def copy(self) -> "TableauNode":
        return TableauNode(
            self.id,
            dict(self.label),
            {role: list(ids) for role, ids in self.edges.items()},
            self.is_named,
        )


class _Clash(Exception):
    """Internal signal: the current branch is closed."""


@dataclass
class _State:
    nodes: dict[int, TableauNode]
    next_id: int
    pending_or: list[tuple[int, Or]] = field(default_factory=list)

    def copy(self) -> "_State":
        return _State(
            {nid: node.copy() for nid, node in self.nodes.items()},
            self.next_id,
            list(self.pending_or),
        )


_Queue = deque  # of (node id, concept) pairs awaiting rule application


class TableauReasoner:
    """A reasoning session over one immutable knowledge base.

    Sessions own their mutable search state and statistics; run separate
    sessions for concurrent use.
    """

    def __init__(self, kb: KnowledgeBase):
        self.kb = kb
        self.stats = ReasonerStats()

    @classmethod
    def for_tbox(cls, tbox: TBox) -> "TableauReasoner":
        return cls(KnowledgeBase.assemble(tbox, EMPTY_ABOX))

    # -- public operations --------------------------------------------------

    def is_satisfiable(self, c: ConceptExpr) -> bool:
        self.stats.satisfiability_calls += 1
        state = _State(nodes={}, next_id=0)
        queue: _Queue = deque()
        nid = self._fresh_node(state)
        try:
            self._add(state, nid, c, queue)
        except _Clash:
            return False
        return self._run(state, queue)

    def subsumes(self, d: ConceptExpr, c: ConceptExpr) -> bool:
        """True iff ``d`` subsumes ``c`` (every instance of c is one of d)."""
        return not self.is_satisfiable(And((c, Not(d))))

    def equivalent(self, c: ConceptExpr, d: ConceptExpr) -> bool:
        return self.subsumes(c, d) and self.subsumes(d, c)

    def abox_consistent(self) -> bool:
        self.stats.satisfiability_calls += 1
        state, _, queue = self._abox_state()
        return self._run(state, queue)

    def instance_check(self, individual: str, c: ConceptExpr) -> bool:
        """Decide whether the KB entails membership of the individual in ``c``."""
        if individual not in self.kb.abox.individuals:
            raise UnknownIndividual(individual)
        self.stats.instance_checks += 1
        self.stats.satisfiability_calls += 1
        state, node_of, queue = self._abox_state()
        try:
            self._add(state, node_of[individual], Not(c), queue)
        except _Clash:
            return True
        return not self._run(state, queue)

    def retrieve(self, c: ConceptExpr) -> frozenset[str]:
        """All individuals whose membership in ``c`` is entailed."""
        return frozenset(
            a for a in sorted(self.kb.abox.individuals)
            if self.instance_check(a, c)
        )

    # -- state construction -------------------------------------------------

    def _abox_state(self) -> tuple[_State, dict[str, int], _Queue]:
        state = _State(nodes={}, next_id=0)
        queue: _Queue = deque()
        node_of: dict[str, int] = {}
        for name in sorted(self.kb.abox.individuals):
            nid = self._fresh_node(state)
            state.nodes[nid].is_named = True
            node_of[name] = nid
        for role, source, target in sorted(self.kb.abox.role_assertions):
            edges = state.nodes[node_of[source]].edges
            edges.setdefault(role, []).append(node_of[target])
        for concept, individual in sorted(self.kb.abox.concept_assertions):
            self._add(state, node_of[individual], Atom(concept), queue)
        return state, node_of, queue

    def _fresh_node(self, state: _State) -> int:
        nid = state.next_id
        state.next_id += 1
        state.nodes[nid] = TableauNode(nid, {}, {})
        return nid

    # -- search -------------------------------------------------------------

    def _run(self, state: _State, queue: _Queue) -> bool:
        try:
            self._saturate(state, queue)
            while True:
                choice = self._select_disjunction(state)
                if choice is None:
                    return True
                nid, viable = choice
                if len(viable) > 1:
                    break
                # unit propagation: a single open alternative is forced
                unit_queue: _Queue = deque()
                self._add(state, nid, viable[0], unit_queue)
                self._saturate(state, unit_queue)
        except _Clash:
            return False
        for alternative in viable:
            self.stats.branches_explored += 1
            branch = state.copy()
            branch_queue: _Queue = deque()
            try:
                self._add(branch, nid, alternative, branch_queue)
            except _Clash:
                continue
            if self._run(branch, branch_queue):
                return True
        return False

    def _select_disjunction(self, state: _State) -> tuple[int, list[ConceptExpr]] | None:
        """Most-constrained open disjunction, with its viable alternatives.

        Alternatives whose complement is already in the label are pruned;
        a disjunction left with no viable alternative closes the branch.
        Picking the fewest-alternative disjunction first keeps refutations
        of large conjunctions from branching on irrelevant copies.
        """
        pending = state.pending_or
        keep: list[tuple[int, Or]] = []
        best = None
        best_pos = None
        scanned = 0
        for nid, disj in pending:
            scanned += 1
            label = state.nodes[nid].label
            if any(a in label for a in disj.args):
                continue
            viable = [a for a in disj.args if not self._dead(label, a)]
            if not viable:
                raise _Clash
            keep.append((nid, disj))
            if best is None or len(viable) < len(best[1]):
                best = (nid, viable)
                best_pos = len(keep) - 1
                if len(viable) == 1:
                    break
        if best is None:
            state.pending_or = []
            return None
        keep.pop(best_pos)
        state.pending_or = keep + pending[scanned:]
        return best

    @staticmethod
    def _dead(label: dict, a: ConceptExpr) -> bool:
        if isinstance(a, Bottom):
            return True
        if isinstance(a, Not) and a.arg in label:
            return True
        return Not(a) in label

    def _add(self, state: _State, nid: int, c: ConceptExpr, queue: _Queue) -> None:
        """Insert a concept into a node label, checking for a clash."""
        node = state.nodes[nid]
        if c in node.label:
            return
        if isinstance(c, Bottom):
            raise _Clash
        if isinstance(c, Not) and c.arg in node.label:
            raise _Clash
        if Not(c) in node.label:
            raise _Clash
        node.label[c] = None
        queue.append((nid, c))

    def _saturate(self, state: _State, queue: _Queue) -> None:
        while queue:
            nid, c = queue.popleft()
            self._apply(state, nid, c, queue)

    def _apply(self, state: _State, nid: int, c: ConceptExpr, queue: _Queue) -> None:
        node = state.nodes[nid]
        if isinstance(c, And):
            for a in c.args:
                self._add(state, nid, a, queue)
        elif isinstance(c, Or):
            if not any(a in node.label for a in c.args):
                state.pending_or.append((nid, c))
        elif isinstance(c, Exists):
            succ = self._fresh_node(state)
            node.edges.setdefault(c.role, []).append(succ)
            self._add(state, succ, c.filler, queue)
            self._propagate_into(state, nid, c.role, succ, queue)
        elif isinstance(c, Forall):
            for succ in list(node.edges.get(c.role, ())):
                self._add(state, succ, c.filler, queue)
        elif isinstance(c, AtLeast):
            for _ in range(c.n):
                succ = self._fresh_node(state)
                node.edges.setdefault(c.role, []).append(succ)
                self._add(state, succ, TOP, queue)
                self._propagate_into(state, nid, c.role, succ, queue)
        elif isinstance(c, Atom):
            body = self._definition_body(c.name)
            if body is not None:
                self._add(state, nid, body, queue)
        elif isinstance(c, Not):
            self._push_negation(state, nid, c.arg, queue)

    def _push_negation(self, state: _State, nid: int, c: ConceptExpr,
                       queue: _Queue) -> None:
        """Rewrite a negation one constructor deep.

        Raising on a negated at-least only here, rather than when the
        goal is built, means branches that close on a name or atom clash
        never trip over an unsupported negation buried in a definition.
        """
        if isinstance(c, Atom):
            body = self._definition_body(c.name)
            if body is not None:
                self._add(state, nid, Not(body), queue)
        elif isinstance(c, Not):
            self._add(state, nid, c.arg, queue)
        elif isinstance(c, And):
            self._add(state, nid, Or(tuple(Not(a) for a in c.args)), queue)
        elif isinstance(c, Or):
            for a in c.args:
                self._add(state, nid, Not(a), queue)
        elif isinstance(c, Exists):
            self._add(state, nid, Forall(c.role, Not(c.filler)), queue)
        elif isinstance(c, Forall):
            self._add(state, nid, Exists(c.role, Not(c.filler)), queue)
        elif isinstance(c, AtLeast):
            if c.n == 1:
                self._add(state, nid, Forall(c.role, BOTTOM), queue)
            else:
                raise UnsupportedNegation(
                    f"cannot negate 'atleast {c.n} {c.role}': "
                    "no at-most restriction in the constructor set"
                )
        elif isinstance(c, Bottom):
            self._add(state, nid, TOP, queue)
        else:  # Not(Top)
            raise _Clash

    def _propagate_into(self, state: _State, nid: int, role: str,
                        succ: int, queue: _Queue) -> None:
        # value restrictions already present must reach the new successor
        for d in list(state.nodes[nid].label):
            if isinstance(d, Forall) and d.role == role:
                self._add(state, succ, d.filler, queue)

    def _definition_body(self, name: str) -> ConceptExpr | None:
        """Unfolding of a defined name; partial definitions are absorbed."""
        defn = self.kb.tbox.get(name)
        if defn is None:
            return None
        if defn.kind is DefKind.EQUIV:
            return defn.body
        return And((Atom(marker_name(name)), defn.body))


# ---------------------------------------------------------------------------
# One-shot conveniences
# ---------------------------------------------------------------------------

def is_satisfiable(c: ConceptExpr, tbox: TBox) -> bool:
    return TableauReasoner.for_tbox(tbox).is_satisfiable(c)


def subsumes(d: ConceptExpr, c: ConceptExpr, tbox: TBox) -> bool:
    """True iff ``d`` subsumes ``c`` w.r.t. the TBox."""
    return TableauReasoner.for_tbox(tbox).subsumes(d, c)


def equivalent(c: ConceptExpr, d: ConceptExpr, tbox: TBox) -> bool:
    return TableauReasoner.for_tbox(tbox).equivalent(c, d)


def abox_consistent(kb: KnowledgeBase) -> bool:
    return TableauReasoner(kb).abox_consistent()


def instance_check(kb: KnowledgeBase, individual: str, c: ConceptExpr) -> bool:
    return TableauReasoner(kb).instance_check(individual, c)


def retrieve_entail(kb: KnowledgeBase, c: ConceptExpr) -> frozenset[str]:
    return TableauReasoner(kb).retrieve(c)
