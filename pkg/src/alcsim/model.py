"""Concept ASTs, knowledge-base containers, and syntactic transformations.

Concept expressions are immutable trees built from the usual ALC
constructors plus an unqualified at-least restriction.  The textual form
produced by ``str()`` is the same concrete syntax the parser accepts, so
``parse_concept(str(c)) == c`` holds for every tree.

The transformations in this module (negation normal form, unfolding
against an acyclic TBox, normalization, depth) are pure functions and
never mutate their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import CyclicTBox, UnsupportedNegation


# ---------------------------------------------------------------------------
# Concept expressions
# ---------------------------------------------------------------------------

class ConceptExpr:
    """Base class for concept expression nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Top(ConceptExpr):
    def __str__(self) -> str:
        return "Top"


@dataclass(frozen=True)
class Bottom(ConceptExpr):
    def __str__(self) -> str:
        return "Bottom"


@dataclass(frozen=True)
class Atom(ConceptExpr):
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Not(ConceptExpr):
    arg: ConceptExpr

    def __str__(self) -> str:
        return "not " + _unary_str(self.arg)


@dataclass(frozen=True)
class And(ConceptExpr):
    args: tuple[ConceptExpr, ...]

    def __post_init__(self):
        if len(self.args) < 2:
            raise ValueError("And requires at least two arguments")

    def __str__(self) -> str:
        return " and ".join(_unary_str(a) for a in self.args)


@dataclass(frozen=True)
class Or(ConceptExpr):
    args: tuple[ConceptExpr, ...]

    def __post_init__(self):
        if len(self.args) < 2:
            raise ValueError("Or requires at least two arguments")

    def __str__(self) -> str:
        return " or ".join(
            f"({a})" if isinstance(a, Or) else str(a) for a in self.args
        )


@dataclass(frozen=True)
class Exists(ConceptExpr):
    role: str
    filler: ConceptExpr

    def __str__(self) -> str:
        return f"exists {self.role}.{_unary_str(self.filler)}"


@dataclass(frozen=True)
class Forall(ConceptExpr):
    role: str
    filler: ConceptExpr

    def __str__(self) -> str:
        return f"forall {self.role}.{_unary_str(self.filler)}"


@dataclass(frozen=True)
class AtLeast(ConceptExpr):
    """Unqualified at-least restriction: at least ``n`` distinct role successors."""

    n: int
    role: str

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("AtLeast requires n >= 1")

    def __str__(self) -> str:
        return f"atleast {self.n} {self.role}"


TOP = Top()
BOTTOM = Bottom()


def _unary_str(c: ConceptExpr) -> str:
    # And/Or bind looser than not/quantifiers, so they need parentheses in
    # argument position; everything else re-parses unambiguously.
    if isinstance(c, (And, Or)):
        return f"({c})"
    return str(c)


def make_and(args) -> ConceptExpr:
    """Conjunction builder that collapses the 0- and 1-argument cases."""
    args = tuple(args)
    if not args:
        return TOP
    if len(args) == 1:
        return args[0]
    return And(args)


def make_or(args) -> ConceptExpr:
    args = tuple(args)
    if not args:
        return BOTTOM
    if len(args) == 1:
        return args[0]
    return Or(args)


def concept_names_in(c: ConceptExpr) -> frozenset[str]:
    """All concept names occurring anywhere in the expression."""
    if isinstance(c, Atom):
        return frozenset((c.name,))
    if isinstance(c, Not):
        return concept_names_in(c.arg)
    if isinstance(c, (And, Or)):
        out: frozenset[str] = frozenset()
        for a in c.args:
            out |= concept_names_in(a)
        return out
    if isinstance(c, (Exists, Forall)):
        return concept_names_in(c.filler)
    return frozenset()


def role_names_in(c: ConceptExpr) -> frozenset[str]:
    if isinstance(c, Not):
        return role_names_in(c.arg)
    if isinstance(c, (And, Or)):
        out: frozenset[str] = frozenset()
        for a in c.args:
            out |= role_names_in(a)
        return out
    if isinstance(c, (Exists, Forall)):
        return frozenset((c.role,)) | role_names_in(c.filler)
    if isinstance(c, AtLeast):
        return frozenset((c.role,))
    return frozenset()


# ---------------------------------------------------------------------------
# TBox / ABox / KnowledgeBase
# ---------------------------------------------------------------------------

class DefKind(Enum):
    EQUIV = "equiv"        # Name := body     (full definition)
    SUBSUMED = "subsumed"  # Name <= body     (partial definition)


@dataclass(frozen=True)
class Definition:
    kind: DefKind
    body: ConceptExpr


@dataclass(frozen=True)
class TBox:
    """Named concept definitions.  Each name is defined at most once."""

    definitions: dict[str, Definition] = field(default_factory=dict)

    def get(self, name: str) -> Definition | None:
        return self.definitions.get(name)

    def check_acyclic(self) -> None:
        """Raise :class:`CyclicTBox` if any definition reaches itself."""
        # Colors: 0 unvisited, 1 on the current expansion path, 2 done.
        color: dict[str, int] = {}

        def visit(name: str, path: tuple[str, ...]) -> None:
            if color.get(name) == 2:
                return
            if color.get(name) == 1:
                start = path.index(name)
                raise CyclicTBox(path[start:] + (name,))
            defn = self.definitions.get(name)
            if defn is None:
                return
            color[name] = 1
            for ref in sorted(concept_names_in(defn.body)):
                visit(ref, path + (name,))
            color[name] = 2

        for name in self.definitions:
            visit(name, ())


@dataclass(frozen=True)
class ABox:
    concept_assertions: frozenset[tuple[str, str]]       # (concept, individual)
    role_assertions: frozenset[tuple[str, str, str]]     # (role, source, target)
    individuals: frozenset[str]

    @classmethod
    def from_assertions(cls, concept_assertions, role_assertions) -> "ABox":
        cas = frozenset(concept_assertions)
        ras = frozenset(role_assertions)
        inds = frozenset(a for _, a in cas) | frozenset(
            x for _, s, t in ras for x in (s, t)
        )
        return cls(cas, ras, inds)

    def asserted_concepts(self, individual: str) -> frozenset[str]:
        return frozenset(c for c, a in self.concept_assertions if a == individual)

    def successors(self, individual: str, role: str) -> frozenset[str]:
        return frozenset(
            t for r, s, t in self.role_assertions if r == role and s == individual
        )


EMPTY_ABOX = ABox.from_assertions((), ())


@dataclass(frozen=True)
class Signature:
    concept_names: frozenset[str]
    role_names: frozenset[str]
    individuals: frozenset[str]


@dataclass(frozen=True)
class KnowledgeBase:
    tbox: TBox
    abox: ABox
    signature: Signature

    @classmethod
    def assemble(cls, tbox: TBox, abox: ABox) -> "KnowledgeBase":
        """Build a KB, derive its signature, and verify TBox acyclicity."""
        tbox.check_acyclic()
        concepts = set(tbox.definitions)
        roles: set[str] = set()
        for defn in tbox.definitions.values():
            concepts |= concept_names_in(defn.body)
            roles |= role_names_in(defn.body)
        concepts |= {c for c, _ in abox.concept_assertions}
        roles |= {r for r, _, _ in abox.role_assertions}
        sig = Signature(frozenset(concepts), frozenset(roles), abox.individuals)
        return cls(tbox, abox, sig)

    @property
    def individuals(self) -> frozenset[str]:
        return self.abox.individuals


# ---------------------------------------------------------------------------
# Negation normal form
# ---------------------------------------------------------------------------

def nnf(c: ConceptExpr) -> ConceptExpr:
    """Push negation down to concept names.

    The result is equivalent to ``c`` and contains ``Not`` only directly
    above ``Atom``.  ``not atleast 1 R`` rewrites to ``forall R.Bottom``;
    for n >= 2 there is no expressible rewriting and
    :class:`UnsupportedNegation` is raised.
    """
    if isinstance(c, Not):
        return _nnf_neg(c.arg)
    if isinstance(c, And):
        return And(tuple(nnf(a) for a in c.args))
    if isinstance(c, Or):
        return Or(tuple(nnf(a) for a in c.args))
    if isinstance(c, Exists):
        return Exists(c.role, nnf(c.filler))
    if isinstance(c, Forall):
        return Forall(c.role, nnf(c.filler))
    return c


def _nnf_neg(c: ConceptExpr) -> ConceptExpr:
    if isinstance(c, Top):
        return BOTTOM
    if isinstance(c, Bottom):
        return TOP
    if isinstance(c, Atom):
        return Not(c)
    if isinstance(c, Not):
        return nnf(c.arg)
    if isinstance(c, And):
        return Or(tuple(_nnf_neg(a) for a in c.args))
    if isinstance(c, Or):
        return And(tuple(_nnf_neg(a) for a in c.args))
    if isinstance(c, Exists):
        return Forall(c.role, _nnf_neg(c.filler))
    if isinstance(c, Forall):
        return Exists(c.role, _nnf_neg(c.filler))
    if isinstance(c, AtLeast):
        if c.n == 1:
            # no R-successor at all: forall R.Bottom
            return Forall(c.role, BOTTOM)
        raise UnsupportedNegation(
            f"cannot negate 'atleast {c.n} {c.role}': "
            "no at-most restriction in the constructor set"
        )
    raise TypeError(f"unexpected concept node: {c!r}")


# ---------------------------------------------------------------------------
# Unfolding
# ---------------------------------------------------------------------------

def marker_name(name: str) -> str:
    """Fresh primitive marker for a partially defined name.

    ``*`` is not a legal name character, so markers can never collide
    with user-written names (and never round-trip through the parser).
    """
    return name + "*"


def unfold(c: ConceptExpr, tbox: TBox) -> ConceptExpr:
    """Expand every defined name occurring in ``c``.

    Full definitions are replaced by their bodies; a partial definition
    ``N <= D`` becomes ``N* and D`` where ``N*`` is the primitive marker
    for ``N``.  The result mentions only primitive atoms and markers.
    """
    return _unfold(c, tbox, ())


def _unfold(c: ConceptExpr, tbox: TBox, path: tuple[str, ...]) -> ConceptExpr:
    if isinstance(c, Atom):
        defn = tbox.get(c.name)
        if defn is None:
            return c
        if c.name in path:
            start = path.index(c.name)
            raise CyclicTBox(path[start:] + (c.name,))
        body = _unfold(defn.body, tbox, path + (c.name,))
        if defn.kind is DefKind.EQUIV:
            return body
        return And((Atom(marker_name(c.name)), body))
    if isinstance(c, Not):
        return Not(_unfold(c.arg, tbox, path))
    if isinstance(c, And):
        return And(tuple(_unfold(a, tbox, path) for a in c.args))
    if isinstance(c, Or):
        return Or(tuple(_unfold(a, tbox, path) for a in c.args))
    if isinstance(c, Exists):
        return Exists(c.role, _unfold(c.filler, tbox, path))
    if isinstance(c, Forall):
        return Forall(c.role, _unfold(c.filler, tbox, path))
    return c


# ---------------------------------------------------------------------------
# Normalization
# ---------------------------------------------------------------------------

def normalize(c: ConceptExpr) -> ConceptExpr:
    """Rewrite ``c`` into an equivalent canonical form.

    Applies, bottom-up: NNF, flattening of nested conjunctions and
    disjunctions, merging of same-role value restrictions
    (``forall R.C1 and forall R.C2`` -> ``forall R.(C1 and C2)``),
    unit/absorbing element removal for Top and Bottom, deduplication of
    equal siblings, and a deterministic lexicographic ordering of
    conjuncts and disjuncts.
    """
    return _norm(nnf(c))


def _norm(c: ConceptExpr) -> ConceptExpr:
    if isinstance(c, And):
        flat: list[ConceptExpr] = []
        for a in c.args:
            na = _norm(a)
            if isinstance(na, And):
                flat.extend(na.args)
            else:
                flat.append(na)
        # merge all value restrictions on the same role
        foralls: dict[str, list[ConceptExpr]] = {}
        rest: list[ConceptExpr] = []
        for a in flat:
            if isinstance(a, Forall):
                foralls.setdefault(a.role, []).append(a.filler)
            else:
                rest.append(a)
        for role, fillers in foralls.items():
            if len(fillers) == 1:
                rest.append(Forall(role, fillers[0]))
            else:
                rest.append(Forall(role, _norm(And(tuple(fillers)))))
        if any(isinstance(a, Bottom) for a in rest):
            return BOTTOM
        rest = [a for a in rest if not isinstance(a, Top)]
        rest = list(dict.fromkeys(rest))
        rest.sort(key=str)
        return make_and(rest)
    if isinstance(c, Or):
        flat = []
        for a in c.args:
            na = _norm(a)
            if isinstance(na, Or):
                flat.extend(na.args)
            else:
                flat.append(na)
        if any(isinstance(a, Top) for a in flat):
            return TOP
        flat = [a for a in flat if not isinstance(a, Bottom)]
        flat = list(dict.fromkeys(flat))
        flat.sort(key=str)
        return make_or(flat)
    if isinstance(c, Exists):
        return Exists(c.role, _norm(c.filler))
    if isinstance(c, Forall):
        return Forall(c.role, _norm(c.filler))
    return c


# ---------------------------------------------------------------------------
# Depth
# ---------------------------------------------------------------------------

def concept_depth(c: ConceptExpr) -> int:
    """Maximal nesting of role restrictions."""
    if isinstance(c, Not):
        return concept_depth(c.arg)
    if isinstance(c, (And, Or)):
        return max(concept_depth(a) for a in c.args)
    if isinstance(c, (Exists, Forall)):
        return 1 + concept_depth(c.filler)
    if isinstance(c, AtLeast):
        return 1
    return 0
