"""Extension-based semantic similarity between concepts and individuals.

The measure compares two concepts through the cardinalities of their
extensions and of the extension of their conjunction::

    s(C, D) = |I| / (|C| + |D| - |I|) * max(|I|/|C|, |I|/|D|)    I = C and D

It is 1 exactly for equivalent concepts with non-empty extensions, 0
exactly for disjoint (or empty) extensions, and strictly between
otherwise.  Individuals are compared through their most-specific-concept
approximations.

Values are exact rationals; any rounding happens at the presentation
layer only.  Each concept-pair comparison performs exactly three
extension computations (for C, D and their conjunction) unless the
optional cache is enabled, and the reports carry the counters so the
cost model is observable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import CardinalityViolation
from .model import And, ConceptExpr, KnowledgeBase
from .msc import msc_approx
from .retrieval import Backend, ExtensionEngine

Item = Union[ConceptExpr, str]  # a concept expression or an individual name


@dataclass(frozen=True)
class SimilarityReport:
    value: Fraction
    ext_c: int
    ext_d: int
    ext_i: int
    backend: Backend
    extension_computations: int
    msc_computations: int
    msc_depth: int | None

    def to_json_dict(self) -> dict:
        return {
            "value": float(self.value),
            "value_exact": f"{self.value.numerator}/{self.value.denominator}",
            "ext_c": self.ext_c,
            "ext_d": self.ext_d,
            "ext_i": self.ext_i,
            "backend": self.backend.value,
            "extension_computations": self.extension_computations,
            "msc_computations": self.msc_computations,
            "msc_depth": self.msc_depth,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "SimilarityReport":
        return cls(
            value=Fraction(data["value_exact"]),
            ext_c=data["ext_c"],
            ext_d=data["ext_d"],
            ext_i=data["ext_i"],
            backend=Backend(data["backend"]),
            extension_computations=data["extension_computations"],
            msc_computations=data["msc_computations"],
            msc_depth=data["msc_depth"],
        )


def sim_formula(n_c: int, n_d: int, n_i: int) -> Fraction:
    """Similarity value from the three extension cardinalities.

    ``n_i = 0`` (disjoint or empty extensions) yields 0 without touching
    the formula, which also covers the otherwise-undefined 0/0 cases;
    both denominators are strictly positive whenever ``n_i > 0``.
    """
    if min(n_c, n_d, n_i) < 0:
        raise ValueError("cardinalities must be non-negative")
    if n_i > n_c or n_i > n_d:
        raise CardinalityViolation(
            f"intersection {n_i} exceeds extension ({n_c}, {n_d})"
        )
    if n_i == 0:
        return Fraction(0)
    overlap = Fraction(n_i, n_c + n_d - n_i)
    incidence = max(Fraction(n_i, n_c), Fraction(n_i, n_d))
    return overlap * incidence


def _compare(kb: KnowledgeBase, c: ConceptExpr, d: ConceptExpr,
             backend: Backend, cache: bool,
             msc_computations: int, msc_depth: int | None) -> SimilarityReport:
    engine = ExtensionEngine(kb, backend, cache_enabled=cache)
    ext_c = engine.extension(c)
    ext_d = engine.extension(d)
    ext_i = engine.extension(And((c, d)))
    return SimilarityReport(
        value=sim_formula(len(ext_c), len(ext_d), len(ext_i)),
        ext_c=len(ext_c),
        ext_d=len(ext_d),
        ext_i=len(ext_i),
        backend=backend,
        extension_computations=engine.computations,
        msc_computations=msc_computations,
        msc_depth=msc_depth,
    )


def sim_concepts(kb: KnowledgeBase, c: ConceptExpr, d: ConceptExpr,
                 backend: Backend = Backend.CANONICAL,
                 cache: bool = False) -> SimilarityReport:
    """Similarity of two concept descriptions over the knowledge base."""
    return _compare(kb, c, d, backend, cache, 0, None)


def sim_individual_concept(kb: KnowledgeBase, individual: str, c: ConceptExpr,
                           depth: int | None = None,
                           backend: Backend = Backend.CANONICAL,
                           cache: bool = False) -> SimilarityReport:
    """Similarity of an individual (via its MSC approximation) and a concept."""
    msc = msc_approx(kb, individual, depth, backend)
    return _compare(kb, msc.concept, c, backend, cache, 1, msc.depth)


def sim_individuals(kb: KnowledgeBase, a: str, b: str,
                    depth: int | None = None,
                    backend: Backend = Backend.CANONICAL,
                    cache: bool = False) -> SimilarityReport:
    """Similarity of two individuals via their MSC approximations."""
    msc_a = msc_approx(kb, a, depth, backend)
    msc_b = msc_approx(kb, b, depth, backend)
    return _compare(kb, msc_a.concept, msc_b.concept, backend, cache,
                    2, msc_a.depth)


def sim_pair(kb: KnowledgeBase, x: Item, y: Item,
             depth: int | None = None,
             backend: Backend = Backend.CANONICAL,
             cache: bool = False) -> SimilarityReport:
    """Dispatch on the argument kinds (concept or individual name)."""
    x_ind = isinstance(x, str)
    y_ind = isinstance(y, str)
    if x_ind and y_ind:
        return sim_individuals(kb, x, y, depth, backend, cache)
    if x_ind:
        return sim_individual_concept(kb, x, y, depth, backend, cache)
    if y_ind:
        report = sim_individual_concept(kb, y, x, depth, backend, cache)
        # restore the caller's argument order in the cardinalities
        return SimilarityReport(
            value=report.value,
            ext_c=report.ext_d,
            ext_d=report.ext_c,
            ext_i=report.ext_i,
            backend=report.backend,
            extension_computations=report.extension_computations,
            msc_computations=report.msc_computations,
            msc_depth=report.msc_depth,
        )
    return sim_concepts(kb, x, y, backend, cache)


def sim_matrix(kb: KnowledgeBase, items: Sequence[Item],
               depth: int | None = None,
               backend: Backend = Backend.CANONICAL,
               cache: bool = False) -> list[list[Fraction]]:
    """Symmetric matrix of pairwise similarities."""
    if not items:
        raise ValueError("items must be non-empty")
    n = len(items)
    matrix = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            value = sim_pair(kb, items[i], items[j], depth, backend, cache).value
            matrix[i][j] = value
            matrix[j][i] = value
    return matrix
