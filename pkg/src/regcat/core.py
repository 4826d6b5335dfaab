"""Finite sets, total maps between them, and the basic calculus on both.

Everything downstream (inverses, chains, diagrams, braidings) is built out of
two value types defined here: :class:`FiniteSet` and :class:`FinMap`.  Both are
immutable; all operations are pure functions returning new values.

Conventions fixed here and relied on everywhere else:

* object identity is nominal -- two sets are the same object iff their ids
  are equal, even when the carriers coincide;
* elements are addressed by dense index in declaration order;
* product sets use row-major indexing with the leftmost factor most
  significant, so product tables are reproducible bit-for-bit;
* subset sweeps quantify over *all* subsets, the empty and the full one
  included, and report witnesses in lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations, product
from typing import Iterable, Iterator, Optional, Sequence

from .errors import (
    DuplicateAssignment,
    MissingAssignment,
    SubsetDomainMismatch,
    TypeMismatch,
    UnknownLabel,
)


@dataclass(frozen=True)
class FiniteSet:
    """A named finite carrier with ordered, labelled elements."""

    id: str
    elements: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.elements)) != len(self.elements):
            seen = set()
            for lbl in self.elements:
                if lbl in seen:
                    raise DuplicateAssignment(lbl)
                seen.add(lbl)
        object.__setattr__(self, "_index", {l: i for i, l in enumerate(self.elements)})

    @property
    def cardinality(self) -> int:
        return len(self.elements)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(label, self.id) from None

    def label(self, i: int) -> str:
        return self.elements[i]

    def __len__(self) -> int:
        return len(self.elements)


def finite_set(id: str, labels: Iterable[str]) -> FiniteSet:
    return FiniteSet(id, tuple(labels))


@dataclass(frozen=True, eq=False)
class FinMap:
    """A total map between two finite sets, stored as a table of indices.

    Value equality ignores the name: two maps are equal iff their dom id,
    cod id and table coincide.
    """

    name: str
    dom: FiniteSet
    cod: FiniteSet
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.dom.cardinality:
            raise MissingAssignment(
                self.dom.elements[len(self.table)]
                if len(self.table) < self.dom.cardinality
                else "<extra entries>"
            )
        for i, v in enumerate(self.table):
            if not 0 <= v < self.cod.cardinality:
                raise UnknownLabel(f"index {v}", self.cod.id)

    def __call__(self, i: int) -> int:
        return self.table[i]

    def apply_label(self, label: str) -> str:
        return self.cod.label(self.table[self.dom.index(label)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinMap):
            return NotImplemented
        return (
            self.dom.id == other.dom.id
            and self.cod.id == other.cod.id
            and self.table == other.table
        )

    def __hash__(self) -> int:
        return hash((self.dom.id, self.cod.id, self.table))

    def is_endo(self) -> bool:
        return self.dom.id == self.cod.id

    def is_identity(self) -> bool:
        return self.is_endo() and all(v == i for i, v in enumerate(self.table))


@dataclass(frozen=True)
class Subset:
    """A subset of a finite set, as a frozen set of element indices."""

    of: FiniteSet
    members: frozenset[int]

    def __post_init__(self):
        for i in self.members:
            if not 0 <= i < self.of.cardinality:
                raise SubsetDomainMismatch(f"index {i} outside {self.of.id!r}")

    def labels(self) -> tuple[str, ...]:
        return tuple(self.of.label(i) for i in sorted(self.members))

    def key(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))


@dataclass(frozen=True)
class ProductSet:
    """An ordered product of finite sets with a flat row-major carrier."""

    factors: tuple[FiniteSet, ...]
    carrier: FiniteSet

    @staticmethod
    def of(*factors: FiniteSet) -> "ProductSet":
        labels = [
            "(" + ",".join(t) + ")"
            for t in product(*(s.elements for s in factors))
        ]
        pid = "(" + "x".join(s.id for s in factors) + ")"
        return ProductSet(tuple(factors), FiniteSet(pid, tuple(labels)))

    def rank(self, indices: Sequence[int]) -> int:
        # leftmost factor most significant
        i = 0
        for s, v in zip(self.factors, indices):
            i = i * s.cardinality + v
        return i

    def unrank(self, i: int) -> tuple[int, ...]:
        out = []
        for s in reversed(self.factors):
            i, r = divmod(i, s.cardinality)
            out.append(r)
        return tuple(reversed(out))


# --- constructors ------------------------------------------------------------


def build_map(
    name: str,
    dom: FiniteSet,
    cod: FiniteSet,
    assignments: Iterable[tuple[str, str]],
) -> FinMap:
    """Build a validated map from (dom-label, cod-label) pairs."""
    table: list[Optional[int]] = [None] * dom.cardinality
    for src, dst in assignments:
        i = dom.index(src)
        if table[i] is not None:
            raise DuplicateAssignment(src)
        table[i] = cod.index(dst)
    for i, v in enumerate(table):
        if v is None:
            raise MissingAssignment(dom.label(i))
    return FinMap(name, dom, cod, tuple(table))  # type: ignore[arg-type]


def map_from_table(name: str, dom: FiniteSet, cod: FiniteSet, table: Sequence[int]) -> FinMap:
    return FinMap(name, dom, cod, tuple(table))


def identity(X: FiniteSet) -> FinMap:
    return FinMap(f"id_{X.id}", X, X, tuple(range(X.cardinality)))


def compose(g: FinMap, f: FinMap) -> FinMap:
    """Composite g∘f, applying f first."""
    if f.cod.id != g.dom.id or f.cod.cardinality != g.dom.cardinality:
        raise TypeMismatch(g.dom.id, f.cod.id, "compose")
    return FinMap(
        f"({g.name}.{f.name})",
        f.dom,
        g.cod,
        tuple(g.table[v] for v in f.table),
    )


def compose_path(maps: Sequence[FinMap]) -> FinMap:
    """Compose a nonempty sequence written in application order (first applied first)."""
    return reduce(lambda acc, m: compose(m, acc), maps[1:], maps[0])


def tensor(f: FinMap, g: FinMap) -> FinMap:
    """Product map (f⊗g)(x, y) = (f(x), g(y)) on row-major product carriers."""
    dom = ProductSet.of(f.dom, g.dom)
    cod = ProductSet.of(f.cod, g.cod)
    table = []
    for x in range(f.dom.cardinality):
        for y in range(g.dom.cardinality):
            table.append(cod.rank((f.table[x], g.table[y])))
    return FinMap(f"({f.name}*{g.name})", dom.carrier, cod.carrier, tuple(table))


# --- predicates and subset calculus ------------------------------------------


@dataclass(frozen=True)
class MapClassification:
    injective: bool
    surjective: bool
    bijective: bool
    idempotent: Optional[bool]  # None when dom != cod


def classify_map(f: FinMap) -> MapClassification:
    inj = len(set(f.table)) == len(f.table)
    surj = len(set(f.table)) == f.cod.cardinality
    idem = None
    if f.is_endo():
        idem = all(f.table[v] == v for v in f.table)
    return MapClassification(inj, surj, inj and surj, idem)


def image(f: FinMap) -> frozenset[int]:
    return frozenset(f.table)


def direct_image(f: FinMap, A: Subset) -> Subset:
    if A.of.id != f.dom.id:
        raise SubsetDomainMismatch(f"subset of {A.of.id!r}, map from {f.dom.id!r}")
    return Subset(f.cod, frozenset(f.table[i] for i in A.members))


def inverse_image(f: FinMap, B: Subset) -> Subset:
    if B.of.id != f.cod.id:
        raise SubsetDomainMismatch(f"subset of {B.of.id!r}, map into {f.cod.id!r}")
    return Subset(f.dom, frozenset(i for i, v in enumerate(f.table) if v in B.members))


def subsets_lex(X: FiniteSet) -> Iterator[Subset]:
    """All subsets of X ordered lexicographically by sorted index tuple."""
    keys = []
    for r in range(X.cardinality + 1):
        keys.extend(combinations(range(X.cardinality), r))
    for key in sorted(keys):
        yield Subset(X, frozenset(key))


@dataclass(frozen=True)
class SubsetRegularityResult:
    holds: bool
    witness: Optional[Subset]


def check_subset_regularity(f: FinMap, g: FinMap, mode: str) -> SubsetRegularityResult:
    """Subset-level regularity sweep.

    mode "image":     f(g(f(A))) = f(A) for every A ⊆ dom(f);
    mode "reflexive": g(f(g(B))) = g(B) for every B ⊆ cod(f).
    The witness, when present, is the lexicographically least counterexample.
    """
    if g.dom.id != f.cod.id or g.cod.id != f.dom.id:
        raise TypeMismatch(f"{f.cod.id}->{f.dom.id}", f"{g.dom.id}->{g.cod.id}")
    if mode == "image":
        for A in subsets_lex(f.dom):
            fa = direct_image(f, A)
            if direct_image(f, direct_image(g, fa)).members != fa.members:
                return SubsetRegularityResult(False, A)
        return SubsetRegularityResult(True, None)
    if mode == "reflexive":
        for B in subsets_lex(f.cod):
            gb = direct_image(g, B)
            if direct_image(g, direct_image(f, gb)).members != gb.members:
                return SubsetRegularityResult(False, B)
        return SubsetRegularityResult(True, None)
    raise ValueError(f"unknown mode {mode!r}")


# --- exhaustive enumeration helpers -------------------------------------------


def all_maps(dom: FiniteSet, cod: FiniteSet, prefix: str = "m") -> Iterator[FinMap]:
    """Every map dom -> cod in lexicographic table order."""
    if dom.cardinality == 0:
        yield FinMap(f"{prefix}0", dom, cod, ())
        return
    if cod.cardinality == 0:
        return  # no map from a nonempty set into the empty set
    for k, table in enumerate(product(range(cod.cardinality), repeat=dom.cardinality)):
        yield FinMap(f"{prefix}{k}", dom, cod, table)


def map_space_size(dom: FiniteSet, cod: FiniteSet) -> int:
    if dom.cardinality == 0:
        return 1
    return cod.cardinality ** dom.cardinality
