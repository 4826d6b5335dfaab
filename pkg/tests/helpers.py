"""Shared builders and brute-force oracles for the test suite.

Oracles here are deliberately naive (full enumeration, pointwise filters) so
they stay independent of the library code paths they check.
"""

from itertools import product

from regcat.core import FinMap, FiniteSet


def S(sid: str, n: int) -> FiniteSet:
    return FiniteSet(sid, tuple(f"{sid.lower()}{i}" for i in range(n)))


def fm(name, dom, cod, table) -> FinMap:
    return FinMap(name, dom, cod, tuple(table))


def maps_between(dom: FiniteSet, cod: FiniteSet, prefix="m") -> list[FinMap]:
    """All maps dom -> cod in lexicographic table order (independent of core.all_maps)."""
    if dom.cardinality == 0:
        return [FinMap(f"{prefix}0", dom, cod, ())]
    if cod.cardinality == 0:
        return []
    out = []
    for k, t in enumerate(product(range(cod.cardinality), repeat=dom.cardinality)):
        out.append(FinMap(f"{prefix}{k}", dom, cod, t))
    return out


def pointwise_compose(g: FinMap, f: FinMap) -> tuple[int, ...]:
    return tuple(g.table[v] for v in f.table)


def naive_is_inner(f: FinMap, g: FinMap) -> bool:
    return tuple(f.table[g.table[f.table[x]]] for x in range(len(f.table))) == f.table


def naive_is_outer(f: FinMap, g: FinMap) -> bool:
    return tuple(g.table[f.table[g.table[y]]] for y in range(len(g.table))) == g.table


def naive_inverses(f: FinMap, kind: str) -> list[FinMap]:
    out = []
    for g in maps_between(f.cod, f.dom, prefix="g"):
        inner = naive_is_inner(f, g)
        outer = naive_is_outer(f, g)
        keep = {"inner": inner, "outer": outer, "generalized": inner and outer}[kind]
        if keep:
            out.append(g)
    return out


def generalized_pairs(f: FinMap) -> list[FinMap]:
    return naive_inverses(f, "generalized")


def sizes_upto(n, include_empty=False):
    lo = 0 if include_empty else 1
    return range(lo, n + 1)
