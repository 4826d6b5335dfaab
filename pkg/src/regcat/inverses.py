"""Inner, outer and generalized inverses of finite maps, and their projectors.

A map g: cod(f) -> dom(f) is an *inner* inverse of f when f∘g∘f = f, an
*outer* inverse when g∘f∘g = g, and a *generalized* inverse when it is both.
Every finite map with a nonempty domain (or empty codomain) has an inner
inverse, so "regular" is not a restriction here; what varies is how many
inverses exist and whether the generalized one is unique.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import FinMap, all_maps, compose, map_space_size
from .errors import (
    NoInverseExists,
    NotAGeneralizedInverse,
    NotAnInnerInverse,
    SearchSpaceTooLarge,
    TypeMismatch,
)

INVERSE_KINDS = ("inner", "outer", "generalized")

DEFAULT_MAX_SPACE = 10**8


def _check_reversed_typing(f: FinMap, g: FinMap) -> None:
    if g.dom.id != f.cod.id or g.cod.id != f.dom.id:
        raise TypeMismatch(f"{f.cod.id}->{f.dom.id}", f"{g.dom.id}->{g.cod.id}")


def is_inverse(f: FinMap, g: FinMap, kind: str) -> bool:
    """Pointwise check of the defining equation(s) of the given inverse kind."""
    _check_reversed_typing(f, g)
    if kind not in INVERSE_KINDS:
        raise ValueError(f"unknown inverse kind {kind!r}")
    inner = compose(compose(f, g), f) == f
    if kind == "inner":
        return inner
    outer = compose(compose(g, f), g) == g
    if kind == "outer":
        return outer
    return inner and outer


def section_inner_inverse(f: FinMap) -> FinMap:
    """Canonical inner inverse: least-index preimage on the image, index 0 off it."""
    if f.dom.cardinality == 0 and f.cod.cardinality > 0:
        raise NoInverseExists(f"{f.name!r} has empty domain and nonempty codomain")
    first_preimage: dict[int, int] = {}
    for x, y in enumerate(f.table):
        first_preimage.setdefault(y, x)
    table = tuple(first_preimage.get(y, 0) for y in range(f.cod.cardinality))
    return FinMap(f"{f.name}_sec", f.cod, f.dom, table)


@dataclass(frozen=True)
class InverseEnumeration:
    maps: list[FinMap]
    count: int
    truncated: bool


def enumerate_inverses(
    f: FinMap,
    kind: str,
    limit: Optional[int] = None,
    max_space: int = DEFAULT_MAX_SPACE,
) -> InverseEnumeration:
    """All inverses of the given kind, in lexicographic table order.

    Without a limit the whole candidate space |dom|^|cod| is swept and the
    count is exact; SearchSpaceTooLarge is raised if that space exceeds
    max_space.  With a limit the sweep stops after `limit` hits and the
    result is flagged truncated.
    """
    space = map_space_size(f.cod, f.dom)
    if limit is None and space > max_space:
        raise SearchSpaceTooLarge(space, max_space)
    found: list[FinMap] = []
    truncated = False
    for g in all_maps(f.cod, f.dom, prefix=f"{f.name}_inv"):
        if limit is not None and len(found) >= limit:
            truncated = True
            break
        if is_inverse(f, g, kind):
            found.append(g)
    return InverseEnumeration(found, len(found), truncated)


def generalized_from_inner(f: FinMap, g_in: FinMap) -> FinMap:
    """Reflexive (generalized) inverse g∘f∘g obtained from an inner inverse g."""
    if not is_inverse(f, g_in, "inner"):
        raise NotAnInnerInverse(f"{g_in.name!r} is not an inner inverse of {f.name!r}")
    return compose(g_in, compose(f, g_in))


@dataclass(frozen=True)
class ProjectorPair:
    """The two projection operators of a pair (f, f*)."""

    p_f: FinMap        # f∘f*, endomap of cod(f)
    p_fstar: FinMap    # f*∘f, endomap of dom(f)
    p_f_idempotent: bool
    p_fstar_idempotent: bool
    absorbs_f: bool      # p_f∘f = f = f∘p_fstar
    absorbs_fstar: bool  # p_fstar∘f* = f* = f*∘p_f


def projectors(f: FinMap, fstar: FinMap) -> ProjectorPair:
    _check_reversed_typing(f, fstar)
    p_f = compose(f, fstar)
    p_fstar = compose(fstar, f)
    return ProjectorPair(
        p_f=p_f,
        p_fstar=p_fstar,
        p_f_idempotent=compose(p_f, p_f) == p_f,
        p_fstar_idempotent=compose(p_fstar, p_fstar) == p_fstar,
        absorbs_f=compose(p_f, f) == f and compose(f, p_fstar) == f,
        absorbs_fstar=compose(p_fstar, fstar) == fstar and compose(fstar, p_f) == fstar,
    )


@dataclass(frozen=True)
class InvertibilityClass:
    retraction: bool
    coretraction: bool
    retraction_witness: Optional[FinMap]
    coretraction_witness: Optional[FinMap]


def invertibility_class(f: FinMap) -> InvertibilityClass:
    """Right/left invertibility with canonical witnesses.

    f is a retraction iff some g has f∘g = Id (for finite sets: f surjective),
    and a coretraction iff some g has g∘f = Id (f injective and, when the
    domain is empty, the codomain empty too).
    """
    retraction_witness = None
    coretraction_witness = None
    if len(set(f.table)) == f.cod.cardinality:
        g = section_inner_inverse(f) if f.cod.cardinality else FinMap(
            f"{f.name}_ret", f.cod, f.dom, ()
        )
        if compose(f, g).is_identity():
            retraction_witness = g
    if len(set(f.table)) == len(f.table):
        if f.dom.cardinality == 0:
            if f.cod.cardinality == 0:
                coretraction_witness = FinMap(f"{f.name}_coret", f.cod, f.dom, ())
        else:
            preimage = {y: x for x, y in enumerate(f.table)}
            table = tuple(preimage.get(y, 0) for y in range(f.cod.cardinality))
            g = FinMap(f"{f.name}_coret", f.cod, f.dom, table)
            if compose(g, f).is_identity():
                coretraction_witness = g
    return InvertibilityClass(
        retraction=retraction_witness is not None,
        coretraction=coretraction_witness is not None,
        retraction_witness=retraction_witness,
        coretraction_witness=coretraction_witness,
    )


@dataclass(frozen=True)
class ClosureReport:
    projectors_commute: bool
    composite_regular: bool
    composite_star: FinMap


def closure_composite(f: FinMap, fstar: FinMap, g: FinMap, gstar: FinMap) -> ClosureReport:
    """Closure of regularity under composition via projector commutativity.

    With f: X->Y and g: Y->Z, checks whether 𝒫_f = f∘f* and 𝒫_{g*} = g*∘g
    commute on Y, and whether f*∘g* is a generalized inverse of g∘f.
    """
    _check_reversed_typing(f, fstar)
    _check_reversed_typing(g, gstar)
    if f.cod.id != g.dom.id:
        raise TypeMismatch(g.dom.id, f.cod.id, "closure_composite")
    p_f = compose(f, fstar)
    p_gstar = compose(gstar, g)
    commute = compose(p_f, p_gstar) == compose(p_gstar, p_f)
    composite = compose(g, f)
    composite_star = compose(fstar, gstar)
    regular = is_inverse(composite, composite_star, "generalized")
    return ClosureReport(commute, regular, composite_star)


def unique_generalized_inverse(f: FinMap, max_space: int = DEFAULT_MAX_SPACE) -> bool:
    """True iff exactly one map satisfies both regularity equations for f."""
    return enumerate_inverses(f, "generalized", max_space=max_space).count == 1
