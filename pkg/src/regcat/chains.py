"""Towers of higher star maps and the n-regularity closure equations.

A star chain over a base f: X -> Y is a finite tower f, f(1), ..., f(n) with
alternating typing: odd stars map Y -> X, even stars map X -> Y.  The chain is
valid at order k when the order-k closure equation holds:

* odd k:   f ∘ f(1) ∘ ... ∘ f(k) ∘ f = f            (literal n-regularity)
* even k:  f(1) ∘ f(2) ∘ ... ∘ f(k) ∘ f(1) = f(1)   (type-corrected form)

The even form drops the leading f of the published equation, which does not
typecheck under the stated domain assignments; at k = 2 it reduces to
reflexive regularity of f(1) with witness f(2), which is the evident intent.
``check_chain`` verifies the closure of every prefix order 1..n, which is what
makes level-by-level pruning in ``find_chains`` sound.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import FinMap, all_maps, compose, compose_path, map_space_size
from .errors import (
    AlternationViolation,
    NotAGeneralizedInverse,
    OrderMismatch,
    SearchSpaceTooLarge,
    TypeMismatch,
)
from .inverses import DEFAULT_MAX_SPACE, is_inverse


@dataclass(frozen=True)
class StarChain:
    base: FinMap
    stars: tuple[FinMap, ...]

    @property
    def order(self) -> int:
        return len(self.stars)


def make_chain(base: FinMap, stars) -> StarChain:
    """Validate alternating typing and wrap the tower."""
    stars = tuple(stars)
    X, Y = base.dom, base.cod
    for k, s in enumerate(stars, start=1):
        dom, cod = (Y, X) if k % 2 == 1 else (X, Y)
        if s.dom.id != dom.id or s.cod.id != cod.id:
            raise AlternationViolation(k, dom.id, cod.id, f"{s.dom.id}->{s.cod.id}")
    return StarChain(base, stars)


def _closure_holds(c: StarChain, k: int) -> tuple[bool, Optional[int]]:
    """Order-k closure equation on the length-k prefix; returns (holds, witness)."""
    f = c.base
    prefix = c.stars[:k]
    if k % 2 == 1:
        # f ∘ s1 ∘ ... ∘ sk ∘ f = f, rightmost applied first
        lhs = compose_path([f, *reversed(prefix), f])
        rhs = f
    else:
        # s1 ∘ s2 ∘ ... ∘ sk ∘ s1 = s1
        lhs = compose_path([prefix[0], *reversed(prefix[1:]), prefix[0]])
        rhs = prefix[0]
    if lhs == rhs:
        return True, None
    witness = next(i for i in range(len(rhs.table)) if lhs.table[i] != rhs.table[i])
    return False, witness


def chain_obstructor(c: StarChain) -> FinMap:
    """The endomap of dom(base) collecting the whole tower.

    Odd order:  e = f(1) ∘ ... ∘ f(n) ∘ f;  even order:  e = f(1) ∘ ... ∘ f(n).
    """
    if c.order % 2 == 1:
        return compose_path([c.base, *reversed(c.stars)])
    return compose_path(list(reversed(c.stars)))


@dataclass(frozen=True)
class ChainVerdict:
    odd_closure: Optional[bool]    # conjunction over odd prefix orders, None if none
    even_closure: Optional[bool]   # conjunction over even prefix orders, None if none
    ef_form: bool                  # base ∘ obstructor = base
    obstructor: FinMap
    obstructor_idempotent: bool
    failures: tuple[tuple[str, str], ...]  # (equation id, witness element label)

    @property
    def valid(self) -> bool:
        return not self.failures


def check_chain(c: StarChain) -> ChainVerdict:
    """Closure verdict for every prefix order of the tower."""
    odd: Optional[bool] = None
    even: Optional[bool] = None
    failures: list[tuple[str, str]] = []
    for k in range(1, c.order + 1):
        holds, witness = _closure_holds(c, k)
        if k % 2 == 1:
            odd = holds if odd is None else odd and holds
            eq = f"nreg2[{k}]"
            carrier = c.base.dom
        else:
            even = holds if even is None else even and holds
            eq = f"nreg1[{k}]"
            carrier = c.base.cod
        if not holds:
            failures.append((eq, carrier.label(witness)))
    e = chain_obstructor(c)
    return ChainVerdict(
        odd_closure=odd,
        even_closure=even,
        ef_form=compose(c.base, e) == c.base,
        obstructor=e,
        obstructor_idempotent=compose(e, e) == e,
        failures=tuple(failures),
    )


def extend_periodic(f: FinMap, fstar: FinMap, n: int) -> StarChain:
    """The canonical chain [f*, f, f*, f, ...] of a generalized pair."""
    if not is_inverse(f, fstar, "generalized"):
        raise NotAGeneralizedInverse(
            f"{fstar.name!r} is not a generalized inverse of {f.name!r}"
        )
    stars = tuple(fstar if k % 2 == 1 else f for k in range(1, n + 1))
    return StarChain(f, stars)


@dataclass(frozen=True)
class ChainSearchResult:
    chains: list[StarChain]
    truncated: bool


def find_chains(
    f: FinMap,
    n: int,
    limit: Optional[int] = None,
    max_space: int = DEFAULT_MAX_SPACE,
) -> ChainSearchResult:
    """Depth-first enumeration of all valid order-n towers over f.

    A partial tower is extended only while every closure equation already
    determined by the prefix holds, so each emitted chain passes check_chain.
    Results come in lexicographic order of the concatenated star tables.
    """
    if n < 1:
        raise ValueError("chain order must be >= 1")
    X, Y = f.dom, f.cod
    space = 1
    for k in range(1, n + 1):
        dom, cod = (Y, X) if k % 2 == 1 else (X, Y)
        space *= map_space_size(dom, cod)
    if limit is None and space > max_space:
        raise SearchSpaceTooLarge(space, max_space)

    found: list[StarChain] = []
    truncated = False

    def dfs(stars: list[FinMap]) -> bool:
        nonlocal truncated
        if limit is not None and len(found) >= limit:
            truncated = True
            return False
        k = len(stars)
        if k == n:
            found.append(StarChain(f, tuple(stars)))
            return True
        dom, cod = (Y, X) if (k + 1) % 2 == 1 else (X, Y)
        for cand in all_maps(dom, cod, prefix=f"{f.name}_s{k + 1}_"):
            stars.append(cand)
            holds, _ = _closure_holds(StarChain(f, tuple(stars)), k + 1)
            if holds and not dfs(stars):
                stars.pop()
                return False
            stars.pop()
        return True

    dfs([])
    return ChainSearchResult(found, truncated)


@dataclass(frozen=True)
class HigherProjector:
    projector: FinMap
    side: str  # "codomain" for odd order, "domain" for even order
    idempotent: bool
    absorption: bool


def higher_projector(c: StarChain) -> HigherProjector:
    """The higher projector of a tower and its absorption law.

    Odd order n:  P = f ∘ f(1) ∘ ... ∘ f(n) on cod(f), absorption P∘f = f.
    Even order n: P = f(1) ∘ ... ∘ f(n) on dom(f), absorption P∘f(1) = f(1)
    (the type-corrected reading of the even absorption law).
    """
    if c.order % 2 == 1:
        p = compose_path([*reversed(c.stars), c.base])
        absorption = compose(p, c.base) == c.base
        side = "codomain"
    else:
        p = compose_path(list(reversed(c.stars)))
        absorption = compose(p, c.stars[0]) == c.stars[0]
        side = "domain"
    return HigherProjector(p, side, compose(p, p) == p, absorption)


def star_compose(cf: StarChain, cg: StarChain) -> tuple[StarChain, ChainVerdict]:
    """Formal composite tower over g∘f.

    The k-th star is f(k)∘g(k) for odd k and g(k)∘f(k) for even k.  The
    construction is purely formal: the composite is returned together with
    its verdict, which may be negative.
    """
    if cf.order != cg.order:
        raise OrderMismatch(f"orders {cf.order} and {cg.order} differ")
    if cf.base.cod.id != cg.base.dom.id:
        raise TypeMismatch(cg.base.dom.id, cf.base.cod.id, "star_compose")
    base = compose(cg.base, cf.base)
    stars = []
    for k in range(1, cf.order + 1):
        fk, gk = cf.stars[k - 1], cg.stars[k - 1]
        stars.append(compose(fk, gk) if k % 2 == 1 else compose(gk, fk))
    chain = make_chain(base, stars)
    return chain, check_chain(chain)
