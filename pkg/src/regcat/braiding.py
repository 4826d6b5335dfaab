"""Braidings on products of finite sets and the regularized Yang-Baxter search.

A braiding is any map B: X⊗Y -> Y⊗X; no bijectivity is assumed.  The classical
prebraidings Id⊗B and B⊗Id are weakened by replacing the identity in the
passive slot with an idempotent obstructor e, giving

    B^L = e⊗B,   B^R = B⊗e,

and the regularized Yang-Baxter equation B^R∘B^L∘B^R = B^L∘B^R∘B^L on triple
products.  The solver enumerates braiding tables on a single carrier with
constraint propagation: a partial table is rejected as soon as any component
of any triple is determined on both sides and unequal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Optional, Union

from .core import FinMap, FiniteSet, ProductSet, compose, identity
from .errors import CarrierTooLarge, NotIdempotent, TypeMismatch
from .inverses import section_inner_inverse


@dataclass(frozen=True)
class Braiding:
    """A map X⊗Y -> Y⊗X on row-major product carriers."""

    left: FiniteSet
    right: FiniteSet
    map: FinMap
    dom_product: ProductSet = field(init=False)
    cod_product: ProductSet = field(init=False)

    def __post_init__(self):
        dom = ProductSet.of(self.left, self.right)
        cod = ProductSet.of(self.right, self.left)
        if self.map.dom.id != dom.carrier.id or self.map.cod.id != cod.carrier.id:
            raise TypeMismatch(
                f"{dom.carrier.id}->{cod.carrier.id}",
                f"{self.map.dom.id}->{self.map.cod.id}",
            )
        object.__setattr__(self, "dom_product", dom)
        object.__setattr__(self, "cod_product", cod)


def braiding_from_table(name: str, X: FiniteSet, Y: FiniteSet, table) -> Braiding:
    dom = ProductSet.of(X, Y)
    cod = ProductSet.of(Y, X)
    return Braiding(X, Y, FinMap(name, dom.carrier, cod.carrier, tuple(table)))


def _require_idempotent_endo(e: FinMap, obj: FiniteSet) -> None:
    if e.dom.id != obj.id or e.cod.id != obj.id:
        raise TypeMismatch(f"{obj.id}->{obj.id}", f"{e.dom.id}->{e.cod.id}")
    if compose(e, e) != e:
        raise NotIdempotent(e.name)


@dataclass(frozen=True)
class ObstructorAssignment:
    """Per-object idempotent obstructors; objects without an entry get the identity."""

    obstructors: dict[str, FinMap]
    level: int = 2

    def __post_init__(self):
        for e in self.obstructors.values():
            if not e.is_endo():
                raise TypeMismatch(e.dom.id, e.cod.id, "obstructor must be an endomap")
            if compose(e, e) != e:
                raise NotIdempotent(e.name)
            if self.level == 1 and not e.is_identity():
                raise NotIdempotent(f"{e.name} (level 1 forces the identity)")

    @staticmethod
    def identities() -> "ObstructorAssignment":
        return ObstructorAssignment({}, level=1)

    def for_object(self, obj: FiniteSet) -> FinMap:
        return self.obstructors.get(obj.id, identity(obj))


def check_symmetry(b: Braiding, b_rev: Braiding) -> bool:
    """Classical symmetry: b_rev∘b is the identity of X⊗Y."""
    if b_rev.left.id != b.right.id or b_rev.right.id != b.left.id:
        raise TypeMismatch(f"{b.right.id}⊗{b.left.id}", f"{b_rev.left.id}⊗{b_rev.right.id}")
    return compose(b_rev.map, b.map).is_identity()


def check_regular_braiding(b: Braiding, b_star: Braiding) -> bool:
    """Regularity b∘b*∘b = b, the weakened symmetry condition."""
    if b_star.left.id != b.right.id or b_star.right.id != b.left.id:
        raise TypeMismatch(f"{b.right.id}⊗{b.left.id}", f"{b_star.left.id}⊗{b_star.right.id}")
    return compose(b.map, compose(b_star.map, b.map)) == b.map


def check_prebraid_regularity(p: FinMap, p_star: FinMap) -> bool:
    if p_star.dom.id != p.cod.id or p_star.cod.id != p.dom.id:
        raise TypeMismatch(f"{p.cod.id}->{p.dom.id}", f"{p_star.dom.id}->{p_star.cod.id}")
    return compose(p, compose(p_star, p)) == p


def canonical_braiding_star(b: Braiding) -> Braiding:
    """A concrete witness for the regularity of any finite braiding."""
    return Braiding(b.right, b.left, section_inner_inverse(b.map))


def _triple_map(name, slots_in, slots_out, fn) -> FinMap:
    dom = ProductSet.of(*slots_in)
    cod = ProductSet.of(*slots_out)
    table = []
    for i in range(dom.carrier.cardinality):
        table.append(cod.rank(fn(dom.unrank(i))))
    return FinMap(name, dom.carrier, cod.carrier, tuple(table))


def prebraid(b: Braiding, side: str, e: FinMap, slot_objects) -> FinMap:
    """Slot-extended braiding on X⊗Y⊗Z.

    side "L": e_X ⊗ B_{Y,Z} mapping X⊗Y⊗Z -> X⊗Z⊗Y;
    side "R": B_{X,Y} ⊗ e_Z mapping X⊗Y⊗Z -> Y⊗X⊗Z.
    """
    X, Y, Z = slot_objects
    if side == "L":
        _require_idempotent_endo(e, X)
        if b.left.id != Y.id or b.right.id != Z.id:
            raise TypeMismatch(f"{Y.id}⊗{Z.id}", f"{b.left.id}⊗{b.right.id}")
        bp = b.dom_product

        def fn(t):
            x, y, z = t
            a, c = b.cod_product.unrank(b.map.table[bp.rank((y, z))])
            return (e.table[x], a, c)

        return _triple_map(f"L({b.map.name})", (X, Y, Z), (X, Z, Y), fn)
    if side == "R":
        _require_idempotent_endo(e, Z)
        if b.left.id != X.id or b.right.id != Y.id:
            raise TypeMismatch(f"{X.id}⊗{Y.id}", f"{b.left.id}⊗{b.right.id}")
        bp = b.dom_product

        def fn(t):
            x, y, z = t
            a, c = b.cod_product.unrank(b.map.table[bp.rank((x, y))])
            return (a, c, e.table[z])

        return _triple_map(f"R({b.map.name})", (X, Y, Z), (Y, X, Z), fn)
    raise ValueError(f"unknown prebraid side {side!r}")


def composite_prebraid(
    b_inner: Braiding,
    b_outer: Braiding,
    e: ObstructorAssignment,
    which: str,
) -> FinMap:
    """Two-step prebraid composite moving a tensor pair past a third object.

    which "first"  (B_{X⊗Y,Z}):  R(B_{X,Z}, e_Y) ∘ L(e_X, B_{Y,Z}),
        with b_inner = B_{Y,Z} and b_outer = B_{X,Z};
    which "second" (B_{Z,X⊗Y}):  L(e_Y, B_{X,Z}) ∘ R(B_{X,Y}, e_Z),
        with b_inner = B_{X,Y} and b_outer = B_{X,Z}.

    Each step braids two adjacent slots of the current factor ordering and
    applies the passive slot's obstructor.
    """
    if which == "first":
        if b_inner.right.id != b_outer.right.id:
            raise TypeMismatch(b_inner.right.id, b_outer.right.id, "shared Z factor")
        X, Y, Z = b_outer.left, b_inner.left, b_inner.right
        step1 = prebraid(b_inner, "L", e.for_object(X), (X, Y, Z))
        step2 = prebraid(b_outer, "R", e.for_object(Y), (X, Z, Y))
        return compose(step2, step1)
    if which == "second":
        if b_inner.left.id != b_outer.left.id:
            raise TypeMismatch(b_inner.left.id, b_outer.left.id, "shared X factor")
        X, Y, Z = b_inner.left, b_inner.right, b_outer.right
        step1 = prebraid(b_inner, "R", e.for_object(Z), (X, Y, Z))
        step2 = prebraid(b_outer, "L", e.for_object(Y), (Y, X, Z))
        return compose(step2, step1)
    raise ValueError(f"unknown composite kind {which!r}")


def ybe_side_maps(b: Braiding, e: FinMap) -> tuple[FinMap, FinMap]:
    """Both sides of the regularized YBE as maps on X³, built from prebraids.

    Single-carrier only; serves as the compositional route against which the
    direct pointwise evaluation of check_ybe can be cross-checked.
    """
    if b.left.id != b.right.id:
        raise TypeMismatch(b.left.id, b.right.id, "single-carrier check")
    X = b.left
    bl = prebraid(b, "L", e, (X, X, X))
    br = prebraid(b, "R", e, (X, X, X))
    lhs = compose(br, compose(bl, br))
    rhs = compose(bl, compose(br, bl))
    return lhs, rhs


# --- Yang-Baxter on a single carrier -------------------------------------------


def _ybe_sides(s: int, table, e, x: int, y: int, z: int):
    """Both sides of the regularized YBE at one triple, per component.

    ``table`` may contain -1 for unassigned braiding entries; undetermined
    components come back as None so partial tables can be checked.
    """
    # LHS = B^R ∘ B^L ∘ B^R
    l0 = l1 = l2 = None
    p = table[s * x + y]
    if p >= 0:
        a1, b1 = divmod(p, s)
        ez = e[z]
        q = table[s * b1 + ez]
        if q >= 0:
            a2, b2 = divmod(q, s)
            l2 = e[b2]
            r = table[s * e[a1] + a2]
            if r >= 0:
                l0, l1 = divmod(r, s)
    # RHS = B^L ∘ B^R ∘ B^L
    r0 = r1 = r2 = None
    p = table[s * y + z]
    if p >= 0:
        a1, b1 = divmod(p, s)
        q = table[s * e[x] + a1]
        if q >= 0:
            a2, b2 = divmod(q, s)
            r0 = e[a2]
            r = table[s * b2 + e[b1]]
            if r >= 0:
                r1, r2 = divmod(r, s)
    return (l0, l1, l2), (r0, r1, r2)


def _consistent(s: int, table, e, triples) -> bool:
    for x, y, z in triples:
        lhs, rhs = _ybe_sides(s, table, e, x, y, z)
        for lc, rc in zip(lhs, rhs):
            if lc is not None and rc is not None and lc != rc:
                return False
    return True


@dataclass(frozen=True)
class YbeResult:
    holds: bool
    witness: Optional[tuple[str, str, str]]


def check_ybe(b: Braiding, e: FinMap, mode: str) -> YbeResult:
    """Pointwise check of the (regularized) Yang-Baxter equation on X³."""
    if b.left.id != b.right.id:
        raise TypeMismatch(b.left.id, b.right.id, "single-carrier check")
    X = b.left
    _require_idempotent_endo(e, X)
    if mode == "classical" and not e.is_identity():
        raise NotIdempotent(f"{e.name} (classical mode requires the identity)")
    elif mode not in ("classical", "regular"):
        raise ValueError(f"unknown mode {mode!r}")
    s = X.cardinality
    table = list(b.map.table)
    for x in range(s):
        for y in range(s):
            for z in range(s):
                lhs, rhs = _ybe_sides(s, table, e.table, x, y, z)
                if lhs != rhs:
                    return YbeResult(False, (X.label(x), X.label(y), X.label(z)))
    return YbeResult(True, None)


def enumerate_idempotents(X: FiniteSet) -> list[FinMap]:
    """All idempotent endomaps of X in lexicographic table order."""
    from .core import all_maps

    out = []
    for t in all_maps(X, X, prefix=f"e_{X.id}"):
        if compose(t, t) == t:
            out.append(t)
    return out


def _solve_branch(args):
    """Enumerate solutions with a fixed first table entry (worker task)."""
    s, e, first, bijective = args
    n2 = s * s
    triples = [(x, y, z) for x in range(s) for y in range(s) for z in range(s)]
    table = [-1] * n2
    table[0] = first
    if not _consistent(s, table, e, triples):
        return []
    out = []

    def dfs(pos: int, used: frozenset) -> None:
        if pos == n2:
            out.append(tuple(table))
            return
        for v in range(n2):
            if bijective and v in used:
                continue
            table[pos] = v
            if _consistent(s, table, e, triples):
                dfs(pos + 1, used | {v} if bijective else used)
        table[pos] = -1

    dfs(1, frozenset([first]) if bijective else frozenset())
    return out


@dataclass(frozen=True)
class YbeProblem:
    carrier: FiniteSet
    mode: str = "regular"  # "classical" | "regular"
    e_spec: Union[str, FinMap] = "identity"  # "identity" | "all" | explicit map
    require_bijective: bool = False
    max_size: int = 3
    jobs: int = 1
    count_only: bool = False


@dataclass(frozen=True)
class YbeSolutionSet:
    solutions: list[tuple[Braiding, FinMap]]
    count: int


def solve_ybe(problem: YbeProblem) -> YbeSolutionSet:
    """Exhaustive pruned search for YBE solutions on a single carrier.

    Candidate braidings are enumerated table-entry by table-entry in
    lexicographic order; output is ordered lexicographically in (e, B) and is
    identical regardless of the worker count.
    """
    X = problem.carrier
    s = X.cardinality
    if s > problem.max_size:
        raise CarrierTooLarge(s, problem.max_size)
    if problem.mode not in ("classical", "regular"):
        raise ValueError(f"unknown mode {problem.mode!r}")

    if problem.mode == "classical" or problem.e_spec == "identity":
        es = [identity(X)]
    elif problem.e_spec == "all":
        es = enumerate_idempotents(X)
    elif isinstance(problem.e_spec, FinMap):
        _require_idempotent_endo(problem.e_spec, X)
        es = [problem.e_spec]
    else:
        raise ValueError(f"bad obstructor spec {problem.e_spec!r}")

    n2 = s * s
    if s == 0:
        # one empty braiding, vacuously a solution
        b = braiding_from_table("B0", X, X, ())
        sols = [(b, identity(X))]
        return YbeSolutionSet([] if problem.count_only else sols, 1)

    solutions: list[tuple[Braiding, FinMap]] = []
    count = 0
    for e in es:
        tasks = [(s, tuple(e.table), first, problem.require_bijective) for first in range(n2)]
        if problem.jobs > 1:
            with Pool(problem.jobs) as pool:
                branches = pool.map(_solve_branch, tasks)
        else:
            branches = [_solve_branch(t) for t in tasks]
        for tables in branches:
            count += len(tables)
            if not problem.count_only:
                for k, tab in enumerate(tables):
                    b = braiding_from_table(f"B{len(solutions)}", X, X, tab)
                    solutions.append((b, e))
    return YbeSolutionSet(solutions, count)
