import pytest
from hypothesis import given, strategies as st

from helpers import S, fm, generalized_pairs, maps_between
from regcat.chains import (
    StarChain,
    chain_obstructor,
    check_chain,
    extend_periodic,
    find_chains,
    higher_projector,
    make_chain,
    star_compose,
)
from regcat.core import compose, identity
from regcat.errors import (
    AlternationViolation,
    NotAGeneralizedInverse,
    OrderMismatch,
    SearchSpaceTooLarge,
)

X3 = S("X", 3)
Y2 = S("Y", 2)
F = fm("f", X3, Y2, (0, 0, 1))
FS = fm("fs", Y2, X3, (0, 2))


class TestMakeChain:
    def test_alternation_enforced(self):
        bad = fm("b", X3, Y2, (0, 0, 0))  # star 1 must go Y -> X
        with pytest.raises(AlternationViolation):
            make_chain(F, [bad])

    def test_order(self):
        c = make_chain(F, [FS, F, FS])
        assert c.order == 3


class TestPeriodic:
    def test_rejects_non_generalized(self):
        with pytest.raises(NotAGeneralizedInverse):
            extend_periodic(F, fm("g", Y2, X3, (0, 0)), 2)

    @pytest.mark.parametrize("n", range(1, 8))
    def test_all_orders_valid(self, n):
        v = check_chain(extend_periodic(F, FS, n))
        assert v.valid and v.ef_form and v.obstructor_idempotent

    def test_obstructor_stabilizes(self):
        # odd orders give the canonical idempotent on the domain
        for n in (1, 3, 5):
            e = chain_obstructor(extend_periodic(F, FS, n))
            assert e.table == (0, 0, 2)
        # even orders collect only stars, landing on the domain as well
        assert chain_obstructor(extend_periodic(F, FS, 2)).table == (0, 0, 2)

    def test_periodic_valid_for_all_generalized_pairs(self):
        for nx in range(1, 3):
            for ny in range(1, 3):
                X, Y = S("X", nx), S("Y", ny)
                for f in maps_between(X, Y):
                    for g in generalized_pairs(f):
                        for n in range(1, 6):
                            assert check_chain(extend_periodic(f, g, n)).valid


class TestCheckChain:
    def test_failure_reports_equation_and_witness(self):
        c = make_chain(F, [fm("g", Y2, X3, (0, 0))])
        v = check_chain(c)
        assert not v.valid and v.odd_closure is False
        assert v.failures[0][0] == "nreg2[1]"
        assert v.failures[0][1] == "x2"

    def test_even_failure_id(self):
        # order-1 closure holds but the order-2 prefix breaks
        c = make_chain(F, [FS, fm("h", X3, Y2, (1, 1, 0))])
        v = check_chain(c)
        assert v.odd_closure is True and v.even_closure is False
        assert v.failures == (("nreg1[2]", "p"),) or v.failures[0][0] == "nreg1[2]"

    def test_closure_flags_none_when_absent(self):
        v = check_chain(make_chain(F, [FS]))
        assert v.even_closure is None and v.odd_closure is True


class TestFindChains:
    def test_order1_equals_inner_inverses(self):
        r = find_chains(F, 1)
        assert [c.stars[0].table for c in r.chains] == [(0, 2), (1, 2)]
        assert not r.truncated

    def test_order2_count_matches_naive(self):
        r = find_chains(F, 2)
        naive = 0
        for s1 in maps_between(Y2, X3):
            if tuple(F.table[s1.table[F.table[x]]] for x in range(3)) != F.table:
                continue
            for s2 in maps_between(X3, Y2):
                if tuple(s1.table[s2.table[s1.table[y]]] for y in range(2)) == s1.table:
                    naive += 1
        assert len(r.chains) == naive == 4

    def test_order3_count(self):
        assert len(find_chains(F, 3).chains) == 8

    def test_every_result_checks_out(self):
        for c in find_chains(F, 3).chains:
            assert check_chain(c).valid

    def test_limit(self):
        r = find_chains(F, 2, limit=2)
        assert len(r.chains) == 2 and r.truncated

    def test_space_bound(self):
        with pytest.raises(SearchSpaceTooLarge):
            find_chains(F, 3, max_space=100)

    def test_lexicographic_order(self):
        keys = [
            tuple(t for s in c.stars for t in s.table)
            for c in find_chains(F, 2).chains
        ]
        assert keys == sorted(keys)


class TestHigherProjector:
    def test_odd_side(self):
        hp = higher_projector(extend_periodic(F, FS, 1))
        assert hp.side == "codomain"
        assert hp.projector.table == (0, 1)
        assert hp.idempotent and hp.absorption

    def test_even_side(self):
        hp = higher_projector(extend_periodic(F, FS, 2))
        assert hp.side == "domain"
        assert hp.projector.table == (0, 0, 2)
        assert hp.idempotent and hp.absorption

    def test_laws_on_searched_chains(self):
        for n in (1, 2, 3):
            for c in find_chains(F, n).chains:
                hp = higher_projector(c)
                assert hp.idempotent and hp.absorption


class TestStarCompose:
    def test_with_identity_leg(self):
        ci = extend_periodic(identity(Y2), identity(Y2), 3)
        comp, verdict = star_compose(extend_periodic(F, FS, 3), ci)
        assert verdict.valid
        assert comp.base.table == (0, 0, 1)
        assert [s.table for s in comp.stars] == [(0, 2), (0, 0, 1), (0, 2)]

    def test_order_mismatch(self):
        with pytest.raises(OrderMismatch):
            star_compose(extend_periodic(F, FS, 2), extend_periodic(F, FS, 3))

    def test_periodic_composites_at_size2(self):
        # composites of periodic towers over commuting-projector pairs stay valid
        A, B, C = S("A", 2), S("B", 2), S("C", 2)
        for f in maps_between(A, B):
            for fs in generalized_pairs(f):
                pf = compose(f, fs)
                for g in maps_between(B, C):
                    for gs in generalized_pairs(g):
                        pgs = compose(gs, g)
                        if compose(pf, pgs) != compose(pgs, pf):
                            continue
                        comp, verdict = star_compose(
                            extend_periodic(f, fs, 3), extend_periodic(g, gs, 3)
                        )
                        assert verdict.valid


@given(st.integers(min_value=1, max_value=9))
def test_obstructor_idempotent_for_periodic(n):
    v = check_chain(extend_periodic(F, FS, n))
    assert v.obstructor_idempotent and v.ef_form
