import pytest
from hypothesis import given, settings, strategies as st

from twoclosure.builders import Lemma24Spec, dihedral_natural, lemma24_action, lemma24_witness, named_group, symmetric
from twoclosure.closure import (
    DegreeTooLarge,
    closure2,
    closure2_backtrack,
    closure2_bruteforce,
    is_2closed,
    orbitals,
    preserves_coloring,
    wielandt_failure,
    wielandt_member,
)
from twoclosure.perm import DegreeMismatch, Permutation, PermGroup, direct_product_disjoint, parse_cycles, relabel
from twoclosure.structure import faithful_actions, is_nilpotent

from oracles import automorphisms_pairwise, closure_by_wielandt

L22 = Lemma24Spec(2, 2)


def images(group):
    return {g.images for g in group.elements}


class TestOrbitals:
    def test_trivial(self):
        assert orbitals(PermGroup(2, [])).count == 4

    def test_s3(self):
        assert orbitals(symmetric(3)).count == 2

    def test_c3_golden(self):
        col = orbitals(named_group("cyclic:3"))
        assert col.count == 3
        assert col.colors == [[0, 1, 2], [2, 0, 1], [1, 2, 0]]
        assert col.to_json() == {"degree": 3, "colors": [[0, 1, 2], [2, 0, 1], [1, 2, 0]]}

    @pytest.mark.parametrize("spec", ["lemma24:2,2", "dihedral:8", "polygon:5", "direct:cyclic:3+symmetric:3"])
    def test_invariants(self, spec):
        g = named_group(spec)
        col = orbitals(g)
        n = g.degree
        # classes are the orbits on pairs
        for a in range(n):
            for b in range(n):
                orbit = {(x(a), x(b)) for x in g.elements}
                assert {col[p] for p in orbit} == {col[a, b]}
                assert sum(1 for u in range(n) for v in range(n) if col[u, v] == col[a, b]) == len(orbit)
        diag = {col[a, a] for a in range(n)}
        assert all(col[a, b] not in diag for a in range(n) for b in range(n) if a != b)
        paired = col.paired()
        assert all(col[b, a] == paired[col[a, b]] for a in range(n) for b in range(n))
        assert col.representatives == sorted(col.representatives)


class TestPreservesColoring:
    def test_identity(self):
        col = orbitals(named_group("dihedral:8"))
        assert preserves_coloring(col, Permutation.identity(8))

    def test_group_elements(self):
        g = named_group("dihedral:8")
        col = orbitals(g)
        assert all(preserves_coloring(col, x) for x in g.elements)

    def test_lemma24_witness(self):
        col = orbitals(lemma24_action(L22))
        assert preserves_coloring(col, parse_cycles("(1 2)", 6))

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatch):
            preserves_coloring(orbitals(symmetric(3)), Permutation.identity(4))


class TestWielandt:
    def test_members(self):
        g = named_group("quaternion:8")
        assert all(wielandt_member(g, x) for x in g.elements)

    def test_lemma24_witness(self):
        assert wielandt_member(lemma24_action(L22), lemma24_witness(L22))

    def test_four_cycle_fails(self):
        g = lemma24_action(L22)
        x = parse_cycles("(1 2 3 4)", 6)
        assert not wielandt_member(g, x)
        # first failing pair found by exhaustive scan in the oracle
        assert wielandt_failure(g, x) == (0, 1)

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatch):
            wielandt_member(symmetric(3), Permutation.identity(4))


TEST_GROUPS = [
    named_group("lemma24:2,2"),
    named_group("cyclic:3"),
    named_group("polygon:4"),
    named_group("direct:cyclic:2+cyclic:3"),
    PermGroup(7, [parse_cycles("(1 2)(3 4)", 7), parse_cycles("(5 6 7)", 7)]),
    PermGroup(5, [parse_cycles("(1 2 3 4 5)", 5)]),
    named_group("cyclic:6"),
]


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(TEST_GROUPS), st.data())
def test_criterion_equivalence(group, data):
    x = Permutation(data.draw(st.permutations(list(range(group.degree)))))
    assert wielandt_member(group, x) == preserves_coloring(orbitals(group), x)


class TestBruteForce:
    def test_trivial(self):
        assert closure2_bruteforce(PermGroup(4, [])).order == 1

    def test_c3(self):
        assert images(closure2_bruteforce(named_group("cyclic:3"))) == {(0, 1, 2), (1, 2, 0), (2, 0, 1)}

    def test_lemma24(self):
        g = lemma24_action(L22)
        c = closure2_bruteforce(g)
        assert c.order == 8  # oracle: Wielandt filter over Sym(6)
        assert lemma24_witness(L22) in c
        assert images(c) == closure_by_wielandt([x.images for x in g.elements], 6)

    def test_degree_cap(self):
        with pytest.raises(DegreeTooLarge):
            closure2_bruteforce(named_group("cyclic:10"))

    def test_generators_reduced(self):
        c = closure2_bruteforce(symmetric(5))
        assert c.order == 120 and len(c.generators) <= 4


class TestBacktrack:
    def test_s3(self):
        assert closure2_backtrack(symmetric(3)).same_elements(symmetric(3))

    def test_q8_regular(self):
        q = named_group("quaternion:8")
        c = closure2_backtrack(q)
        assert c.same_elements(q)
        assert c.same_elements(closure2_bruteforce(q))

    def test_d8_natural(self):
        d = dihedral_natural(4)
        assert closure2_backtrack(d).same_elements(d)

    @pytest.mark.parametrize(
        "spec", ["lemma24:2,4", "lemma24:3,3", "lemma24:2,6", "lemma24:4,4", "direct:lemma24:2,2+cyclic:4", "polygon:6", "dihedral:12"]
    )
    def test_matches_pairwise_oracle(self, spec):
        g = named_group(spec)
        expected = automorphisms_pairwise([x.images for x in g.elements], g.degree)
        assert images(closure2_backtrack(g)) == expected

    def test_large_symmetric(self):
        assert closure2_backtrack(symmetric(7)).order == 5040

    def test_degree_cap(self):
        with pytest.raises(DegreeTooLarge):
            closure2_backtrack(named_group("cyclic:41"))


class TestDispatcher:
    @pytest.mark.parametrize("spec", ["lemma24:2,2", "dihedral:8", "cyclic:5", "lemma24:2,6", "polygon:5"])
    def test_idempotent(self, spec):
        c = closure2(named_group(spec))
        assert closure2(c).same_elements(c)

    def test_v4_natural(self):
        v = PermGroup(4, [parse_cycles("(1 2)", 4), parse_cycles("(3 4)", 4)])
        assert closure2(v).same_elements(v)

    def test_methods_agree(self):
        g = named_group("lemma24:3,3")
        assert closure2(g, method="brute").same_elements(closure2(g, method="backtrack"))

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            closure2(symmetric(3), method="magic")

    def test_contains_group(self):
        g = named_group("lemma24:2,6")
        c = closure2(g)
        assert all(x in c for x in g.elements)


class TestIsClosed:
    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_symmetric(self, n):
        assert is_2closed(symmetric(n))

    def test_lemma24(self):
        assert not is_2closed(lemma24_action(L22))

    def test_q8_regular(self):
        assert is_2closed(named_group("quaternion:8"))


def test_regular_actions_closed(family):
    for g in family.values():
        assert closure2_bruteforce(g).same_elements(g), g.name


@pytest.mark.parametrize("lam", ["(1 2)", "(1 2 3)", "(1 3)", "()", "(2 3)"])
def test_relabel_equivariance_c3(lam):
    g = named_group("cyclic:3")
    lam = parse_cycles(lam, 3)
    assert closure2(relabel(g, lam)).same_elements(relabel(closure2(g), lam))


@settings(max_examples=25, deadline=None)
@given(st.permutations(list(range(6))))
def test_relabel_equivariance_lemma24(lam):
    g = lemma24_action(L22)
    lam = Permutation(lam)
    assert closure2(relabel(g, lam)).same_elements(relabel(closure2(g), lam))


def test_nilpotency_preserved(family):
    for g in family.values():
        for act in faithful_actions(g, 7):
            assert is_nilpotent(closure2(act.group)) == is_nilpotent(g), act.group.name
    assert not is_nilpotent(closure2(symmetric(3)))


@pytest.mark.parametrize(
    "left, right",
    [("cyclic:3", "symmetric:3"), ("cyclic:2", "cyclic:2"), ("lemma24:2,2", "cyclic:3"), ("polygon:4", "cyclic:5")],
)
def test_disjoint_union_rule(left, right):
    a, b = named_group(left), named_group(right)
    lhs = closure2_bruteforce(direct_product_disjoint([a, b]))
    rhs = direct_product_disjoint([closure2_bruteforce(a), closure2_bruteforce(b)])
    assert lhs.same_elements(rhs)


def test_disjoint_c3_s3_order():
    g = direct_product_disjoint([named_group("cyclic:3"), symmetric(3)])
    assert closure2_bruteforce(g).order == 18
