"""Acceptance criteria 1-11, each with its runtime limit.

Every test records one PASS/FAIL line, printed together at the end of the run.
"""

import time
from contextlib import contextmanager
from itertools import permutations

import pytest

from conftest import ACCEPTANCE_LINES
from oracles import closure_by_wielandt, is_nilpotent_central_series
from twoclosure.builders import lemma24_action, Lemma24Spec, named_group, small_group_family, symmetric
from twoclosure.closure import closure2, closure2_backtrack, closure2_bruteforce, orbitals, preserves_coloring, wielandt_member
from twoclosure.embedding import (
    embed_into_wreath,
    find_isomorphism,
    block_restriction,
    make_context,
    restrict_to_N,
    rotated_transversal,
    universal_action,
    universal_action_is_faithful,
)
from twoclosure.harness import (
    PASS,
    WITNESS,
    check_disjoint_product,
    check_lemma24,
    check_tc2_bounded,
    check_theorem_A,
    check_theorem_B,
    check_theorem_B_pinned,
    d8_pinned_action,
    theorem_a_contexts,
)
from twoclosure.perm import Permutation, equivariant_bijection, parse_cycles, relabel
from twoclosure.structure import faithful_actions, is_nilpotent


@contextmanager
def criterion(number: int, title: str, limit: float):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        ok = ok and elapsed < limit
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({elapsed:.1f}s, limit {limit:.0f}s)")
    assert elapsed < limit, f"criterion {number} took {elapsed:.1f}s, limit {limit}s"


_SWEEP = None


def sweep():
    """Every faithful action of degree <= 7 of every group of order <= 8, with both closures."""
    global _SWEEP
    if _SWEEP is None:
        out = []
        for name, G in small_group_family().items():
            for act in faithful_actions(G, 7):
                out.append((name, G, act.group, closure2_bruteforce(act.group), closure2_backtrack(act.group)))
        _SWEEP = out
    return _SWEEP


def images(group):
    return {g.images for g in group.elements}


def test_criterion_01_lemma24():
    with criterion(1, "lemma24 witness in the closure for (2,2), (2,4), (3,3)", 30):
        for n, m in [(2, 2), (2, 4), (3, 3)]:
            v = check_lemma24(n, m, method="brute")
            assert v.status == PASS, v.details
            d = v.details
            assert d["type_matches_CnxCm"] and d["witness_in_closure_wielandt"] and d["witness_in_closure_coloring"]
            assert d["witness_in_closure_group"] and d["witness_not_in_group"]


def test_criterion_02_engine_equivalence():
    with criterion(2, "brute force = backtrack on the sweep; Wielandt = coloring on Sym(7)", 300):
        rows = sweep()
        assert len(rows) > 50
        for name, G, act, brute, back in rows:
            assert images(brute) == images(back), (name, act.generators)
        deg7 = [act for _, _, act, _, _ in rows if act.degree == 7]
        assert len(deg7) >= 3
        picks = [deg7[0], deg7[len(deg7) // 2], deg7[-1]]
        all7 = [Permutation(p) for p in permutations(range(7))]
        assert len(all7) == 5040
        for act in picks:
            col = orbitals(act)
            for x in all7:
                assert wielandt_member(act, x) == preserves_coloring(col, x)


def test_criterion_03_operator_laws():
    with criterion(3, "containment, idempotence, relabeling equivariance", 300):
        for name, G, act, brute, _ in sweep():
            assert all(g in brute for g in act.elements), name
            assert closure2_bruteforce(brute).same_elements(brute), name
        lams = ["()", "(1 2)", "(1 2 3)", "(1 3 2)", "(2 3)"]
        C3 = named_group("cyclic:3")
        for s in lams:
            lam = parse_cycles(s, 3)
            assert closure2(relabel(C3, lam)).same_elements(relabel(closure2(C3), lam))
        L = lemma24_action(Lemma24Spec(2, 2))
        for s in ["()", "(1 2)", "(1 3 5)(2 4 6)", "(1 6)(2 5)", "(1 2 3 4 5 6)"]:
            lam = parse_cycles(s, 6)
            assert closure2(relabel(L, lam)).same_elements(relabel(closure2(L), lam))


def test_criterion_04_regular_closed():
    with criterion(4, "regular actions of groups of order <= 8 are 2-closed", 120):
        fam = small_group_family()
        assert len(fam) == 13
        for name, G in fam.items():
            assert G.degree == G.order
            assert closure2_bruteforce(G).same_elements(G), name


def test_criterion_05_tc2_bounded():
    with criterion(5, "bounded tc2 verdicts", 600):
        fam = small_group_family()
        assert check_tc2_bounded(fam["V4"], 5).status == PASS
        assert check_tc2_bounded(fam["V4"], 6).status == WITNESS
        assert check_tc2_bounded(fam["C2xC4"], 8).status == WITNESS
        assert check_tc2_bounded(fam["Q8"], 12).status == PASS
        for n in (2, 3, 4, 5, 7, 8, 9):
            assert check_tc2_bounded(named_group(f"cyclic:{n}"), 12).status == PASS, n
        assert check_tc2_bounded(named_group("cyclic:6"), 10).status == PASS


def test_criterion_06_universal_embedding():
    with criterion(6, "universal embedding into N wr G/N", 60):
        for label, G, N, delta in theorem_a_contexts():
            ctx = make_context(G, N, delta)
            rep = embed_into_wreath(ctx)
            assert rep.homomorphism and rep.injective and rep.base_in_n and rep.pairs_checked == G.order ** 2, label
            assert universal_action_is_faithful(ctx), label
            image, blocks = restrict_to_N(ctx)
            assert blocks.invariant and blocks.matches_twisted_delta, label
            assert len(blocks.blocks) == G.order // N.order
            for block in blocks.blocks:
                assert find_isomorphism(block_restriction(image, block), delta) is not None
            rot = make_context(G, N, delta, transversal=rotated_transversal(G, N))
            rep2 = embed_into_wreath(rot)
            assert rep2.to_json() == rep.to_json(), label
            assert restrict_to_N(rot)[1].ok
            a, b = universal_action(ctx), universal_action(rot)
            assert a.order == b.order
            assert equivariant_bijection(list(a.generators), list(b.generators)) is not None, label


def test_criterion_07_theorem_a():
    with criterion(7, "closed on Omega implies closed on Delta, embedding contexts", 120):
        for label, G, N, delta in theorem_a_contexts():
            v = check_theorem_A(G, N, delta, name=label)
            assert v.status == PASS, (label, v.details)
            if label.startswith("D8"):
                assert v.details["omega_degree"] == 12
                n_omega, _ = restrict_to_N(make_context(G, N, delta))
                assert closure2(n_omega).order > N.order


def test_criterion_08_theorem_b():
    with criterion(8, "non-cyclic normal abelian subgroups and the pinned D8 action", 60):
        assert check_theorem_B(named_group("quaternion:8")).status == PASS
        for n in range(2, 13):
            assert check_theorem_B(named_group(f"cyclic:{n}")).status == PASS, n
        v = check_theorem_B(named_group("dihedral:8"))
        assert 4 in v.details["non_cyclic_orders"]
        pinned = check_theorem_B_pinned()
        assert pinned.status == WITNESS and pinned.details["closure_order"] == 16
        g = d8_pinned_action()
        assert len(closure_by_wielandt([e.images for e in g.elements], 6)) == 16


def test_criterion_09_theorem_c():
    with criterion(9, "Q8 x C3 and C4 x C3 pass bounded tc2 at D=12", 600):
        for spec in ["direct:quaternion:8+cyclic:3", "direct:cyclic:4+cyclic:3"]:
            assert check_tc2_bounded(named_group(spec), 12).status == PASS, spec


def test_criterion_10_disjoint_product():
    with criterion(10, "closure of a disjoint union is the product of closures", 60):
        v = check_disjoint_product([named_group("cyclic:3"), symmetric(3)])
        assert v.status == PASS and v.details["closure_order"] == 18
        assert check_disjoint_product([named_group("cyclic:2"), named_group("cyclic:2")]).status == PASS


def test_criterion_11_nilpotency():
    with criterion(11, "closures of nilpotent actions are nilpotent", 60):
        for name, G, act, brute, _ in sweep():
            if is_nilpotent(G):
                assert is_nilpotent(brute), name
        s3 = closure2(symmetric(3))
        assert not is_nilpotent(s3)
        assert not is_nilpotent_central_series([g.images for g in s3.elements])
