"""Named instance checks for the 2-closure results, reported as Verdicts.

Vocabulary: ``pass`` is bounded evidence (or an exact check on a single
instance); ``witness-found`` means an explicit action was found whose
2-closure is larger than the group, which refutes total 2-closedness outright;
``inconclusive`` means a predicted witness was not found below the degree
bound; ``violated`` means an instance contradicts a stated result and is
always a bug.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from . import builders
from .builders import Lemma24Spec, abelian_invariant_type, lemma24_action, lemma24_witness, named_group
from .closure import closure2, orbitals, preserves_coloring, wielandt_member
from .embedding import make_context, restrict_to_N, universal_action
from .perm import Permutation, PermGroup, direct_product_disjoint, format_cycles, regular_action
from .structure import (
    Subgroup,
    center,
    centralizer,
    coprime,
    faithful_actions,
    fitting,
    is_nilpotent,
    normal_abelian_subgroups,
    normal_subgroups,
    sylow_is_cyclic_or_quaternion,
    whole,
)

PASS = "pass"
WITNESS = "witness-found"
VIOLATED = "violated"
SKIPPED = "skipped"
INCONCLUSIVE = "inconclusive"

BOUNDED_NOTE = "bounded evidence, not a certificate"


@dataclass
class Verdict:
    name: str
    status: str
    details: dict = field(default_factory=dict)
    witness: dict | None = None
    seconds: float = 0.0

    def to_json(self, timing: bool = False) -> dict:
        out = {"check": self.name, "status": self.status, "details": self.details}
        if self.witness is not None:
            out["witness"] = self.witness
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out


def _timed(fn: Callable[..., Verdict]) -> Callable[..., Verdict]:
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        v = fn(*args, **kwargs)
        v.seconds = time.perf_counter() - start
        return v

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _gens(group: PermGroup) -> list[str]:
    return [format_cycles(g) for g in group.generators]


def _label(group: PermGroup) -> str:
    return group.name or f"group of order {group.order}"


@_timed
def check_lemma24(n: int, m: int, method: str = "brute") -> Verdict:
    spec = Lemma24Spec(n, m)
    H = lemma24_action(spec)
    expected = named_group(f"direct:cyclic:{n}+cyclic:{m}")
    type_ok = H.is_abelian and abelian_invariant_type(H) == abelian_invariant_type(expected)
    x = lemma24_witness(spec)
    closure = closure2(H, method=method)
    by_wielandt = wielandt_member(H, x)
    by_coloring = preserves_coloring(orbitals(H), x)
    in_closure = x in closure
    not_in_h = x not in H
    ok = type_ok and by_wielandt and by_coloring and in_closure and not_in_h
    return Verdict(
        f"lemma24({n},{m})",
        PASS if ok else VIOLATED,
        {
            "degree": H.degree,
            "order": H.order,
            "type_matches_CnxCm": type_ok,
            "witness_in_closure_wielandt": by_wielandt,
            "witness_in_closure_coloring": by_coloring,
            "witness_in_closure_group": in_closure,
            "witness_not_in_group": not_in_h,
            "closure_order": closure.order,
        },
        {"permutation": format_cycles(x), "generators": _gens(H)},
    )


def _first_extra(group: PermGroup, closure: PermGroup) -> Permutation:
    return min(g for g in closure.elements if g not in group)


@_timed
def check_tc2_bounded(group: PermGroup, max_degree: int, method: str = "backtrack", name: str | None = None) -> Verdict:
    """Search all faithful actions of degree <= max_degree for a non-2-closed one."""
    label = name or _label(group)
    actions = faithful_actions(group, max_degree)
    for k, act in enumerate(actions):
        closure = closure2(act.group, method=method)
        if closure.order != group.order:
            extra = _first_extra(act.group, closure)
            return Verdict(
                f"tc2({label},D={max_degree})",
                WITNESS,
                {"actions_checked": k + 1, "group_order": group.order, "closure_order": closure.order},
                {
                    "degree": act.degree,
                    "classes": list(act.class_ids),
                    "stabilizer_orders": [s.order for s in act.subgroups],
                    "generators": _gens(act.group),
                    "permutation": format_cycles(extra),
                },
            )
    return Verdict(
        f"tc2({label},D={max_degree})",
        PASS,
        {"actions_checked": len(actions), "group_order": group.order, "note": BOUNDED_NOTE},
    )


@_timed
def check_theorem_A(G: PermGroup, N: Subgroup, delta: PermGroup, method: str = "auto", name: str | None = None) -> Verdict:
    """If N is 2-closed on Omega = Delta x G/N then it is 2-closed on Delta."""
    ctx = make_context(G, N, delta)
    n_omega, _ = restrict_to_N(ctx)
    closed_omega = closure2(n_omega, method=method).order == N.order
    closed_delta = closure2(delta, method=method).order == N.order
    holds = not (closed_omega and not closed_delta)
    return Verdict(
        name or f"theoremA({_label(G)})",
        PASS if holds else VIOLATED,
        {
            "omega_degree": ctx.omega_degree,
            "index": ctx.k_order,
            "closed_on_omega": closed_omega,
            "closed_on_delta": closed_delta,
            "reading": "antecedent false or consequent true" if holds else "antecedent true, consequent false",
        },
    )


@_timed
def check_theorem_B(group: PermGroup, max_degree: int = 8, name: str | None = None) -> Verdict:
    """Normal abelian subgroups must be cyclic; a non-cyclic one predicts a witness action."""
    label = name or _label(group)
    subs = normal_abelian_subgroups(group)
    table = [{"order": s.order, "cyclic": s.is_cyclic} for s in subs]
    bad = [s for s in subs if not s.is_cyclic]
    if not bad:
        return Verdict(f"theoremB({label})", PASS, {"normal_abelian": table})
    tc2 = check_tc2_bounded(group, max_degree, name=label)
    details = {
        "normal_abelian": table,
        "non_cyclic_orders": [s.order for s in bad],
        "tc2_at": max_degree,
        "tc2_status": tc2.status,
    }
    status = WITNESS if tc2.status == WITNESS else INCONCLUSIVE
    return Verdict(f"theoremB({label})", status, details, tc2.witness)


def d8_pinned_action() -> PermGroup:
    """D8 on the square's 4 vertices together with its action on the 2 cosets of the rotations."""
    rot = Permutation([1, 2, 3, 0, 4, 5])
    ref = Permutation([0, 3, 2, 1, 5, 4])
    return PermGroup(6, [rot, ref], name="D8(natural+rotation-cosets)")


@_timed
def check_theorem_B_pinned(method: str = "brute") -> Verdict:
    act = d8_pinned_action()
    closure = closure2(act, method=method)
    status = WITNESS if closure.order > act.order else INCONCLUSIVE
    return Verdict(
        "theoremB(D8 pinned degree-6 action)",
        status,
        {"group_order": act.order, "closure_order": closure.order},
        {"generators": _gens(act), "permutation": format_cycles(_first_extra(act, closure))}
        if closure.order > act.order
        else None,
    )


@_timed
def check_theorem_C(H: PermGroup, K: PermGroup, max_degree: int, method: str = "backtrack") -> Verdict:
    name = f"theoremC({_label(H)} x {_label(K)},D={max_degree})"
    if not coprime(H.order, K.order):
        return Verdict(name, SKIPPED, {"reason": "orders not coprime"})
    if not (is_nilpotent(H) and is_nilpotent(K)):
        return Verdict(name, SKIPPED, {"reason": "factor not nilpotent"})
    pre = [check_tc2_bounded(X, max_degree, method) for X in (H, K)]
    if any(v.status != PASS for v in pre):
        return Verdict(name, SKIPPED, {"reason": "factor has a witness", "factors": [v.status for v in pre]})
    regs = [X if X.degree == X.order else regular_action(X) for X in (H, K)]
    G = direct_product_disjoint(regs, name=f"{_label(H)}x{_label(K)}")
    v = check_tc2_bounded(G, max_degree, method)
    status = PASS if v.status == PASS else VIOLATED
    return Verdict(name, status, {"product_order": G.order, **v.details}, v.witness)


@_timed
def check_classification(group: PermGroup, max_degree: int, method: str = "backtrack", name: str | None = None) -> Verdict:
    """Nilpotent G: totally 2-closed iff cyclic or generalized quaternion x odd cyclic."""
    label = name or _label(group)
    vname = f"classification({label},D={max_degree})"
    if not is_nilpotent(group):
        return Verdict(vname, SKIPPED, {"reason": "not nilpotent"})
    predicted = sylow_is_cyclic_or_quaternion(group)
    tc2 = check_tc2_bounded(group, max_degree, method, name=label)
    found = tc2.status == WITNESS
    if predicted and found:
        status = VIOLATED
    elif predicted or found:
        status = PASS
    else:
        status = INCONCLUSIVE
    return Verdict(
        vname,
        status,
        {"structure_says_tc2": predicted, "witness_found": found, "tc2": tc2.details},
        tc2.witness,
    )


@_timed
def check_centralizer_closed(action: PermGroup, N: Subgroup, method: str = "auto", precheck: bool = True, name: str | None = None) -> Verdict:
    """C_G(N), Z(G) and F(G) must be 2-closed in a faithful action of a totally 2-closed G."""
    label = name or _label(action)
    vname = f"centralizer({label})"
    if precheck:
        pre = check_tc2_bounded(action, action.degree, method="backtrack" if method == "auto" else method)
        if pre.status != PASS:
            return Verdict(vname, SKIPPED, {"reason": "group has a witness at this degree"})
    results = {}
    for key, sub in (("centralizer", centralizer(action, N)), ("center", center(action)), ("fitting", fitting(action))):
        as_group = sub.as_group()
        closure = closure2(as_group, method=method)
        results[key] = {"order": sub.order, "closure_order": closure.order, "closed": closure.order == sub.order}
    ok = all(r["closed"] for r in results.values())
    return Verdict(vname, PASS if ok else VIOLATED, results)


@_timed
def check_disjoint_product(groups: list[PermGroup], method: str = "brute", name: str | None = None) -> Verdict:
    product_group = direct_product_disjoint(groups)
    lhs = closure2(product_group, method=method)
    rhs = direct_product_disjoint([closure2(g, method=method) for g in groups])
    same = lhs.same_elements(rhs)
    label = name or " + ".join(_label(g) for g in groups)
    return Verdict(
        f"disjoint({label})",
        PASS if same else VIOLATED,
        {"degree": product_group.degree, "closure_order": lhs.order, "product_of_closures_order": rhs.order},
    )


# -- suites --------------------------------------------------------------------


def _klein_normal(G: PermGroup) -> Subgroup:
    return next(s for s in normal_subgroups(G) if s.order == 4 and not s.is_cyclic)


def suite_lemma24() -> list[Verdict]:
    return [check_lemma24(n, m) for n, m in [(2, 2), (2, 4), (3, 3)]]


def suite_tc2() -> list[Verdict]:
    fam = builders.small_group_family()
    out = [
        check_tc2_bounded(fam["V4"], 5, name="V4"),
        check_tc2_bounded(fam["V4"], 6, name="V4"),
        check_tc2_bounded(fam["C2xC4"], 8, name="C2xC4"),
        check_tc2_bounded(fam["Q8"], 12, name="Q8"),
    ]
    for n in (2, 3, 4, 5, 7, 8, 9):
        out.append(check_tc2_bounded(named_group(f"cyclic:{n}"), 12))
    out.append(check_tc2_bounded(named_group("cyclic:6"), 10))
    return out


def theorem_a_contexts():
    Q = named_group("quaternion:8")
    D = named_group("dihedral:8")
    C3 = named_group("cyclic:3")
    return [
        ("Q8/Z/C2", Q, center(Q), named_group("cyclic:2")),
        ("D8/V4/lemma24(2,2)", D, _klein_normal(D), named_group("lemma24:2,2")),
        ("C3/C3/natural", C3, whole(C3), named_group("cyclic:3")),
    ]


def suite_theorem_a() -> list[Verdict]:
    return [check_theorem_A(G, N, delta, name=f"theoremA({label})") for label, G, N, delta in theorem_a_contexts()]


def suite_theorem_b() -> list[Verdict]:
    out = [check_theorem_B(named_group("quaternion:8"))]
    out += [check_theorem_B(named_group(f"cyclic:{n}")) for n in range(2, 13)]
    out.append(check_theorem_B(named_group("dihedral:8"), max_degree=8))
    out.append(check_theorem_B_pinned())
    return out


def suite_theorem_c() -> list[Verdict]:
    return [
        check_theorem_C(named_group("quaternion:8"), named_group("cyclic:3"), 12),
        check_theorem_C(named_group("cyclic:4"), named_group("cyclic:3"), 12),
        check_theorem_C(named_group("cyclic:2"), named_group("cyclic:3"), 10),
    ]


def suite_classification() -> list[Verdict]:
    fam = builders.small_group_family()
    return [
        check_classification(fam["C2xC4"], 8, name="C2xC4"),
        check_classification(named_group("quaternion:8"), 12),
        check_classification(named_group("modular:2,3"), 16),
    ]


def suite_centralizer() -> list[Verdict]:
    Q = named_group("quaternion:8")
    C6 = named_group("cyclic:6")
    return [
        check_centralizer_closed(Q, whole(Q), name="Q8 regular, N=Q8"),
        check_centralizer_closed(C6, whole(C6), name="C6 regular, N=C6"),
        check_centralizer_closed(Q, center(Q), name="Q8 regular, N=Z"),
    ]


def suite_disjoint() -> list[Verdict]:
    triv = PermGroup(2, [], name="trivial2")
    return [
        check_disjoint_product([named_group("cyclic:3"), named_group("symmetric:3")], name="C3 + S3"),
        check_disjoint_product([named_group("cyclic:2"), named_group("cyclic:2")], name="C2 + C2"),
        check_disjoint_product([triv, named_group("lemma24:2,2")], name="trivial + lemma24(2,2)"),
    ]


SUITES: dict[str, Callable[[], list[Verdict]]] = {
    "lemma24": suite_lemma24,
    "tc2": suite_tc2,
    "theoremA": suite_theorem_a,
    "theoremB": suite_theorem_b,
    "theoremC": suite_theorem_c,
    "classification": suite_classification,
    "centralizer": suite_centralizer,
    "disjoint": suite_disjoint,
}


def run_suite(name: str) -> list[Verdict]:
    if name == "all":
        verdicts = [v for key in SUITES for v in SUITES[key]()]
    elif name in SUITES:
        verdicts = SUITES[name]()
    else:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES) + ['all']}")
    return sorted(verdicts, key=lambda v: v.name)
