"""Constructors for the concrete groups and actions used throughout the package.

Every named family is metacyclic and is built by one recipe: the right-regular
action on normal-form words ``a^i b^j`` (point index ``i*s + j``).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import gcd

from .perm import (
    DEFAULT_ELEMENT_CAP,
    Permutation,
    PermGroup,
    direct_product_disjoint,
    load_group,
    regular_action,
)


class SpecError(ValueError):
    """Invalid group parameters or an unparseable group spec string."""


@dataclass(frozen=True)
class MetacyclicSpec:
    """``<a, b | a^m = 1, b^s = a^t, b^-1 a b = a^r>``."""

    m: int
    s: int
    t: int
    r: int

    def validate(self) -> None:
        m, s, t, r = self.m, self.s, self.t, self.r
        if m < 1 or s < 1 or t < 0 or r < 0:
            raise SpecError(f"metacyclic parameters out of range: {self}")
        if pow(r, s, m) != 1 % m:
            raise SpecError(f"r^s != 1 mod m for {self}")
        if (t * (r - 1)) % m:
            raise SpecError(f"t(r-1) != 0 mod m for {self}")
        if gcd(r, m) != 1:
            raise SpecError(f"r must be a unit mod m: {self}")

    @property
    def order(self) -> int:
        return self.m * self.s


def metacyclic_regular(spec: MetacyclicSpec, name: str | None = None) -> PermGroup:
    spec.validate()
    m, s, t = spec.m, spec.s, spec.t
    # a^i b^j * a^i' = a^(i + i' * rinv^j) b^j, so that b^-1 a b = a^r
    rinv = pow(spec.r, -1, m) if m > 1 else 0
    rpow = [pow(rinv, j, m) if m > 1 else 0 for j in range(s)]

    def mul(i, j, i2, j2):
        return (i + i2 * rpow[j] + t * ((j + j2) // s)) % m, (j + j2) % s

    n = m * s

    def right_mult(i2, j2):
        images = [0] * n
        for i in range(m):
            for j in range(s):
                a, b = mul(i, j, i2, j2)
                images[i * s + j] = a * s + b
        return Permutation(images)

    gens = []
    if m > 1:
        gens.append(right_mult(1, 0))
    if s > 1:
        gens.append(right_mult(0, 1))
    group = PermGroup(n, gens, name=name or f"metacyclic({m},{s},{t},{spec.r})")
    if group.order != n:
        raise SpecError(f"presentation {spec} does not give a group of order {n}")
    return group


def metacyclic_generators(group: PermGroup) -> tuple[Permutation, Permutation]:
    """The images of ``a`` and ``b`` (``b`` is the identity when s = 1)."""
    gens = list(group.generators)
    ident = group.identity()
    if len(gens) == 1:
        return gens[0], ident
    return gens[0], gens[1]


def _is_power_of(n: int, p: int) -> int | None:
    k = 0
    while n > 1 and n % p == 0:
        n //= p
        k += 1
    return k if n == 1 else None


def cyclic(n: int) -> PermGroup:
    if n < 1:
        raise SpecError("cyclic:n needs n >= 1")
    return metacyclic_regular(MetacyclicSpec(n, 1, 0, 1), name=f"C{n}")


def dihedral(order: int) -> PermGroup:
    if order < 4 or order % 2:
        raise SpecError("dihedral:n needs even n >= 4 (n is the group order)")
    m = order // 2
    return metacyclic_regular(MetacyclicSpec(m, 2, 0, (m - 1) % m if m > 1 else 0), name=f"D{order}")


def quaternion(order: int) -> PermGroup:
    k = _is_power_of(order, 2)
    if k is None or k < 3:
        raise SpecError("quaternion:n needs n = 2^k with k >= 3")
    m = 2 ** (k - 1)
    return metacyclic_regular(MetacyclicSpec(m, 2, 2 ** (k - 2), m - 1), name=f"Q{order}")


def semidihedral(order: int) -> PermGroup:
    k = _is_power_of(order, 2)
    if k is None or k < 4:
        raise SpecError("semidihedral:n needs n = 2^k with k >= 4")
    m = 2 ** (k - 1)
    return metacyclic_regular(MetacyclicSpec(m, 2, 0, 2 ** (k - 2) - 1), name=f"SD{order}")


def modular(p: int, n: int) -> PermGroup:
    """``M_{p^(n+1)} = <a, b | a^(p^n) = b^p = 1, b^-1 a b = a^(1 + p^(n-1))>``."""
    if p < 2 or any(p % q == 0 for q in range(2, p)):
        raise SpecError(f"modular:p,n needs p prime, got {p}")
    if n < 2 or (p == 2 and n < 3):
        raise SpecError("modular:p,n needs n >= 2 (n >= 3 when p = 2)")
    m = p ** n
    return metacyclic_regular(MetacyclicSpec(m, p, 0, 1 + p ** (n - 1)), name=f"M{p ** (n + 1)}")


def symmetric(n: int) -> PermGroup:
    """Sym(n) in its natural action."""
    if n < 1:
        raise SpecError("symmetric:n needs n >= 1")
    gens = []
    if n >= 2:
        gens.append(Permutation([1, 0] + list(range(2, n))))
    if n >= 3:
        gens.append(Permutation(list(range(1, n)) + [0]))
    return PermGroup(n, gens, name=f"S{n}")


def dihedral_natural(k: int) -> PermGroup:
    """Symmetries of a k-gon acting on its k vertices (order 2k)."""
    if k < 3:
        raise SpecError("polygon needs k >= 3")
    rot = Permutation([(i + 1) % k for i in range(k)])
    ref = Permutation([(-i) % k for i in range(k)])
    return PermGroup(k, [rot, ref], name=f"D{2 * k}(natural)")


@dataclass(frozen=True)
class Lemma24Spec:
    n: int
    m: int

    def validate(self) -> None:
        if self.n < 2:
            raise SpecError("lemma24 needs n >= 2 (n = 1 makes the witness cycle trivial)")
        if self.m < self.n or self.m % self.n:
            raise SpecError(f"lemma24 needs n | m with m >= n, got n={self.n}, m={self.m}")


def lemma24_generators(spec: Lemma24Spec) -> tuple[Permutation, Permutation]:
    """``x1 = (1..n)(n+1..2n)`` and ``x2 = (n, n-1, .., 1)(2n+1..2n+m)``, 0-based."""
    n, m = spec.n, spec.m
    deg = 2 * n + m
    x1 = list(range(deg))
    x2 = list(range(deg))
    for i in range(n):
        x1[i] = (i + 1) % n
        x1[n + i] = n + (i + 1) % n
        x2[i] = (i - 1) % n
    for i in range(m):
        x2[2 * n + i] = 2 * n + (i + 1) % m
    return Permutation(x1), Permutation(x2)


def lemma24_action(spec: Lemma24Spec) -> PermGroup:
    spec.validate()
    x1, x2 = lemma24_generators(spec)
    return PermGroup(2 * spec.n + spec.m, [x1, x2], name=f"lemma24({spec.n},{spec.m})")


def lemma24_witness(spec: Lemma24Spec) -> Permutation:
    """The n-cycle ``(1 .. n)`` as a permutation of the 2n+m points."""
    deg = 2 * spec.n + spec.m
    images = list(range(deg))
    for i in range(spec.n):
        images[i] = (i + 1) % spec.n
    return Permutation(images)


def element_orders(group: PermGroup) -> list[int]:
    return sorted(g.order() for g in group.elements)


def abelian_invariant_type(group: PermGroup) -> list[int]:
    """Sorted element-order multiset; determines a finite abelian group up to isomorphism."""
    if not group.is_abelian:
        raise SpecError(f"{group.name or 'group'} is not abelian")
    return element_orders(group)


def named_group(name: str, cap: int = DEFAULT_ELEMENT_CAP) -> PermGroup:
    """Build a group from a spec string.

    Grammar: ``cyclic:n | dihedral:n | quaternion:n | semidihedral:n |
    modular:p,n | metacyclic:m,s,t,r | lemma24:n,m | symmetric:n |
    polygon:k | direct:SPEC+SPEC | file:PATH``.
    """
    name = name.strip()
    if name.startswith("direct:"):
        parts = name[len("direct:"):].split("+")
        if not all(parts):
            raise SpecError(f"bad direct spec {name!r}")
        return direct_product_disjoint([named_group(p, cap) for p in parts])
    if name.startswith("file:"):
        try:
            return load_group(name[len("file:"):], cap=cap)
        except (OSError, KeyError, ValueError) as exc:
            raise SpecError(f"cannot load {name!r}: {exc}") from exc
    kind, _, arg = name.partition(":")
    try:
        args = [int(x) for x in arg.split(",")] if arg else []
    except ValueError:
        raise SpecError(f"non-integer parameter in {name!r}") from None
    builders = {
        "cyclic": (1, cyclic),
        "dihedral": (1, dihedral),
        "quaternion": (1, quaternion),
        "semidihedral": (1, semidihedral),
        "modular": (2, modular),
        "symmetric": (1, symmetric),
        "polygon": (1, dihedral_natural),
        "metacyclic": (4, lambda *a: metacyclic_regular(MetacyclicSpec(*a), name=name)),
        "lemma24": (2, lambda n, m: lemma24_action(Lemma24Spec(n, m))),
    }
    if kind not in builders:
        raise SpecError(f"unknown group kind {kind!r} in {name!r}")
    arity, fn = builders[kind]
    if len(args) != arity:
        raise SpecError(f"{kind} takes {arity} parameter(s), got {name!r}")
    group = fn(*args)
    group.cap = cap
    return group


def small_group_family() -> dict[str, PermGroup]:
    """Regular actions of every nontrivial group of order <= 8 (13 groups)."""
    specs = {
        "C2": "cyclic:2",
        "C3": "cyclic:3",
        "C4": "cyclic:4",
        "V4": "dihedral:4",
        "C5": "cyclic:5",
        "C6": "cyclic:6",
        "S3": "dihedral:6",
        "C7": "cyclic:7",
        "C8": "cyclic:8",
        "C2xC4": "direct:cyclic:2+cyclic:4",
        "C2xC2xC2": "direct:cyclic:2+cyclic:2+cyclic:2",
        "D8": "dihedral:8",
        "Q8": "quaternion:8",
    }
    out = {}
    for label, spec in specs.items():
        g = named_group(spec)
        if g.degree != g.order:
            g = regular_action(g)
        g.name = label
        out[label] = g
    return out


def count_orders(group: PermGroup) -> Counter:
    return Counter(g.order() for g in group.elements)
