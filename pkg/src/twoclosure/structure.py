"""Subgroups, cores, centralizers, nilpotency and faithful actions.

Subgroups are bitmasks over the parent's canonical element list, so
intersections (cores) and containment are integer operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd

from .perm import CapExceeded, Permutation, PermGroup

SUBGROUP_LATTICE_CAP = 100


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


class GroupTable:
    """Multiplication table on element indices of a PermGroup."""

    def __init__(self, group: PermGroup):
        self.group = group
        elems = group.elements
        idx = group.index
        self.n = len(elems)
        self.mul = [[idx[a * b] for b in elems] for a in elems]
        self.inv = [idx[~a] for a in elems]
        self.orders = [a.order() for a in elems]
        self.full = (1 << self.n) - 1

    def conj(self, i: int, g: int) -> int:
        """Index of ``g^-1 * e_i * g``."""
        return self.mul[self.mul[self.inv[g]][i]][g]

    def conj_mask(self, mask: int, g: int) -> int:
        out = 0
        for i in _bits(mask):
            out |= 1 << self.conj(i, g)
        return out

    def generate(self, gens) -> int:
        mask = 1
        frontier = [0]
        gens = list(gens)
        while frontier:
            nxt = []
            for a in frontier:
                row = self.mul[a]
                for s in gens:
                    b = row[s]
                    if not mask >> b & 1:
                        mask |= 1 << b
                        nxt.append(b)
            frontier = nxt
        return mask


def table(group: PermGroup) -> GroupTable:
    t = group.__dict__.get("_table")
    if t is None:
        t = GroupTable(group)
        group.__dict__["_table"] = t
    return t


class Subgroup:
    def __init__(self, parent: PermGroup, mask: int):
        self.parent = parent
        self.mask = mask
        self.table = table(parent)

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, of {self.parent.name or 'group'})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Subgroup) and other.parent is self.parent and other.mask == self.mask

    def __hash__(self) -> int:
        return hash(self.mask)

    def __contains__(self, x: Permutation) -> bool:
        i = self.parent.index.get(x)
        return i is not None and bool(self.mask >> i & 1)

    def __le__(self, other: "Subgroup") -> bool:
        return self.mask & ~other.mask == 0

    @cached_property
    def indices(self) -> list[int]:
        return list(_bits(self.mask))

    @property
    def order(self) -> int:
        return len(self.indices)

    @property
    def index_in_parent(self) -> int:
        return self.parent.order // self.order

    @cached_property
    def elements(self) -> list[Permutation]:
        return [self.parent.elements[i] for i in self.indices]

    def sort_key(self):
        return (self.order, tuple(self.indices))

    @cached_property
    def core(self) -> "Subgroup":
        return core(self.parent, self)

    @property
    def is_normal(self) -> bool:
        return self.core.mask == self.mask

    @cached_property
    def is_abelian(self) -> bool:
        mul = self.table.mul
        idx = self.indices
        return all(mul[a][b] == mul[b][a] for a in idx for b in idx)

    @cached_property
    def is_cyclic(self) -> bool:
        return any(self.table.orders[i] == self.order for i in self.indices)

    @property
    def is_trivial(self) -> bool:
        return self.mask == 1

    def as_group(self, name: str | None = None) -> PermGroup:
        """This subgroup as a PermGroup acting on the parent's points."""
        from .perm import reduce_generators

        gens = reduce_generators(self.elements, self.parent.degree)
        return PermGroup(self.parent.degree, gens, name=name, elements=self.elements)


def subgroup_from_elements(parent: PermGroup, elements) -> Subgroup:
    t = table(parent)
    idx = parent.index
    return Subgroup(parent, t.generate(idx[e] for e in elements))


def trivial_subgroup(group: PermGroup) -> Subgroup:
    return Subgroup(group, 1)


def whole(group: PermGroup) -> Subgroup:
    return Subgroup(group, table(group).full)


def is_subgroup_mask(group: PermGroup, mask: int) -> bool:
    t = table(group)
    if not mask & 1:
        return False
    idx = list(_bits(mask))
    return all(mask >> t.mul[a][b] & 1 for a in idx for b in idx)


def all_subgroups(group: PermGroup, cap: int = SUBGROUP_LATTICE_CAP) -> list[Subgroup]:
    """Every subgroup exactly once, sorted by (order, member indices).

    Starts from the cyclic subgroups and joins with cyclic subgroups until
    nothing new appears.
    """
    cached = group.__dict__.get("_subgroups")
    if cached is not None:
        return cached
    if group.order > cap:
        raise CapExceeded(f"subgroup lattice limited to order {cap}, got {group.order}")
    t = table(group)
    cyclic: dict[int, int] = {}
    for i in range(t.n):
        m = t.generate([i])
        cyclic.setdefault(m, i)
    cyclic_items = sorted(cyclic.items())
    found = set(cyclic) | {1}
    frontier = list(found)
    while frontier:
        nxt = []
        for mask in frontier:
            gens = None
            for cmask, c in cyclic_items:
                if cmask & ~mask == 0:
                    continue
                if gens is None:
                    gens = _small_generating_set(t, mask)
                joined = t.generate(gens + [c])
                if joined not in found:
                    found.add(joined)
                    nxt.append(joined)
        frontier = nxt
    subs = sorted((Subgroup(group, m) for m in found), key=Subgroup.sort_key)
    group.__dict__["_subgroups"] = subs
    return subs


def _small_generating_set(t: GroupTable, mask: int) -> list[int]:
    gens: list[int] = []
    have = 1
    for i in _bits(mask):
        if not have >> i & 1:
            gens.append(i)
            have = t.generate(gens)
            if have == mask:
                break
    return gens


def conjugacy_classes_of_subgroups(group: PermGroup) -> list[list[Subgroup]]:
    """Classes in lattice order; each class is listed in lattice order too."""
    subs = all_subgroups(group)
    t = table(group)
    pos = {s.mask: k for k, s in enumerate(subs)}
    seen = set()
    classes = []
    for s in subs:
        if s.mask in seen:
            continue
        conj = {t.conj_mask(s.mask, g) for g in range(t.n)}
        seen |= conj
        classes.append([subs[k] for k in sorted(pos[m] for m in conj)])
    return classes


def core(group: PermGroup, sub: Subgroup) -> Subgroup:
    t = table(group)
    mask = sub.mask
    for g in range(t.n):
        mask &= t.conj_mask(sub.mask, g)
        if mask == 1:
            break
    return Subgroup(group, mask)


def centralizer(group: PermGroup, sub: Subgroup) -> Subgroup:
    t = table(group)
    gens = _small_generating_set(t, sub.mask) if sub.mask != 1 else []
    mask = 0
    for i in range(t.n):
        row = t.mul[i]
        if all(row[s] == t.mul[s][i] for s in gens):
            mask |= 1 << i
    return Subgroup(group, mask)


def center(group: PermGroup) -> Subgroup:
    return centralizer(group, whole(group))


def normal_subgroups(group: PermGroup) -> list[Subgroup]:
    return [s for s in all_subgroups(group) if s.is_normal]


def _is_nilpotent_indices(t: GroupTable, idx: list[int], order: int) -> bool:
    members = set(idx)
    for p in _prime_factors(order):
        p_elems = [i for i in idx if _is_p_power(t.orders[i], p)]
        pe = set(p_elems)
        for a in p_elems:
            row = t.mul[a]
            if any(row[b] not in pe for b in p_elems):
                return False
        assert pe <= members
    return True


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def is_nilpotent(obj: PermGroup | Subgroup) -> bool:
    """Every set of p-elements is closed under multiplication (all Sylows normal)."""
    if isinstance(obj, Subgroup):
        return _is_nilpotent_indices(obj.table, obj.indices, obj.order)
    t = table(obj)
    return _is_nilpotent_indices(t, list(range(t.n)), t.n)


def fitting(group: PermGroup) -> Subgroup:
    t = table(group)
    mask = 1
    for s in normal_subgroups(group):
        if is_nilpotent(s):
            mask = t.generate(_small_generating_set(t, mask | s.mask))
    return Subgroup(group, mask)


def normal_abelian_subgroups(group: PermGroup) -> list[Subgroup]:
    return [s for s in normal_subgroups(group) if s.is_abelian]


def sylow_is_cyclic_or_quaternion(group: PermGroup) -> bool:
    """Each Sylow subgroup has a unique subgroup of order p (for nilpotent groups:
    cyclic, or the Sylow 2-subgroup is generalized quaternion)."""
    t = table(group)
    for p in _prime_factors(t.n):
        if sum(1 for o in t.orders if o == p) != p - 1:
            return False
    return True


# -- coset actions -------------------------------------------------------------


@dataclass
class CosetAction:
    group: PermGroup  # image, degree [G:H]
    cosets: list[list[int]]
    kernel: Subgroup


def right_cosets(group: PermGroup, sub: Subgroup) -> list[list[int]]:
    """Right cosets ``H g`` as sorted index lists, ordered by least member (H first)."""
    t = table(group)
    seen = 0
    cosets = []
    for g in range(t.n):
        if seen >> g & 1:
            continue
        coset = sorted(t.mul[h][g] for h in sub.indices)
        for i in coset:
            seen |= 1 << i
        cosets.append(coset)
    return cosets


def coset_action(group: PermGroup, sub: Subgroup, name: str | None = None) -> CosetAction:
    t = table(group)
    cosets = right_cosets(group, sub)
    which = [0] * t.n
    for c, coset in enumerate(cosets):
        for i in coset:
            which[i] = c

    def perm_of(g: int) -> Permutation:
        return Permutation._trusted(tuple(which[t.mul[coset[0]][g]] for coset in cosets))

    gens = [perm_of(group.index[s]) for s in group.generators]
    image = PermGroup(len(cosets), gens, name=name, cap=group.cap)
    kernel_mask = 0
    for g in range(t.n):
        if perm_of(g).is_identity():
            kernel_mask |= 1 << g
    return CosetAction(image, cosets, Subgroup(group, kernel_mask))


# -- faithful actions ----------------------------------------------------------


@dataclass
class FaithfulAction:
    """Disjoint union of coset actions on representatives of subgroup classes."""

    group: PermGroup
    class_ids: tuple[int, ...]
    subgroups: tuple[Subgroup, ...]

    @property
    def degree(self) -> int:
        return self.group.degree

    def describe(self) -> str:
        parts = [f"[G:{s.order}]" for s in self.subgroups]
        return "+".join(parts)

    def label(self) -> str:
        return f"deg {self.degree}: classes {list(self.class_ids)} (stabilizer orders {[s.order for s in self.subgroups]})"


def action_on_cosets(group: PermGroup, subs, name: str | None = None) -> PermGroup:
    """Permutation image of ``group`` on the disjoint union of the coset spaces of ``subs``."""
    t = table(group)
    blocks = []
    offset = 0
    for s in subs:
        cosets = right_cosets(group, s)
        which = [0] * t.n
        for c, coset in enumerate(cosets):
            for i in coset:
                which[i] = c + offset
        blocks.append((cosets, which))
        offset += len(cosets)
    gens = []
    for s in group.generators:
        g = group.index[s]
        images = []
        for cosets, which in blocks:
            images.extend(which[t.mul[coset[0]][g]] for coset in cosets)
        gens.append(Permutation._trusted(tuple(images)))
    return PermGroup(offset, gens, name=name, cap=group.cap)


def faithful_actions(group: PermGroup, max_degree: int) -> list[FaithfulAction]:
    """One action per multiset of subgroup conjugacy classes with trivial joint core.

    Sorted by degree, then by the class-id tuple.  Each class contributes its
    lattice-first representative.
    """
    classes = conjugacy_classes_of_subgroups(group)
    reps = [c[0] for c in classes]
    cores = [r.core.mask for r in reps]
    indices = [r.index_in_parent for r in reps]
    full = table(group).full
    out: list[tuple[int, tuple[int, ...]]] = []

    def walk(start: int, chosen: list[int], degree: int, core_mask: int):
        if chosen and core_mask == 1:
            out.append((degree, tuple(chosen)))
        for k in range(start, len(reps)):
            d = degree + indices[k]
            if d > max_degree:
                continue
            chosen.append(k)
            walk(k, chosen, d, core_mask & cores[k])
            chosen.pop()

    walk(0, [], 0, full)
    out.sort()
    actions = []
    for degree, ids in out:
        subs = tuple(reps[k] for k in ids)
        name = f"{group.name or 'G'}{{{','.join(str(k) for k in ids)}}}"
        image = action_on_cosets(group, subs, name=name)
        actions.append(FaithfulAction(image, ids, subs))
    return actions


def is_faithful(image: PermGroup) -> bool:
    """Only the identity fixes every point (checked on the enumerated image)."""
    return sum(1 for g in image.elements if g.is_identity()) == 1


def element_homomorphism(group: PermGroup, image: PermGroup) -> dict[Permutation, Permutation]:
    """Extend the generator correspondence ``group.generators[i] -> image.generators[i]``."""
    mapping = {group.identity(): image.identity()}
    frontier = [group.identity()]
    while frontier:
        nxt = []
        for g in frontier:
            for s, s_img in zip(group.generators, image.generators):
                h = g * s
                if h not in mapping:
                    mapping[h] = mapping[g] * s_img
                    nxt.append(h)
        frontier = nxt
    return mapping


def coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1
