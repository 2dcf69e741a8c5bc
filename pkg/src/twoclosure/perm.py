"""Permutations and permutation groups on {0, ..., n-1}.

Action convention is on the right: ``alpha^(p*q) = (alpha^p)^q``, so
``(p * q).images[a] == q.images[p.images[a]]``.  Points are 0-based
internally; cycle notation is read and printed 1-based.
"""

from __future__ import annotations

import json
import re
from collections import deque
from functools import cached_property
from itertools import product
from pathlib import Path
from typing import Iterable, Sequence

DEFAULT_ELEMENT_CAP = 20_000


class CapExceeded(RuntimeError):
    """Raised when an enumeration would exceed its configured cap."""


class DegreeMismatch(ValueError):
    pass


class Permutation:
    """An immutable bijection stored as an image table."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images) - 1}: {images}")
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "_hash", hash(images))

    @classmethod
    def _trusted(cls, images: tuple[int, ...]) -> "Permutation":
        p = object.__new__(cls)
        object.__setattr__(p, "images", images)
        object.__setattr__(p, "_hash", hash(images))
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._trusted(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> "Permutation":
        return parse_cycles(text, degree)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __pow__(self, k: int) -> "Permutation":
        result = Permutation.identity(self.degree)
        base = self if k >= 0 else inverse(self)
        for _ in range(abs(k)):
            result = compose(result, base)
        return result

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"

    def __str__(self) -> str:
        return format_cycles(self)

    def is_identity(self) -> bool:
        return all(i == a for i, a in enumerate(self.images))

    def order(self) -> int:
        from math import lcm
        return lcm(*(len(c) for c in self.cycles())) if self.degree else 1

    def cycles(self) -> list[tuple[int, ...]]:
        """Cycles of length > 1, each starting at its smallest point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            a = self.images[start]
            while a != start:
                cyc.append(a)
                seen[a] = True
                a = self.images[a]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out


def compose(p: Permutation, q: Permutation) -> Permutation:
    """First ``p``, then ``q``."""
    if p.degree != q.degree:
        raise DegreeMismatch(f"degrees differ: {p.degree} != {q.degree}")
    qi = q.images
    return Permutation._trusted(tuple(qi[a] for a in p.images))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for a, b in enumerate(p.images):
        inv[b] = a
    return Permutation._trusted(tuple(inv))


def conjugate(p: Permutation, lam: Permutation) -> Permutation:
    """``lam^-1 * p * lam``: the permutation that does ``p`` on relabeled points."""
    return compose(compose(inverse(lam), p), lam)


# -- cycle notation -----------------------------------------------------------

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse 1-based cycle notation such as ``"(1 2 3)(4 5)"``; ``"()"`` is the identity."""
    stripped = re.sub(r"\s+", "", text)
    if not re.fullmatch(r"(\([^()]*\))*", stripped) or not stripped:
        raise ValueError(f"malformed cycle notation: {text!r}")
    images = list(range(degree))
    used: set[int] = set()
    for body in _CYCLE_RE.findall(text):
        tokens = [t for t in re.split(r"[\s,]+", body.strip()) if t]
        pts = []
        for t in tokens:
            if not t.isdigit():
                raise ValueError(f"bad point {t!r} in {text!r}")
            a = int(t) - 1
            if not 0 <= a < degree:
                raise ValueError(f"point {t} out of range for degree {degree}")
            pts.append(a)
        if len(set(pts)) != len(pts) or used & set(pts):
            raise ValueError(f"repeated point in {text!r}")
        used |= set(pts)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a] = b
    return Permutation._trusted(tuple(images))


def format_cycles(p: Permutation) -> str:
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(a + 1) for a in c) + ")" for c in cycles)


# -- groups -------------------------------------------------------------------


def _closure(gens: Sequence[tuple[int, ...]], degree: int, cap: int) -> list[tuple[int, ...]]:
    ident = tuple(range(degree))
    seen = {ident}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = tuple(s[a] for a in g)
            if h not in seen:
                seen.add(h)
                if len(seen) > cap:
                    raise CapExceeded(f"group order exceeds element cap {cap}")
                queue.append(h)
    return sorted(seen)


class PermGroup:
    """A permutation group given by generators, with a lazily enumerated element list.

    ``elements`` is sorted lexicographically by image table; element 0 is the
    identity.  Enumeration refuses to go beyond ``cap`` elements.
    """

    def __init__(
        self,
        degree: int,
        generators: Iterable[Permutation],
        name: str | None = None,
        cap: int = DEFAULT_ELEMENT_CAP,
        elements: Iterable[Permutation] | None = None,
    ):
        gens = [g if isinstance(g, Permutation) else Permutation(g) for g in generators]
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatch(f"generator of degree {g.degree} in group of degree {degree}")
        if not gens:
            gens = [Permutation.identity(degree)]
        self.degree = degree
        self.generators = tuple(gens)
        self.name = name
        self.cap = cap
        if elements is not None:
            self.__dict__["elements"] = sorted(elements)

    def __repr__(self) -> str:
        label = f"{self.name!r}, " if self.name else ""
        return f"PermGroup({label}degree={self.degree}, gens={[str(g) for g in self.generators]})"

    @cached_property
    def elements(self) -> list[Permutation]:
        raw = _closure([g.images for g in self.generators], self.degree, self.cap)
        return [Permutation._trusted(t) for t in raw]

    @cached_property
    def element_set(self) -> frozenset[Permutation]:
        return frozenset(self.elements)

    @cached_property
    def index(self) -> dict[Permutation, int]:
        return {g: i for i, g in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return self.order

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x: Permutation) -> bool:
        return x in self.element_set

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def same_elements(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and self.element_set == other.element_set

    @cached_property
    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for a in gens for b in gens)

    def orbits(self) -> list[list[int]]:
        return orbits(self)

    def to_json(self) -> dict:
        out: dict = {}
        if self.name:
            out["name"] = self.name
        out["degree"] = self.degree
        out["generators"] = [list(g.images) for g in self.generators]
        return out

    @classmethod
    def from_json(cls, data: dict, cap: int = DEFAULT_ELEMENT_CAP) -> "PermGroup":
        degree = int(data["degree"])
        gens = [Permutation(g) for g in data["generators"]]
        return cls(degree, gens, name=data.get("name"), cap=cap)


def load_group(path: str | Path, cap: int = DEFAULT_ELEMENT_CAP) -> PermGroup:
    with open(path) as fh:
        return PermGroup.from_json(json.load(fh), cap=cap)


def save_group(group: PermGroup, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(group.to_json(), fh, indent=2)
        fh.write("\n")


def enumerate_elements(group: PermGroup) -> list[Permutation]:
    return group.elements


def generated_by(perms: Iterable[Permutation], degree: int, cap: int = DEFAULT_ELEMENT_CAP) -> PermGroup:
    return PermGroup(degree, list(perms), cap=cap)


def reduce_generators(elements: Sequence[Permutation], degree: int) -> list[Permutation]:
    """Greedy small generating set for the group whose full element list is given.

    Scans the elements in canonical order and keeps one only when it is not
    already generated by those kept so far.
    """
    gens: list[Permutation] = []
    have = {tuple(range(degree))}
    for x in sorted(elements):
        if x.images in have:
            continue
        gens.append(x)
        have = set(_closure([g.images for g in gens], degree, max(len(elements), 1)))
    return gens


def group_from_elements(elements: Iterable[Permutation], degree: int, name: str | None = None) -> PermGroup:
    elements = sorted(set(elements))
    return PermGroup(degree, reduce_generators(elements, degree), name=name, elements=elements)


def orbits(group: PermGroup) -> list[list[int]]:
    """Orbits on points, each sorted, blocks ordered by minimum point."""
    seen = [False] * group.degree
    blocks = []
    for start in range(group.degree):
        if seen[start]:
            continue
        block = [start]
        seen[start] = True
        queue = deque([start])
        while queue:
            a = queue.popleft()
            for g in group.generators:
                b = g.images[a]
                if not seen[b]:
                    seen[b] = True
                    block.append(b)
                    queue.append(b)
        blocks.append(sorted(block))
    return blocks


# -- constructions ------------------------------------------------------------


def _shift(p: Permutation, offset: int, total: int) -> Permutation:
    images = list(range(total))
    for a, b in enumerate(p.images):
        images[a + offset] = b + offset
    return Permutation._trusted(tuple(images))


def direct_product_disjoint(groups: Sequence[PermGroup], name: str | None = None) -> PermGroup:
    """Direct product acting on the disjoint union of the factors' point sets."""
    if not groups:
        raise ValueError("need at least one factor")
    if len(groups) == 1:
        return groups[0]
    total = sum(g.degree for g in groups)
    gens = []
    offset = 0
    for g in groups:
        gens.extend(_shift(s, offset, total) for s in g.generators if not s.is_identity())
        offset += g.degree
    if name is None and all(g.name for g in groups):
        name = " x ".join(g.name for g in groups)
    return PermGroup(total, gens, name=name, cap=min(g.cap for g in groups))


def embed_elements(factors: Sequence[PermGroup], choice: Sequence[Permutation]) -> Permutation:
    """The element of the disjoint direct product acting as ``choice[i]`` on factor i."""
    total = sum(g.degree for g in factors)
    images = []
    offset = 0
    for g, x in zip(factors, choice):
        images.extend(b + offset for b in x.images)
        offset += g.degree
    return Permutation._trusted(tuple(images))


class WreathProduct:
    """Imprimitive wreath product ``N wr K`` acting on pairs ``(delta, u)``.

    Point ``(delta, u)`` has index ``delta * |K| + u`` where ``u`` indexes
    ``K.elements``.  An element is a pair ``(f, k)``: ``f`` a tuple of
    N-elements indexed by K, ``k`` an element of K; it sends ``(delta, u)`` to
    ``(delta^f(u), u*k)``.  Products follow
    ``(f, k)(f', k') = (u -> f(u) f'(u k), k k')``.
    """

    def __init__(self, N: PermGroup, K: PermGroup):
        self.N = N
        self.K = K
        self.k_elements = K.elements
        self.k_index = K.index
        self.degree = N.degree * K.order

    @property
    def order(self) -> int:
        return self.N.order ** self.K.order * self.K.order

    def kmul(self, u: int, k: Permutation) -> int:
        return self.k_index[self.k_elements[u] * k]

    def contains(self, f: Sequence[Permutation], k: Permutation) -> bool:
        return len(f) == self.K.order and k in self.K and all(v in self.N for v in f)

    def multiply(self, a, b):
        f, k = a
        g, l = b
        u_k = [self.kmul(u, k) for u in range(self.K.order)]
        return tuple(f[u] * g[u_k[u]] for u in range(self.K.order)), k * l

    def permutation(self, f: Sequence[Permutation], k: Permutation) -> Permutation:
        nk = self.K.order
        images = [0] * self.degree
        for delta, u in product(range(self.N.degree), range(nk)):
            images[delta * nk + u] = f[u].images[delta] * nk + self.kmul(u, k)
        return Permutation._trusted(tuple(images))

    def generators(self) -> list[Permutation]:
        nk = self.K.order
        ident_n = self.N.identity()
        ident_k = self.K.identity()
        gens = []
        for s in self.N.generators:
            if s.is_identity():
                continue
            f = [ident_n] * nk
            f[0] = s
            gens.append(self.permutation(f, ident_k))
        for k in self.K.generators:
            if not k.is_identity():
                gens.append(self.permutation([ident_n] * nk, k))
        return gens

    def as_group(self, cap: int = DEFAULT_ELEMENT_CAP) -> PermGroup:
        """Permutation group of the wreath product; enumerating it respects ``cap``."""
        return PermGroup(self.degree, self.generators(), name=f"{self.N.name} wr {self.K.name}", cap=cap)


def wreath_imprimitive(N: PermGroup, K: PermGroup) -> WreathProduct:
    return WreathProduct(N, K)


# -- relabeling ---------------------------------------------------------------


class PermutationIsomorphism:
    """Point bijection ``lam``; a group is carried to its conjugate by ``lam``."""

    def __init__(self, lam: Permutation):
        self.lam = lam

    @property
    def degree(self) -> int:
        return self.lam.degree

    def point(self, a: int) -> int:
        return self.lam.images[a]

    def element(self, g: Permutation) -> Permutation:
        return conjugate(g, self.lam)


def relabel(group: PermGroup, lam: Permutation | PermutationIsomorphism) -> PermGroup:
    if isinstance(lam, PermutationIsomorphism):
        lam = lam.lam
    if lam.degree != group.degree:
        raise DegreeMismatch(f"relabeling of degree {lam.degree} for group of degree {group.degree}")
    gens = [conjugate(g, lam) for g in group.generators]
    out = PermGroup(group.degree, gens, name=group.name, cap=group.cap)
    if "elements" in group.__dict__:
        out.__dict__["elements"] = sorted(conjugate(g, lam) for g in group.elements)
    return out


def equivariant_bijection(
    gens_a: Sequence[Permutation], gens_b: Sequence[Permutation]
) -> Permutation | None:
    """Find ``lam`` with ``lam^-1 * a_i * lam == b_i`` for every paired generator.

    ``gens_a[i]`` and ``gens_b[i]`` are images of the same abstract generator
    in two actions of equal degree.  Returns ``None`` if the actions are not
    equivalent.
    """
    if len(gens_a) != len(gens_b):
        raise ValueError("generator lists must pair up")
    if not gens_a:
        return None
    n = gens_a[0].degree
    if any(g.degree != n for g in list(gens_a) + list(gens_b)):
        raise DegreeMismatch("all generators must share one degree")

    def orbit_order(gens, start):
        seen = {start: ()}
        order = [start]
        queue = deque([start])
        while queue:
            a = queue.popleft()
            for i, g in enumerate(gens):
                b = g.images[a]
                if b not in seen:
                    seen[b] = (a, i)
                    order.append(b)
                    queue.append(b)
        return order, seen

    lam: list[int | None] = [None] * n

    def extend(start_a: int, start_b: int) -> list[int] | None:
        # orbit of start_a mapped along generator words to those from start_b
        order, parent = orbit_order(gens_a, start_a)
        local = {start_a: start_b}
        for a in order[1:]:
            pa, i = parent[a]
            local[a] = gens_b[i].images[local[pa]]
        taken = {v for v in lam if v is not None}
        if len(set(local.values())) != len(local) or taken & set(local.values()):
            return None
        for a, b in local.items():
            for i in range(len(gens_a)):
                if local.get(gens_a[i].images[a]) != gens_b[i].images[b]:
                    return None
        return list(local.items())

    def search() -> bool:
        try:
            start = lam.index(None)
        except ValueError:
            return True
        taken = {v for v in lam if v is not None}
        for cand in range(n):
            if cand in taken:
                continue
            pairs = extend(start, cand)
            if pairs is None:
                continue
            for a, b in pairs:
                lam[a] = b
            if search():
                return True
            for a, _ in pairs:
                lam[a] = None
        return False

    if search():
        return Permutation(lam)  # type: ignore[arg-type]
    return None


def regular_action(group: PermGroup, name: str | None = None) -> PermGroup:
    """Right-regular action of ``group`` on its own canonical element list."""
    idx = group.index
    elems = group.elements
    gens = [
        Permutation._trusted(tuple(idx[e * s] for e in elems))
        for s in group.generators
    ]
    return PermGroup(group.order, gens, name=name or group.name, cap=group.cap)
