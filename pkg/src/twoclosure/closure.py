"""Orbital colorings and 2-closures.

Three routes to the 2-closure are provided and cross-checked:

* ``closure2_bruteforce`` filters all of Sym(n) through ``preserves_coloring``;
* ``closure2_backtrack`` computes the automorphism group of the orbital
  coloring by individualization and refinement;
* ``wielandt_member`` decides membership pair by pair, straight from the
  group's elements, without building a coloring.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations

import numpy as np

from .perm import DegreeMismatch, Permutation, PermGroup, group_from_elements

BRUTE_FORCE_MAX_DEGREE = 9
BACKTRACK_MAX_DEGREE = 40


class DegreeTooLarge(RuntimeError):
    pass


@dataclass
class OrbitalColoring:
    """Partition of Omega x Omega into the orbits of a group on ordered pairs.

    Colors are numbered by first encounter when scanning pairs
    lexicographically, so the color of an orbital is the rank of its minimal pair.
    """

    degree: int
    colors: list[list[int]]
    representatives: list[tuple[int, int]] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.representatives)

    def __getitem__(self, pair: tuple[int, int]) -> int:
        a, b = pair
        return self.colors[a][b]

    def to_json(self) -> dict:
        return {"degree": self.degree, "colors": [list(row) for row in self.colors]}

    def paired(self) -> list[int]:
        """``paired()[c]`` is the color of ``(b, a)`` for any ``(a, b)`` of color ``c``."""
        return [self.colors[b][a] for a, b in self.representatives]

    def as_array(self) -> np.ndarray:
        return np.array(self.colors, dtype=np.int32).reshape(self.degree, self.degree)


def orbitals(group: PermGroup) -> OrbitalColoring:
    n = group.degree
    colors = [[-1] * n for _ in range(n)]
    reps = []
    gens = [g.images for g in group.generators]
    for a in range(n):
        for b in range(n):
            if colors[a][b] >= 0:
                continue
            c = len(reps)
            reps.append((a, b))
            colors[a][b] = c
            queue = deque([(a, b)])
            while queue:
                x, y = queue.popleft()
                for g in gens:
                    u, v = g[x], g[y]
                    if colors[u][v] < 0:
                        colors[u][v] = c
                        queue.append((u, v))
    return OrbitalColoring(n, colors, reps)


def preserves_coloring(coloring: OrbitalColoring, x: Permutation) -> bool:
    if x.degree != coloring.degree:
        raise DegreeMismatch(f"permutation degree {x.degree} vs coloring degree {coloring.degree}")
    col = coloring.colors
    im = x.images
    for a in range(coloring.degree):
        row = col[a]
        row_x = col[im[a]]
        for b in range(coloring.degree):
            if row_x[im[b]] != row[b]:
                return False
    return True


def _pair_images(group: PermGroup) -> list[list[set[tuple[int, int]]]]:
    cached = group.__dict__.get("_pair_images")
    if cached is not None:
        return cached
    n = group.degree
    table = [[set() for _ in range(n)] for _ in range(n)]
    for g in group.elements:
        im = g.images
        for a in range(n):
            row = table[a]
            ga = im[a]
            for b in range(n):
                row[b].add((ga, im[b]))
    group.__dict__["_pair_images"] = table
    return table


def wielandt_member(group: PermGroup, x: Permutation) -> bool:
    """True iff every pair is moved by ``x`` the way some element of the group moves it."""
    if x.degree != group.degree:
        raise DegreeMismatch(f"permutation degree {x.degree} vs group degree {group.degree}")
    table = _pair_images(group)
    im = x.images
    n = group.degree
    return all((im[a], im[b]) in table[a][b] for a in range(n) for b in range(n))


def wielandt_failure(group: PermGroup, x: Permutation) -> tuple[int, int] | None:
    """First pair (lexicographic) that no group element moves like ``x``."""
    table = _pair_images(group)
    im = x.images
    for a in range(group.degree):
        for b in range(group.degree):
            if (im[a], im[b]) not in table[a][b]:
                return a, b
    return None


# -- brute force --------------------------------------------------------------


@lru_cache(maxsize=4)
def _all_permutations(n: int) -> np.ndarray:
    dtype = np.int8 if n < 128 else np.int16
    return np.array(list(permutations(range(n))), dtype=dtype).reshape(-1, n)


def closure2_bruteforce(group: PermGroup, max_degree: int = BRUTE_FORCE_MAX_DEGREE) -> PermGroup:
    n = group.degree
    if n > max_degree:
        raise DegreeTooLarge(f"brute force limited to degree {max_degree}, got {n}")
    col = orbitals(group).as_array()
    cand = _all_permutations(n)
    # diagonal first: it discards most candidates cheaply
    order = [(a, a) for a in range(n)] + [(a, b) for a in range(n) for b in range(n) if a != b]
    for a, b in order:
        if not len(cand):
            break
        keep = col[cand[:, a], cand[:, b]] == col[a, b]
        cand = cand[keep]
    elements = [Permutation._trusted(tuple(int(v) for v in row)) for row in cand]
    return group_from_elements(elements, n, name=_closure_name(group))


def _closure_name(group: PermGroup) -> str | None:
    return f"closure2({group.name})" if group.name else None


# -- individualization / refinement ------------------------------------------


class _Refiner:
    """Joint 1-dimensional Weisfeiler-Leman refinement of two vertex colorings.

    Signatures are compared across the two sides, so equal color ids mean the
    same refined class on both.  Returns ``None`` when the sides diverge.
    """

    def __init__(self, col: list[list[int]]):
        self.col = col
        self.n = len(col)
        self.edges = [
            [(col[a][b], col[b][a]) for b in range(self.n)] for a in range(self.n)
        ]

    def refine(self, left: list[int], right: list[int]):
        n = self.n
        edges = self.edges
        k = len(set(left))
        while True:
            sig_l = [
                (left[a], tuple(sorted(zip(edges[a], left)))) for a in range(n)
            ]
            sig_r = [
                (right[a], tuple(sorted(zip(edges[a], right)))) for a in range(n)
            ]
            cl = Counter(sig_l)
            if cl != Counter(sig_r):
                return None
            ids = {s: i for i, s in enumerate(sorted(cl))}
            left = [ids[s] for s in sig_l]
            right = [ids[s] for s in sig_r]
            if len(ids) == k:
                return left, right
            k = len(ids)


def _target_cell(colors: list[int]) -> list[int] | None:
    """Smallest non-singleton cell (ties: smallest color id), as a sorted point list."""
    cells: dict[int, list[int]] = {}
    for a, c in enumerate(colors):
        cells.setdefault(c, []).append(a)
    best = None
    for c in sorted(cells):
        cell = cells[c]
        if len(cell) > 1 and (best is None or len(cell) < len(best)):
            best = cell
    return best


def _individualize(colors: list[int], point: int) -> list[int]:
    out = list(colors)
    out[point] = max(colors) + 1
    return out


class _AutomorphismSearch:
    def __init__(self, coloring: OrbitalColoring):
        self.coloring = coloring
        self.n = coloring.degree
        self.refiner = _Refiner(coloring.colors)
        self.nodes = 0

    def root(self) -> list[int]:
        diag = [self.coloring.colors[a][a] for a in range(self.n)]
        out = self.refiner.refine(diag, diag)
        assert out is not None
        return out[0]

    def find_one(self, left: list[int], right: list[int]) -> Permutation | None:
        """Some automorphism mapping the left partition onto the right one, if any."""
        self.nodes += 1
        cell = _target_cell(left)
        if cell is None:
            pos = {c: a for a, c in enumerate(right)}
            x = Permutation._trusted(tuple(pos[left[a]] for a in range(self.n)))
            return x if preserves_coloring(self.coloring, x) else None
        alpha = cell[0]
        target = left[alpha]
        for beta in range(self.n):
            if right[beta] != target:
                continue
            refined = self.refiner.refine(_individualize(left, alpha), _individualize(right, beta))
            if refined is None:
                continue
            x = self.find_one(*refined)
            if x is not None:
                return x
        return None

    def generators(self) -> list[Permutation]:
        """Generators of the full automorphism group via a stabilizer chain along one base."""
        path = [self.root()]
        base = []
        while True:
            cell = _target_cell(path[-1])
            if cell is None:
                break
            base.append(cell[0])
            nxt = self.refiner.refine(_individualize(path[-1], cell[0]), _individualize(path[-1], cell[0]))
            path.append(nxt[0])
        gens: list[Permutation] = []
        # deepest level first: gens found so far generate the stabilizer of the longer prefix
        for level in range(len(base) - 1, -1, -1):
            colors = path[level]
            alpha = base[level]
            orbit = _orbit(alpha, gens)
            for beta in range(self.n):
                if colors[beta] != colors[alpha] or beta in orbit:
                    continue
                refined = self.refiner.refine(_individualize(colors, alpha), _individualize(colors, beta))
                if refined is None:
                    continue
                x = self.find_one(*refined)
                if x is not None:
                    gens.append(x)
                    orbit = _orbit(alpha, gens)
        return gens


def _orbit(point: int, gens: list[Permutation]) -> set[int]:
    seen = {point}
    queue = deque([point])
    while queue:
        a = queue.popleft()
        for g in gens:
            b = g.images[a]
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return seen


def automorphism_generators(coloring: OrbitalColoring) -> list[Permutation]:
    return _AutomorphismSearch(coloring).generators()


def closure2_backtrack(group: PermGroup, max_degree: int = BACKTRACK_MAX_DEGREE) -> PermGroup:
    n = group.degree
    if n > max_degree:
        raise DegreeTooLarge(f"backtrack limited to degree {max_degree}, got {n}")
    gens = automorphism_generators(orbitals(group))
    found = PermGroup(n, gens, cap=group.cap)
    return group_from_elements(found.elements, n, name=_closure_name(group))


def closure2(
    group: PermGroup,
    method: str = "auto",
    brute_max_degree: int = BRUTE_FORCE_MAX_DEGREE,
    backtrack_max_degree: int = BACKTRACK_MAX_DEGREE,
    verify: bool = True,
) -> PermGroup:
    """2-closure of ``group``; ``method`` is ``auto``, ``brute`` or ``backtrack``.

    With ``verify`` the result is checked to contain the group and every
    generator of the result is checked with the Wielandt criterion.
    """
    if method == "auto":
        method = "brute" if group.degree <= brute_max_degree else "backtrack"
    if method == "brute":
        result = closure2_bruteforce(group, brute_max_degree)
    elif method == "backtrack":
        result = closure2_backtrack(group, backtrack_max_degree)
    else:
        raise ValueError(f"unknown closure method {method!r}")
    if verify:
        if not all(g in result for g in group.generators):
            raise AssertionError("closure does not contain the group")
        if not all(wielandt_member(group, x) for x in result.generators):
            raise AssertionError("closure generator fails the Wielandt criterion")
    return result


def is_2closed(group: PermGroup, method: str = "auto") -> bool:
    return closure2(group, method=method).order == group.order
