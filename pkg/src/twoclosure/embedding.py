"""The universal embedding of G into N wr (G/N) and the induced faithful G-set.

Given ``N`` normal in ``G`` and a faithful N-set ``Delta``, the quotient
``K = G/N`` is realized as the regular permutation group on the right cosets
of N (coset ``u`` is the u-th coset by least member; coset 0 is N), a
transversal ``t_u`` is chosen, and

    f_x(u)         = t_u x t_{u psi(x)}^-1      (an element of N)
    (delta, k)^x   = (delta^{f_x(k)}, k psi(x))

defines a faithful action of G on ``Omega = Delta x K`` with point
``(delta, k)`` at index ``delta * |K| + k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .closure import orbitals, preserves_coloring
from .perm import (
    Permutation,
    PermGroup,
    WreathProduct,
    conjugate,
    equivariant_bijection,
    reduce_generators,
)
from .structure import Subgroup, coset_action, is_faithful, table


class EmbeddingError(ValueError):
    pass


def find_isomorphism(src: PermGroup, dst: PermGroup) -> dict[Permutation, Permutation] | None:
    """Some isomorphism ``src -> dst`` as an element map, or ``None``."""
    if src.order != dst.order:
        return None
    gens = reduce_generators(src.elements, src.degree)
    by_order: dict[int, list[Permutation]] = {}
    for y in dst.elements:
        by_order.setdefault(y.order(), []).append(y)

    def extend(images: list[Permutation]) -> dict | None:
        mapping = {src.identity(): dst.identity()}
        frontier = [src.identity()]
        while frontier:
            nxt = []
            for g in frontier:
                for s, s_img in zip(gens, images):
                    h = g * s
                    h_img = mapping[g] * s_img
                    known = mapping.get(h)
                    if known is None:
                        mapping[h] = h_img
                        nxt.append(h)
                    elif known != h_img:
                        return None
            frontier = nxt
        if len(set(mapping.values())) != len(mapping):
            return None
        return mapping

    def search(images: list[Permutation]) -> dict | None:
        if len(images) == len(gens):
            return extend(images)
        for y in by_order.get(gens[len(images)].order(), []):
            out = search(images + [y])
            if out is not None:
                return out
        return None

    if not gens:
        return {src.identity(): dst.identity()}
    return search([])


@dataclass
class EmbeddingContext:
    G: PermGroup
    N: Subgroup
    delta: PermGroup
    delta_map: dict[int, Permutation]  # N-element index in G -> permutation of Delta
    K: PermGroup
    coset_of: list[int]  # G-element index -> K index
    transversal: list[int]  # K index -> G-element index
    _f_cache: dict = field(default_factory=dict, repr=False)

    @property
    def k_order(self) -> int:
        return self.K.order

    @property
    def omega_degree(self) -> int:
        return self.delta.degree * self.K.order

    def psi(self, x: Permutation) -> int:
        return self.coset_of[self.G.index[x]]

    def kmul(self, u: int, v: int) -> int:
        return table(self.K).mul[u][v]

    def point(self, delta: int, k: int) -> int:
        return delta * self.K.order + k

    def unpoint(self, a: int) -> tuple[int, int]:
        return divmod(a, self.K.order)


def _default_transversal(G: PermGroup, cosets: list[list[int]]) -> list[int]:
    # coset members are sorted element indices, and element order is lexicographic
    return [c[0] for c in cosets]


def rotated_transversal(G: PermGroup, N: Subgroup) -> list[int]:
    """Second-smallest member of every nontrivial coset; identity for N itself."""
    from .structure import right_cosets

    cosets = right_cosets(G, N)
    return [c[0] if u == 0 else c[1 % len(c)] for u, c in enumerate(cosets)]


def make_context(
    G: PermGroup,
    N: Subgroup,
    delta: PermGroup,
    delta_map: dict[Permutation, Permutation] | None = None,
    transversal: list[int] | None = None,
) -> EmbeddingContext:
    """Build the embedding data.

    ``delta`` is a faithful permutation group isomorphic to ``N``; when
    ``delta_map`` (N-element -> Delta permutation) is omitted an isomorphism
    is found by search.
    """
    if N.parent is not G:
        raise EmbeddingError("N must be a subgroup of G")
    if not N.is_normal:
        raise EmbeddingError("N is not normal in G")
    n_group = N.as_group()
    if delta_map is None:
        delta_map = find_isomorphism(n_group, delta)
        if delta_map is None:
            raise EmbeddingError("Delta group is not isomorphic to N")
    if set(delta_map) != set(N.elements):
        raise EmbeddingError("delta_map must be defined exactly on N")
    t = table(G)
    if len(set(delta_map.values())) != N.order:
        raise EmbeddingError("Delta action of N is not faithful")
    for a, b in product(N.indices, repeat=2):
        ga, gb = G.elements[a], G.elements[b]
        if delta_map[ga] * delta_map[gb] != delta_map[G.elements[t.mul[a][b]]]:
            raise EmbeddingError("delta_map is not a homomorphism")
    quotient = coset_action(G, N, name=f"{G.name or 'G'}/N")
    cosets = quotient.cosets
    coset_of = [0] * t.n
    for u, c in enumerate(cosets):
        for i in c:
            coset_of[i] = u
    K = quotient.group
    # regular K: its u-th element (by image table) sends coset 0 to coset u
    assert [k.images[0] for k in K.elements] == list(range(len(cosets)))
    if transversal is None:
        transversal = _default_transversal(G, cosets)
    if len(transversal) != len(cosets) or any(coset_of[tu] != u for u, tu in enumerate(transversal)):
        raise EmbeddingError("transversal must pick one representative per coset, in coset order")
    idx_map = {G.index[g]: p for g, p in delta_map.items()}
    return EmbeddingContext(G, N, delta, idx_map, K, coset_of, list(transversal))


def f_map(ctx: EmbeddingContext, x: Permutation | int, u: int) -> int:
    """``f_x(u) = t_u x t_{u psi(x)}^-1`` as a G-element index; always lies in N."""
    xi = x if isinstance(x, int) else ctx.G.index[x]
    key = (xi, u)
    cached = ctx._f_cache.get(key)
    if cached is not None:
        return cached
    t = table(ctx.G)
    v = ctx.kmul(u, ctx.coset_of[xi])
    val = t.mul[t.mul[ctx.transversal[u]][xi]][t.inv[ctx.transversal[v]]]
    if not ctx.N.mask >> val & 1:
        raise EmbeddingError(f"f_x(u) left N for x={xi}, u={u}: broken transversal")
    ctx._f_cache[key] = val
    return val


def omega_permutation(ctx: EmbeddingContext, x: Permutation | int) -> Permutation:
    xi = x if isinstance(x, int) else ctx.G.index[x]
    nk = ctx.k_order
    kx = ctx.coset_of[xi]
    images = [0] * ctx.omega_degree
    for u in range(nk):
        f = ctx.delta_map[f_map(ctx, xi, u)].images
        v = ctx.kmul(u, kx)
        for d in range(ctx.delta.degree):
            images[d * nk + u] = f[d] * nk + v
    return Permutation._trusted(tuple(images))


def universal_action(ctx: EmbeddingContext) -> PermGroup:
    gens = [omega_permutation(ctx, s) for s in ctx.G.generators]
    return PermGroup(ctx.omega_degree, gens, name=f"{ctx.G.name or 'G'} on DeltaxK", cap=ctx.G.cap)


def action_map(ctx: EmbeddingContext) -> dict[Permutation, Permutation]:
    return {g: omega_permutation(ctx, i) for i, g in enumerate(ctx.G.elements)}


@dataclass
class WreathReport:
    homomorphism: bool
    injective: bool
    base_in_n: bool
    pairs_checked: int
    first_violation: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.homomorphism and self.injective and self.base_in_n

    def to_json(self) -> dict:
        return {
            "homomorphism": self.homomorphism,
            "injective": self.injective,
            "base_in_N": self.base_in_n,
            "pairs_checked": self.pairs_checked,
            "first_violation": self.first_violation,
        }


def embed_into_wreath(ctx: EmbeddingContext) -> WreathReport:
    """Check that ``x -> (f_x, psi(x))`` is an injective homomorphism into N wr K.

    The base group is the Delta image of N, so wreath elements are compared as
    tuples of Delta permutations.
    """
    G = ctx.G
    W = WreathProduct(ctx.delta, ctx.K)
    nk = ctx.k_order
    phi = []
    base_ok = True
    for xi in range(G.order):
        fs = tuple(f_map(ctx, xi, u) for u in range(nk))
        base_ok &= all(ctx.N.mask >> v & 1 for v in fs)
        f = tuple(ctx.delta_map[v] for v in fs)
        phi.append((f, ctx.K.elements[ctx.coset_of[xi]]))
    base_ok &= all(W.contains(f, k) for f, k in phi)
    t = table(G)
    hom = True
    violation = None
    for a, b in product(range(G.order), repeat=2):
        if W.multiply(phi[a], phi[b]) != phi[t.mul[a][b]]:
            hom = False
            violation = (str(G.elements[a]), str(G.elements[b]))
            break
    injective = len(set(phi)) == G.order
    return WreathReport(hom, injective, base_ok, G.order ** 2 if hom else 0, violation)


@dataclass
class BlockReport:
    blocks: list[list[int]]
    invariant: bool
    matches_twisted_delta: bool

    @property
    def ok(self) -> bool:
        return self.invariant and self.matches_twisted_delta


def restrict_to_N(ctx: EmbeddingContext) -> tuple[PermGroup, BlockReport]:
    """Image of N on Omega and a check of the block structure ``Delta_g = Delta x {g}``.

    On block ``g`` the element n must act as ``t_g n t_g^-1`` acts on Delta.
    """
    t = table(ctx.G)
    nk = ctx.k_order
    blocks = [[ctx.point(d, g) for d in range(ctx.delta.degree)] for g in range(nk)]
    invariant = True
    twisted = True
    perms = []
    for ni in ctx.N.indices:
        p = omega_permutation(ctx, ni)
        perms.append(p)
        for g, block in enumerate(blocks):
            if any(p.images[a] % nk != g for a in block):
                invariant = False
            tg = ctx.transversal[g]
            theta = t.mul[t.mul[tg][ni]][t.inv[tg]]
            q = ctx.delta_map[theta].images
            if any(p.images[ctx.point(d, g)] != ctx.point(q[d], g) for d in range(ctx.delta.degree)):
                twisted = False
    gens = reduce_generators(perms, ctx.omega_degree)
    image = PermGroup(ctx.omega_degree, gens, name=f"N on DeltaxK", elements=perms)
    return image, BlockReport(blocks, invariant, twisted)


def lift_uniform(ctx: EmbeddingContext, x: Permutation) -> Permutation:
    """``(delta, g) -> (delta^x, g)`` on every block at once."""
    nk = ctx.k_order
    images = [0] * ctx.omega_degree
    for d, g in product(range(ctx.delta.degree), range(nk)):
        images[ctx.point(d, g)] = ctx.point(x.images[d], g)
    return Permutation._trusted(tuple(images))


def block_restriction(image: PermGroup, block: list[int]) -> PermGroup:
    """Action of ``image`` on one invariant block, relabeled to 0..len(block)-1."""
    pos = {a: i for i, a in enumerate(block)}
    gens = [Permutation._trusted(tuple(pos[g.images[a]] for a in block)) for g in image.generators]
    return PermGroup(len(block), gens)


def universal_action_is_faithful(ctx: EmbeddingContext) -> bool:
    amap = action_map(ctx)
    return len(set(amap.values())) == ctx.G.order and is_faithful(universal_action(ctx))


def block_relabelings(ctx: EmbeddingContext) -> list[Permutation] | None:
    """For each block g a permutation ``lam_g`` of Delta with
    ``lam_g^-1 n lam_g = t_g n t_g^-1`` (as Delta permutations) for all n in N.

    ``None`` if some twist is not induced by a permutation of Delta.
    """
    t = table(ctx.G)
    gens = _small_n_generators(ctx)
    plain = [ctx.delta_map[i] for i in gens]
    out = []
    for g in range(ctx.k_order):
        tg = ctx.transversal[g]
        twisted = [ctx.delta_map[t.mul[t.mul[tg][i]][t.inv[tg]]] for i in gens]
        lam = equivariant_bijection(plain, twisted) if plain else Permutation.identity(ctx.delta.degree)
        if lam is None:
            return None
        out.append(lam)
    return out


def _small_n_generators(ctx: EmbeddingContext) -> list[int]:
    from .structure import _small_generating_set

    return _small_generating_set(table(ctx.G), ctx.N.mask)


def lift_twisted(ctx: EmbeddingContext, x: Permutation, lams: list[Permutation]) -> Permutation:
    """Act on block g as ``lam_g^-1 x lam_g`` acts on Delta."""
    nk = ctx.k_order
    images = [0] * ctx.omega_degree
    for g, lam in enumerate(lams):
        y = conjugate(x, lam).images
        for d in range(ctx.delta.degree):
            images[ctx.point(d, g)] = ctx.point(y[d], g)
    return Permutation._trusted(tuple(images))


def tilde_preserves_orbitals(ctx: EmbeddingContext, xs, twisted: bool = False) -> list[tuple[Permutation, bool]]:
    """Lift each x (an element of the Delta closure) to Omega and test it against N's orbitals.

    The uniform lift acts as x on every block; the twisted lift first carries x
    through each block's relabeling.  The uniform lift can fail when some
    ``t_g`` acts on N by a non-trivial automorphism.
    """
    n_image, _ = restrict_to_N(ctx)
    col = orbitals(n_image)
    if twisted:
        lams = block_relabelings(ctx)
        if lams is None:
            raise EmbeddingError("block twist not induced by a permutation of Delta")
        return [(x, preserves_coloring(col, lift_twisted(ctx, x, lams))) for x in xs]
    return [(x, preserves_coloring(col, lift_uniform(ctx, x))) for x in xs]
