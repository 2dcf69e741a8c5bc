"""Independent reference computations used to freeze expected values.

None of these share code paths with the library routines they check.
"""

from itertools import combinations, permutations


def perm_mul(p, q):
    return tuple(q[a] for a in p)


def perm_inv(p):
    out = [0] * len(p)
    for a, b in enumerate(p):
        out[b] = a
    return tuple(out)


def close_under_mul(gens, n):
    ident = tuple(range(n))
    elems = {ident}
    changed = True
    while changed:
        changed = False
        for a in list(elems):
            for g in gens:
                b = perm_mul(a, g)
                if b not in elems:
                    elems.add(b)
                    changed = True
    return elems


def closure_by_wielandt(elements, n):
    """Filter Sym(n) with the pairwise criterion, straight from the element list."""
    elements = [tuple(e) for e in elements]
    out = []
    for x in permutations(range(n)):
        if all(
            any(g[a] == x[a] and g[b] == x[b] for g in elements)
            for a in range(n)
            for b in range(n)
        ):
            out.append(x)
    return set(out)


def orbital_colors(elements, n):
    """Color = frozenset orbit of the pair; no numbering scheme involved."""
    elements = [tuple(e) for e in elements]
    return {(a, b): frozenset((g[a], g[b]) for g in elements) for a in range(n) for b in range(n)}


def automorphisms_pairwise(elements, n):
    """Every permutation preserving all orbitals, by plain point-by-point backtracking."""
    col = orbital_colors(elements, n)
    img = [None] * n
    used = [False] * n
    out = []

    def rec(a):
        if a == n:
            out.append(tuple(img))
            return
        for b in range(n):
            if used[b] or col[(b, b)] != col[(a, a)]:
                continue
            if all(col[(img[c], b)] == col[(c, a)] and col[(b, img[c])] == col[(a, c)] for c in range(a)):
                img[a] = b
                used[b] = True
                rec(a + 1)
                used[b] = False
        img[a] = None

    rec(0)
    return set(out)


def all_subgroups_bruteforce(elements):
    """Every subset containing the identity and closed under products."""
    elements = sorted(tuple(e) for e in elements)
    ident = elements[0]
    rest = elements[1:]
    subs = []
    for r in range(len(rest) + 1):
        for combo in combinations(rest, r):
            s = set(combo) | {ident}
            if all(perm_mul(a, b) in s for a in s for b in s):
                subs.append(frozenset(s))
    return subs


def is_nilpotent_central_series(elements):
    """Upper central series reaches the whole group."""
    G = [tuple(e) for e in elements]
    Z = {G[0]} if G[0] == tuple(range(len(G[0]))) else {tuple(range(len(G[0])))}
    while True:
        # g is in the next term iff [g, h] lies in Z for all h
        nxt = {
            g
            for g in G
            if all(perm_mul(perm_mul(perm_inv(g), perm_inv(h)), perm_mul(g, h)) in Z for h in G)
        }
        if nxt == Z:
            return len(Z) == len(G)
        Z = nxt


def element_order(p):
    n = 1
    q = p
    ident = tuple(range(len(p)))
    while q != ident:
        q = perm_mul(q, p)
        n += 1
    return n
