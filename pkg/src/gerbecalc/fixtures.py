"""Shipped model spaces: spheres, tori, lens spaces, and their covers.

Every base space that carries cover machinery is a barycentric subdivision
sd(K); the vertex-star cover indexed by vertices of K is then a good cover
(its nerve is K and every intersection of stars is a cone).  Lens spaces
L(n,1) are quotients of sd(C_2n * C_2n) by a free diagonal rotation; the
quotient construction validates freeness and simpliciality.
"""

from __future__ import annotations

from itertools import combinations

from .complexes import (
    SimplicialSpace,
    barycentric_subdivision,
    orient_pseudomanifold,
)


def circle(n=6, name=None):
    """Polygonal circle with n vertices."""
    if n < 3:
        raise ValueError("need at least 3 vertices")
    edges = [tuple(sorted((i, (i + 1) % n))) for i in range(n)]
    c = SimplicialSpace(edges, name=name or f"C{n}")
    c.orientation = orient_pseudomanifold(c)
    return c


def sphere(dim, name=None):
    """Boundary of the (dim+1)-simplex."""
    verts = range(dim + 2)
    tops = list(combinations(verts, dim + 1))
    s = SimplicialSpace(tops, name=name or f"S{dim}")
    s.orientation = orient_pseudomanifold(s)
    return s


def torus_grid(n=4, m=4, name=None):
    """Grid triangulation of the 2-torus on an n x m 	vertex lattice."""
    if n < 3 or m < 3:
        raise ValueError("grid torus needs n, m >= 3")

    def v(i, j):
        return (i % n) * m + (j % m)

    tris = []
    for i in range(n):
        for j in range(m):
            tris.append(tuple(sorted((v(i, j), v(i + 1, j), v(i, j + 1)))))
            tris.append(tuple(sorted((v(i + 1, j), v(i, j + 1), v(i + 1, j + 1)))))
    t = SimplicialSpace(tris, name=name or f"T2[{n}x{m}]")
    t.orientation = orient_pseudomanifold(t)
    return t


def torus3_grid(n=3, name=None):
    """Freudenthal triangulation of the 3-torus on an n^3 lattice."""
    if n < 3:
        raise ValueError("grid 3-torus needs n >= 3")

    def v(i, j, k):
        return ((i % n) * n + (j % n)) * n + (k % n)

    paths = [  # the six monotone lattice paths through a unit cube
        ((0, 0, 0), (1, 0, 0), (1, 1, 0), (1, 1, 1)),
        ((0, 0, 0), (1, 0, 0), (1, 0, 1), (1, 1, 1)),
        ((0, 0, 0), (0, 1, 0), (1, 1, 0), (1, 1, 1)),
        ((0, 0, 0), (0, 1, 0), (0, 1, 1), (1, 1, 1)),
        ((0, 0, 0), (0, 0, 1), (1, 0, 1), (1, 1, 1)),
        ((0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1)),
    ]
    tets = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for path in paths:
                    tet = tuple(sorted(v(i + a, j + b, k + c) for a, b, c in path))
                    tets.append(tet)
    t = SimplicialSpace(tets, name=name or f"T3[{n}^3]")
    t.orientation = orient_pseudomanifold(t)
    return t


def join(a, b, name=""):
    """Simplicial join; vertices of b are shifted past those of a."""
    shift = (max(a.vertices) + 1) if a.n_vertices else 0
    simplices = []
    bs = [tuple(x + shift for x in s) for s in b.all_simplices()]
    simplices.extend(a.all_simplices())
    simplices.extend(bs)
    for s in a.all_simplices():
        for t in bs:
            simplices.append(tuple(sorted(s + t)))
    return SimplicialSpace(simplices, name=name)


def sphere3_join(p, q, name=None):
    """S^3 as the join of two polygonal circles C_p * C_q."""
    s = join(circle(p), circle(q), name=name or f"C{p}*C{q}")
    s.orientation = orient_pseudomanifold(s)
    return s


# -- group actions and quotients -------------------------------------------


class VertexAction:
    """Action of a finite cyclic-presented group by vertex permutations.

    `perms` maps each group element index (0..order-1, element k = g^k for
    the cyclic case) to a vertex permutation dict.  Only the free simplicial
    case with simplicial quotient is accepted.
    """

    def __init__(self, space, perms, mult):
        self.space = space
        self.perms = perms
        self.mult = mult  # mult[a][b] = index of product
        self.order = len(perms)
        for g, perm in perms.items():
            for s in space.all_simplices():
                img = tuple(sorted(perm[v] for v in s))
                if len(set(img)) != len(s) or not space.has(img):
                    raise ValueError("action is not simplicial")
                if g != 0 and img == s:
                    raise ValueError("action is not free on simplices")

    def apply(self, g, simplex):
        perm = self.perms[g]
        return tuple(sorted(perm[v] for v in simplex))

    def apply_signed(self, g, simplex):
        perm = self.perms[g]
        verts = [perm[v] for v in simplex]
        order = sorted(range(len(verts)), key=lambda i: verts[i])
        sgn = 1
        order2 = list(order)
        for i in range(len(order2)):
            while order2[i] != i:
                j = order2[i]
                order2[i], order2[j] = order2[j], order2[i]
                sgn = -sgn
        return tuple(sorted(verts)), sgn


def cyclic_action(order, perm1, space):
    """Cyclic group action generated by one vertex permutation."""
    perms = {0: {v: v for v in space.vertices}}
    cur = dict(perms[0])
    for k in range(1, order):
        cur = {v: perm1[cur[v]] for v in space.vertices}
        perms[k] = dict(cur)
    last = {v: perm1[perms[order - 1][v]] for v in space.vertices}
    if any(last[v] != v for v in space.vertices):
        raise ValueError("permutation does not have the stated order")
    mult = {a: {b: (a + b) % order for b in range(order)} for a in range(order)}
    return VertexAction(space, perms, mult)


def quotient_complex(action, name=""):
    """Quotient of a free simplicial action; returns (space, vertex projection).

    Requires (i) no simplex has two vertices in one orbit and (ii) distinct
    orbit representatives have distinct vertex-orbit images, so the quotient
    is again a simplicial complex and the orbit map is a covering.
    """
    space = action.space
    orbit_of = {}
    reps = []
    for v in space.vertices:
        if v in orbit_of:
            continue
        orbit = sorted(action.perms[g][v] for g in range(action.order))
        rep = len(reps)
        reps.append(orbit)
        for w in orbit:
            orbit_of[w] = rep
    proj = dict(orbit_of)
    images = {}
    for s in space.all_simplices():
        img = tuple(sorted(proj[v] for v in s))
        if len(set(img)) != len(s):
            raise ValueError("orbit map collapses a simplex")
        images.setdefault(img, set()).add(s)
    for img, pre in images.items():
        if len(pre) != action.order:
            raise ValueError("orbit map is not an |G|-fold covering on simplices")
    q = SimplicialSpace(list(images), name=name)
    return q, proj


def lens_total_space(n):
    """sd(C_2n * C_2n) with the free diagonal rotation of order n."""
    base = sphere3_join(2 * n, 2 * n)
    sd = barycentric_subdivision(base, name=f"sd(C{2*n}*C{2*n})")
    label = sd._cache["sd_label"]
    p = 2 * n
    rot = {}
    for v in range(p):
        rot[v] = (v + 2) % p
    for v in range(p, 2 * p):
        rot[v] = p + ((v - p + 2) % p)
    perm1 = {}
    for face, idx in label.items():
        img = tuple(sorted(rot[v] for v in face))
        perm1[idx] = label[img]
    action = cyclic_action(n, perm1, sd)
    return sd, action


def lens_space(n):
    """L(n,1) as a quotient; returns (total sd-space, action, quotient, proj)."""
    total, action = lens_total_space(n)
    quo, proj = quotient_complex(action, name=f"L({n},1)")
    quo.orientation = orient_pseudomanifold(quo)
    total.orientation = orient_pseudomanifold(total)
    return total, action, quo, proj


# -- star covers on barycentric subdivisions --------------------------------


def star_cover_data(sd_space):
    """Vertex-star cover of an sd complex, indexed by parent vertices.

    Returns (indices, sets, weight_index) where sets[i] is the subcomplex of
    chains whose least face contains parent vertex i, and weight_index maps
    each sd-simplex to the cover index that carries it in the canonical
    simplexwise partition (the least parent vertex of the least face).
    """
    label = sd_space._cache.get("sd_label")
    faces = sd_space._cache.get("sd_faces")
    if label is None:
        raise ValueError("star_cover_data needs a barycentric subdivision")
    parent_vertices = sorted(v for f in faces if len(f) == 1 for v in f)
    member = {i: [] for i in parent_vertices}
    weight_of = {}
    for s in sd_space.all_simplices():
        least_face = min((faces[x] for x in s), key=len)
        for v in least_face:
            member[v].append(s)
        weight_of[s] = least_face[0]
    sets = {}
    for v in parent_vertices:
        sets[v] = SimplicialSpace(member[v], name=f"U{v}")
    return parent_vertices, sets, weight_of
