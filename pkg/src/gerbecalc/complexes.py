"""Finite oriented simplicial complexes with exact cochain calculus.

Coefficients are exact: integers, rationals (Fraction), or rationals mod 1
(the circle group in this model).  Simplices are strictly increasing vertex
tuples; orientations of closed pseudomanifolds are fundamental-cycle
coefficient maps computed by sign propagation.
"""

from __future__ import annotations

from fractions import Fraction

from .snf import SparseMat, smith_normal_form, solve_int, solve_rational

RING_INT = "Z"
RING_RAT = "Q"
RING_MOD1 = "Q/Z"


def _mod1(x):
    f = Fraction(x)
    return f - (f.numerator // f.denominator)


class SimplicialSpace:
    """Finite simplicial complex, immutable after construction.

    simplices: iterable of vertex tuples; all faces are added automatically.
    orientation: optional {top simplex: +-1} fundamental cycle.
    """

    def __init__(self, simplices, orientation=None, name=""):
        by_dim = {}
        seen = set()
        stack = [tuple(s) for s in simplices]
        for s in stack:
            if tuple(sorted(s)) != s:
                raise ValueError(f"simplex {s} not strictly increasing")
        while stack:
            s = stack.pop()
            if s in seen or not s:
                continue
            seen.add(s)
            by_dim.setdefault(len(s) - 1, set()).add(s)
            if len(s) > 1:
                for i in range(len(s)):
                    stack.append(s[:i] + s[i + 1:])
        self._by_dim = {d: tuple(sorted(ss)) for d, ss in sorted(by_dim.items())}
        self._sets = {d: frozenset(ss) for d, ss in self._by_dim.items()}
        self.name = name
        self.orientation = dict(orientation) if orientation else None
        self._cache = {}
        if self.orientation:
            d = self.dim
            for s in self.orientation:
                if s not in self._sets.get(d, ()):
                    raise ValueError("orientation names a missing top simplex")

    @property
    def dim(self):
        return max(self._by_dim) if self._by_dim else -1

    @property
    def vertices(self):
        return tuple(s[0] for s in self._by_dim.get(0, ()))

    @property
    def n_vertices(self):
        return len(self._by_dim.get(0, ()))

    def simplices(self, p):
        return self._by_dim.get(p, ())

    def has(self, s):
        return s in self._sets.get(len(s) - 1, frozenset())

    def all_simplices(self):
        for d in sorted(self._by_dim):
            yield from self._by_dim[d]

    def __repr__(self):
        counts = ",".join(str(len(self._by_dim.get(d, ()))) for d in range(self.dim + 1))
        return f"SimplicialSpace({self.name or 'anon'}; f=({counts}))"

    # -- subcomplexes ------------------------------------------------------

    def subcomplex(self, simplices, name=""):
        return SimplicialSpace(simplices, name=name)

    def full_subcomplex(self, vertex_set, name=""):
        vs = set(vertex_set)
        keep = [s for s in self.all_simplices() if all(v in vs for v in s)]
        return SimplicialSpace(keep, name=name)

    def closed_star(self, vertex):
        keep = [s for s in self.all_simplices()
                if self.has(tuple(sorted(set(s) | {vertex})))]
        return SimplicialSpace(keep, name=f"st({vertex})")

    def intersection(self, other):
        keep = [s for s in self.all_simplices() if other.has(s)]
        return SimplicialSpace(keep)

    # -- connectivity ------------------------------------------------------

    def component_labels(self):
        """Map vertex -> component id (ids are 0..n-1, ordered by least vertex)."""
        key = "components"
        if key in self._cache:
            return self._cache[key]
        parent = {v: v for v in self.vertices}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for e in self.simplices(1):
            a, b = find(e[0]), find(e[1])
            if a != b:
                parent[max(a, b)] = min(a, b)
        roots = sorted({find(v) for v in self.vertices})
        index = {r: i for i, r in enumerate(roots)}
        labels = {v: index[find(v)] for v in self.vertices}
        self._cache[key] = labels
        return labels

    def n_components(self):
        labels = self.component_labels()
        return 1 + max(labels.values()) if labels else 0

    def cone_apex(self):
        """Least vertex a with a*s in the complex for every simplex s, or None."""
        key = "cone_apex"
        if key in self._cache:
            return self._cache[key]
        apex = None
        for a in self.vertices:
            ok = True
            for s in self.all_simplices():
                j = tuple(sorted(set(s) | {a}))
                if not self.has(j):
                    ok = False
                    break
            if ok:
                apex = a
                break
        self._cache[key] = apex
        return apex

    # -- orientation -------------------------------------------------------

    def oriented(self):
        if self.orientation is None:
            raise ValueError(f"{self!r} carries no orientation")
        return self.orientation

    def fundamental_cycle(self):
        return Chain(self, self.dim, {s: c for s, c in self.oriented().items()})


def orient_pseudomanifold(space):
    """Fundamental-cycle coefficients of a closed oriented pseudomanifold.

    Propagates signs across codimension-one faces; the lexicographically
    least top simplex gets +1.  Raises ValueError if the complex is not a
    closed pseudomanifold or not orientable.
    """
    d = space.dim
    tops = space.simplices(d)
    facet_of = {}
    for s in tops:
        for i in range(d + 1):
            f = s[:i] + s[i + 1:]
            facet_of.setdefault(f, []).append((s, (-1) ** i))
    for f, uses in facet_of.items():
        if len(uses) != 2:
            raise ValueError("not a closed pseudomanifold")
    sign = {}
    for seed in tops:
        if seed in sign:
            continue
        sign[seed] = 1
        queue = [seed]
        while queue:
            s = queue.pop()
            for i in range(d + 1):
                f = s[:i] + s[i + 1:]
                (s1, e1), (s2, e2) = facet_of[f]
                other, eo = (s2, e2) if s1 == s else (s1, e1)
                es = e1 if s1 == s else e2
                want = -es * sign[s] * eo
                if other in sign:
                    if sign[other] != want:
                        raise ValueError("not orientable")
                else:
                    sign[other] = want
                    queue.append(other)
    least = tops[0]
    if sign[least] < 0:
        sign = {s: -v for s, v in sign.items()}
    return sign


class Chain:
    """Simplicial chain with integer or rational coefficients."""

    def __init__(self, space, degree, values):
        self.space = space
        self.degree = degree
        self.values = {s: v for s, v in values.items() if v}

    def boundary(self):
        out = {}
        for s, c in self.values.items():
            for i in range(len(s)):
                f = s[:i] + s[i + 1:]
                out[f] = out.get(f, 0) + ((-1) ** i) * c
        return Chain(self.space, self.degree - 1, out)

    def is_cycle(self):
        return not self.boundary().values


class Cochain:
    """Simplicial cochain over Z, Q, or Q/Z (values stored in [0,1))."""

    __slots__ = ("space", "degree", "ring", "values")

    def __init__(self, space, degree, ring, values=None):
        self.space = space
        self.degree = degree
        self.ring = ring
        vals = {}
        if values:
            members = space._sets.get(degree, frozenset())
            for s, v in values.items():
                if s not in members:
                    raise ValueError(f"{s} is not a {degree}-simplex of the space")
                v = self._coerce(v)
                if v:
                    vals[s] = v
        self.values = vals

    def _coerce(self, v):
        if self.ring == RING_INT:
            iv = int(v)
            if iv != v:
                raise ValueError(f"non-integer value {v} in Z cochain")
            return iv
        if self.ring == RING_MOD1:
            return _mod1(v)
        return Fraction(v)

    @classmethod
    def zero(cls, space, degree, ring=RING_RAT):
        return cls(space, degree, ring)

    def copy(self):
        c = Cochain(self.space, self.degree, self.ring)
        c.values = dict(self.values)
        return c

    def __call__(self, simplex):
        return self.values.get(simplex, Fraction(0) if self.ring != RING_INT else 0)

    def eval_ordered(self, verts):
        """Evaluate on an ordered vertex tuple, with permutation sign."""
        if len(set(verts)) != len(verts):
            return Fraction(0)
        order = sorted(range(len(verts)), key=lambda i: verts[i])
        sgn = _perm_sign(order)
        return sgn * self(tuple(sorted(verts)))

    def is_zero(self):
        return not self.values

    def map(self, fn):
        c = Cochain(self.space, self.degree, self.ring)
        for s, v in self.values.items():
            w = c._coerce(fn(v))
            if w:
                c.values[s] = w
        return c

    def __add__(self, other):
        self._check(other)
        out = dict(self.values)
        for s, v in other.values.items():
            w = out.get(s, 0) + v
            w = self._coerce(w)
            if w:
                out[s] = w
            else:
                out.pop(s, None)
        c = Cochain(self.space, self.degree, self.ring)
        c.values = out
        return c

    def __neg__(self):
        return self.map(lambda v: -v)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        return self.map(lambda v: k * v)

    def _check(self, other):
        if other.space is not self.space or other.degree != self.degree:
            raise ValueError("cochain shape mismatch")
        if other.ring != self.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def to_ring(self, ring):
        c = Cochain(self.space, self.degree, ring)
        for s, v in self.values.items():
            w = c._coerce(v)
            if w:
                c.values[s] = w
        return c

    def is_integral(self):
        return all(Fraction(v).denominator == 1 for v in self.values.values())

    def is_locally_constant(self):
        """True for a 0-cochain constant on every connected component."""
        if self.degree != 0:
            return False
        labels = self.space.component_labels()
        seen = {}
        for v in self.space.vertices:
            val = self((v,))
            comp = labels[v]
            if comp in seen and seen[comp] != val:
                return False
            seen[comp] = val
        return True


def _perm_sign(order):
    sgn = 1
    order = list(order)
    for i in range(len(order)):
        while order[i] != i:
            j = order[i]
            order[i], order[j] = order[j], order[i]
            sgn = -sgn
    return sgn


def coboundary(c):
    """Discrete exterior derivative: alternating sum over faces."""
    space, p = c.space, c.degree
    out = Cochain(space, p + 1, c.ring)
    acc = {}
    coface_index = _coface_index(space, p)
    for s, v in c.values.items():
        for t, sgn in coface_index.get(s, ()):
            acc[t] = acc.get(t, 0) + sgn * v
    vals = {}
    for t, v in acc.items():
        w = out._coerce(v)
        if w:
            vals[t] = w
    out.values = vals
    return out


def _coface_index(space, p):
    key = ("cofaces", p)
    if key in space._cache:
        return space._cache[key]
    idx = {}
    for t in space.simplices(p + 1):
        for i in range(p + 2):
            f = t[:i] + t[i + 1:]
            idx.setdefault(f, []).append((t, (-1) ** i))
    space._cache[key] = idx
    return idx


def cup(u, v):
    """Simplicial cup product (front face / back face rule)."""
    if u.space is not v.space:
        raise ValueError("cup: different spaces")
    if u.ring != RING_RAT or v.ring != RING_RAT:
        raise ValueError("cup: rational coefficients required")
    p, q = u.degree, v.degree
    out = Cochain(u.space, p + q, RING_RAT)
    vals = {}
    for s in u.space.simplices(p + q):
        a = u(s[:p + 1])
        if not a:
            continue
        b = v(s[p:])
        if not b:
            continue
        vals[s] = a * b
    out.values = vals
    return out


def pair(c, z):
    """Evaluate a cochain against a chain of the same degree."""
    if isinstance(z, Chain):
        if z.degree != c.degree:
            raise ValueError("pair: degree mismatch")
        vals = z.values
    else:
        vals = z
    total = 0
    for s, coef in vals.items():
        v = c(s)
        if v:
            total += coef * v
    if c.ring == RING_MOD1:
        return _mod1(total)
    return total


# -- integral cohomology ---------------------------------------------------


class CohomologyGroup:
    """H^k(space, Z) in Smith normal form, with optional generator cocycles."""

    def __init__(self, space, degree, free_rank, torsion, generators=None):
        self.space = space
        self.degree = degree
        self.free_rank = free_rank
        self.torsion = tuple(torsion)
        self.generators = generators  # list of Cochain (free first, then torsion)

    def __repr__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{t}" for t in self.torsion]
        return f"H^{self.degree} = {' + '.join(parts) if parts else '0'}"

    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion


def coboundary_matrix(space, p):
    """d: C^p -> C^(p+1) as a SparseMat; rows (p+1)-simplices, cols p-simplices."""
    key = ("dmat", p)
    if key in space._cache:
        return space._cache[key]
    rows = {t: i for i, t in enumerate(space.simplices(p + 1))}
    cols = {s: i for i, s in enumerate(space.simplices(p))}
    mat = SparseMat(len(rows), len(cols))
    for t, r in rows.items():
        for i in range(p + 2):
            f = t[:i] + t[i + 1:]
            mat.set(r, cols[f], (-1) ** i)
    space._cache[key] = mat
    return mat


def _snf_of(space, p, with_transforms=True):
    key = ("snf", p, with_transforms)
    if key in space._cache:
        return space._cache[key]
    if not with_transforms and ("snf", p, True) in space._cache:
        return space._cache[("snf", p, True)]
    res = smith_normal_form(coboundary_matrix(space, p), with_transforms)
    space._cache[key] = res
    return res


def cohomology(space, k, ring=RING_INT, generators=True):
    """Integral (or rational) cohomology via Smith normal form.

    Generators are reduced deterministically: the kernel basis of d_k is
    transformed so each generator is the lexicographically least
    representative produced by the fixed elimination order.
    """
    if k < 0:
        raise ValueError("negative degree")
    nk = len(space.simplices(k))
    if nk == 0:
        return CohomologyGroup(space, k, 0, (), [])
    diag_k, _, V_k = _snf_of(space, k, with_transforms=generators)
    rank_k = len([d for d in diag_k if d != 0])
    if k == 0:
        rank_km1 = 0
        diag_km1 = []
    else:
        diag_km1, _, _ = _snf_of(space, k - 1, with_transforms=False)
        rank_km1 = len([d for d in diag_km1 if d != 0])
    free = nk - rank_k - rank_km1
    torsion = tuple(int(d) for d in diag_km1 if d not in (0, 1))
    if ring == RING_RAT:
        torsion = ()
    if not generators:
        return CohomologyGroup(space, k, free, torsion, None)

    # kernel basis of d_k: columns of V_k past the rank
    simps = space.simplices(k)
    kernel = []
    Vt = V_k.transpose()
    for j in range(rank_k, nk):
        col = {r: v for r, v in Vt.rows.get(j, {}).items()}
        kernel.append(col)
    # relations: image of d_{k-1} expressed in the kernel basis
    gens = _quotient_generators(space, k, kernel, free, torsion, simps)
    return CohomologyGroup(space, k, free, torsion, gens)


def _quotient_generators(space, k, kernel, free, torsion, simps):
    if not kernel:
        return []
    r = len(kernel)
    # matrix K: rows = simplex index, cols = kernel index
    K = SparseMat(len(simps), r)
    for j, col in enumerate(kernel):
        for i, v in col.items():
            K.set(i, j, v)
    if k == 0:
        rel = SparseMat(r, 0)
    else:
        d_km1 = coboundary_matrix(space, k - 1)
        cols = []
        for j in range(d_km1.ncols):
            b = {}
            for rr, cs in d_km1.rows.items():
                v = cs.get(j)
                if v:
                    b[rr] = v
            if b:
                x = solve_int(K, b)
                if x is None:
                    raise AssertionError("image not inside kernel")
                cols.append(x)
        rel = SparseMat(r, len(cols))
        for jj, x in enumerate(cols):
            for ii, v in x.items():
                rel.set(ii, jj, v)
    diag, U, _ = smith_normal_form(rel)
    # quotient Z^r / im(rel): coordinates y = U x; generator i of the quotient
    # is K @ (U^{-1} e_i) for i past the trivial invariant factors.
    torsion_slots = [i for i, d in enumerate(diag) if d not in (0, 1)]
    free_slots = list(range(len(diag), r))
    Kt = K.transpose()
    gens = []
    for i in free_slots + torsion_slots:
        vec = _unimodular_inverse_column(U, i)
        coeffs = {}
        for j, v in vec.items():
            for ii, kv in Kt.rows.get(j, {}).items():
                coeffs[ii] = coeffs.get(ii, 0) + v * kv
        c = Cochain(space, k, RING_INT)
        c.values = {simps[i2]: v for i2, v in sorted(coeffs.items()) if v}
        gens.append(c)
    # free generators first, then torsion generators
    return gens


def _unimodular_inverse_column(U, j):
    """Column j of the inverse of a unimodular SparseMat, as {row: int}."""
    x = solve_rational(U, {j: 1})
    out = {}
    for i, v in x.items():
        if v:
            assert Fraction(v).denominator == 1
            out[i] = int(v)
    return out


def is_coboundary(z):
    """If the integer cocycle z equals dy for an integer y, return y, else None."""
    space, k = z.space, z.degree
    if k == 0:
        return None if z.values else Cochain(space, 0, z.ring)
    d = coboundary_matrix(space, k - 1)
    rows = {t: i for i, t in enumerate(space.simplices(k))}
    rhs = {rows[s]: int(v) for s, v in z.values.items()}
    if z.ring == RING_INT:
        x = solve_int(d, rhs)
    else:
        rhs = {rows[s]: Fraction(v) for s, v in z.values.items()}
        x = solve_rational(d, rhs)
    if x is None:
        return None
    simps = space.simplices(k - 1)
    y = Cochain(space, k - 1, z.ring)
    y.values = {simps[i]: v for i, v in sorted(x.items()) if v}
    return y


def class_vector(z, group):
    """Coordinates of the cocycle class of z in the generators of `group`.

    Returns (free coords tuple, torsion coords tuple) or None when z is not a
    cocycle.  Requires group.generators.
    """
    if not coboundary(z).is_zero():
        return None
    gens = group.generators or []
    space, k = z.space, z.degree
    d = coboundary_matrix(space, k - 1) if k > 0 else SparseMat(len(space.simplices(0)), 0)
    rows = {t: i for i, t in enumerate(space.simplices(k))}
    ncols = d.ncols + len(gens)
    aug = SparseMat(d.nrows, ncols)
    for (r, c), v in d.items():
        aug.set(r, c, v)
    for j, g in enumerate(gens):
        for s, v in g.values.items():
            aug.set(rows[s], d.ncols + j, int(v))
    rhs = {rows[s]: int(v) for s, v in z.values.items()}
    x = solve_int(aug, rhs)
    if x is None:
        raise AssertionError("cocycle not expressible in generators")
    coords = [x.get(d.ncols + j, 0) for j in range(len(gens))]
    nfree = group.free_rank
    free = tuple(coords[:nfree])
    tors = tuple(c % t for c, t in zip(coords[nfree:], group.torsion))
    return free, tors


# -- barycentric subdivision ----------------------------------------------


def barycentric_subdivision(space, name=""):
    """sd(space): vertices are faces of `space` ordered by (dim, lex)."""
    faces = sorted(space.all_simplices(), key=lambda s: (len(s), s))
    label = {s: i for i, s in enumerate(faces)}
    from itertools import combinations

    strict_cofaces = {s: [] for s in faces}
    for t in faces:
        for r in range(1, len(t)):
            for s in combinations(t, r):
                strict_cofaces[s].append(t)
    all_chains = []
    for s in faces:
        stack = [[s]]
        while stack:
            chain = stack.pop()
            all_chains.append(chain)
            for t in strict_cofaces[chain[-1]]:
                stack.append(chain + [t])
    simplices = [tuple(sorted(label[s] for s in chain)) for chain in all_chains]
    sd = SimplicialSpace(simplices, name=name or f"sd({space.name})")
    sd._cache["sd_label"] = label
    sd._cache["sd_faces"] = faces
    if space.orientation is not None:
        sd.orientation = orient_pseudomanifold(sd)
        # align the global sign with the parent orientation: the flag
        # (v, {v,w}, ...) built from the lex-least top simplex of the parent
        # with identity ordering carries the parent's sign.
        top = min(space.orientation)
        flag = tuple(label[top[:i + 1]] for i in range(len(top)))
        if sd.orientation[flag] != space.orientation[top]:
            sd.orientation = {s: -v for s, v in sd.orientation.items()}
    return sd


def cone_solve(space, omega):
    """Solve d(eta) = omega on a cone complex, omega a closed t-form, t >= 1.

    Uses the cone contraction: eta(tau) = omega(apex * tau).  Exact; raises
    if the complex is not a cone or omega is not closed.
    """
    apex = space.cone_apex()
    if apex is None:
        raise ValueError("cone_solve on a non-cone complex")
    if not coboundary(omega).is_zero():
        raise ValueError("cone_solve: form not closed")
    t = omega.degree
    if t < 1:
        raise ValueError("cone_solve needs positive degree")
    eta = Cochain(space, t - 1, omega.ring)
    vals = {}
    for tau in space.simplices(t - 1):
        if apex in tau:
            continue
        v = omega.eval_ordered((apex,) + tau)
        if v:
            vals[tau] = v
    eta.values = vals
    # dH(omega) = omega - H(d omega) = omega, re-checked by the caller's tests
    return eta
