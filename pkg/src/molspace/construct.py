"""Space constructions: join, strong product, product normalization,
partite spaces and minimal spheres, block spaces, quotient gluing, and the
catalog of named model spaces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .core import MolecularSpace
from .errors import (InternalInvariantViolation, InvalidArgument,
                     InvalidGluing, UnknownCatalogName)
from .transform import DEFAULT_BUDGET, Budget, CONTRACTIBLE, is_contractible


def join(g: MolecularSpace, h: MolecularSpace) -> MolecularSpace:
    """Direct sum: disjoint union plus every cross link.

    Labels are kept when the vertex sets are disjoint; on a collision both
    sides are tagged (0, v) / (1, u).
    """
    if set(g.vertices) & set(h.vertices):
        g = g.relabel(lambda v: (0, v))
        h = h.relabel(lambda u: (1, u))
    edges = list(g.edges) + list(h.edges)
    edges += [(a, b) for a in g.vertices for b in h.vertices]
    return MolecularSpace(tuple(g.vertices) + tuple(h.vertices), edges)


def cone(g: MolecularSpace, apex=None) -> MolecularSpace:
    if apex is None:
        apex = _fresh(g)
    return join(g, MolecularSpace([apex]))


def _fresh(g: MolecularSpace):
    ints = [v for v in g.vertices if isinstance(v, int)]
    return (max(ints) + 1) if ints else g.volume


def strong_product(g: MolecularSpace, h: MolecularSpace) -> MolecularSpace:
    """Pair space where balls multiply: U((v,u)) = U(v) x U(u)."""
    verts = [(v, u) for v in g.vertices for u in h.vertices]
    edges = []
    for i, (v, u) in enumerate(verts):
        gv = g.mask_of(v) | 1 << g.index_of(v)
        hu = h.mask_of(u) | 1 << h.index_of(u)
        for (v2, u2) in verts[i + 1:]:
            if gv >> g.index_of(v2) & 1 and hu >> h.index_of(u2) & 1:
                edges.append(((v, u), (v2, u2)))
    return MolecularSpace(verts, edges)


def _oriented_edges(factor: MolecularSpace) -> list:
    """Per-factor edge orientation: cycles are oriented along a traversal,
    anything else by vertex order.  The nob diagonal convention keeps the
    diagonal that ascends in both factor orientations."""
    if (factor.volume >= 4 and factor.is_connected()
            and all(factor.degree(v) == 2 for v in factor.vertices)):
        start = factor.vertices[0]
        order = [start]
        prev = None
        cur = start
        while len(order) < factor.volume:
            nxt = [w for w in factor.neighbors(cur) if w != prev]
            prev, cur = cur, nxt[0]
            order.append(cur)
        pos = {v: i for i, v in enumerate(order)}
        return [(a, b) if (pos[b] - pos[a]) % factor.volume == 1 else (b, a)
                for a, b in factor.edges]
    return list(factor.edges)


def nob_normalize(product: MolecularSpace, left: MolecularSpace,
                  right: MolecularSpace,
                  budget: Budget = DEFAULT_BUDGET) -> MolecularSpace:
    """Normalize a strong product of normal spaces by deleting one diagonal
    of every square — the one descending in the factor orientations.

    Every deletion is verified against its license (a contractible joint
    rim); a failed license is an internal invariant violation.
    """
    g = product
    for (a, b) in sorted(_oriented_edges(left), key=str):
        for (c, d) in sorted(_oriented_edges(right), key=str):
            u, w = (a, d), (b, c)   # descending diagonal
            if u in g and w in g and g.has_edge(u, w):
                members = g.joint_rim((u, w)).members
                verdict = is_contractible(g.induced(members).space, budget)
                if verdict.verdict != CONTRACTIBLE:
                    raise InternalInvariantViolation(
                        f"diagonal {u!r}-{w!r} has a non-contractible joint rim")
                g = g.delete_edge(u, w)
    return g


def partite(sizes: Sequence[int]) -> MolecularSpace:
    """Complete multipartite space K(n_1, ..., n_p)."""
    sizes = tuple(sizes)
    if not sizes or any(n < 1 for n in sizes):
        raise InvalidArgument("part sizes must be positive")
    verts = [(p, i) for p, n in enumerate(sizes) for i in range(n)]
    edges = [(a, b) for ai, a in enumerate(verts) for b in verts[ai + 1:]
             if a[0] != b[0]]
    return MolecularSpace(verts, edges)


def minimal_sphere(n: int) -> MolecularSpace:
    """The minimal n-sphere: the (n+1)-partite space on pairs, 2n+2 points."""
    if n < 0:
        raise InvalidArgument("dimension must be >= 0")
    return partite((2,) * (n + 1))


def block_space(g: MolecularSpace, sizes) -> MolecularSpace:
    """Replace each point by a clique of the given size; cliques of adjacent
    points are joined completely."""
    if isinstance(sizes, Mapping):
        size_of = lambda v: sizes[v]
    else:
        sizes = tuple(sizes)
        if len(sizes) != g.volume:
            raise InvalidArgument("one size per vertex required")
        size_of = dict(zip(g.vertices, sizes)).__getitem__
    verts = []
    for v in g.vertices:
        m = size_of(v)
        if m < 1:
            raise InvalidArgument(f"block size for {v!r} must be positive")
        verts.extend((v, i) for i in range(m))
    edges = []
    for ai, a in enumerate(verts):
        for b in verts[ai + 1:]:
            if a[0] == b[0] or g.has_edge(a[0], b[0]):
                edges.append((a, b))
    return MolecularSpace(verts, edges)


def glue_spaces(g: MolecularSpace, h: MolecularSpace, iso: Mapping) -> MolecularSpace:
    """Glue ``h`` onto ``g`` along an isomorphism of boundary subspaces.

    ``iso`` maps a subspace B of g onto a subspace B1 of h; the B1 vertices
    are identified with their preimages.  Non-boundary vertex labels must
    not collide across the two spaces.
    """
    b = tuple(iso.keys())
    b1 = tuple(iso.values())
    if len(set(b1)) != len(b1):
        raise InvalidGluing("identification map is not injective")
    for v in b:
        if v not in g:
            raise InvalidGluing(f"{v!r} is not a vertex of the left space")
    for v in b1:
        if v not in h:
            raise InvalidGluing(f"{v!r} is not a vertex of the right space")
    sub_g = g.induced(b).space
    sub_h = h.induced(b1).space
    for x in b:
        for y in b:
            if x != y and sub_g.has_edge(x, y) != sub_h.has_edge(iso[x], iso[y]):
                raise InvalidGluing(
                    f"map is not a graph isomorphism at {x!r},{y!r}")
    back = {v1: v for v, v1 in iso.items()}
    rest_h = [v for v in h.vertices if v not in back]
    collide = set(rest_h) & set(g.vertices)
    if collide:
        raise InvalidGluing(f"labels collide outside the seam: {sorted(collide, key=str)!r}")
    verts = tuple(g.vertices) + tuple(rest_h)
    edges = list(g.edges)
    for a, c in h.edges:
        edges.append((back.get(a, a), back.get(c, c)))
    return MolecularSpace(verts, edges)


# -- catalog -----------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    name: str
    space: MolecularSpace
    expected: dict = field(default_factory=dict)
    provenance: str = ""
    minimal: object = None   # True / False / "unverified"


def circle(k: int) -> MolecularSpace:
    if k < 4:
        raise InvalidArgument("a normal circle has at least 4 points")
    return MolecularSpace(range(k), [(i, (i + 1) % k) for i in range(k)])


def path(k: int) -> MolecularSpace:
    if k < 1:
        raise InvalidArgument("a path needs at least one point")
    return MolecularSpace(range(k), [(i, i + 1) for i in range(k - 1)])


def clique(n: int) -> MolecularSpace:
    return MolecularSpace(range(n), [(a, b) for a in range(n) for b in range(a + 1, n)])


def wheel(n: int) -> MolecularSpace:
    """Cone over the n-point circle; apex labeled n."""
    c = circle(n)
    return c.add_vertex(n, c.vertices)


def tree(r: int, depth: int) -> MolecularSpace:
    if r < 1 or depth < 0:
        raise InvalidArgument("need r >= 1, depth >= 0")
    verts = [0]
    edges = []
    frontier = [0]
    label = 1
    for _ in range(depth):
        nxt = []
        for parent in frontier:
            for _ in range(r):
                verts.append(label)
                edges.append((parent, label))
                nxt.append(label)
                label += 1
        frontier = nxt
    return MolecularSpace(verts, edges)


def icosahedron() -> MolecularSpace:
    edges = []
    top, bottom = 0, 11
    upper = list(range(1, 6))
    lower = list(range(6, 11))
    for i in range(5):
        edges.append((top, upper[i]))
        edges.append((bottom, lower[i]))
        edges.append((upper[i], upper[(i + 1) % 5]))
        edges.append((lower[i], lower[(i + 1) % 5]))
        edges.append((upper[i], lower[i]))
        edges.append((upper[i], lower[(i + 1) % 5]))
    return MolecularSpace(range(12), edges)


def torus16() -> MolecularSpace:
    """Normal 16-point torus: 4x4 grid with one consistent diagonal."""
    verts = [(i, j) for i in range(4) for j in range(4)]
    edges = []
    for i in range(4):
        for j in range(4):
            edges.append(((i, j), ((i + 1) % 4, j)))
            edges.append(((i, j), (i, (j + 1) % 4)))
            edges.append(((i, j), ((i + 1) % 4, (j + 1) % 4)))
    return MolecularSpace(verts, edges)


def moebius_band(boundary_len: int, core_len: int = 4,
                 boundary_base: int = 0, core_base: int = 100) -> MolecularSpace:
    """A normal two-dimensional Moebius band.

    The boundary circle winds twice around the core circle; boundary point
    i is attached to a short arc of the core, and consecutive boundary
    points share exactly one core point.  Boundary points are labeled from
    ``boundary_base``, core points from ``core_base``.
    """
    if core_len < 4 or boundary_len < core_len + 2:
        raise InvalidArgument("band needs core >= 4 and boundary >= core + 2")
    # distribute 2*core_len winding steps over boundary_len points
    steps = [1] * boundary_len
    extra = 2 * core_len - boundary_len
    if extra < 0:
        raise InvalidArgument("boundary too long for a double wind")
    for i in range(extra):
        steps[(i * boundary_len) // extra if extra else 0] += 1
    spans = []
    at = 0
    for s in steps:
        spans.append([(at + k) % core_len for k in range(s + 1)])
        at += s
    bnd = [boundary_base + i for i in range(boundary_len)]
    core = [core_base + j for j in range(core_len)]
    edges = [(bnd[i], bnd[(i + 1) % boundary_len]) for i in range(boundary_len)]
    edges += [(core[j], core[(j + 1) % core_len]) for j in range(core_len)]
    for i, span in enumerate(spans):
        edges += [(bnd[i], core[j]) for j in span]
    return MolecularSpace(bnd + core, edges)


def p2_11() -> MolecularSpace:
    """Minimal 11-point projective plane: a disk glued to a Moebius band
    along a 6-point circle (accepted by its Euler/homology manifest)."""
    band = moebius_band(6, 4)
    disk = wheel(6)   # apex 6, boundary circle 0..5
    return glue_spaces(disk, band, {i: i for i in range(6)})


def p2_alt() -> MolecularSpace:
    """13-point projective plane: disk plus Moebius band over an 8-circle."""
    band = moebius_band(8, 4)
    disk = wheel(8)   # apex 8, boundary 0..7
    return glue_spaces(disk, band, {i: i for i in range(8)})


def klein16() -> MolecularSpace:
    """16-point Klein bottle: two Moebius bands glued along the 8-circle."""
    a = moebius_band(8, 4, core_base=100)
    b = moebius_band(8, 4, core_base=200)
    return glue_spaces(a, b, {i: i for i in range(8)})


_PLAIN = {
    "point": lambda: MolecularSpace([0]),
    "S0": lambda: MolecularSpace([0, 1]),
    "sphere2_min": lambda: minimal_sphere(2),
    "sphere2_12": icosahedron,
    "sphere3_min": lambda: minimal_sphere(3),
    "torus16": torus16,
    "p2_11": p2_11,
    "p2_alt": p2_alt,
    "klein16": klein16,
    "bouquet2": lambda: partite((2, 3)),
    "bouquet3a": lambda: partite((2, 4)),
    "bouquet3b": lambda: partite((3, 3)).delete_edge((0, 0), (1, 0)),
}

_PARAMETRIC = {
    "circle": circle,
    "path": path,
    "wheel": wheel,
    "sphere_min": minimal_sphere,
    "tree": tree,
}

_MANIFESTS = {
    "point": dict(euler=1, betti=(1,), torsion=(), contractible=True),
    "S0": dict(euler=2, betti=(2,), torsion=()),
    "sphere2_min": dict(euler=2, betti=(1, 0, 1), torsion=(), dimension=2,
                        sphere=True, volume=6),
    "sphere2_12": dict(euler=2, betti=(1, 0, 1), torsion=(), dimension=2,
                       sphere=True, volume=12, homogeneous=True),
    "sphere3_min": dict(euler=0, betti=(1, 0, 0, 1), torsion=(), dimension=3,
                        sphere=True, volume=8),
    "torus16": dict(euler=0, betti=(1, 2, 1), torsion=(), dimension=2,
                    volume=16, homogeneous=True, minimal=True),
    "p2_11": dict(euler=1, betti=(1, 0), torsion=((2,), ()), dimension=2,
                  volume=11, minimal=True),
    "p2_alt": dict(euler=1, betti=(1, 0), torsion=((2,), ()), dimension=2,
                   volume=13),
    "klein16": dict(euler=0, betti=(1, 1), torsion=((), (2,)), dimension=2,
                    volume=16, minimal="unverified"),
    "bouquet2": dict(euler=-1, betti=(1, 2), torsion=(), minimal=True),
    "bouquet3a": dict(euler=-3, betti=(1, 3), torsion=(), minimal=True),
    "bouquet3b": dict(euler=-3, betti=(1, 3), torsion=(), minimal=True),
}

_PROVENANCE = {
    "torus16": "fixed adjacency; isomorphic to nob(C4 (x) C4), verified in tests",
    "p2_11": "derived: disk + Moebius band glued over a 6-circle; accepted by "
             "euler/homology manifest",
    "p2_alt": "derived: disk + Moebius band glued over an 8-circle",
    "klein16": "derived: two Moebius bands glued over the 8-circle; accepted by "
               "euler/homology manifest",
    "sphere2_12": "the 12-point homogeneous 2-sphere (rims are 5-circles)",
}


def catalog_names() -> tuple:
    return tuple(sorted(_PLAIN)) + tuple(f"{n}(k)" for n in sorted(_PARAMETRIC))


def catalog(name: str, *args) -> MolecularSpace:
    return catalog_entry(name, *args).space


def catalog_entry(name: str, *args) -> CatalogEntry:
    """Look up a named model space; parametric names accept parenthesized
    int arguments, e.g. ``circle(6)`` or ``tree(2,3)``."""
    if not args and "(" in name and name.endswith(")"):
        base, argtext = name[:-1].split("(", 1)
        name = base.strip()
        args = tuple(int(t) for t in argtext.split(",") if t.strip())
    if name in _PLAIN:
        if args:
            raise InvalidArgument(f"{name} takes no arguments")
        return CatalogEntry(name, _PLAIN[name](), _MANIFESTS.get(name, {}),
                            _PROVENANCE.get(name, ""),
                            _MANIFESTS.get(name, {}).get("minimal"))
    if name in _PARAMETRIC:
        space = _PARAMETRIC[name](*args)
        return CatalogEntry(f"{name}{args!r}", space)
    raise UnknownCatalogName(name)
