"""Molecular spaces: finite simple graphs with rim/ball neighborhood primitives.

A molecular space is an immutable finite simple graph.  Vertices carry
stable, totally ordered ids (ints, strings, or tuples thereof); every
enumeration the library performs iterates in id order so that outputs are
reproducible.  All mutating operations return a new space.
"""

from __future__ import annotations

import json
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import EdgeNotFound, InvalidArgument, ParseError, VertexNotFound

INFINITE = float("inf")


def order_key(v):
    """Total order over mixed vertex id types (ints, strings, tuples)."""
    if isinstance(v, tuple):
        return (2, tuple(order_key(x) for x in v))
    if isinstance(v, str):
        return (1, v)
    if isinstance(v, (int, float)):
        return (0, v)
    return (3, repr(v))


def _mask_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class MolecularSpace:
    """Finite simple graph; the universe for every other type in the library.

    ``volume`` is the number of points and ``weight`` the number of links.
    Adjacency is stored as per-vertex bitsets over the sorted vertex order,
    which makes rim/joint-rim intersections cheap.
    """

    __slots__ = ("_verts", "_index", "_masks", "__dict__")

    def __init__(self, vertices: Iterable = (), edges: Iterable = ()):
        verts = sorted(set(vertices), key=order_key)
        index = {v: i for i, v in enumerate(verts)}
        masks = [0] * len(verts)
        for a, b in edges:
            if a not in index:
                raise VertexNotFound(a)
            if b not in index:
                raise VertexNotFound(b)
            if a == b:
                raise InvalidArgument(f"self-loop at {a!r}")
            i, j = index[a], index[b]
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        self._verts = tuple(verts)
        self._index = index
        self._masks = tuple(masks)

    @classmethod
    def _from_masks(cls, verts: Sequence, masks: Sequence[int]) -> "MolecularSpace":
        space = object.__new__(cls)
        space._verts = tuple(verts)
        space._index = {v: i for i, v in enumerate(space._verts)}
        space._masks = tuple(masks)
        return space

    # -- basic queries ---------------------------------------------------

    @property
    def vertices(self) -> tuple:
        return self._verts

    @property
    def volume(self) -> int:
        return len(self._verts)

    @cached_property
    def weight(self) -> int:
        return sum(m.bit_count() for m in self._masks) // 2

    @cached_property
    def edges(self) -> tuple:
        out = []
        for i, m in enumerate(self._masks):
            for j in _mask_bits(m):
                if j > i:
                    out.append((self._verts[i], self._verts[j]))
        return tuple(out)

    def __contains__(self, v) -> bool:
        return v in self._index

    def __len__(self) -> int:
        return len(self._verts)

    def __iter__(self) -> Iterator:
        return iter(self._verts)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MolecularSpace):
            return NotImplemented
        return self._verts == other._verts and self._masks == other._masks

    def __hash__(self) -> int:
        return hash((self._verts, self._masks))

    def __repr__(self) -> str:
        return f"MolecularSpace({self.volume} vertices, {self.weight} edges)"

    def index_of(self, v) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise VertexNotFound(v) from None

    def mask_of(self, v) -> int:
        return self._masks[self.index_of(v)]

    @property
    def masks(self) -> tuple:
        return self._masks

    def neighbors(self, v) -> tuple:
        return tuple(self._verts[i] for i in _mask_bits(self.mask_of(v)))

    def degree(self, v) -> int:
        return self.mask_of(v).bit_count()

    def has_edge(self, a, b) -> bool:
        return bool(self.mask_of(a) >> self.index_of(b) & 1)

    def members_to_mask(self, members: Iterable) -> int:
        mask = 0
        for v in members:
            mask |= 1 << self.index_of(v)
        return mask

    def mask_to_members(self, mask: int) -> tuple:
        return tuple(self._verts[i] for i in _mask_bits(mask))

    # -- neighborhoods ---------------------------------------------------

    def rim(self, v) -> "Subspace":
        """Induced subspace on the neighbors of ``v`` (``v`` excluded)."""
        return Subspace(self, self.mask_of(v))

    def ball(self, v) -> "Subspace":
        """Rim of ``v`` plus ``v`` itself; always a cone with apex ``v``."""
        return Subspace(self, self.mask_of(v) | 1 << self.index_of(v))

    def joint_rim(self, vs: Iterable) -> "Subspace":
        """Intersection of the rims of all listed vertices."""
        vs = tuple(vs)
        if not vs:
            raise InvalidArgument("joint_rim needs at least one vertex")
        mask = -1
        for v in vs:
            mask &= self.mask_of(v)
        return Subspace(self, mask & self.full_mask)

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.volume) - 1

    def full_rim(self, members: Iterable) -> "Subspace":
        """All vertices adjacent to some member, minus the members."""
        inner = self.members_to_mask(members)
        out = 0
        for i in _mask_bits(inner):
            out |= self._masks[i]
        return Subspace(self, out & ~inner)

    def n_ball(self, members: Iterable, n: int) -> "Subspace":
        if n < 0:
            raise InvalidArgument("n must be >= 0")
        mask = self.members_to_mask(members)
        for _ in range(n):
            grown = mask
            for i in _mask_bits(mask):
                grown |= self._masks[i]
            if grown == mask:
                break
            mask = grown
        return Subspace(self, mask)

    def n_rim(self, members: Iterable, n: int) -> "Subspace":
        """Full rim of the (n-1)-ball of the member set."""
        if n < 1:
            raise InvalidArgument("n must be >= 1")
        inner = self.n_ball(members, n - 1).mask
        out = 0
        for i in _mask_bits(inner):
            out |= self._masks[i]
        return Subspace(self, out & ~inner)

    def distance(self, u, v):
        """Shortest chain length between u and v; INFINITE when disconnected."""
        ui, vi = self.index_of(u), self.index_of(v)
        if ui == vi:
            return 0
        seen = 1 << ui
        frontier = seen
        dist = 0
        while frontier:
            dist += 1
            grown = 0
            for i in _mask_bits(frontier):
                grown |= self._masks[i]
            frontier = grown & ~seen
            if frontier >> vi & 1:
                return dist
            seen |= frontier
        return INFINITE

    # -- subspace algebra ------------------------------------------------

    def induced(self, members: Iterable) -> "Subspace":
        return Subspace(self, self.members_to_mask(members))

    def induced_space(self, members: Iterable) -> "MolecularSpace":
        return self._restrict(self.members_to_mask(members))

    def _restrict(self, mask: int) -> "MolecularSpace":
        keep = list(_mask_bits(mask))
        verts = [self._verts[i] for i in keep]
        pos = {i: p for p, i in enumerate(keep)}
        masks = []
        for i in keep:
            m = self._masks[i] & mask
            masks.append(sum(1 << pos[j] for j in _mask_bits(m)))
        return MolecularSpace._from_masks(verts, masks)

    def delete_vertex(self, v) -> "MolecularSpace":
        return self._restrict(self.full_mask & ~(1 << self.index_of(v)))

    def delete_vertices(self, vs: Iterable) -> "MolecularSpace":
        return self._restrict(self.full_mask & ~self.members_to_mask(vs))

    def delete_edge(self, a, b) -> "MolecularSpace":
        if not self.has_edge(a, b):
            raise EdgeNotFound((a, b))
        i, j = self.index_of(a), self.index_of(b)
        masks = list(self._masks)
        masks[i] &= ~(1 << j)
        masks[j] &= ~(1 << i)
        return MolecularSpace._from_masks(self._verts, masks)

    def add_edge(self, a, b) -> "MolecularSpace":
        i, j = self.index_of(a), self.index_of(b)
        if i == j:
            raise InvalidArgument("self-loop")
        masks = list(self._masks)
        masks[i] |= 1 << j
        masks[j] |= 1 << i
        return MolecularSpace._from_masks(self._verts, masks)

    def add_vertex(self, v, attach_to: Iterable = ()) -> "MolecularSpace":
        if v in self._index:
            raise InvalidArgument(f"vertex {v!r} already present")
        edges = list(self.edges) + [(v, w) for w in attach_to]
        return MolecularSpace(list(self._verts) + [v], edges)

    def relabel(self, mapping) -> "MolecularSpace":
        """Rename vertices through ``mapping`` (a dict or callable)."""
        get = mapping.__getitem__ if isinstance(mapping, dict) else mapping
        verts = [get(v) for v in self._verts]
        if len(set(verts)) != len(verts):
            raise InvalidArgument("relabeling collides")
        edges = [(get(a), get(b)) for a, b in self.edges]
        return MolecularSpace(verts, edges)

    # -- connectivity ----------------------------------------------------

    def component_masks(self) -> tuple:
        unseen = self.full_mask
        out = []
        while unseen:
            start = unseen & -unseen
            comp = start
            frontier = start
            while frontier:
                grown = 0
                for i in _mask_bits(frontier):
                    grown |= self._masks[i]
                frontier = grown & unseen & ~comp
                comp |= frontier
            out.append(comp)
            unseen &= ~comp
        return tuple(out)

    def components(self) -> tuple:
        return tuple(Subspace(self, m) for m in self.component_masks())

    def is_connected(self) -> bool:
        return self.volume <= 1 or len(self.component_masks()) == 1


class Subspace:
    """Induced subspace of a parent space, identified by a member bitmask.

    A link belongs to the subspace iff both endpoints are members and the
    link exists in the parent.
    """

    __slots__ = ("parent", "mask", "__dict__")

    def __init__(self, parent: MolecularSpace, mask: int):
        self.parent = parent
        self.mask = mask

    @classmethod
    def of(cls, parent: MolecularSpace, members: Iterable) -> "Subspace":
        return cls(parent, parent.members_to_mask(members))

    @cached_property
    def space(self) -> MolecularSpace:
        return self.parent._restrict(self.mask)

    @property
    def members(self) -> tuple:
        return self.parent.mask_to_members(self.mask)

    @property
    def volume(self) -> int:
        return self.mask.bit_count()

    def __len__(self) -> int:
        return self.volume

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, v) -> bool:
        return v in self.parent and bool(self.mask >> self.parent.index_of(v) & 1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.parent == other.parent and self.mask == other.mask

    def __hash__(self):
        return hash((id(self.parent), self.mask))

    def __repr__(self):
        return f"Subspace({sorted(self.members)!r})"

    def union(self, other: "Subspace") -> "Subspace":
        """Induced subspace on the union of the member sets.

        Per the book's convention the union is always the subspace generated
        by the union of the vertex sets, so it may contain links absent from
        both operands.
        """
        self._check_same_parent(other)
        return Subspace(self.parent, self.mask | other.mask)

    def intersection(self, other: "Subspace") -> "Subspace":
        self._check_same_parent(other)
        return Subspace(self.parent, self.mask & other.mask)

    def _check_same_parent(self, other: "Subspace"):
        if self.parent is not other.parent and self.parent != other.parent:
            raise InvalidArgument("subspaces of different parent spaces")


# -- convenience aliases (operation names used throughout the book) -------

def rim(space: MolecularSpace, v) -> Subspace:
    return space.rim(v)


def joint_rim(space: MolecularSpace, vs: Iterable) -> Subspace:
    return space.joint_rim(vs)


def full_rim(space: MolecularSpace, sub) -> Subspace:
    return space.full_rim(_members(sub))


def n_rim(space: MolecularSpace, sub, n: int) -> Subspace:
    return space.n_rim(_members(sub), n)


def n_ball(space: MolecularSpace, sub, n: int) -> Subspace:
    return space.n_ball(_members(sub), n)


def distance(space: MolecularSpace, u, v):
    return space.distance(u, v)


def volume(space) -> int:
    return space.volume


def weight(space) -> int:
    return space.weight


def _members(sub) -> tuple:
    if isinstance(sub, Subspace):
        return sub.members
    if isinstance(sub, MolecularSpace):
        return sub.vertices
    return tuple(sub)


# -- shared text formats ----------------------------------------------------

def to_json(space: MolecularSpace) -> str:
    payload = {
        "vertices": [_encode_vertex(v) for v in space.vertices],
        "edges": [[_encode_vertex(a), _encode_vertex(b)] for a, b in space.edges],
    }
    return json.dumps(payload)


def from_json(text: str) -> MolecularSpace:
    try:
        payload = json.loads(text)
        verts = [_decode_vertex(v) for v in payload["vertices"]]
        edges = [(_decode_vertex(a), _decode_vertex(b)) for a, b in payload["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad graph JSON: {exc}") from exc
    return MolecularSpace(verts, edges)


def to_edgelist(space: MolecularSpace) -> str:
    lines = []
    linked = set()
    for a, b in space.edges:
        linked.add(a)
        linked.add(b)
    for v in space.vertices:
        if v not in linked:
            lines.append(f"v {_token(v)}")
    for a, b in space.edges:
        lines.append(f"{_token(a)} {_token(b)}")
    return "\n".join(lines) + ("\n" if lines else "")


def from_edgelist(text: str) -> MolecularSpace:
    verts = []
    edges = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "v" and len(parts) == 2:
            verts.append(_untoken(parts[1]))
        elif len(parts) == 2:
            a, b = _untoken(parts[0]), _untoken(parts[1])
            verts.extend((a, b))
            edges.append((a, b))
        else:
            raise ParseError(f"line {ln}: expected 'a b' or 'v a', got {raw!r}")
    return MolecularSpace(verts, edges)


def _encode_vertex(v):
    if isinstance(v, tuple):
        return {"t": [_encode_vertex(x) for x in v]}
    return v


def _decode_vertex(v):
    if isinstance(v, dict):
        return tuple(_decode_vertex(x) for x in v["t"])
    return v


def _token(v) -> str:
    if isinstance(v, tuple):
        return ",".join(_token(x) for x in v)
    return str(v)


def _untoken(s: str):
    if "," in s:
        return tuple(_untoken(p) for p in s.split(","))
    try:
        return int(s)
    except ValueError:
        return s
