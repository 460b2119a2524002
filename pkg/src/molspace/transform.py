"""Contractible transformations: the move system, contractibility decision,
minimization, homotopy checking, and one-step towers.

Contractibility follows the book's recursive family: a space is
contractible when it reduces to a single point through moves licensed by
contractible rims / joint rims.  Point deletions alone suffice, and for
any vertex with a contractible rim the deletion preserves membership in
both directions, so the exact decision deletes the first such vertex and
recurses (memoized on canonical forms).  Above the exact-size threshold
the decision is greedy and three-valued: Unknown is a value, not an error.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional

from .canon import canonical_key, is_isomorphic
from .cliques import DEFAULT_CLIQUE_BUDGET
from .core import MolecularSpace, Subspace, order_key
from .errors import IllegalMove, InternalInvariantViolation, InvalidArgument
from .euler import euler
from .homology import homology, point_homology


@dataclass(frozen=True)
class Budget:
    """Search limits for everything semi-decidable."""

    exact_size: int = 12        # exact contractibility decision up to here
    glue_depth: int = 3         # glue-assist lookahead in minimize
    glue_candidates: int = 32   # candidate glues scanned per lookahead level
    swap_nodes: int = 4000      # backtracking nodes in sphere reduction
    max_steps: int = 20000      # generic loop guard
    rim_limit: int = 16         # point-dimension rim size cap
    subset_limit: int = 1 << 17  # induced-subspace enumeration cap
    clique_budget: int = DEFAULT_CLIQUE_BUDGET


DEFAULT_BUDGET = Budget()


def budget_from_env(base: Budget = DEFAULT_BUDGET) -> Budget:
    """MOLSPACE_BUDGET: either an int (exact_size) or a JSON field dict."""
    raw = os.environ.get("MOLSPACE_BUDGET")
    if not raw:
        return base
    try:
        return replace(base, exact_size=int(raw))
    except ValueError:
        pass
    try:
        return replace(base, **json.loads(raw))
    except (TypeError, ValueError) as exc:
        raise InvalidArgument(f"bad MOLSPACE_BUDGET: {raw!r}") from exc


CONTRACTIBLE = "contractible"
NOT_CONTRACTIBLE = "not_contractible"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class Contractibility:
    verdict: str
    witness: tuple = ()   # replayable point-deletion sequence down to one vertex
    reason: str = ""      # distinguishing invariant for negative verdicts

    def __bool__(self) -> bool:
        return self.verdict == CONTRACTIBLE


_EXACT_MEMO: dict = {}


def _space_of(obj) -> MolecularSpace:
    return obj.space if isinstance(obj, Subspace) else obj


def _cone_apex(space: MolecularSpace):
    full = space.full_mask
    for i, m in enumerate(space.masks):
        if m | (1 << i) == full:
            return space.vertices[i]
    return None


def _contractible_exact(space: MolecularSpace) -> bool:
    n = space.volume
    if n == 0:
        return False
    if n == 1:
        return True
    if not space.is_connected():
        return False
    if _cone_apex(space) is not None:
        return True
    key = canonical_key(space)
    hit = _EXACT_MEMO.get(key)
    if hit is not None:
        return hit
    if euler(space) != 1:
        _EXACT_MEMO[key] = False
        return False
    res = False
    for v in space.vertices:
        if _contractible_exact(space.rim(v).space):
            res = _contractible_exact(space.delete_vertex(v))
            break
    _EXACT_MEMO[key] = res
    return res


def _exact_witness(space: MolecularSpace) -> tuple:
    seq = []
    g = space
    while g.volume > 1:
        for v in g.vertices:
            if _contractible_exact(g.rim(v).space) and _contractible_exact(g.delete_vertex(v)):
                seq.append(v)
                g = g.delete_vertex(v)
                break
        else:
            raise InternalInvariantViolation("witness extraction stalled")
    return tuple(seq)


def is_contractible(space, budget: Budget = DEFAULT_BUDGET) -> Contractibility:
    """Three-valued contractibility with a replayable witness when positive."""
    space = _space_of(space)
    n = space.volume
    if n == 0:
        return Contractibility(NOT_CONTRACTIBLE, reason="empty space")
    if n <= budget.exact_size:
        if _contractible_exact(space):
            return Contractibility(CONTRACTIBLE, witness=_exact_witness(space))
        return _refute(space, exact=True)
    # greedy above the exact threshold
    g = space
    witness = []
    progress = True
    while g.volume > 1 and progress:
        progress = False
        for v in g.vertices:
            sub = is_contractible(g.rim(v).space, budget)
            if sub.verdict == CONTRACTIBLE:
                witness.append(v)
                g = g.delete_vertex(v)
                progress = True
                break
    if g.volume == 1:
        return Contractibility(CONTRACTIBLE, witness=tuple(witness))
    return _refute(space, exact=False)


def _refute(space: MolecularSpace, exact: bool) -> Contractibility:
    if not space.is_connected():
        return Contractibility(NOT_CONTRACTIBLE, reason="disconnected")
    e = euler(space)
    if e != 1:
        return Contractibility(NOT_CONTRACTIBLE, reason=f"euler {e} != 1")
    h = homology(space)
    if h != point_homology():
        return Contractibility(NOT_CONTRACTIBLE, reason=f"nontrivial homology: {h}")
    if exact:
        # the exact recursion exhausted every deletion order
        return Contractibility(NOT_CONTRACTIBLE, reason="no contractible-rim vertex")
    return Contractibility(UNKNOWN)


# -- moves -------------------------------------------------------------------

DELETE_POINT = "DeletePoint"
GLUE_POINT = "GluePoint"
DELETE_EDGE = "DeleteEdge"
GLUE_EDGE = "GlueEdge"
SWAP_EDGE_TO_POINT = "SwapEdgeToPoint"
SWAP_POINT_TO_EDGE = "SwapPointToEdge"

MOVE_KINDS = (DELETE_POINT, GLUE_POINT, DELETE_EDGE, GLUE_EDGE,
              SWAP_EDGE_TO_POINT, SWAP_POINT_TO_EDGE)
BASIC_MOVE_KINDS = (DELETE_POINT, GLUE_POINT, DELETE_EDGE, GLUE_EDGE)


@dataclass(frozen=True)
class Move:
    """A transformation together with the subspace that licensed it."""

    kind: str
    operands: tuple
    license: tuple = ()

    def to_dict(self) -> dict:
        return {"kind": self.kind, "operands": list(self.operands),
                "license": list(self.license)}

    @classmethod
    def from_dict(cls, d: dict) -> "Move":
        return cls(d["kind"], tuple(_as_vertex(x) for x in d["operands"]),
                   tuple(_as_vertex(x) for x in d.get("license", ())))


def _as_vertex(x):
    return tuple(_as_vertex(i) for i in x) if isinstance(x, list) else x


def moves_to_json(moves: Iterable[Move]) -> str:
    return json.dumps([m.to_dict() for m in moves])


def moves_from_json(text: str) -> tuple:
    return tuple(Move.from_dict(d) for d in json.loads(text))


@dataclass(frozen=True)
class MoveSet:
    moves: tuple
    unknown: tuple = ()   # candidates skipped because their license is Unknown

    def __iter__(self):
        return iter(self.moves)

    def __len__(self):
        return len(self.moves)


def fresh_vertex(space: MolecularSpace):
    ints = [v for v in space.vertices if isinstance(v, int)]
    return (max(ints) + 1) if ints else space.volume


def legal_moves(space: MolecularSpace, budget: Budget = DEFAULT_BUDGET,
                glue_point_targets: Iterable = ()) -> MoveSet:
    """Enumerate licensed moves in deterministic id order.

    GluePoint moves are enumerated only over caller-supplied target
    subspaces (the family of all contractible subspaces is exponential).
    """
    moves = []
    unknown = []

    def classify(kind, operands, members):
        verdict = is_contractible(space.induced(members).space, budget)
        move = Move(kind, operands, tuple(sorted(members, key=order_key)))
        if verdict.verdict == CONTRACTIBLE:
            moves.append(move)
        elif verdict.verdict == UNKNOWN:
            unknown.append(move)

    for v in space.vertices:
        classify(DELETE_POINT, (v,), space.rim(v).members)
    verts = space.vertices
    for i, a in enumerate(verts):
        for b in verts[i + 1:]:
            members = space.joint_rim((a, b)).members
            if space.has_edge(a, b):
                classify(DELETE_EDGE, (a, b), members)
            else:
                classify(GLUE_EDGE, (a, b), members)
    for target in glue_point_targets:
        members = tuple(sorted(target, key=order_key))
        classify(GLUE_POINT, (fresh_vertex(space),), members)
    return MoveSet(tuple(moves), tuple(unknown))


def apply_move(space: MolecularSpace, move: Move,
               budget: Budget = DEFAULT_BUDGET) -> MolecularSpace:
    """Apply a move after re-verifying its license."""
    kind, ops = move.kind, move.operands
    if kind == DELETE_POINT:
        (v,) = ops
        _require_contractible(space, space.rim(v).members, move, budget)
        return space.delete_vertex(v)
    if kind == GLUE_POINT:
        v = ops[0]
        members = move.license
        _require_contractible(space, members, move, budget)
        return space.add_vertex(v, members)
    if kind == DELETE_EDGE:
        a, b = ops
        if not space.has_edge(a, b):
            raise IllegalMove(f"no edge {a!r}-{b!r}")
        _require_contractible(space, space.joint_rim((a, b)).members, move, budget)
        return space.delete_edge(a, b)
    if kind == GLUE_EDGE:
        a, b = ops
        if space.has_edge(a, b):
            raise IllegalMove(f"edge {a!r}-{b!r} already present")
        _require_contractible(space, space.joint_rim((a, b)).members, move, budget)
        return space.add_edge(a, b)
    if kind == SWAP_EDGE_TO_POINT:
        a, b = ops[0], ops[1]
        new = ops[2] if len(ops) > 2 else fresh_vertex(space)
        if not space.has_edge(a, b):
            raise IllegalMove(f"no edge {a!r}-{b!r}")
        attach = (a, b) + space.joint_rim((a, b)).members
        return space.delete_edge(a, b).add_vertex(new, attach)
    if kind == SWAP_POINT_TO_EDGE:
        v, a, b = ops
        _check_swap_point_to_edge(space, v, a, b)
        return space.delete_vertex(v).add_edge(a, b)
    raise InvalidArgument(f"unknown move kind {kind!r}")


def _require_contractible(space, members, move, budget):
    verdict = is_contractible(space.induced(members).space, budget)
    if verdict.verdict != CONTRACTIBLE:
        raise IllegalMove(
            f"{move.kind}{move.operands!r}: license {sorted(members, key=order_key)!r} "
            f"is {verdict.verdict}" + (f" ({verdict.reason})" if verdict.reason else ""),
            license_members=tuple(members))


def _check_swap_point_to_edge(space, v, a, b):
    rim_members = set(space.rim(v).members)
    if a not in rim_members or b not in rim_members:
        raise IllegalMove(f"{a!r},{b!r} must be neighbors of {v!r}")
    if space.has_edge(a, b):
        raise IllegalMove(f"{a!r},{b!r} must be non-adjacent")
    core = set(space.joint_rim((a, b, v)).members)
    if rim_members != core | {a, b}:
        raise IllegalMove(
            f"rim of {v!r} is not the join of S0({a!r},{b!r}) with the joint rim")
    if set(space.joint_rim((a, b)).members) != core | {v}:
        raise IllegalMove(
            f"joint rim of {a!r},{b!r} is not the cone of {v!r} over the joint rim")


# -- minimization ------------------------------------------------------------

@dataclass(frozen=True)
class MinimizeResult:
    space: MolecularSpace
    moves: tuple
    exhausted: bool = False


def _first_deletable_vertex(g: MolecularSpace, budget) -> Optional[Move]:
    for v in g.vertices:
        if is_contractible(g.rim(v).space, budget).verdict == CONTRACTIBLE:
            return Move(DELETE_POINT, (v,), g.rim(v).members)
    return None


def _deletable_edges(g: MolecularSpace, budget):
    for a, b in g.edges:
        members = g.joint_rim((a, b)).members
        if is_contractible(g.induced(members).space, budget).verdict == CONTRACTIBLE:
            yield Move(DELETE_EDGE, (a, b), members)


def _legal_glues_near(g: MolecularSpace, around, budget):
    """Licensed edge gluings with at least one endpoint near ``around``."""
    near = set(g.ball(around).members)
    seen = 0
    for x in sorted(near, key=order_key):
        for y in g.vertices:
            if y == x or g.has_edge(x, y):
                continue
            members = g.joint_rim((x, y)).members
            if not members:
                continue
            if is_contractible(g.induced(members).space, budget).verdict == CONTRACTIBLE:
                yield Move(GLUE_EDGE, tuple(sorted((x, y), key=order_key)), members)
                seen += 1
                if seen >= budget.glue_candidates:
                    return


def _glue_assist(g: MolecularSpace, v, budget) -> Optional[list]:
    """Bounded DFS for glue sequences making rim(v) contractible."""

    def dfs(cur, depth, trail):
        if is_contractible(cur.rim(v).space, budget).verdict == CONTRACTIBLE:
            return trail
        if depth == 0:
            return None
        for mv in _legal_glues_near(cur, v, budget):
            a, b = mv.operands
            out = dfs(cur.add_edge(a, b), depth - 1, trail + [mv])
            if out is not None:
                return out
        return None

    return dfs(g, budget.glue_depth, [])


def _glue_fixpoint(g: MolecularSpace, budget):
    moves = []
    changed = True
    while changed:
        changed = False
        verts = g.vertices
        for i, a in enumerate(verts):
            for b in verts[i + 1:]:
                if g.has_edge(a, b):
                    continue
                members = g.joint_rim((a, b)).members
                if members and is_contractible(
                        g.induced(members).space, budget).verdict == CONTRACTIBLE:
                    g = g.add_edge(a, b)
                    moves.append(Move(GLUE_EDGE, (a, b), members))
                    changed = True
        if len(moves) > budget.max_steps:
            break
    return g, moves


def minimize(space: MolecularSpace, budget: Budget = DEFAULT_BUDGET) -> MinimizeResult:
    """Reduce a space to a minimal homotopy-equivalent form.

    Repeatedly deletes points with contractible rims, deletes licensed
    edges when that unlocks a point deletion, and searches short licensed
    edge-gluing sequences that make some rim contractible; loops until the
    three minimality criteria hold or the budget runs out.  The result is
    homotopy-equivalent to the input by construction.
    """
    g = space
    trace = []
    steps = 0
    while True:
        steps += 1
        if steps > budget.max_steps:
            return MinimizeResult(g, tuple(trace), exhausted=True)
        # 1: plain point deletion
        mv = _first_deletable_vertex(g, budget)
        if mv is not None:
            trace.append(mv)
            g = g.delete_vertex(mv.operands[0])
            continue
        # 2: edge deletion that unlocks a point deletion
        committed = False
        for mv in _deletable_edges(g, budget):
            probe = g.delete_edge(*mv.operands)
            if _first_deletable_vertex(probe, budget) is not None:
                trace.append(mv)
                g = probe
                committed = True
                break
        if committed:
            continue
        # 3: short glue sequences that make a rim contractible
        for v in g.vertices:
            seq = _glue_assist(g, v, budget)
            if seq:
                for mv in seq:
                    trace.append(mv)
                    g = g.add_edge(*mv.operands)
                trace.append(Move(DELETE_POINT, (v,), g.rim(v).members))
                g = g.delete_vertex(v)
                committed = True
                break
        if committed:
            continue
        # 4: surplus licensed edges (minimality criterion 2)
        mv = next(iter(_deletable_edges(g, budget)), None)
        if mv is not None:
            trace.append(mv)
            g = g.delete_edge(*mv.operands)
            continue
        # 5: full gluing fallback (minimality criterion 3)
        plus, glue_moves = _glue_fixpoint(g, budget)
        mv = _first_deletable_vertex(plus, budget)
        if mv is not None and glue_moves:
            trace.extend(glue_moves)
            trace.append(mv)
            g = plus.delete_vertex(mv.operands[0])
            continue
        break
    return MinimizeResult(g, tuple(trace))


def is_minimal(space: MolecularSpace, budget: Budget = DEFAULT_BUDGET) -> bool:
    """The three minimality criteria: no contractible rims, no licensed
    edge deletions, and rims stay non-contractible after gluing every
    licensed edge."""
    g = space
    for v in g.vertices:
        if is_contractible(g.rim(v).space, budget).verdict == CONTRACTIBLE:
            return False
    if next(iter(_deletable_edges(g, budget)), None) is not None:
        return False
    plus, _ = _glue_fixpoint(g, budget)
    for v in plus.vertices:
        if is_contractible(plus.rim(v).space, budget).verdict == CONTRACTIBLE:
            return False
    return True


# -- homotopy equivalence ----------------------------------------------------

EQUIVALENT = "equivalent"
DISTINGUISHED = "distinguished"


@dataclass(frozen=True)
class HomotopyVerdict:
    kind: str                      # equivalent | distinguished | unknown
    invariant: str = ""            # name of the distinguishing invariant
    values: tuple = ()             # (value on G, value on H)
    trace: tuple = ()              # (moves G -> M, moves H -> M)

    def __bool__(self):
        return self.kind == EQUIVALENT


def homotopy_check(g: MolecularSpace, h: MolecularSpace,
                   budget: Budget = DEFAULT_BUDGET) -> HomotopyVerdict:
    """Equivalent / Distinguished(invariant) / Unknown.

    Invariants first (they refute), then both spaces are minimized and the
    minimal forms compared up to isomorphism.  Equal homology alone never
    confirms equivalence.
    """
    eg, eh = euler(g), euler(h)
    if eg != eh:
        return HomotopyVerdict(DISTINGUISHED, "euler", (eg, eh))
    cg = len(g.component_masks()) if g.volume else 0
    ch = len(h.component_masks()) if h.volume else 0
    if cg != ch:
        return HomotopyVerdict(DISTINGUISHED, "components", (cg, ch))
    hg, hh = homology(g), homology(h)
    if hg != hh:
        return HomotopyVerdict(DISTINGUISHED, "homology", (str(hg), str(hh)))
    mg = minimize(g, budget)
    mh = minimize(h, budget)
    if is_isomorphic(mg.space, mh.space):
        return HomotopyVerdict(EQUIVALENT, trace=(mg.moves, mh.moves))
    return HomotopyVerdict(UNKNOWN)


# -- one-step tower ----------------------------------------------------------

def one_step_tower(space: MolecularSpace, move: Move,
                   budget: Budget = DEFAULT_BUDGET) -> MolecularSpace:
    """The one-step rebuild over ``space``: the strong product with a
    two-point clique, with the induced move applied to the upper layer.

    The result is homotopy-equivalent to both layers.
    """
    from .construct import strong_product

    apply_move(space, move, budget)  # legality check on the base layer
    k2 = MolecularSpace((0, 1), [(0, 1)])
    tower = strong_product(space, k2)
    kind, ops = move.kind, move.operands
    if kind == DELETE_POINT:
        return tower.delete_vertex((ops[0], 1))
    if kind == DELETE_EDGE:
        return tower.delete_edge((ops[0], 1), (ops[1], 1))
    if kind == GLUE_EDGE:
        return tower.add_edge((ops[0], 1), (ops[1], 1))
    if kind == GLUE_POINT:
        # gluing over license S attaches the new upper point across S x K(2)
        attach = [(w, layer) for w in move.license for layer in (0, 1)]
        return tower.add_vertex((ops[0], 1), attach)
    if kind == SWAP_EDGE_TO_POINT:
        # induced composite: delete the upper edge, glue the new point over
        # (S0(a,b) + joint rim) x K(2)
        a, b = ops[0], ops[1]
        new = ops[2] if len(ops) > 2 else fresh_vertex(space)
        members = (a, b) + space.joint_rim((a, b)).members
        out = tower.delete_edge((a, 1), (b, 1))
        attach = [(w, layer) for w in members for layer in (0, 1)]
        return out.add_vertex((new, 1), attach)
    if kind == SWAP_POINT_TO_EDGE:
        v, a, b = ops
        return tower.delete_vertex((v, 1)).add_edge((a, 1), (b, 1))
    raise InvalidArgument(f"unknown move kind {move.kind!r}")
