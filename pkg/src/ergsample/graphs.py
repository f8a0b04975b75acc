"""Graph spaces, adjacency states, and the subgraph partial order.

A state is a binary assignment over the dyads of a fixed support: simple
undirected or directed graphs of order n, optionally with self-loops, and
with individual dyads forced present or absent. Bipartite and egocentric
supports are expressed purely through those restriction sets.

Vertices are numbered 1..n in the public API. Internally each state keeps
per-vertex neighbor bitmasks (bit positions 0-based) plus incrementally
maintained degree and edge counters, so edge tests are O(1) and states are
cheap to copy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


class SpaceMismatchError(ValueError):
    """States from different graph spaces were combined."""


class RestrictionViolationError(ValueError):
    """A forced dyad was assigned contrary to its restriction."""


@dataclass(frozen=True, order=True)
class Dyad:
    """A potential edge variable.

    Unordered pair {i,j} in undirected spaces (canonical form has i > j
    unless it is a loop) or ordered pair (i,j) in directed spaces.
    Vertex indices are 1-based.
    """

    i: int
    j: int

    def is_loop(self) -> bool:
        return self.i == self.j

    def __repr__(self) -> str:
        return f"Dyad({self.i},{self.j})"


class GraphSpace:
    """Support of a graph distribution.

    Defined by order, directedness, loop policy, and two disjoint sets of
    restricted dyads (forced present / forced absent). All remaining dyads
    are "free" and enumerated in a deterministic canonical order: row-major
    over (i, j), with undirected dyads canonicalized to i >= j.
    """

    def __init__(
        self,
        n: int,
        directed: bool = False,
        loops: bool = False,
        forced_present: Iterable = (),
        forced_absent: Iterable = (),
    ):
        if n < 1:
            raise ValueError(f"vertex count must be positive, got {n}")
        self.n = int(n)
        self.directed = bool(directed)
        self.loops = bool(loops)
        fp = frozenset(self._as_dyad(d) for d in forced_present)
        fa = frozenset(self._as_dyad(d) for d in forced_absent)
        overlap = fp & fa
        if overlap:
            raise ValueError(f"dyads forced both present and absent: {sorted(overlap)}")
        self.forced_present = fp
        self.forced_absent = fa

        restricted = fp | fa
        free = []
        for d in self._enumerate_all():
            if d not in restricted:
                free.append(d)
        if not free:
            raise ValueError("space must have at least one free dyad")
        self._all = tuple(self._enumerate_all())
        self._free = tuple(free)
        # 0-based index pairs for the sampler hot path
        self._free0 = [(d.i - 1, d.j - 1) for d in free]
        self._free_index = {d: k for k, d in enumerate(free)}
        self._lower_template = None

    def _enumerate_all(self):
        n, directed, loops = self.n, self.directed, self.loops
        if directed:
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    if i == j and not loops:
                        continue
                    yield Dyad(i, j)
        else:
            for i in range(1, n + 1):
                top = i + 1 if loops else i
                for j in range(1, top):
                    yield Dyad(i, j)

    def _as_dyad(self, d) -> Dyad:
        if isinstance(d, Dyad):
            return self.canonical(d.i, d.j)
        i, j = d
        return self.canonical(i, j)

    def canonical(self, i: int, j: int) -> Dyad:
        """Validate (i, j) against this space and return the canonical Dyad."""
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise ValueError(f"dyad ({i},{j}) out of range for n={self.n}")
        if i == j and not self.loops:
            raise ValueError(f"loop ({i},{i}) not allowed in a loop-free space")
        if not self.directed and i < j:
            i, j = j, i
        return Dyad(i, j)

    def all_dyads(self) -> tuple[Dyad, ...]:
        return self._all

    def free_count(self) -> int:
        return len(self._free)

    def is_free(self, d: Dyad) -> bool:
        return self._as_dyad(d) in self._free_index

    def __eq__(self, other) -> bool:
        if not isinstance(other, GraphSpace):
            return NotImplemented
        return (
            self.n == other.n
            and self.directed == other.directed
            and self.loops == other.loops
            and self.forced_present == other.forced_present
            and self.forced_absent == other.forced_absent
        )

    def __hash__(self) -> int:
        return hash((self.n, self.directed, self.loops, self.forced_present, self.forced_absent))

    def __repr__(self) -> str:
        kind = "directed" if self.directed else "undirected"
        extra = ""
        if self.forced_present or self.forced_absent:
            extra = f", restricted({len(self.forced_present)}+,{len(self.forced_absent)}-)"
        return f"GraphSpace(n={self.n}, {kind}, loops={self.loops}{extra})"


class AdjacencyState:
    """One graph realization over a space.

    Stores out- and in-neighbor bitmasks per vertex (mirrored and therefore
    identical in undirected spaces), the degree vector (out-degree when
    directed), and the total dyad-present count. All of these are maintained
    incrementally on updates. States are plain values: copy freely, no
    shared mutation.
    """

    __slots__ = ("space", "out", "inn", "deg", "n_edges")

    def __init__(self, space: GraphSpace, out, inn, deg, n_edges):
        self.space = space
        self.out = out
        self.inn = inn
        self.deg = deg
        self.n_edges = n_edges

    @classmethod
    def _blank(cls, space: GraphSpace) -> "AdjacencyState":
        n = space.n
        return cls(space, [0] * n, [0] * n, [0] * n, 0)

    def copy(self) -> "AdjacencyState":
        return AdjacencyState(
            self.space, self.out[:], self.inn[:], self.deg[:], self.n_edges
        )

    def get0(self, i: int, j: int) -> int:
        """Dyad state by 0-based endpoints (directed: arc i->j)."""
        return (self.out[i] >> j) & 1

    def set0(self, i: int, j: int, present: bool) -> bool:
        """Set one dyad unconditionally by 0-based endpoints.

        No restriction check; callers on the sampling path only ever touch
        free dyads. Returns True when the stored value changed.
        """
        old = (self.out[i] >> j) & 1
        v = 1 if present else 0
        if old == v:
            return False
        bi = 1 << i
        bj = 1 << j
        if v:
            self.out[i] |= bj
            self.inn[j] |= bi
            self.deg[i] += 1
            self.n_edges += 1
            if not self.space.directed:
                self.out[j] |= bi
                self.inn[i] |= bj
                if i != j:
                    self.deg[j] += 1
        else:
            self.out[i] &= ~bj
            self.inn[j] &= ~bi
            self.deg[i] -= 1
            self.n_edges -= 1
            if not self.space.directed:
                self.out[j] &= ~bi
                self.inn[i] &= ~bj
                if i != j:
                    self.deg[j] -= 1
        return True

    def has_edge(self, d: Dyad | tuple) -> bool:
        d = self.space._as_dyad(d)
        return bool(self.get0(d.i - 1, d.j - 1))

    def edges(self) -> list[Dyad]:
        """Present dyads (free or forced) in canonical order."""
        return [d for d in self.space.all_dyads() if self.get0(d.i - 1, d.j - 1)]

    def density(self) -> float:
        return self.n_edges / len(self.space.all_dyads())

    def degrees(self) -> list[int]:
        return self.deg[:]

    def __eq__(self, other) -> bool:
        if not isinstance(other, AdjacencyState):
            return NotImplemented
        return self.space == other.space and self.out == other.out

    def __repr__(self) -> str:
        return f"AdjacencyState(n={self.space.n}, edges={self.n_edges})"


def _check_same_space(a: AdjacencyState, b: AdjacencyState):
    if a.space != b.space:
        raise SpaceMismatchError(f"states live on different spaces: {a.space} vs {b.space}")


def free_dyads(space: GraphSpace) -> tuple[Dyad, ...]:
    """Every dyad of the space not restricted, in canonical order."""
    return space._free


def with_edge(state: AdjacencyState, d: Dyad | tuple, present: bool) -> AdjacencyState:
    """Return the state with one dyad forced to the given value.

    Idempotent; all other dyads unchanged. Undirected spaces update both
    orientations. Raises RestrictionViolationError when asked to set a
    forced dyad contrary to its restriction.
    """
    sp = state.space
    d = sp._as_dyad(d)
    if present and d in sp.forced_absent:
        raise RestrictionViolationError(f"{d} is forced absent in this space")
    if not present and d in sp.forced_present:
        raise RestrictionViolationError(f"{d} is forced present in this space")
    out = state.copy()
    out.set0(d.i - 1, d.j - 1, present)
    return out


def is_subgraph(a: AdjacencyState, b: AdjacencyState) -> bool:
    """True iff every dyad set in a is set in b (a and b on the same space)."""
    _check_same_space(a, b)
    ao, bo = a.out, b.out
    for i in range(a.space.n):
        if ao[i] & ~bo[i]:
            return False
    return True


def differing_dyads(a: AdjacencyState, b: AdjacencyState) -> int:
    """Number of dyads on which a and b differ; 0 iff they are equal."""
    _check_same_space(a, b)
    n = a.space.n
    ao, bo = a.out, b.out
    if a.space.directed:
        return sum((ao[i] ^ bo[i]).bit_count() for i in range(n))
    total = 0
    for i in range(n):
        # row i holds dyads {i+1, j+1} with j <= i; higher bits are mirrors
        mask = (1 << (i + 1)) - 1
        total += ((ao[i] ^ bo[i]) & mask).bit_count()
    return total


def bounds_of_space(space: GraphSpace) -> tuple[AdjacencyState, AdjacencyState]:
    """The unique minimum and maximum of the space under the subgraph order.

    Lower bound: all free dyads absent. Upper bound: all free dyads present.
    Restricted dyads sit at their forced values in both.
    """
    lower = _lower_bound(space).copy()
    upper = lower.copy()
    for i, j in space._free0:
        upper.set0(i, j, True)
    return lower, upper


def _lower_bound(space: GraphSpace) -> AdjacencyState:
    if space._lower_template is None:
        st = AdjacencyState._blank(space)
        for d in space.forced_present:
            st.set0(d.i - 1, d.j - 1, True)
        space._lower_template = st
    return space._lower_template


def encode_free_bits(state: AdjacencyState) -> int:
    """Canonical bit encoding of a state: bit k is the state of the k-th free dyad."""
    bits = 0
    out = state.out
    for k, (i, j) in enumerate(state.space._free0):
        if (out[i] >> j) & 1:
            bits |= 1 << k
    return bits


def state_from_free_bits(space: GraphSpace, bits: int) -> AdjacencyState:
    """Inverse of encode_free_bits."""
    nfree = len(space._free0)
    if not 0 <= bits < (1 << nfree):
        raise ValueError(f"bit pattern {bits:#x} outside the {nfree}-dyad support")
    st = _lower_bound(space).copy()
    for k, (i, j) in enumerate(space._free0):
        if (bits >> k) & 1:
            st.set0(i, j, True)
    return st


def format_edge_list(state: AdjacencyState) -> str:
    """Edge-list text: header line, then one "i j" line per present dyad."""
    sp = state.space
    lines = [f"# n={sp.n} directed={int(sp.directed)} loops={int(sp.loops)}"]
    for d in sp.all_dyads():
        if state.get0(d.i - 1, d.j - 1):
            lines.append(f"{d.i} {d.j}")
    return "\n".join(lines) + "\n"


def bipartite_space(n_left: int, n_right: int, directed: bool = False) -> GraphSpace:
    """Two-mode support: only edges between the first n_left and the last
    n_right vertices may vary; directed variants keep left-to-right arcs."""
    n = n_left + n_right
    left = set(range(1, n_left + 1))
    absent = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            same_mode = (i in left) == (j in left)
            if directed:
                if same_mode or (i not in left):
                    absent.append((i, j))
            else:
                if same_mode and i > j:
                    absent.append((i, j))
    return GraphSpace(n, directed=directed, loops=False, forced_absent=absent)


def egocentric_space(n: int, ego: int = 1, directed: bool = False) -> GraphSpace:
    """Support conditioned on a spanning star at the ego vertex."""
    if not 1 <= ego <= n:
        raise ValueError(f"ego {ego} out of range for n={n}")
    present = []
    for v in range(1, n + 1):
        if v == ego:
            continue
        if directed:
            present.append((ego, v))
            present.append((v, ego))
        else:
            present.append((max(ego, v), min(ego, v)))
    return GraphSpace(n, directed=directed, loops=False, forced_present=present)
