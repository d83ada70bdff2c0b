"""Vertex shifts of finite type given by 0/1 transition matrices.

Rows are packed into Python ints (bit j of ``rows[i]`` is m_ij), so boolean
products, reachability and Kronecker powers are bitwise operations.

Vertex ``i`` (0-based) carries the label ``labels[i]``. The default labels are
``1, 2, ..., 9, a, ...`` so that printed words use the usual 1-based indexing;
pass ``labels="01"`` to treat a 2x2 matrix as a shift over {0, 1}.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from itertools import product
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    AlphabetError,
    CapExceededError,
    DomainError,
    EmptySubshiftError,
    LiteralError,
    NoReturnPathError,
)
from .sequences import SYMBOLS, EventuallyPeriodicWord

KRON_CAP_ENV = "HYPERSHIFT_KRON_CAP"
WORD_CAP_ENV = "HYPERSHIFT_WORD_CAP"
DEFAULT_KRON_CAP = 4096
DEFAULT_WORD_CAP = 1_000_000


def _env_cap(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"{name} must be an integer, got {raw!r}") from None


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class TransitionMatrix:
    rows: Tuple[int, ...]
    labels: str = ""

    def __post_init__(self):
        n = len(self.rows)
        full = (1 << n) - 1
        for r in self.rows:
            if r < 0 or r & ~full:
                raise DomainError("row bitmask has entries outside the matrix")
        if self.labels:
            if len(self.labels) != n or len(set(self.labels)) != n:
                raise AlphabetError(f"need {n} distinct labels, got {self.labels!r}")
            if set(self.labels) - set(SYMBOLS):
                raise AlphabetError(f"labels must be drawn from 0-9a-z, got {self.labels!r}")

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], labels: str = "") -> "TransitionMatrix":
        n = len(entries)
        rows = []
        for i, row in enumerate(entries):
            if len(row) != n:
                raise LiteralError(f"matrix is not square: row {i + 1} has {len(row)} entries, expected {n}")
            mask = 0
            for j, v in enumerate(row):
                if v not in (0, 1):
                    raise LiteralError(f"entry ({i + 1},{j + 1}) is {v!r}, expected 0 or 1")
                if v:
                    mask |= 1 << j
            rows.append(mask)
        return cls(tuple(rows), labels)

    @classmethod
    def from_text(cls, text: str, labels: str = "") -> "TransitionMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise LiteralError("matrix file is empty")
        entries = []
        for k, ln in enumerate(lines, 1):
            try:
                entries.append([int(tok) for tok in ln.split()])
            except ValueError:
                raise LiteralError(f"line {k}: entries must be 0 or 1") from None
        return cls.from_lists(entries, labels)

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def symbols(self) -> str:
        if self.labels:
            return self.labels
        if self.n > len(SYMBOLS) - 1:
            raise AlphabetError(f"no default labels for a {self.n}x{self.n} matrix")
        return SYMBOLS[1:self.n + 1]

    def symbol(self, i: int) -> str:
        return self.symbols[i]

    def index(self, symbol: str) -> int:
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise AlphabetError(f"unknown vertex symbol {symbol!r} (vertices {self.symbols!r})") from None

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def to_lists(self) -> List[List[int]]:
        return [[self.entry(i, j) for j in range(self.n)] for i in range(self.n)]

    def to_text(self) -> str:
        return "".join(" ".join(str(v) for v in row) + "\n" for row in self.to_lists())

    def out_degree(self, i: int) -> int:
        return bin(self.rows[i]).count("1")

    def transpose_rows(self) -> Tuple[int, ...]:
        cols = [0] * self.n
        for i, r in enumerate(self.rows):
            for j in _bits(r):
                cols[j] |= 1 << i
        return tuple(cols)

    def is_essential(self) -> bool:
        if not self.rows:
            return False
        col_union = 0
        for r in self.rows:
            if not r:
                return False
            col_union |= r
        return col_union == (1 << self.n) - 1


# ---------------------------------------------------------------- graph helpers

def _reach(rows: Sequence[int], start: int) -> int:
    """Bitmask of vertices reachable from the ``start`` mask (start included)."""
    seen = frontier = start
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= rows[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def _step(rows: Sequence[int], mask: int) -> int:
    out = 0
    for v in _bits(mask):
        out |= rows[v]
    return out


def strongly_connected_components(M: TransitionMatrix) -> List[List[int]]:
    """Tarjan's algorithm, iterative; components in reverse topological order."""
    n = M.n
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: List[int] = []
    comps: List[List[int]] = []
    counter = 0
    succ = [list(_bits(r)) for r in M.rows]
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, pos = work[-1]
            if pos < len(succ[v]):
                work[-1] = (v, pos + 1)
                w = succ[v][pos]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    return comps


def _component_map(M: TransitionMatrix) -> Dict[int, int]:
    comp_of = {}
    for c, comp in enumerate(strongly_connected_components(M)):
        for v in comp:
            comp_of[v] = c
    return comp_of


def _require_essential(M: TransitionMatrix) -> None:
    if not M.is_essential():
        raise DomainError("matrix must be essential (every row and column nonzero); trim it first")


# ---------------------------------------------------------------- operations

def trim_essential(M: TransitionMatrix) -> Tuple[TransitionMatrix, List[int]]:
    """Drop vertices with no successor or no predecessor until none remain.

    Returns the trimmed matrix and the removed 0-based indices (ascending); an
    empty matrix means the subshift is empty.
    """
    alive = (1 << M.n) - 1
    while True:
        keep = 0
        col_union = 0
        for i in _bits(alive):
            col_union |= M.rows[i] & alive
        for i in _bits(alive):
            if M.rows[i] & alive and col_union >> i & 1:
                keep |= 1 << i
        if keep == alive:
            break
        alive = keep
    kept = list(_bits(alive))
    removed = [i for i in range(M.n) if not alive >> i & 1]
    pos = {v: k for k, v in enumerate(kept)}
    rows = []
    for i in kept:
        mask = 0
        for j in _bits(M.rows[i] & alive):
            mask |= 1 << pos[j]
        rows.append(mask)
    labels = "".join(M.symbols[i] for i in kept) if M.n and (M.labels or M.n < len(SYMBOLS)) else ""
    return TransitionMatrix(tuple(rows), labels), removed


def bool_mult(A: TransitionMatrix, B: TransitionMatrix) -> TransitionMatrix:
    if A.n != B.n:
        raise DomainError("dimension mismatch")
    return TransitionMatrix(tuple(_step(B.rows, r) for r in A.rows), A.labels)


def bool_power(M: TransitionMatrix, l: int) -> TransitionMatrix:
    if l < 1:
        raise DomainError("power must be at least 1")
    result = None
    base = M
    while l:
        if l & 1:
            result = base if result is None else bool_mult(result, base)
        l >>= 1
        if l:
            base = bool_mult(base, base)
    return result


def is_irreducible(M: TransitionMatrix) -> bool:
    _require_essential(M)
    full = (1 << M.n) - 1
    return _reach(M.rows, 1) == full and _reach(M.transpose_rows(), 1) == full


def matrix_period(M: TransitionMatrix) -> int:
    """gcd of cycle lengths, from BFS levels: gcd over edges u->v of level(u) + 1 - level(v)."""
    if not is_irreducible(M):
        raise DomainError("period is defined for irreducible matrices only")
    level = [-1] * M.n
    level[0] = 0
    queue = deque([0])
    g = 0
    while queue:
        u = queue.popleft()
        for v in _bits(M.rows[u]):
            if level[v] == -1:
                level[v] = level[u] + 1
                queue.append(v)
            else:
                g = gcd(g, abs(level[u] + 1 - level[v]))
    return g


def is_primitive(M: TransitionMatrix) -> bool:
    _require_essential(M)
    return is_irreducible(M) and matrix_period(M) == 1


def kron_power(M: TransitionMatrix, k: int, cap: Optional[int] = None) -> TransitionMatrix:
    """Matrix on k-tuples of indices with entry prod_t m(i_t, j_t), tuples in row-major rank."""
    if k < 1:
        raise DomainError("Kronecker power must be at least 1")
    if cap is None:
        cap = _env_cap(KRON_CAP_ENV, DEFAULT_KRON_CAP)
    if M.n ** k > cap:
        raise CapExceededError(f"kron_power dimension {M.n}^{k} = {M.n ** k} exceeds cap {cap}")
    rows = list(M.rows)
    for _ in range(k - 1):
        # row (a, b) of A (x) M: for each j set in A[a], place M[b] at block j
        rows = [_kron_row(ra, rb, M.n) for ra in rows for rb in M.rows]
    return TransitionMatrix(tuple(rows))


def _kron_row(ra: int, rb: int, nb: int) -> int:
    out = 0
    for j in _bits(ra):
        out |= rb << (j * nb)
    return out


def tuple_rank(components: Sequence[int], n: int) -> int:
    """Row-major rank of a 0-based index tuple in kron_power(M, len(components))."""
    r = 0
    for c in components:
        if not 0 <= c < n:
            raise DomainError(f"index {c} out of range for n={n}")
        r = r * n + c
    return r


def has_isolated_point(M: TransitionMatrix) -> bool:
    """True iff some vertex starts a chain along which every out-degree is 1."""
    _require_essential(M)
    branching = 0
    for i in range(M.n):
        if M.out_degree(i) >= 2:
            branching |= 1 << i
    reaches_branch = _reach(M.transpose_rows(), branching)
    return reaches_branch != (1 << M.n) - 1


@dataclass(frozen=True)
class SftClassification:
    n: int
    removed: Tuple[str, ...]
    essential_trimmed: bool
    irreducible: bool
    period: Optional[int]
    aperiodic: bool
    primitive: bool
    transitive: bool
    totally_transitive: bool
    weakly_mixing: bool
    mixing: bool
    sensitive: bool
    dense_periodic_points: bool
    induced_transitive: bool
    induced_weakly_mixing: bool
    induced_mixing: bool
    induced_sensitive: bool

    def to_dict(self) -> dict:
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.__dict__.items()}


def _label(M: TransitionMatrix, i: int) -> str:
    return M.symbol(i) if M.labels or M.n < len(SYMBOLS) else str(i + 1)


def classify_sft(M: TransitionMatrix) -> SftClassification:
    T, removed = trim_essential(M)
    if T.n == 0:
        raise EmptySubshiftError("empty subshift: trimming removed every vertex")
    irreducible = is_irreducible(T)
    period = matrix_period(T) if irreducible else None
    primitive = irreducible and period == 1
    sensitive = not has_isolated_point(T)
    comp_of = _component_map(T)
    dense = all(comp_of[i] == comp_of[j] for i in range(T.n) for j in _bits(T.rows[i]))
    # the three mixing-type flags are computed by separate routes so that
    # their agreement with primitivity is a checked fact, not a definition
    totally = irreducible and all(is_irreducible(bool_power(T, k)) for k in range(2, T.n + 1))
    weakly = irreducible and is_irreducible(kron_power(T, 2, cap=max(T.n ** 2, 1)))
    full = (1 << T.n) - 1
    mixing = all(r == full for r in bool_power(T, T.n * T.n - 2 * T.n + 2).rows)
    return SftClassification(
        n=M.n,
        removed=tuple(_label(M, i) for i in removed),
        essential_trimmed=bool(removed),
        irreducible=irreducible,
        period=period,
        aperiodic=period == 1,
        primitive=primitive,
        transitive=irreducible,
        totally_transitive=totally,
        weakly_mixing=weakly,
        mixing=mixing,
        sensitive=sensitive,
        dense_periodic_points=dense,
        induced_transitive=weakly,
        induced_weakly_mixing=weakly,
        induced_mixing=mixing,
        induced_sensitive=sensitive,
    )


def word_count(M: TransitionMatrix, length: int) -> int:
    if length < 1:
        return 0
    counts = [1] * M.n
    for _ in range(length - 1):
        counts = [sum(counts[j] for j in _bits(M.rows[i])) for i in range(M.n)]
    return sum(counts)


def allowed_words(M: TransitionMatrix, length: int, cap: Optional[int] = None) -> List[str]:
    """All label words of the given length following allowed transitions, sorted."""
    if length < 1:
        raise DomainError("word length must be at least 1")
    if cap is None:
        cap = _env_cap(WORD_CAP_ENV, DEFAULT_WORD_CAP)
    total = word_count(M, length)
    if total > cap:
        raise CapExceededError(f"{total} words of length {length} exceed cap {cap}")
    sym = M.symbols
    words = [(sym[i], i) for i in range(M.n)]
    for _ in range(length - 1):
        words = [(w + sym[j], j) for w, i in words for j in _bits(M.rows[i])]
    return sorted(w for w, _ in words)


def word_indices(M: TransitionMatrix, word: str) -> List[int]:
    return [M.index(c) for c in word]


def is_allowed_word(M: TransitionMatrix, word: str) -> bool:
    idx = word_indices(M, word)
    return all(M.entry(a, b) for a, b in zip(idx, idx[1:]))


def is_allowed_point(M: TransitionMatrix, x: EventuallyPeriodicWord) -> bool:
    """Whether every transition of the infinite sequence x is allowed."""
    return is_allowed_word(M, x.preperiod + x.period + x.period[0])


def shortest_return(M: TransitionMatrix, a: int, b: int) -> Optional[List[int]]:
    """Intermediate vertices of a shortest path a -> ... -> b with at least one edge."""
    if M.entry(a, b):
        return []
    parent = {}
    queue = deque()
    for v in _bits(M.rows[a]):
        parent[v] = None
        queue.append(v)
    while queue:
        u = queue.popleft()
        if M.entry(u, b):
            path = [u]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return path[::-1]
        for v in _bits(M.rows[u]):
            if v not in parent:
                parent[v] = u
                queue.append(v)
    return None


def path_of_length(M: TransitionMatrix, a: int, b: int, steps: int) -> Optional[List[int]]:
    """Vertices of the lexicographically least path from a to b with exactly ``steps`` edges."""
    if steps < 0:
        return None
    back = [1 << b]
    cols = M.transpose_rows()
    for _ in range(steps):
        back.append(_step(cols, back[-1]))
    if not back[steps] >> a & 1:
        return None
    path = [a]
    for remaining in range(steps - 1, -1, -1):
        nxt = M.rows[path[-1]] & back[remaining]
        path.append((nxt & -nxt).bit_length() - 1)
    return path


def periodic_extension(M: TransitionMatrix, word: str) -> EventuallyPeriodicWord:
    """Purely periodic allowed point whose period starts with ``word``.

    The period is ``word`` followed by the interior of a shortest path from
    its last vertex back to its first.
    """
    if not word:
        raise DomainError("word must be nonempty")
    if not is_allowed_word(M, word):
        raise DomainError(f"word {word!r} is not allowed")
    idx = word_indices(M, word)
    connector = shortest_return(M, idx[-1], idx[0])
    if connector is None:
        comp_of = _component_map(M)
        raise NoReturnPathError(
            f"no path from {word[-1]!r} back to {word[0]!r}: "
            f"{word[-1]!r} lies in component {comp_of[idx[-1]]}, {word[0]!r} in component {comp_of[idx[0]]}"
        )
    return EventuallyPeriodicWord("", word + "".join(M.symbol(v) for v in connector))


def forward_core(M: TransitionMatrix) -> int:
    """Bitmask of vertices that start at least one infinite path."""
    alive = (1 << M.n) - 1
    while True:
        keep = 0
        for i in _bits(alive):
            if M.rows[i] & alive:
                keep |= 1 << i
        if keep == alive:
            return alive
        alive = keep


def enumerate_matrices(n: int):
    """Every n x n 0/1 matrix, in increasing order of the packed row tuple."""
    for rows in product(range(1 << n), repeat=n):
        yield TransitionMatrix(tuple(rows))
