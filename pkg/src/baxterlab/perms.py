"""Permutations, vincular patterns, and prefix-closed enumeration.

A permutation is a tuple of distinct values 1..n in one-line notation.
A vincular pattern is a pattern permutation together with a set of
adjacency constraints: writing the pattern as a digit string, a bracketed
block like "2[41]3" requires the bracketed entries (here 4 and 1) to sit
in consecutive positions of the host permutation.  An occurrence is an
index subsequence of the host, order-isomorphic to the pattern, whose
bracketed entries are adjacent in the host.

Right insertion pi . a appends a new smallest-to-largest value a in
1..n+1 at the end, shifting every old value >= a up by one.  Every class
Av(P) of vincular patterns is prefix-closed under this growth (deleting
the last point of an avoider leaves an avoider), so the avoiders of each
size form a generating tree: the children of pi are the pi . a for the
"active sites" a.  Enumeration walks that tree depth first.

The active sites are found without testing each insertion separately.
Since the prefix of pi . a is order-isomorphic to pi, a new occurrence of
a pattern q must use the inserted last position as the final pattern
entry.  Each embedding of the first m-1 pattern entries into pi forbids
exactly one interval of insertion values (max of the host values playing
smaller roles, min of those playing larger roles), so one backtracking
sweep per pattern yields the forbidden set as a bitmask.
"""

from __future__ import annotations

from dataclasses import dataclass

Perm = tuple[int, ...]
Label = tuple[int, int]


def is_permutation(p: Perm) -> bool:
    """True iff p is a rearrangement of 1..len(p)."""
    return sorted(p) == list(range(1, len(p) + 1))


class VincularPattern:
    """A pattern permutation plus 1-based adjacency pairs.

    ``adjacent`` contains i whenever pattern positions i and i+1 must map
    to consecutive host positions.  With ``adjacent`` empty this is a
    classical pattern.
    """

    __slots__ = (
        "values", "adjacent", "text", "size",
        "_adj_prev", "_cmps", "_anchor_adj", "_less_last", "_greater_last",
    )

    def __init__(self, values: Perm, adjacent: frozenset[int], text: str = ""):
        assert is_permutation(values), values
        m = len(values)
        assert all(1 <= i <= m - 1 for i in adjacent), adjacent
        self.values = values
        self.adjacent = adjacent
        self.text = text or "".join(map(str, values))
        self.size = m
        # slot t (0-based) must sit immediately after slot t-1
        self._adj_prev = tuple(t in adjacent for t in range(m))
        # incremental order constraints: for slot t, pairs (s, values[t] > values[s])
        self._cmps = tuple(
            tuple((s, values[t] > values[s]) for s in range(t))
            for t in range(m)
        )
        # data for the anchored matcher (last pattern entry at the host end)
        self._anchor_adj = (m - 1) in adjacent
        last = values[m - 1]
        self._less_last = tuple(t for t in range(m - 1) if values[t] < last)
        self._greater_last = tuple(t for t in range(m - 1) if values[t] > last)

    def __repr__(self) -> str:
        return f"VincularPattern({self.text!r})"

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, VincularPattern)
                and self.values == other.values and self.adjacent == other.adjacent)

    def __hash__(self) -> int:
        return hash((self.values, self.adjacent))


def parse_pattern(text: str) -> VincularPattern:
    """Parse a pattern string with bracketed adjacent blocks.

    Single-digit values only; a block [..] marks its entries as occupying
    consecutive host positions.

    >>> parse_pattern("2[41]3").adjacent == frozenset({2})
    True
    >>> parse_pattern("231").adjacent == frozenset()
    True
    >>> parse_pattern("[14]23").values
    (1, 4, 2, 3)
    """
    values: list[int] = []
    adjacent: set[int] = set()
    depth = 0
    block_start = 0
    for ch in text:
        if ch == "[":
            if depth:
                raise ValueError(f"nested brackets in {text!r}")
            depth = 1
            block_start = len(values) + 1
        elif ch == "]":
            if not depth:
                raise ValueError(f"unbalanced brackets in {text!r}")
            depth = 0
            adjacent.update(range(block_start, len(values)))
        elif ch.isdigit():
            values.append(int(ch))
        else:
            raise ValueError(f"bad character {ch!r} in pattern {text!r}")
    if depth:
        raise ValueError(f"unbalanced brackets in {text!r}")
    pat = tuple(values)
    if not is_permutation(pat):
        raise ValueError(f"pattern {text!r} is not a permutation")
    return VincularPattern(pat, frozenset(adjacent), text)


@dataclass(frozen=True)
class AvoidanceClass:
    """A named family Av(patterns)."""

    name: str
    patterns: tuple[VincularPattern, ...]


PATTERNS: dict[str, VincularPattern] = {
    s: parse_pattern(s)
    for s in ("2[41]3", "3[14]2", "3[41]2", "2[14]3", "[14]23", "231")
}

CLASSES: dict[str, AvoidanceClass] = {
    "semi": AvoidanceClass("semi", (PATTERNS["2[41]3"],)),
    "plane": AvoidanceClass("plane", (PATTERNS["2[14]3"],)),
    "baxter": AvoidanceClass("baxter", (PATTERNS["2[41]3"], PATTERNS["3[14]2"])),
    "twisted": AvoidanceClass("twisted", (PATTERNS["2[41]3"], PATTERNS["3[41]2"])),
    "strong": AvoidanceClass(
        "strong", (PATTERNS["2[41]3"], PATTERNS["3[14]2"], PATTERNS["3[41]2"])),
    "av231": AvoidanceClass("av231", (PATTERNS["231"],)),
    "exp1423": AvoidanceClass("exp1423", (PATTERNS["[14]23"],)),
}

# classes whose generating tree carries a two-part (h, k) label
LABELLED_CLASSES = ("semi", "plane", "baxter", "twisted", "strong")


def contains(p: Perm, q: VincularPattern) -> bool:
    """True iff p has an occurrence of the vincular pattern q.

    Plain backtracking over index subsequences with adjacency pruning.

    >>> contains((2, 4, 1, 3), PATTERNS["2[41]3"])
    True
    >>> contains((1,), PATTERNS["231"])
    False
    >>> contains((3, 4, 1, 2), PATTERNS["3[41]2"])
    True
    """
    n = len(p)
    m = q.size
    if m > n:
        return False
    adj_prev = q._adj_prev
    cmps = q._cmps
    chosen = [0] * m
    vals = [0] * m

    def place(t: int, start: int) -> bool:
        if t == m:
            return True
        if adj_prev[t]:
            nxt = chosen[t - 1] + 1
            cand = range(nxt, nxt + 1) if nxt < n else range(0)
        else:
            cand = range(start, n - (m - 1 - t))
        for j in cand:
            v = p[j]
            for s, greater in cmps[t]:
                if (v > vals[s]) != greater:
                    break
            else:
                chosen[t] = j
                vals[t] = v
                if place(t + 1, j + 1):
                    return True
        return False

    return place(0, 0)


def avoids(p: Perm, cls: AvoidanceClass) -> bool:
    return not any(contains(p, q) for q in cls.patterns)


def right_insert(p: Perm, a: int) -> Perm:
    """The renormalizing right insertion pi . a.

    >>> right_insert((1, 4, 2, 3), 3)
    (1, 5, 2, 4, 3)
    >>> right_insert((1,), 2)
    (1, 2)
    >>> right_insert((2, 1), 2)
    (3, 1, 2)
    """
    n = len(p)
    if not 1 <= a <= n + 1:
        raise ValueError(f"insertion value {a} out of range 1..{n + 1}")
    out = [v + 1 if v >= a else v for v in p]
    out.append(a)
    return tuple(out)


def _forbidden_mask(p: Perm, q: VincularPattern) -> int:
    """Bitmask of insertion values a (bit a-1) creating an occurrence of q.

    Only occurrences ending at the inserted position can be new, so each
    embedding of the first m-1 pattern entries forbids the value interval
    (max of hosts below the last pattern entry, min of hosts above].
    """
    n = len(p)
    m1 = q.size - 1
    if m1 > n:
        return 0
    adj_prev = q._adj_prev
    cmps = q._cmps
    anchor_adj = q._anchor_adj
    less_last = q._less_last
    greater_last = q._greater_last
    chosen = [0] * m1
    vals = [0] * m1
    mask = 0

    def place(t: int, start: int) -> None:
        nonlocal mask
        if t == m1:
            lo = 0
            for s in less_last:
                v = vals[s]
                if v > lo:
                    lo = v
            hi = n + 1
            for s in greater_last:
                v = vals[s]
                if v < hi:
                    hi = v
            if lo < hi:
                mask |= (1 << hi) - (1 << lo)
            return
        if t == m1 - 1 and anchor_adj:
            # the last placed entry must hug the insertion point
            j0 = n - 1
            if t > 0 and (chosen[t - 1] >= j0 or (adj_prev[t] and chosen[t - 1] + 1 != j0)):
                return
            cand = range(j0, j0 + 1)
        elif adj_prev[t]:
            nxt = chosen[t - 1] + 1
            cand = range(nxt, nxt + 1) if nxt < n else range(0)
        else:
            cand = range(start, n - (m1 - 1 - t))
        for j in cand:
            v = p[j]
            for s, greater in cmps[t]:
                if (v > vals[s]) != greater:
                    break
            else:
                chosen[t] = j
                vals[t] = v
                place(t + 1, j + 1)

    place(0, 0)
    return mask


def _class_mask(p: Perm, patterns: tuple[VincularPattern, ...]) -> int:
    mask = 0
    for q in patterns:
        mask |= _forbidden_mask(p, q)
    return mask


def active_sites(p: Perm, cls: AvoidanceClass) -> list[int]:
    """All a with right_insert(p, a) still in the class, sorted.

    >>> active_sites((1,), CLASSES["semi"])
    [1, 2]
    """
    if not avoids(p, cls):
        raise ValueError(f"{p} is not in class {cls.name}")
    mask = _class_mask(p, cls.patterns)
    return [a for a in range(1, len(p) + 2) if not (mask >> (a - 1)) & 1]


def label_of(p: Perm, cls: AvoidanceClass) -> Label:
    """Generating-tree label (h, k) of an avoider.

    h counts active sites <= the last value and k those above it; the
    plane class swaps the two roles.

    >>> label_of((1,), CLASSES["semi"])
    (1, 1)
    >>> label_of((1, 2), CLASSES["semi"])
    (2, 1)
    >>> label_of((2, 1), CLASSES["semi"])
    (1, 2)
    """
    if cls.name not in LABELLED_CLASSES:
        raise ValueError(f"class {cls.name} carries no (h, k) label")
    sites = active_sites(p, cls)
    last = p[-1]
    h = sum(1 for a in sites if a <= last)
    k = len(sites) - h
    if cls.name == "plane":
        h, k = k, h
    return (h, k)


def enumerate_class(cls: AvoidanceClass, n_max: int) -> list[int]:
    """Counts of avoiders of sizes 1..n_max by depth-first tree growth.

    >>> enumerate_class(CLASSES["semi"], 6)
    [1, 2, 6, 23, 104, 530]
    >>> enumerate_class(CLASSES["strong"], 6)
    [1, 2, 6, 21, 82, 346]
    >>> enumerate_class(CLASSES["baxter"], 5)
    [1, 2, 6, 22, 92]
    """
    if n_max == 0:
        return []
    counts = [0] * (n_max + 1)
    counts[1] = 1
    if n_max == 1:
        return counts[1:]
    patterns = cls.patterns
    last_level = n_max - 1
    stack: list[Perm] = [(1,)]
    push = stack.append
    while stack:
        p = stack.pop()
        n = len(p)
        mask = _class_mask(p, patterns)
        if n == last_level:
            # children are only counted, never materialized
            free = ~mask & ((1 << (n + 1)) - 1)
            counts[n + 1] += free.bit_count()
            continue
        for a in range(1, n + 2):
            if not (mask >> (a - 1)) & 1:
                child = [v + 1 if v >= a else v for v in p]
                child.append(a)
                counts[n + 1] += 1
                push(tuple(child))
    return counts[1:]


def iter_avoiders(cls: AvoidanceClass, n: int):
    """Yield every avoider of size exactly n (tree order)."""
    assert n >= 1
    stack: list[Perm] = [(1,)]
    while stack:
        p = stack.pop()
        if len(p) == n:
            yield p
            continue
        mask = _class_mask(p, cls.patterns)
        for a in range(1, len(p) + 2):
            if not (mask >> (a - 1)) & 1:
                stack.append(right_insert(p, a))


def label_census(cls: AvoidanceClass, n: int) -> dict[Label, int]:
    """Multiset of labels over all avoiders of size n."""
    if cls.name not in LABELLED_CLASSES:
        raise ValueError(f"class {cls.name} carries no (h, k) label")
    swap = cls.name == "plane"
    census: dict[Label, int] = {}
    for p in iter_avoiders(cls, n):
        mask = _class_mask(p, cls.patterns)
        last = p[-1]
        h = 0
        total = 0
        for a in range(1, n + 2):
            if not (mask >> (a - 1)) & 1:
                total += 1
                if a <= last:
                    h += 1
        k = total - h
        lab = (k, h) if swap else (h, k)
        census[lab] = census.get(lab, 0) + 1
    return census
