"""Inversion sequences avoiding the word patterns 210 and 100.

An inversion sequence of size n is an integer tuple (e_1, ..., e_n) with
0 <= e_i < i.  A word pattern occurs in e as a subsequence that is
order-isomorphic to it with equalities matched by equalities, so 210
means a strictly decreasing triple and 100 means a strict descent onto a
repeated value.

Writing e^top for the subsequence of weak left-to-right maxima and
e^bottom for the rest, top(e) = max(e^top) and bottom(e) = max(e^bottom)
with bottom(e) = -1 when e^bottom is empty.  The class avoiding both 210
and 100 is exactly the class where e^bottom is strictly increasing, and
counting avoiders by (top, bottom) = (a, b) gives the Q_{n,a,b} dynamic
program whose total reproduces the semi-Baxter numbers.
"""

from __future__ import annotations

from fractions import Fraction

from .formulas import binom, catalan

ISeq = tuple[int, ...]


def is_inversion_sequence(e: ISeq) -> bool:
    return all(0 <= v < i for i, v in enumerate(e, start=1))


def iseq_contains(e: ISeq, w: str) -> bool:
    """True iff some subsequence of e is order-isomorphic to the digit
    word w, with equalities in w matched by equal entries.

    >>> iseq_contains((0, 0, 1, 3, 1, 3, 2, 7, 3), "210")
    False
    >>> iseq_contains((0, 0, 1, 2, 0, 1, 1), "100")
    True
    >>> iseq_contains((0,), "10")
    False
    """
    pat = [int(ch) for ch in w]
    m = len(pat)
    n = len(e)
    if m > n:
        return False
    chosen = [0] * m

    def place(t: int, start: int) -> bool:
        if t == m:
            return True
        for j in range(start, n - (m - 1 - t)):
            v = e[j]
            for s in range(t):
                d = pat[t] - pat[s]
                if (v > chosen[s]) != (d > 0) or (v == chosen[s]) != (d == 0):
                    break
            else:
                chosen[t] = v
                if place(t + 1, j + 1):
                    return True
        return False

    return place(0, 0)


def avoids_both(e: ISeq) -> bool:
    return not (iseq_contains(e, "210") or iseq_contains(e, "100"))


def decompose(e: ISeq) -> tuple[int, int, ISeq, ISeq]:
    """(top, bottom, e^top, e^bottom) of an inversion sequence.

    >>> decompose((0, 1, 0))
    (1, 0, (0, 1), (0,))
    >>> decompose((0,))
    (0, -1, (0,), ())
    """
    top_seq: list[int] = []
    bottom_seq: list[int] = []
    run_max = -1
    for v in e:
        if v >= run_max:
            run_max = v
            top_seq.append(v)
        else:
            bottom_seq.append(v)
    top = max(top_seq) if top_seq else -1
    bottom = max(bottom_seq) if bottom_seq else -1
    return top, bottom, tuple(top_seq), tuple(bottom_seq)


def _max_blocked(e: ISeq) -> int:
    """Largest p such that appending p would complete 210 or 100.

    An appended value p is bad iff some e_i > e_j >= p with i < j, i.e.
    iff p <= some entry that has a strictly larger entry before it.
    Returns -1 when no appended value is blocked.
    """
    run_max = -1
    blocked = -1
    for v in e:
        if v >= run_max:
            run_max = v
        elif v > blocked:
            blocked = v
    return blocked


def valid_extensions(e: ISeq) -> range:
    """Values p for which e + (p,) stays in the avoidance class.

    >>> list(valid_extensions((0, 1, 0)))
    [1, 2, 3]
    """
    return range(_max_blocked(e) + 1, len(e) + 1)


def count_avoiders_bruteforce(n_max: int) -> list[int]:
    """|I_n(210, 100)| for n = 1..n_max by prefix-closed DFS growth.

    Each candidate extension is tested by the anchored occurrence scan
    (any new occurrence must end at the appended entry); no counting
    shortcut from the (top, bottom) analysis is used, so this route stays
    independent of q_table and the closed formula.

    >>> count_avoiders_bruteforce(4)
    [1, 2, 6, 23]
    """
    assert n_max >= 1
    counts = [0] * (n_max + 1)
    counts[1] = 1
    stack: list[ISeq] = [(0,)]
    while stack and n_max >= 2:
        e = stack.pop()
        n = len(e)
        lo = _max_blocked(e) + 1  # valid appended values are lo..n
        if n + 1 == n_max:
            counts[n_max] += n + 1 - lo
            continue
        for p in range(lo, n + 1):
            counts[n + 1] += 1
            stack.append(e + (p,))
    return counts[1:]


def growth_label(e: ISeq) -> tuple[int, int]:
    """The pair (h, k) = (top - bottom, n - top) steering the growth."""
    top, bottom, _, _ = decompose(e)
    return (top - bottom, len(e) - top)


def q_table(n: int) -> dict[tuple[int, int], int]:
    """All Q_{n,a,b}: avoiders of size n with top a and bottom b.

    Recurrence over b >= 0 plus the exact-division ballot column
    Q_{n,a,-1} = ((n-a)/n) C(n-1+a, a); Q_{n,a,b} = 0 whenever n <= a.

    >>> q_table(3)[(1, -1)]
    2
    >>> sum(q_table(4).values())
    23
    """
    assert n >= 1
    prev: dict[tuple[int, int], int] = {}
    for m in range(1, n + 1):
        cur: dict[tuple[int, int], int] = {}
        for a in range(m):
            ballot = Fraction(m - a, m) * binom(m - 1 + a, a)
            assert ballot.denominator == 1, (m, a)
            cur[(a, -1)] = int(ballot)
            for b in range(a):
                total = sum(prev.get((a, i), 0) for i in range(-1, b))
                total += sum(prev.get((j, b), 0) for j in range(b + 1, a + 1))
                if total:
                    cur[(a, b)] = total
        prev = cur
    return prev


def total_via_formula(n: int) -> int:
    """Catalan(n) plus the double sum of Q_{n,a,b} over 0 <= b < a < n.

    >>> [total_via_formula(n) for n in (1, 5, 7)]
    [1, 104, 2958]
    """
    assert n >= 1
    q = q_table(n)
    return catalan(n) + sum(cnt for (a, b), cnt in q.items() if b >= 0)
