"""Inversion-sequence avoiders: matcher, decomposition, table, formula."""

import itertools

from baxterlab import invseq, rules
from baxterlab.formulas import catalan

from conftest import SB


def _all_iseqs(n):
    return itertools.product(*(range(i) for i in range(1, n + 1)))


def _naive_contains(e, word):
    """Triple-nested independent matcher for 3-letter digit words."""
    k = len(word)
    assert k == 3
    rel = [(word[i], word[j]) for i, j in ((0, 1), (0, 2), (1, 2))]
    for pos in itertools.combinations(range(len(e)), k):
        vals = [e[i] for i in pos]
        ok = True
        for (wa, wb), (va, vb) in zip(rel, ((vals[0], vals[1]), (vals[0], vals[2]), (vals[1], vals[2]))):
            if wa == wb:
                ok = va == vb
            elif wa < wb:
                ok = va < vb
            else:
                ok = va > vb
            if not ok:
                break
        if ok:
            return True
    return False


def test_iseq_contains_trivial():
    assert not invseq.iseq_contains((0,), "10")
    assert not invseq.iseq_contains((0,), "100")
    assert invseq.iseq_contains((0, 1, 1, 0), "110")
    assert invseq.iseq_contains((0, 1, 0, 1), "101")


def test_iseq_contains_vs_naive():
    for n in range(1, 8):
        for e in _all_iseqs(n):
            for word in ("210", "100", "110", "201"):
                assert invseq.iseq_contains(e, word) == _naive_contains(e, word), (e, word)


def test_avoids_both_vs_naive_filter():
    counts = []
    for n in range(1, 9):
        c = 0
        for e in _all_iseqs(n):
            naive = not (_naive_contains(e, "210") or _naive_contains(e, "100"))
            assert invseq.avoids_both(e) == naive, e
            c += naive
        counts.append(c)
    assert counts == SB[:8]


def test_decompose_hand_example():
    top, bottom, e_top, e_bottom = invseq.decompose((0, 0, 1, 3, 1, 3, 2, 7, 3))
    assert e_bottom == (1, 2, 3)
    assert e_top == (0, 0, 1, 3, 3, 7)
    assert top == 7 and bottom == 3


def test_decompose_characterization():
    # avoidance is equivalent to the bottom subsequence being strictly rising
    for n in range(1, 7):
        for e in _all_iseqs(n):
            _, _, _, e_bottom = invseq.decompose(e)
            strict = all(x < y for x, y in zip(e_bottom, e_bottom[1:]))
            assert invseq.avoids_both(e) == strict, e


def test_valid_extensions_vs_filter():
    stack = [(0,)]
    while stack:
        e = stack.pop()
        n = len(e)
        want = [p for p in range(n + 1) if invseq.avoids_both(e + (p,))]
        got = list(invseq.valid_extensions(e))
        assert got == want, e
        if n < 5:
            stack.extend(e + (p,) for p in want)


def test_bruteforce_counts():
    assert invseq.count_avoiders_bruteforce(8) == SB[:8]


def test_q_table_vs_census():
    for n in range(1, 8):
        census = {}
        stack = [(0,)]
        while stack:
            e = stack.pop()
            if len(e) == n:
                top, bottom, _, _ = invseq.decompose(e)
                census[(top, bottom)] = census.get((top, bottom), 0) + 1
                continue
            stack.extend(e + (p,) for p in invseq.valid_extensions(e))
        assert invseq.q_table(n) == census, n


def test_ballot_column_sums_to_catalan():
    # the empty-bottom column alone carries the Catalan count
    for n in range(1, 12):
        q = invseq.q_table(n)
        assert sum(cnt for (a, b), cnt in q.items() if b == -1) == catalan(n)


def test_total_via_formula():
    assert [invseq.total_via_formula(n) for n in range(1, 14)] == SB


def test_growth_labels_reproduce_rule_distribution():
    semi = rules.RULES["semi"]
    for n in range(1, 8):
        census = {}
        stack = [(0,)]
        while stack:
            e = stack.pop()
            if len(e) == n:
                lab = invseq.growth_label(e)
                census[lab] = census.get(lab, 0) + 1
                continue
            stack.extend(e + (p,) for p in invseq.valid_extensions(e))
        assert census == rules.distribution(semi, n), n
