"""Two-label succession rules: productions, level iteration, counts.

A succession rule is an axiom label plus a production map sending each
label to the ordered list of its children's labels; the number of nodes
at level n of the induced generating tree is the nth term of the
enumerated sequence.  All labels here are pairs (h, k) of positive
integers; the one-label Catalan rule rides along as (k, 1) so a single
engine serves every rule.

Built-in rules (production lists in display order):

    cat     (h,1) -> (1,1), ..., (h,1), (h+1,1)
    semi    (h,k) -> (1,k+1), ..., (h,k+1); (h+k,1), ..., (h+1,k)
    bax     (h,k) -> (1,k+1), ..., (h,k+1); (h+1,1), ..., (h+1,k)
    tbax    (h,k) -> (1,k), ..., (h-1,k), (h,k+1); (h+k,1), ..., (h+1,k)
    strong  (h,k) -> (1,k), ..., (h-1,k), (h,k+1); (h+1,1), ..., (h+1,k)

Rules can also be loaded from a small text format mirroring those
displays, one production row per line::

    axiom (1,1)
    row (i, k) for i = 1..h-1
    row (h, k+1)
    row (h+k+1-i, i) for i = 1..k

Row expressions admit integers, the label variables h and k, the row's
loop variable, and +/-.  Rows concatenate in order; a row without a
``for`` clause contributes a single label.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable

Label = tuple[int, int]
LabelDistribution = dict[Label, int]


@dataclass(frozen=True)
class SuccessionRule:
    name: str
    axiom: Label
    produce: Callable[[Label], list[Label]]


def _produce_cat(label: Label) -> list[Label]:
    h, k = label
    assert k == 1, "catalan labels are embedded as (h, 1)"
    return [(i, 1) for i in range(1, h + 2)]


def _produce_semi(label: Label) -> list[Label]:
    h, k = label
    return [(i, k + 1) for i in range(1, h + 1)] \
        + [(h + k + 1 - i, i) for i in range(1, k + 1)]


def _produce_bax(label: Label) -> list[Label]:
    h, k = label
    return [(i, k + 1) for i in range(1, h + 1)] \
        + [(h + 1, i) for i in range(1, k + 1)]


def _produce_tbax(label: Label) -> list[Label]:
    h, k = label
    return [(i, k) for i in range(1, h)] + [(h, k + 1)] \
        + [(h + k + 1 - i, i) for i in range(1, k + 1)]


def _produce_strong(label: Label) -> list[Label]:
    h, k = label
    return [(i, k) for i in range(1, h)] + [(h, k + 1)] \
        + [(h + 1, i) for i in range(1, k + 1)]


RULES: dict[str, SuccessionRule] = {
    "cat": SuccessionRule("cat", (1, 1), _produce_cat),
    "semi": SuccessionRule("semi", (1, 1), _produce_semi),
    "bax": SuccessionRule("bax", (1, 1), _produce_bax),
    "tbax": SuccessionRule("tbax", (1, 1), _produce_tbax),
    "strong": SuccessionRule("strong", (1, 1), _produce_strong),
}


def productions(rule: SuccessionRule, label: Label) -> list[Label]:
    """Ordered children labels of one node.

    >>> productions(RULES["semi"], (2, 2))
    [(1, 3), (2, 3), (4, 1), (3, 2)]
    >>> productions(RULES["cat"], (1, 1))
    [(1, 1), (2, 1)]
    >>> productions(RULES["strong"], (1, 1))
    [(1, 2), (2, 1)]
    """
    out = rule.produce(label)
    assert all(h >= 1 and k >= 1 for h, k in out), (rule.name, label, out)
    return out


def next_level(rule: SuccessionRule, dist: LabelDistribution) -> LabelDistribution:
    """Multiset sum of productions weighted by counts."""
    out: LabelDistribution = {}
    get = out.get
    for label, cnt in dist.items():
        for child in rule.produce(label):
            out[child] = get(child, 0) + cnt
    return out


def distribution(rule: SuccessionRule, n: int) -> LabelDistribution:
    """Exact label multiset at level n (level 1 is the axiom)."""
    assert n >= 1
    dist: LabelDistribution = {rule.axiom: 1}
    for _ in range(n - 1):
        dist = next_level(rule, dist)
    return dist


def count_sequence(rule: SuccessionRule, n_max: int) -> list[int]:
    """Node counts at levels 1..n_max.

    >>> count_sequence(RULES["cat"], 5)
    [1, 2, 5, 14, 42]
    >>> count_sequence(RULES["semi"], 7)
    [1, 2, 6, 23, 104, 530, 2958]
    >>> count_sequence(RULES["bax"], 6) == count_sequence(RULES["tbax"], 6)
    True
    """
    assert n_max >= 1
    dist: LabelDistribution = {rule.axiom: 1}
    counts = [1]
    for _ in range(n_max - 1):
        dist = next_level(rule, dist)
        counts.append(sum(dist.values()))
    return counts


# ---------------------------------------------------------------------------
# rule file mini-format

_ROW_RE = re.compile(
    r"^row\s*\(([^,()]+),([^,()]+)\)\s*"
    r"(?:for\s+([a-z])\s*=\s*([^.]+)\.\.(.+))?$"
)
_AXIOM_RE = re.compile(r"^axiom\s*\((\d+)\s*,\s*(\d+)\)$")
_TERM_RE = re.compile(r"\s*([+-]?)\s*(\d+|[a-z])")


def _compile_expr(text: str, allowed: frozenset[str]) -> Callable[[dict[str, int]], int]:
    """Compile a sum of signed terms over integers and allowed variables."""
    terms: list[tuple[int, str | int]] = []
    pos = 0
    first = True
    while pos < len(text.rstrip()):
        m = _TERM_RE.match(text, pos)
        if not m:
            raise ValueError(f"bad expression {text!r}")
        sign_s, atom = m.groups()
        if not first and not sign_s:
            raise ValueError(f"missing operator in {text!r}")
        sign = -1 if sign_s == "-" else 1
        if atom.isdigit():
            terms.append((sign, int(atom)))
        elif atom in allowed:
            terms.append((sign, atom))
        else:
            raise ValueError(f"unknown variable {atom!r} in {text!r}")
        pos = m.end()
        first = False
    if not terms:
        raise ValueError(f"empty expression {text!r}")

    def ev(env: dict[str, int]) -> int:
        total = 0
        for sign, atom in terms:
            total += sign * (atom if isinstance(atom, int) else env[atom])
        return total

    return ev


def parse_rule(text: str, name: str = "custom") -> SuccessionRule:
    """Parse the rule file format described in the module docstring.

    >>> r = parse_rule('''
    ... axiom (1,1)
    ... row (i, k+1) for i = 1..h
    ... row (h+k+1-i, i) for i = 1..k
    ... ''')
    >>> [productions(r, (2, 2)) == productions(RULES["semi"], (2, 2))]
    [True]
    """
    axiom: Label | None = None
    rows: list[tuple] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _AXIOM_RE.match(line)
        if m:
            if axiom is not None:
                raise ValueError("duplicate axiom line")
            axiom = (int(m.group(1)), int(m.group(2)))
            continue
        m = _ROW_RE.match(line)
        if not m:
            raise ValueError(f"cannot parse rule line {line!r}")
        e1, e2, var, lo, hi = m.groups()
        base = frozenset(("h", "k"))
        if var is None:
            rows.append((_compile_expr(e1, base), _compile_expr(e2, base), None, None, None))
        else:
            scope = base | {var}
            rows.append((
                _compile_expr(e1, scope), _compile_expr(e2, scope),
                var, _compile_expr(lo, base), _compile_expr(hi, base),
            ))
    if axiom is None:
        raise ValueError("missing axiom line")
    if not rows:
        raise ValueError("rule has no production rows")

    def produce(label: Label) -> list[Label]:
        env = {"h": label[0], "k": label[1]}
        out: list[Label] = []
        for ev1, ev2, var, evlo, evhi in rows:
            if var is None:
                out.append((ev1(env), ev2(env)))
            else:
                for value in range(evlo(env), evhi(env) + 1):
                    env[var] = value
                    out.append((ev1(env), ev2(env)))
                env.pop(var, None)
        return out

    return SuccessionRule(name, axiom, produce)


RULE_FILE_SOURCES: dict[str, str] = {
    "cat": "axiom (1,1)\nrow (i, 1) for i = 1..h+1\n",
    "semi": "axiom (1,1)\nrow (i, k+1) for i = 1..h\nrow (h+k+1-i, i) for i = 1..k\n",
    "bax": "axiom (1,1)\nrow (i, k+1) for i = 1..h\nrow (h+1, i) for i = 1..k\n",
    "tbax": ("axiom (1,1)\nrow (i, k) for i = 1..h-1\nrow (h, k+1)\n"
             "row (h+k+1-i, i) for i = 1..k\n"),
    "strong": ("axiom (1,1)\nrow (i, k) for i = 1..h-1\nrow (h, k+1)\n"
               "row (h+1, i) for i = 1..k\n"),
}
