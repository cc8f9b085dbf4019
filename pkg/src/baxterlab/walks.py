"""Quarter-plane walk counting and the walk route to strong-Baxter numbers.

Walks start at the origin, take steps from a small-step multiset, and
must keep both coordinates nonnegative.  The preset FIVE is the step set
{(-1,0), (0,-1), (1,-1), (1,0), (0,1)}; SEVEN adds two distinguished
copies of the stay-put step (0,0).  Excursions (walks returning to the
origin) of SEVEN of length n-1 count strong-Baxter permutations of size
n, and the two counting series are linked by the binomial transform that
a pair of trivial steps induces.  Growth constants are estimated from
excursion counts; for FIVE the target is the real root of
t^3 + t^2 - 18t - 43, for SEVEN that root plus 2.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .formulas import binom
from .series import LabelSeries

Step = tuple[int, int]


class StepMultiset:
    """Planar steps with multiplicities, every coordinate in {-1, 0, 1}."""

    __slots__ = ("mult", "name")

    def __init__(self, steps: Iterable[Step | tuple[int, int, int]], name: str = ""):
        self.mult: dict[Step, int] = {}
        for s in steps:
            if len(s) == 3:
                (dx, dy, m) = s
            else:
                (dx, dy), m = s, 1
            assert abs(dx) <= 1 and abs(dy) <= 1 and m >= 1, s
            self.mult[(dx, dy)] = self.mult.get((dx, dy), 0) + m
        self.name = name

    def items(self) -> list[tuple[Step, int]]:
        return sorted(self.mult.items())

    def total(self) -> int:
        return sum(self.mult.values())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, StepMultiset) and self.mult == other.mult

    def __repr__(self) -> str:
        body = ";".join(
            f"{m}x({dx},{dy})" if m > 1 else f"({dx},{dy})"
            for (dx, dy), m in self.items()
        )
        return f"StepMultiset({body!r})"


FIVE = StepMultiset([(-1, 0), (0, -1), (1, -1), (1, 0), (0, 1)], name="five")
SEVEN = StepMultiset(
    [(-1, 0), (0, -1), (1, -1), (1, 0), (0, 1), (0, 0, 2)], name="seven"
)

_STEP_RE = re.compile(r"^(?:(\d+)\s*[xX])?\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)$")


def parse_steps(text: str) -> StepMultiset:
    """Parse a step multiset: items split by ';', each '(dx,dy)' with an
    optional 'Nx' multiplicity prefix; 'five' and 'seven' name presets.

    >>> parse_steps("(1,0); 2x(0,0)").items()
    [((0, 0), 2), ((1, 0), 1)]
    >>> parse_steps("seven") == SEVEN
    True
    """
    lowered = text.strip().lower()
    if lowered == "five":
        return FIVE
    if lowered == "seven":
        return SEVEN
    steps: list[tuple[int, int, int]] = []
    for item in text.split(";"):
        item = item.strip()
        if not item:
            continue
        m = _STEP_RE.match(item)
        if m is None:
            raise ValueError(f"bad step item: {item!r}")
        mult = int(m.group(1)) if m.group(1) else 1
        dx, dy = int(m.group(2)), int(m.group(3))
        if mult < 1:
            raise ValueError(f"multiplicity must be positive: {item!r}")
        if abs(dx) > 1 or abs(dy) > 1:
            raise ValueError(f"only small steps are supported: {item!r}")
        steps.append((dx, dy, mult))
    if not steps:
        raise ValueError("empty step set")
    return StepMultiset(steps, name=lowered)


@dataclass(frozen=True)
class WalkTable:
    """Endpoint counts of confined walks of one length."""

    length: int
    counts: dict[Step, int]

    def total(self) -> int:
        return sum(self.counts.values())

    def at(self, x: int, y: int) -> int:
        return self.counts.get((x, y), 0)


def count_walks(steps: StepMultiset, n_max: int) -> list[WalkTable]:
    """Endpoint tables for lengths 0..n_max, walks confined to x,y >= 0.

    >>> [t.at(0, 0) for t in count_walks(FIVE, 3)]
    [1, 0, 2, 1]
    >>> sorted(count_walks(FIVE, 1)[1].counts.items())
    [((0, 1), 1), ((1, 0), 1)]
    """
    assert n_max >= 0
    items = steps.items()
    tables = [WalkTable(0, {(0, 0): 1})]
    cur: dict[Step, int] = {(0, 0): 1}
    for n in range(1, n_max + 1):
        new: dict[Step, int] = {}
        for (x, y), c in cur.items():
            for (dx, dy), m in items:
                nx, ny = x + dx, y + dy
                if nx >= 0 and ny >= 0:
                    new[(nx, ny)] = new.get((nx, ny), 0) + c * m
        cur = new
        tables.append(WalkTable(n, dict(new)))
    return tables


def _shift_row(src: Sequence[int], dx: int, width: int) -> list[int]:
    """Row src re-indexed by x -> x+dx, padded or trimmed to width cells."""
    if dx == 1:
        out = [0] + list(src)
    elif dx == -1:
        out = list(src[1:])
    else:
        out = list(src)
    if len(out) < width:
        out.extend([0] * (width - len(out)))
    return out[:width]


def excursions(steps: StepMultiset, n_max: int) -> list[int]:
    """Origin-return counts e_0..e_n_max, by a clipped dynamic program.

    A walk that returns to the origin at time <= n_max can never be
    farther than min(t, n_max - t) from an axis at time t (each step
    moves a coordinate by at most one), so the live grid is trimmed to
    that square; origin counts at every intermediate time stay exact.

    >>> excursions(FIVE, 3)
    [1, 0, 2, 1]
    >>> excursions(SEVEN, 2)
    [1, 2, 6]
    """
    assert n_max >= 0
    items = steps.items()
    out = [1]
    grid: list[list[int]] = [[1]]
    for t in range(n_max):
        c1 = min(t + 1, n_max - t - 1)
        width = c1 + 1
        c0 = len(grid) - 1
        new: list[list[int]] = []
        for ny in range(width):
            parts: list[Sequence[int]] = []
            for (dx, dy), m in items:
                sy = ny - dy
                if 0 <= sy <= c0:
                    src = grid[sy]
                    if m != 1:
                        src = [m * v for v in src]
                    parts.append(_shift_row(src, dx, width))
            if not parts:
                new.append([0] * width)
            elif len(parts) == 1:
                new.append(list(parts[0]))
            else:
                new.append([sum(vals) for vals in zip(*parts)])
        grid = new
        out.append(grid[0][0])
    return out


Residual = tuple[int, tuple[int, int, int] | None]


def _scan_tables(diffs: Iterable[tuple[int, Mapping[Step, int]]]) -> Residual:
    max_abs = 0
    offending: tuple[int, int, int] | None = None
    for n, d in diffs:
        for (i, j), v in sorted(d.items()):
            if v:
                if offending is None:
                    offending = (n, i, j)
                if abs(v) > max_abs:
                    max_abs = abs(v)
    return max_abs, offending


def _add(d: dict[Step, int], key: Step, v: int) -> None:
    w = d.get(key, 0) + v
    if w:
        d[key] = w
    elif key in d:
        del d[key]


def residual_walk_equation(
    order: int,
    perturb: Mapping[tuple[int, int, int], int] | None = None,
) -> Residual:
    """Coefficientwise defect of the FIVE walk equation, ab-cleared form:

        ab W = ab + t(b + a + a^2 + a^2 b + a b^2) W
                  - t b W(t;0,b) - t a(1+a) W(t;a,0),

    where W(t;0,b) restricts endpoints to x = 0 and W(t;a,0) to y = 0.
    Returns (max absolute residual, first offending (n, adeg, bdeg) or
    None).  perturb shifts table entries by {(n, x, y): delta} first.
    """
    assert order >= 1
    tables = count_walks(FIVE, order)
    counts = [dict(t.counts) for t in tables]
    if perturb:
        for (n, x, y), delta in perturb.items():
            _add(counts[n], (x, y), delta)
    diffs = []
    for n in range(1, order + 1):
        d: dict[Step, int] = {}
        for (x, y), c in counts[n].items():
            _add(d, (x + 1, y + 1), c)
        for (x, y), c in counts[n - 1].items():
            # t(b + a + a^2 + a^2 b + a b^2) W
            for sx, sy in ((0, 1), (1, 0), (2, 0), (2, 1), (1, 2)):
                _add(d, (x + sx, y + sy), -c)
            if x == 0:
                _add(d, (0, y + 1), c)
            if y == 0:
                _add(d, (x + 1, 0), c)
                _add(d, (x + 2, 0), c)
        if d:
            diffs.append((n, d))
    return _scan_tables(diffs)


def w2_consistency(order: int, origin_only: bool = False) -> dict:
    """Check that the SEVEN table of length m is the binomial transform
    sum over n of C(m,n) 2^(m-n) times the FIVE table of length n (the
    two trivial steps choose their positions freely).  origin_only
    restricts the comparison to excursion counts.
    """
    assert order >= 1
    first_fail = None
    if origin_only:
        e5 = excursions(FIVE, order)
        e7 = excursions(SEVEN, order)
        for m in range(order + 1):
            want = sum(binom(m, n) * 2 ** (m - n) * e5[n] for n in range(m + 1))
            if want != e7[m]:
                first_fail = m
                break
    else:
        t5 = count_walks(FIVE, order)
        t7 = count_walks(SEVEN, order)
        for m in range(order + 1):
            want: dict[Step, int] = {}
            for n in range(m + 1):
                f = binom(m, n) * 2 ** (m - n)
                for key, c in t5[n].counts.items():
                    _add(want, key, c * f)
            if want != t7[m].counts:
                first_fail = m
                break
    return {
        "order": order,
        "origin_only": origin_only,
        "ok": first_fail is None,
        "first_fail": first_fail,
    }


def strong_from_walks(n_max: int) -> list[int]:
    """Strong-Baxter counts for sizes 0..n_max via SEVEN excursions.

    The size-n count is the number of SEVEN excursions of length n-1;
    index 0 holds the single empty permutation.

    >>> strong_from_walks(3)
    [1, 1, 2, 6]
    """
    assert n_max >= 1
    e = excursions(SEVEN, n_max - 1)
    return [1] + e


def strong_refinement_residual(n_max: int = 10) -> Residual:
    """Defect of the refined walk correspondence: for 1 <= n <= n_max,
    the strong label polynomial evaluated at (y,z) = (1+a, 1+b) must
    equal (1+a)(1+b) times the SEVEN endpoint table of length n-1.
    """
    assert n_max >= 1
    labels = LabelSeries("strong", n_max)
    tables = count_walks(SEVEN, n_max - 1)
    diffs = []
    for n in range(1, n_max + 1):
        d: dict[Step, int] = {}
        for (h, k), c in labels.levels[n].items():
            for i in range(h + 1):
                ci = c * binom(h, i)
                for j in range(k + 1):
                    _add(d, (i, j), ci * binom(k, j))
        for (x, y), c in tables[n - 1].counts.items():
            for sx in (0, 1):
                for sy in (0, 1):
                    _add(d, (x + sx, y + sy), -c)
        if d:
            diffs.append((n, d))
    return _scan_tables(diffs)


def minpoly_five(t: float) -> float:
    """The growth-constant polynomial t^3 + t^2 - 18t - 43 for FIVE."""
    return t ** 3 + t ** 2 - 18 * t - 43


RHO_FIVE_QUOTED = 4.729031538


def _rho_five() -> float:
    t = 4.729
    for _ in range(60):
        t = t - minpoly_five(t) / (3 * t * t + 2 * t - 18)
    return t


def growth_estimate(steps: StepMultiset, n_max: int) -> dict:
    """Estimate the excursion growth constant rho from e_n ~ K rho^n n^alpha.

    alpha is fit from second differences of log e_n (which cancel K and
    the rho^n factor), ratios e_n/e_(n-1) are corrected by the fitted
    (n/(n-1))^alpha, and one Richardson step removes the residual 1/n
    drift.  For FIVE the target is the real root of t^3+t^2-18t-43; for
    SEVEN the target is that root plus 2; other step sets report no
    target.  residual_of_minpoly is the polynomial evaluated at the
    10-digit quoted approximation of the FIVE root.
    """
    assert n_max >= 50
    e = excursions(steps, n_max)
    logs = [math.log(v) if v else None for v in e]
    window = range(n_max - min(40, n_max // 2), n_max - 1)
    fits = []
    for n in window:
        if logs[n - 1] is None or logs[n] is None or logs[n + 1] is None:
            continue
        d2e = logs[n + 1] - 2 * logs[n] + logs[n - 1]
        d2n = math.log(n + 1) - 2 * math.log(n) + math.log(n - 1)
        fits.append(d2e / d2n)
    if not fits or logs[n_max] is None or logs[n_max - 2] is None:
        raise ValueError("excursion counts vanish on the fitting window")
    alpha = sum(fits) / len(fits)

    def corrected_ratio(n: int) -> float:
        return math.exp(logs[n] - logs[n - 1] - alpha * math.log(n / (n - 1)))

    r_prev = corrected_ratio(n_max - 1)
    r_last = corrected_ratio(n_max)
    rho_hat = n_max * r_last - (n_max - 1) * r_prev

    root = _rho_five()
    if steps == FIVE:
        target = root
    elif steps == SEVEN:
        target = root + 2
    else:
        target = None
    return {
        "steps": steps.name or repr(steps),
        "n_max": n_max,
        "alpha_hat": alpha,
        "rho_hat": rho_hat,
        "target": target,
        "rel_err": abs(rho_hat - target) / target if target else None,
        "residual_of_minpoly": abs(minpoly_five(RHO_FIVE_QUOTED)),
    }
