"""Exact extraction of a braided wiring diagram from line coefficients.

Lines are z = a*x + b with a, b in Q(sqrt d).  A rational shear
x' = x + c*z is searched so that the projection to x' is generic; the wires
are then traced along the admissible path that visits the vertex abscissas in
decreasing real-part order, horizontally within epsilon of each vertex.  Every
crossing is located as the exact zero of an affine real-part difference, and
its sign read off the imaginary parts, so the sweep never approximates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .braid import BraidWord
from .scalar import ComplexQuad, RealQuad, parse_fraction
from .wiring import BraidedWiringDiagram, VertexEvent, validate


class ExtractionError(ValueError):
    """Genericity failure that survived every retry."""


class _ShrinkNeeded(Exception):
    """Sweep hit a degeneracy that a smaller vertex neighborhood avoids."""


class _DetourNeeded(Exception):
    """Simultaneous overlapping crossings; the segment must be subdivided."""

    def __init__(self, s_star: RealQuad):
        self.s_star = s_star


@dataclass(frozen=True)
class Arrangement:
    """Lines z = a*x + b over Q(sqrt d); d < 0 means the generator is i*sqrt|d|."""

    d: int
    lines: tuple[tuple[ComplexQuad, ComplexQuad], ...]

    def __post_init__(self) -> None:
        seen = set()
        for a, b in self.lines:
            key = (a.re, a.im, b.re, b.im)
            if key in seen:
                raise ExtractionError(f"duplicate line z = ({a})x + ({b})")
            seen.add(key)

    @property
    def n(self) -> int:
        return len(self.lines)

    @property
    def t(self) -> int:
        return abs(self.d)


@dataclass(frozen=True)
class VertexRecord:
    """An intersection point (abscissa, height) and its incident input lines."""

    x: ComplexQuad
    z: ComplexQuad
    incident: tuple[int, ...]


def vertices(arr: Arrangement) -> list[VertexRecord]:
    """All intersection points, coincident ones grouped; parallels contribute none."""
    points: dict[tuple, tuple[ComplexQuad, ComplexQuad, set[int]]] = {}
    for i, j in itertools.combinations(range(arr.n), 2):
        ai, bi = arr.lines[i]
        aj, bj = arr.lines[j]
        da = ai - aj
        if da.is_zero():
            continue
        x = (bj - bi) / da
        z = ai * x + bi
        key = (x.re, x.im, z.re, z.im)
        if key not in points:
            points[key] = (x, z, set())
        points[key][2].update((i + 1, j + 1))
    records = [
        VertexRecord(x, z, tuple(sorted(inc))) for x, z, inc in points.values()
    ]
    records.sort(key=lambda r: (r.x.re.p, r.x.re.q, r.x.im.p, r.x.im.q))
    return records


def incidence_sets(arr: Arrangement) -> list[tuple[int, ...]]:
    return [v.incident for v in vertices(arr)]


# --- shear search ---------------------------------------------------------------

def shear_candidates() -> Iterator[Fraction]:
    """0, 1, -1, 1/2, -1/2, 2, -2, 1/3, ... : rationals by increasing height.

    Height of the reduced fraction num/den is max(|num|, den); within one
    height, smaller absolute value first, positive before negative.
    """
    yield Fraction(0)
    for h in itertools.count(1):
        values = {Fraction(h, den) for den in range(1, h + 1)}
        values |= {Fraction(num, h) for num in range(1, h + 1)}
        values = {v for v in values if max(abs(v.numerator), v.denominator) == h}
        for v in sorted(values):
            yield v
            yield -v


def shear(arr: Arrangement, c: Fraction) -> Arrangement:
    """Coordinates x' = x + c*z; line z = ax+b becomes z = a/(1+ca) x' + b/(1+ca)."""
    one = ComplexQuad.one(arr.t)
    lines = []
    for a, b in arr.lines:
        denom = one + a.scale(c)
        if denom.is_zero():
            raise ExtractionError(f"shear c={c} makes line z=({a})x+({b}) vertical")
        lines.append((a / denom, b / denom))
    return Arrangement(arr.d, tuple(lines))


def _line_at(line: tuple[ComplexQuad, ComplexQuad], x: ComplexQuad) -> ComplexQuad:
    a, b = line
    return a * x + b


def _epsilon_for(records: Sequence[VertexRecord], t: int) -> RealQuad:
    if len(records) < 2:
        return RealQuad.of(1, 0, t)
    gaps = []
    for prev, cur in zip(records, records[1:]):
        gaps.append(prev.x.re - cur.x.re)
    eps = min(gaps)
    return RealQuad(eps.p / 2, eps.q / 2, eps.t)


def _fiber_re_distinct(arr: Arrangement, x: ComplexQuad) -> bool:
    res = [_line_at(line, x).re for line in arr.lines]
    for u, v in itertools.combinations(res, 2):
        if (u - v).is_zero():
            return False
    return True


def projection_ok(arr: Arrangement, c: Fraction) -> bool:
    """The genericity predicate for a shear candidate.

    Requires: no vertical line; vertex abscissas pairwise distinct with
    distinct real parts; at every vertex abscissa all fiber real parts
    distinct except within the incident pencil; and fully distinct fiber real
    parts at the basepoint and at both horizontal neighbors of each vertex.
    """
    try:
        sheared = shear(arr, c)
    except ExtractionError:
        return False
    recs = vertices(sheared)
    t = arr.t
    # distinct abscissas and distinct real parts
    for u, v in itertools.combinations(recs, 2):
        if (u.x.re - v.x.re).is_zero():
            return False
    # incident-vs-rest separation at each vertex
    for rec in recs:
        values = [(_line_at(sheared.lines[i - 1], rec.x).re, i) for i in range(1, sheared.n + 1)]
        for (re1, i1), (re2, i2) in itertools.combinations(values, 2):
            if i1 in rec.incident and i2 in rec.incident:
                continue
            if (re1 - re2).is_zero():
                return False
    # fully distinct fibers at y_k +- eps and the basepoint
    ordered = sorted(recs, key=lambda r: r.x.re, reverse=True)
    eps = _epsilon_for(ordered, t)
    probes = []
    if ordered:
        first = ordered[0]
        probes.append(ComplexQuad(first.x.re + eps, first.x.im))
        for rec in ordered:
            probes.append(ComplexQuad(rec.x.re + eps, rec.x.im))
            probes.append(ComplexQuad(rec.x.re - eps, rec.x.im))
    else:
        probes.append(ComplexQuad.zero(t))
    return all(_fiber_re_distinct(sheared, x) for x in probes)


def choose_projection(arr: Arrangement, limit: int = 200) -> Fraction:
    """Smallest-height rational shear passing the genericity predicate."""
    for c, _ in zip(shear_candidates(), range(limit)):
        if projection_ok(arr, c):
            return c
    raise ExtractionError(f"no generic shear found among the first {limit} candidates")


# --- the sweep -------------------------------------------------------------------

def _point_on(u: ComplexQuad, w: ComplexQuad, s: RealQuad) -> ComplexQuad:
    """u + s*(w-u) for a real parameter s."""
    diff = w - u
    return ComplexQuad(u.re + diff.re * s, u.im + diff.im * s)


def _segment_crossings(
    sheared: Arrangement,
    order: list[int],
    u: ComplexQuad,
    w: ComplexQuad,
    expect_vertex: VertexRecord | None,
    flip: bool,
) -> tuple[list[int], VertexEvent | None]:
    """Sweep the straight segment u -> w, returning crossing letters in
    traversal order and the vertex event if one was expected at the midpoint.

    `order` is the bottom-to-top list of input line indices and is updated in
    place.  Wires must never share a real part at either endpoint.
    """
    t = sheared.t
    half = RealQuad.of(Fraction(1, 2), 0, t)
    events: dict[tuple, list[tuple[int, int]]] = {}
    s_values: dict[tuple, RealQuad] = {}
    for li, lj in itertools.combinations(range(1, sheared.n + 1), 2):
        fi, fj = sheared.lines[li - 1], sheared.lines[lj - 1]
        a0 = (_line_at(fi, u) - _line_at(fj, u)).re
        a1 = (_line_at(fi, w) - _line_at(fj, w)).re
        s0, s1 = a0.sign(), a1.sign()
        if s0 == 0 or s1 == 0:
            # a real-part coincidence exactly at a segment endpoint
            raise _ShrinkNeeded()
        if s0 == s1:
            continue
        s_star = a0 / (a0 - a1)
        key = (s_star.p, s_star.q)
        events.setdefault(key, []).append((li, lj))
        s_values[key] = s_star

    vertex_event: VertexEvent | None = None
    letters: list[int] = []
    for key in sorted(events, key=lambda k: s_values[k]):
        s_star = s_values[key]
        pairs = events[key]
        at_point = _point_on(u, w, s_star)
        incident_here = set(itertools.chain.from_iterable(pairs))
        if expect_vertex is not None and incident_here == set(expect_vertex.incident):
            if (s_star - half).sign() != 0:
                raise _ShrinkNeeded()
            heights = sorted(order.index(i) + 1 for i in incident_here)
            if heights != list(range(heights[0], heights[0] + len(heights))):
                raise _ShrinkNeeded()
            lo = heights[0]
            vertex_event = VertexEvent(lo, len(heights))
            order[lo - 1 : lo - 1 + len(heights)] = order[lo - 1 : lo - 1 + len(heights)][::-1]
            continue
        if expect_vertex is not None:
            # any other crossing inside the vertex neighborhood: retreat
            raise _ShrinkNeeded()
        wires_involved = list(itertools.chain.from_iterable(pairs))
        if len(set(wires_involved)) != 2 * len(pairs):
            raise _DetourNeeded(s_star)
        emitted: list[tuple[int, int, int]] = []
        for li, lj in pairs:
            pi, pj = order.index(li) + 1, order.index(lj) + 1
            if pi > pj:
                pi, pj = pj, pi
                li, lj = lj, li
            if pj != pi + 1:
                raise _DetourNeeded(s_star)
            im_low = _line_at(sheared.lines[order[pi - 1] - 1], at_point).im
            im_high = _line_at(sheared.lines[order[pj - 1] - 1], at_point).im
            diff_sign = (im_low - im_high).sign()
            if diff_sign == 0:
                raise ExtractionError(
                    f"wires {li} and {lj} coincide off-vertex; lines are not distinct"
                )
            sign = 1 if diff_sign > 0 else -1
            if flip:
                sign = -sign
            emitted.append((pi, sign, li))
        for pi, sign, _ in sorted(emitted):
            letters.append(pi * sign)
            order[pi - 1], order[pi] = order[pi], order[pi - 1]
    if expect_vertex is not None and vertex_event is None:
        raise _ShrinkNeeded()
    return letters, vertex_event


def _sweep_open_segment(
    sheared: Arrangement,
    order: list[int],
    u: ComplexQuad,
    w: ComplexQuad,
    flip: bool,
    eps: RealQuad,
    depth: int = 0,
) -> list[int]:
    """Sweep a vertex-free segment, subdividing around overlapping crossings."""
    if depth > 12:
        raise ExtractionError("segment subdivision did not terminate")
    saved = list(order)
    try:
        letters, _ = _segment_crossings(sheared, order, u, w, None, flip)
        return letters
    except _DetourNeeded as bad:
        order[:] = saved
        offset = RealQuad(eps.p / (2 ** (depth + 1)), eps.q / (2 ** (depth + 1)), eps.t)
        mid = _point_on(u, w, bad.s_star)
        for delta in (offset, -offset):
            waypoint = ComplexQuad(mid.re, mid.im + delta)
            try:
                first = _sweep_open_segment(sheared, order, u, waypoint, flip, eps, depth + 1)
                second = _sweep_open_segment(sheared, order, waypoint, w, flip, eps, depth + 1)
                return first + second
            except _ShrinkNeeded:
                order[:] = saved
                continue
        raise _ShrinkNeeded()


def extract_diagram(
    arr: Arrangement,
    c: Fraction,
    flip_crossings: bool = False,
) -> tuple[BraidedWiringDiagram, dict[int, int]]:
    """Braided wiring diagram of the sheared arrangement, plus the wire-label map.

    Wires are numbered 1..n bottom to top (increasing real part) at the
    basepoint; the returned map sends each wire label to its input line index.
    The vertex neighborhood epsilon starts at half the minimum real-part gap
    and halves on any sweep degeneracy.
    """
    sheared = shear(arr, c)
    recs = sorted(vertices(sheared), key=lambda r: r.x.re, reverse=True)
    for u, v in itertools.combinations(recs, 2):
        if (u.x.re - v.x.re).is_zero():
            raise ExtractionError(
                f"vertex abscissas share a real part (lines {u.incident} and {v.incident})"
            )
    t = arr.t
    eps = _epsilon_for(recs, t)
    last_error: Exception | None = None
    for _ in range(40):
        try:
            return _extract_with_eps(sheared, recs, eps, flip_crossings)
        except _ShrinkNeeded as exc:
            last_error = exc
            eps = RealQuad(eps.p / 2, eps.q / 2, eps.t)
    raise ExtractionError(
        "sweep kept hitting degeneracies; the projection is not generic "
        f"(last: {last_error})"
    )


def _extract_with_eps(
    sheared: Arrangement,
    recs: list[VertexRecord],
    eps: RealQuad,
    flip: bool,
) -> tuple[BraidedWiringDiagram, dict[int, int]]:
    n = sheared.n
    t = sheared.t
    if recs:
        base = ComplexQuad(recs[0].x.re + eps, recs[0].x.im)
    else:
        base = ComplexQuad.zero(t)
    fiber = sorted(
        ((_line_at(sheared.lines[i - 1], base).re, i) for i in range(1, n + 1)),
    )
    for (re1, _), (re2, _) in zip(fiber, fiber[1:]):
        if (re1 - re2).is_zero():
            raise _ShrinkNeeded()
    order = [i for _, i in fiber]
    label_map = {h: line for h, line in enumerate(order, start=1)}
    line_to_wire = {line: h for h, line in label_map.items()}

    events: list[VertexEvent] = []
    braids: list[list[int]] = []
    pos = base
    for k, rec in enumerate(recs):
        approach = ComplexQuad(rec.x.re + eps, rec.x.im)
        if k > 0:
            letters = _sweep_open_segment(sheared, order, pos, approach, flip, eps)
            braids[-1].extend(letters)
        depart = ComplexQuad(rec.x.re - eps, rec.x.im)
        _, vertex = _segment_crossings(sheared, order, approach, depart, rec, flip)
        assert vertex is not None
        events.append(vertex)
        braids.append([])
        pos = depart

    diagram = BraidedWiringDiagram(
        n,
        BraidWord.identity(n),
        tuple(events),
        tuple(BraidWord(n, tuple(reversed(letters))) for letters in braids),
    )
    validate(diagram)
    _check_incidence(sheared, recs, diagram, line_to_wire)
    return diagram, label_map


def _check_incidence(
    sheared: Arrangement,
    recs: list[VertexRecord],
    diagram: BraidedWiringDiagram,
    line_to_wire: dict[int, int],
) -> None:
    from .wiring import vertex_sets

    got = vertex_sets(diagram)
    want = [tuple(sorted(line_to_wire[i] for i in rec.incident)) for rec in recs]
    if got != want:
        raise ExtractionError(
            f"vertex wire sets {got} disagree with incidence data {want}"
        )


# --- file format ------------------------------------------------------------------
#
#   field <d>
#   <a0> <a1> <b0> <b1>      (one line per hyperplane; a = a0 + a1 w, b likewise)


def serialize(arr: Arrangement) -> str:
    lines = [f"field {arr.d}"]
    for a, b in arr.lines:
        a0, a1 = (a.re.p, a.re.q) if arr.d >= 0 else (a.re.p, a.im.q)
        b0, b1 = (b.re.p, b.re.q) if arr.d >= 0 else (b.re.p, b.im.q)
        lines.append(f"{a0} {a1} {b0} {b1}")
    return "\n".join(lines) + "\n"


def parse(text: str) -> Arrangement:
    d: int | None = None
    rows: list[tuple[ComplexQuad, ComplexQuad]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("field"):
            try:
                d = int(line.split()[1])
            except (IndexError, ValueError):
                raise ExtractionError(f"line {lineno}: bad field header {line!r}") from None
            if d == 0:
                raise ExtractionError(f"line {lineno}: field discriminant must be nonzero")
            continue
        if d is None:
            raise ExtractionError(f"line {lineno}: coefficients before the field header")
        parts = line.split()
        if len(parts) != 4:
            raise ExtractionError(
                f"line {lineno}: expected 'a0 a1 b0 b1', got {line!r}"
            )
        a0, a1, b0, b1 = (parse_fraction(p) for p in parts)
        rows.append((_coeff(a0, a1, d), _coeff(b0, b1, d)))
    if d is None:
        raise ExtractionError("missing field header")
    return Arrangement(d, tuple(rows))


def _coeff(c0: Fraction, c1: Fraction, d: int) -> ComplexQuad:
    t = abs(d)
    if d >= 0:
        return ComplexQuad(RealQuad(c0, c1, t), RealQuad.zero(t))
    return ComplexQuad(RealQuad(c0, Fraction(0), t), RealQuad(Fraction(0), c1, t))
