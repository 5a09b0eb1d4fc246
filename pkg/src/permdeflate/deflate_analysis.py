"""Breakability machinery and the deflatability classifier.

Whether a principal class Av(pi) is deflatable — its simple members all fit
inside a proper subclass — is attacked from two sides here:

* constructively: every member embeds into an indecomposable member
  (``embed_indecomposable``), and an indecomposable non-simple member can
  often be pushed one point closer to a simple one by cutting its longest
  maximal interval (``breaking_extensions``, ``extend_to_simple``);
* by classification: ``classify_principal`` evaluates, over all eight
  symmetries, the hypotheses of the known non-deflatability results for
  decomposable bases plus the 2413 special case, and recognises the bundled
  deflatability witnesses.

Bounded empirical checks (``empirical_deflatability``) report which short
members fail to extend to a simple member within a length budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

from .perm_core import (
    Permutation,
    Slot,
    Symmetry,
    SYMMETRY_ORDER,
    _SYMMETRY_FUNCS,
    _SYMMETRY_INVERSE,
    _contains_any,
    _insert_raw,
    _pattern_of,
)
from .decomposition import (
    IntervalSpan,
    _components,
    _is_decomposable,
    _is_simple,
    _is_sum_decomposable,
    maximal_intervals,
    sd_measure,
)
from .class_engine import PermClass, _avoids_raw, _class_levels, _insertion_creates, avoids

#: Bases with no general embedding of members into indecomposable members
#: (their classes contain permutations with only decomposable extensions).
EMBED_EXCLUDED: frozenset[tuple[int, ...]] = frozenset(
    {(1,), (1, 2), (2, 1), (1, 3, 2), (2, 1, 3), (2, 3, 1), (3, 1, 2)}
)

STATUS_NON_DEFLATABLE = "non_deflatable"
STATUS_DEFLATABLE = "deflatable"
STATUS_UNKNOWN = "unknown"

#: Short display labels for classifier rules.
RULE_LABELS = {
    "degenerate": "single-point-basis",
    "base-12": "monotone",
    "base-231": "short-base",
    "T3.1": "three-sum",
    "T3.2": "two-sum",
    "T3.3": "ascent-missing-bond",
    "T3.4": "descent-no-increasing-bond",
    "T3.5": "1n...2-no-increasing-bond",
    "T3.6": "descent-no-decreasing-bond",
    "T3.7": "1n...2-no-decreasing-bond",
    "T3.8": "1z...2",
    "P5.1": "2413",
    "witness-table": "known-witness",
    "unknown": "undecided",
}


@dataclass(frozen=True)
class EmbeddingTrace:
    """Stages of the embedding of a member into an indecomposable member.

    Corner-point construction: (w, w-with-anchor, doubled, linked); adding
    outer points: (w, extended).  An already indecomposable input is the
    single stage (w,) and ``case_used`` is None.
    """

    stages: tuple[Permutation, ...]
    case_used: Optional[str]

    @property
    def result(self) -> Permutation:
        return self.stages[-1]


@dataclass(frozen=True)
class BreakReport:
    """One admissible break of the longest maximal interval: the cut slot,
    and the resulting extension (still in the class, indecomposable, with a
    strictly smaller interval measure)."""

    interval: IntervalSpan
    slot: Slot
    extension: Permutation


class SimpleExtension(NamedTuple):
    simple: Permutation
    chain: tuple[BreakReport, ...]


@dataclass(frozen=True)
class TheoremVerdict:
    """Outcome of the principal-class classifier: a status, the rule that
    decided it, and the symmetry image on which the rule fired."""

    status: str
    rule: str
    symmetry_used: Symmetry

    def describe(self) -> str:
        label = RULE_LABELS.get(self.rule, "")
        return f"{self.status} ({self.rule} {label})" if label else f"{self.status} ({self.rule})"


@dataclass(frozen=True)
class UncoveredMember:
    """A member with no simple extension within the search bound, plus the
    bond certificate for it if one exists."""

    member: Permutation
    certificate: Optional[object]


@dataclass(frozen=True)
class EmpiricalReport:
    pclass: PermClass
    cover_len: int
    search_len: int
    members_checked: int
    uncovered: tuple[UncoveredMember, ...]

    @property
    def covered(self) -> bool:
        return not self.uncovered


def embed_indecomposable(w: Permutation, pi: Permutation) -> EmbeddingTrace:
    """Embed ``w`` (avoiding ``pi``) into an indecomposable permutation that
    still avoids ``pi``.

    When some symmetry of ``pi`` starts with its minimum, the construction
    anchors ``w`` below-right, doubles singleton skew components, and links
    consecutive components; otherwise four outer points in a 2413 layout
    are wrapped around ``w`` (after a symmetry making the outer points of
    ``pi`` differ from 2413).  Postconditions are asserted, not assumed.
    """
    if pi.values in EMBED_EXCLUDED:
        raise ValueError(f"no general indecomposable embedding exists for basis {pi}")
    if _contains_any(pi.values, w.values):
        raise ValueError(f"{w} contains {pi}")
    if not _is_decomposable(w.values):
        return EmbeddingTrace((w,), None)

    if _has_corner_point(pi.values):
        f = _first_symmetry(lambda img: img[0] == 1, pi.values)
        stages_img = _corner_point_stages(_SYMMETRY_FUNCS[f](w.values))
        case = "corner_point"
    else:
        f = _first_symmetry(lambda img: _outer_pattern(img) != (2, 4, 1, 3), pi.values)
        u = _SYMMETRY_FUNCS[f](w.values)
        m = len(u)
        zeta = (2, m + 4) + tuple(v + 2 for v in u) + (1, m + 3)
        stages_img = (u, zeta)
        case = "outer_2413"

    back = _SYMMETRY_FUNCS[_SYMMETRY_INVERSE[f]]
    stages = tuple(Permutation(back(s)) for s in stages_img)

    for prev, cur in zip(stages, stages[1:]):
        if not _contains_any(prev.values, cur.values):
            raise AssertionError(f"embedding stage {cur} lost {prev}")
    final = stages[-1]
    if _is_decomposable(final.values):
        raise AssertionError(f"embedding of {w} produced decomposable {final}")
    if _contains_any(pi.values, final.values):
        raise AssertionError(f"embedding of {w} introduced {pi}")
    return EmbeddingTrace(stages, case)


def _has_corner_point(vals: tuple[int, ...]) -> bool:
    n = len(vals)
    return vals[0] in (1, n) or vals[-1] in (1, n)


def _outer_pattern(vals: tuple[int, ...]) -> tuple[int, ...]:
    """Pattern of the left-, right-, top- and bottom-most entries; length 4
    exactly when there is no corner point."""
    n = len(vals)
    idx = sorted({0, n - 1, vals.index(n), vals.index(1)})
    return _pattern_of([vals[i] for i in idx])


def _first_symmetry(pred, vals: tuple[int, ...]) -> Symmetry:
    for sym in SYMMETRY_ORDER:
        if pred(_SYMMETRY_FUNCS[sym](vals)):
            return sym
    raise AssertionError("no symmetry satisfies the required normal form")


def _corner_point_stages(u: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """Stages for the case where the (symmetrised) basis starts with 1:
    anchor below-right, double singleton skew components, link neighbours."""
    u_hat = tuple(v + 1 for v in u) + (1,)
    comps = _components(u_hat, "skew")
    parts = [(1, 2) if c == (1,) else c for c in comps]

    # skew sum of the doubled parts, tracking each part's 1-based positions
    seq: list[int] = []
    positions: list[list[int]] = []
    offset = sum(len(p) for p in parts)
    pos = 1
    for part in parts:
        offset -= len(part)
        positions.append(list(range(pos, pos + len(part))))
        seq.extend(v + offset for v in part)
        pos += len(part)
    u_bar = tuple(seq)

    linked = u_bar
    for i in range(len(parts) - 1):
        anchor_pos = max(positions[i])                       # final point of part i
        top_value = max(linked[p - 1] for p in positions[i + 1])  # topmost of part i+1
        linked = _insert_raw(linked, anchor_pos, top_value)
        for plist in positions:
            for t, p in enumerate(plist):
                if p >= anchor_pos:
                    plist[t] = p + 1
    return (u, u_hat, u_bar, linked)


def breaking_extensions(w: Permutation, c: PermClass) -> list[BreakReport]:
    """All one-point extensions of ``w`` that cut its longest maximal
    interval without absorbing the new point, and stay inside ``c``.

    Requires an indecomposable, non-simple member.  Each surviving report
    is checked for the guaranteed consequences: the extension is
    indecomposable and its interval measure strictly drops.
    """
    vals = w.values
    if not _avoids_raw(vals, c):
        raise ValueError(f"{w} is not a member of {c}")
    if _is_decomposable(vals):
        raise ValueError(f"{w} is decomposable; breakability is defined on indecomposable members")
    blocks = maximal_intervals(w)
    alpha = max(blocks, key=lambda s: (s.size, -s.pos_lo))
    if alpha.size < 2:
        raise ValueError(f"{w} is simple; nothing to break")

    n = len(vals)
    slots = []
    for ps in range(alpha.pos_lo + 1, alpha.pos_hi + 1):
        for vs in range(1, alpha.val_lo):
            slots.append(Slot(ps, vs))
        for vs in range(alpha.val_hi + 2, n + 2):
            slots.append(Slot(ps, vs))
    for vs in range(alpha.val_lo + 1, alpha.val_hi + 1):
        for ps in range(1, alpha.pos_lo):
            slots.append(Slot(ps, vs))
        for ps in range(alpha.pos_hi + 2, n + 2):
            slots.append(Slot(ps, vs))
    slots.sort()

    before = sd_measure(w)
    reports = []
    for slot in slots:
        ext = _insert_raw(vals, slot.pos_slot, slot.val_slot)
        if not _avoids_raw(ext, c):
            continue
        extension = Permutation(ext)
        if _is_decomposable(ext):
            raise AssertionError(f"cut at {slot} left {extension} decomposable")
        if sd_measure(extension) >= before:
            raise AssertionError(f"cut at {slot} did not shrink the interval measure of {w}")
        reports.append(BreakReport(alpha, slot, extension))
    return reports


def extend_to_simple(w: Permutation, c: PermClass, max_len: int) -> Optional[SimpleExtension]:
    """A simple member of ``c`` of length <= max_len containing ``w``, with
    the chain of interval breaks that produced it, or None if none exists
    within the bound.

    Strategy: embed into an indecomposable member when the class is
    principal, then break the longest interval greedily (each break is
    guaranteed progress); if that stalls or overshoots, fall back to an
    exhaustive breadth-first search over all one-point extensions, so an
    absent result genuinely means no simple extension within ``max_len``.
    """
    if not avoids(w, c):
        raise ValueError(f"{w} is not a member of {c}")
    if max_len < len(w):
        raise ValueError(f"max_len {max_len} is below the length of {w}")
    if _is_simple(w.values):
        return SimpleExtension(w, ())

    result = _greedy_extension(w, c, max_len)
    if result is not None:
        return result
    return _bfs_extension(w, c, max_len)


def _greedy_extension(w: Permutation, c: PermClass, max_len: int) -> Optional[SimpleExtension]:
    current = w
    if _is_decomposable(current.values):
        if len(c.basis) != 1 or c.basis[0].values in EMBED_EXCLUDED:
            return None
        trace = embed_indecomposable(current, c.basis[0])
        current = trace.result
        if len(current) > max_len:
            return None
    chain: list[BreakReport] = []
    while not _is_simple(current.values):
        if len(current) >= max_len:
            return None
        reports = breaking_extensions(current, c)
        if not reports:
            return None
        chain.append(reports[0])
        current = reports[0].extension
    return SimpleExtension(current, tuple(chain))


def _bfs_extension(w: Permutation, c: PermClass, max_len: int) -> Optional[SimpleExtension]:
    frontier = {w.values}
    for n in range(len(w), max_len):
        nxt = set()
        for vals in frontier:
            for ps in range(1, n + 2):
                for vs in range(1, n + 2):
                    child = _insert_raw(vals, ps, vs)
                    if child not in nxt and not _insertion_creates(c, child, ps - 1):
                        nxt.add(child)
        for child in sorted(nxt):
            if _is_simple(child):
                return SimpleExtension(Permutation(child), ())
        frontier = nxt
        if not frontier:
            return None
    return None


def condition_ddagger(pi: Permutation) -> bool:
    """For pi starting with its minimum: is some entry to the right of the
    value 2 smaller than pi's second entry (the leftmost entry of the rest)?
    """
    vals = pi.values
    if vals[0] != 1 or len(vals) < 4:
        raise ValueError(f"{pi} is not of the form 1 plus a tail of length >= 3")
    return _ddagger_raw(vals)


def _ddagger_raw(vals: tuple[int, ...]) -> bool:
    threshold = vals[1]
    after_two = vals.index(2) + 1
    return any(v < threshold for v in vals[after_two:])


def _has_increasing_bond(vals: tuple[int, ...]) -> bool:
    return any(vals[i + 1] == vals[i] + 1 for i in range(len(vals) - 1))


def _has_decreasing_bond(vals: tuple[int, ...]) -> bool:
    return any(vals[i] == vals[i + 1] + 1 for i in range(len(vals) - 1))


def _one_plus_tail(vals: tuple[int, ...]) -> Optional[tuple[int, ...]]:
    """The tail pattern rho when vals = 1 (+) rho with |rho| >= 2."""
    if len(vals) < 3 or vals[0] != 1:
        return None
    return tuple(v - 1 for v in vals[1:])


def _form_1n2(vals: tuple[int, ...]) -> bool:
    n = len(vals)
    return n >= 3 and vals[0] == 1 and vals[1] == n and vals[-1] == 2


def _sum_component_sizes(vals: tuple[int, ...]) -> list[int]:
    sizes = []
    mx = 0
    start = 0
    for i, v in enumerate(vals):
        if v > mx:
            mx = v
        if mx == i + 1:
            sizes.append(i + 1 - start)
            start = i + 1
    return sizes


def _pred_degenerate(vals: tuple[int, ...]) -> bool:
    return len(vals) == 1


def _pred_base_12(vals: tuple[int, ...]) -> bool:
    return vals in ((1, 2), (2, 1))


def _pred_base_231(vals: tuple[int, ...]) -> bool:
    return vals == (2, 3, 1)


def _pred_three_sum(vals: tuple[int, ...]) -> bool:
    return len(_sum_component_sizes(vals)) >= 3


def _pred_two_sum(vals: tuple[int, ...]) -> bool:
    sizes = _sum_component_sizes(vals)
    return len(sizes) == 2 and sizes[0] >= 2 and sizes[1] >= 2


def _pred_t33(vals: tuple[int, ...]) -> bool:
    rho = _one_plus_tail(vals)
    if rho is None or _is_sum_decomposable(rho) or rho[0] > rho[1]:
        return False
    return not _has_increasing_bond(rho) or not _has_decreasing_bond(rho)


def _pred_t34(vals: tuple[int, ...]) -> bool:
    rho = _one_plus_tail(vals)
    if rho is None or len(vals) < 4 or rho[0] < rho[1]:
        return False
    return not _has_increasing_bond(rho) and _ddagger_raw(vals)


def _pred_t35(vals: tuple[int, ...]) -> bool:
    return _form_1n2(vals) and not _has_increasing_bond(vals[1:])


def _pred_t36(vals: tuple[int, ...]) -> bool:
    rho = _one_plus_tail(vals)
    if rho is None or len(vals) < 4 or rho[0] < rho[1]:
        return False
    return not _has_decreasing_bond(rho) and _ddagger_raw(vals)


def _pred_t37(vals: tuple[int, ...]) -> bool:
    return _form_1n2(vals) and not _has_decreasing_bond(vals)


def _pred_t38(vals: tuple[int, ...]) -> bool:
    n = len(vals)
    return n >= 4 and vals[0] == 1 and vals[-1] == 2 and vals[1] not in (3, n)


def _pred_p51(vals: tuple[int, ...]) -> bool:
    return vals == (2, 4, 1, 3)


def _pred_witness_table(vals: tuple[int, ...]) -> bool:
    from .witness import known_deflatable_bases

    return vals in known_deflatable_bases()


#: (rule, status, hypothesis) in priority order; the first hypothesis that
#: holds on any symmetry image decides the verdict.
_RULES = (
    ("degenerate", STATUS_DEFLATABLE, _pred_degenerate),
    ("base-12", STATUS_DEFLATABLE, _pred_base_12),
    ("base-231", STATUS_DEFLATABLE, _pred_base_231),
    ("T3.1", STATUS_NON_DEFLATABLE, _pred_three_sum),
    ("T3.2", STATUS_NON_DEFLATABLE, _pred_two_sum),
    ("T3.3", STATUS_NON_DEFLATABLE, _pred_t33),
    ("T3.4", STATUS_NON_DEFLATABLE, _pred_t34),
    ("T3.5", STATUS_NON_DEFLATABLE, _pred_t35),
    ("T3.6", STATUS_NON_DEFLATABLE, _pred_t36),
    ("T3.7", STATUS_NON_DEFLATABLE, _pred_t37),
    ("T3.8", STATUS_NON_DEFLATABLE, _pred_t38),
    ("P5.1", STATUS_NON_DEFLATABLE, _pred_p51),
    ("witness-table", STATUS_DEFLATABLE, _pred_witness_table),
)


def classify_principal(pi: Permutation) -> TheoremVerdict:
    """Decide (non-)deflatability of Av(pi) where a known rule applies.

    Deflatability is invariant under the eight symmetries, so every rule is
    evaluated on every symmetry image; the first applicable (rule, image)
    pair in the fixed priority and symmetry order is reported.  Anything
    not matched is honestly ``unknown``.
    """
    images = [(sym, _SYMMETRY_FUNCS[sym](pi.values)) for sym in SYMMETRY_ORDER]
    for rule, status, pred in _RULES:
        for sym, image in images:
            if pred(image):
                return TheoremVerdict(status, rule, sym)
    return TheoremVerdict(STATUS_UNKNOWN, "unknown", Symmetry.IDENTITY)


def empirical_deflatability(c: PermClass, cover_len: int, search_len: int) -> EmpiricalReport:
    """Check that every member of length <= cover_len extends to a simple
    member of length <= search_len.

    Because the class is downward closed, a member extends to a simple
    member within the bound exactly when it is contained in one, so one
    enumeration pass suffices: collect the simple members up to
    ``search_len`` and test each short member for containment in one of
    them.  Members that extend to nothing are reported with their bond
    certificate (when one exists).
    """
    from .witness import bond_certificate

    if cover_len < 1:
        raise ValueError("cover_len must be at least 1")
    if cover_len > search_len:
        raise ValueError("cover_len must not exceed search_len")

    targets: list[tuple[int, ...]] = []
    simples: list[tuple[int, ...]] = []
    for n, level in enumerate(_class_levels(c, search_len), start=1):
        if n <= cover_len:
            targets.extend(level)
        simples.extend(vals for vals in level if _is_simple(vals))

    recent: list[tuple[int, ...]] = []
    uncovered_vals = []
    for vals in targets:
        if _is_simple(vals):
            continue
        hit = next((s for s in recent if len(s) >= len(vals) and _contains_any(vals, s)), None)
        if hit is None:
            hit = next(
                (s for s in simples if len(s) > len(vals) and _contains_any(vals, s)), None
            )
            if hit is not None:
                recent.insert(0, hit)
                del recent[8:]
        if hit is None:
            uncovered_vals.append(vals)

    uncovered = []
    for vals in uncovered_vals:
        member = Permutation(vals)
        uncovered.append(UncoveredMember(member, bond_certificate(member, c)))
    return EmpiricalReport(c, cover_len, search_len, len(targets), tuple(uncovered))
