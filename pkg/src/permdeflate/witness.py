"""Bond certificates and witnesses of deflatability.

A member of a class is a witness of deflatability when no simple member of
the class contains it; finding one proves the class deflatable.  The
sufficient test implemented here inspects a bond: if every slot in the
vertical strip between the bond's positions and the horizontal strip
between its values is blocked — excepting only the crossing cell and the
four cells adjacent to the bond — then the bond can never be split apart
by later insertions, so no extension is simple.

The bundled corpus ships fourteen published witness rows (ten sporadic
classes and four parallel alternations); ``verify_corpus`` replays the
whole table.  ``inflation_family`` mechanically checks the inflation
construction that turns one witness into an infinite family of deflatable
principal classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import NamedTuple, Optional, Union

from .perm_core import Bond, Permutation, Slot, bonds, inflate, parse_permutation
from .class_engine import PermClass, ShadingGrid, _class_levels, avoids, shading_grid
from .deflate_analysis import extend_to_simple

#: Witnesses longer than this skip the explicit no-simple-extension search
#: during corpus verification; their certificates still get checked.
CROSS_CHECK_CAP = 14

_FAMILY_PATTERN = Permutation((2, 5, 1, 3, 6, 4))
_FAMILY_WITNESS = Permutation((2, 5, 1, 7, 3, 4, 8, 6))


@dataclass(frozen=True)
class BondCertificate:
    """Evidence that a member extends to no simple member of its class:
    every required strip slot around ``bond`` is blocked."""

    bond: Bond
    checked_slots: frozenset[Slot]
    grid: ShadingGrid


@dataclass(frozen=True)
class WitnessReport:
    class_basis: tuple[Permutation, ...]
    witness: Permutation
    certificate: BondCertificate
    cross_check_bound: int


class FamilyCheck(NamedTuple):
    """Result of the infinite-family construction for one inflating block."""

    pi_star: Permutation
    omega_star: Permutation
    verified: bool


@dataclass(frozen=True)
class CorpusRowResult:
    basis: Permutation
    witness: Permutation
    in_class: bool
    certified: bool
    cross_check_bound: Optional[int]
    cross_check_passed: Optional[bool]

    @property
    def passed(self) -> bool:
        return self.in_class and self.certified and self.cross_check_passed is not False


def bond_strip_slots(n: int, bond: Bond) -> frozenset[Slot]:
    """The strip slots a certificate must see blocked, for a bond at
    positions (i, i+1) with values {w, w+1} in a length-n host: the whole
    vertical strip pos_slot = i+1 except val_slots {w, w+1, w+2}, plus the
    whole horizontal strip val_slot = w+1 except pos_slots {i, i+1, i+2}.
    The exceptions are the crossing cell and the four adjacent cells; the
    same formula covers both bond orientations.
    """
    i, w = bond.left_pos, bond.low_value
    cells = {Slot(i + 1, vs) for vs in range(1, n + 2) if vs not in (w, w + 1, w + 2)}
    cells.update(Slot(ps, w + 1) for ps in range(1, n + 2) if ps not in (i, i + 1, i + 2))
    return frozenset(cells)


def bond_certificate(p: Permutation, c: PermClass) -> Optional[BondCertificate]:
    """The certificate on the first certifying bond of ``p`` (left-to-right
    order), or None.  A returned certificate implies ``p`` witnesses the
    deflatability of ``c``.

    A bond whose strips are entirely exempt (only possible when the bond is
    the whole permutation, n = 2) certifies nothing: the argument needs the
    surrounding box to be a proper part of any extension.
    """
    grid = shading_grid(p, c)
    n = len(p)
    for bond in bonds(p):
        cells = bond_strip_slots(n, bond)
        if cells and all(grid.is_blocked(slot) for slot in sorted(cells)):
            return BondCertificate(bond, cells, grid)
    return None


def find_witnesses(c: PermClass, max_len: int, limit: int = 1) -> list[WitnessReport]:
    """Scan class members in enumeration order for bond certificates,
    returning up to ``limit`` reports.  Each witness is cross-checked by an
    exhaustive search for simple extensions up to max_len + 2, which must
    come back empty."""
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    if limit < 1:
        raise ValueError("limit must be at least 1")
    reports: list[WitnessReport] = []
    bound = max_len + 2
    for level in _class_levels(c, max_len):
        for vals in level:
            member = Permutation(vals)
            cert = bond_certificate(member, c)
            if cert is None:
                continue
            if extend_to_simple(member, c, bound) is not None:
                raise AssertionError(f"certificate for {member} contradicted by a simple extension")
            reports.append(WitnessReport(c.basis, member, cert, bound))
            if len(reports) >= limit:
                return reports
    return reports


def parallel_alternation(n: int) -> Permutation:
    """The parallel alternation 2 4 6 ... n 1 3 5 ... n-1 (one symmetry
    class representative)."""
    if n % 2 != 0 or n < 4:
        raise ValueError(f"parallel alternations need an even length >= 4, got {n}")
    return Permutation(tuple(range(2, n + 1, 2)) + tuple(range(1, n, 2)))


def inflation_family(theta: Permutation) -> FamilyCheck:
    """Inflate one block of the 251364 / 25173486 witness pair by ``theta``
    and mechanically verify the construction: the inflated witness avoids
    the inflated basis, and every slot splitting its {3,4} interval without
    joining it creates the basis pattern.  A True result exhibits one more
    deflatable principal class."""
    one = Permutation((1,))
    pi_star = inflate(_FAMILY_PATTERN, [one, theta, one, one, one, one])
    omega_star = inflate(_FAMILY_WITNESS, [one, theta, one, theta, one, one, one, one])
    cls = PermClass((pi_star,))
    if not avoids(omega_star, cls):
        return FamilyCheck(pi_star, omega_star, False)
    # the block inflations leave values untouched below 5, so the {3,4}
    # bond of the base witness survives with the same values
    vals = omega_star.values
    i = vals.index(3) + 1
    if vals[i] != 4:
        raise AssertionError(f"expected the {{3,4}} bond to survive inflation in {omega_star}")
    grid = ShadingGrid(omega_star, cls)
    cells = bond_strip_slots(len(omega_star), Bond(i, "increasing", 3))
    verified = all(grid.is_blocked(slot) for slot in sorted(cells))
    return FamilyCheck(pi_star, omega_star, verified)


def _default_corpus() -> Path:
    return Path(str(resources.files("permdeflate").joinpath("witness_corpus.txt")))


def load_corpus(path: Union[str, Path, None] = None) -> list[tuple[Permutation, Permutation]]:
    """Rows of the witness corpus: (basis, witness) per non-comment line,
    separated by '|', both sides in the canonical text format."""
    source = Path(path) if path is not None else _default_corpus()
    rows = []
    for lineno, line in enumerate(source.read_text().splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        left, sep, right = line.partition("|")
        if not sep:
            raise ValueError(f"{source}:{lineno}: expected 'basis | witness'")
        rows.append((parse_permutation(left), parse_permutation(right)))
    return rows


@lru_cache(maxsize=1)
def known_deflatable_bases() -> frozenset[tuple[int, ...]]:
    """Value tuples of every basis in the bundled corpus (identity images
    only; callers fold in symmetries themselves)."""
    return frozenset(basis.values for basis, _ in load_corpus())


def verify_corpus(path: Union[str, Path, None] = None) -> list[CorpusRowResult]:
    """Replay every corpus row: the witness must lie in the class and carry
    a bond certificate, and witnesses of length <= CROSS_CHECK_CAP must
    survive an exhaustive no-simple-extension search to length + 2.
    Failures become report rows, not exceptions."""
    results = []
    for basis, witness in load_corpus(path):
        c = PermClass((basis,))
        in_class = avoids(witness, c)
        certified = False
        bound: Optional[int] = None
        cross_ok: Optional[bool] = None
        if in_class:
            certified = bond_certificate(witness, c) is not None
            if len(witness) <= CROSS_CHECK_CAP:
                bound = len(witness) + 2
                cross_ok = extend_to_simple(witness, c, bound) is None
        results.append(CorpusRowResult(basis, witness, in_class, certified, bound, cross_ok))
    return results
