"""Finitely generated modules over translated generators.

An edge map over a color set ``C`` is the same data as a vector with one
coordinate per (color, orientation) pair attached to each grid point: the
maps form a free module of rank ``2|C|`` over translations of the plane.
This module rephrases tiling questions in that language:

  * a tiling system plus a starting map becomes a membership instance —
    is the negated starting map a nonnegative combination of translated
    tile vectors? — and
  * restricting coefficients to 0/1 with pairwise distinct translations
    gives a subset-sum variant whose witnesses are exactly tile placements
    with no two tiles stacked on one cell.

Both searches are bounded (translation window, coefficient cap, node
budget) and return explicit witnesses that can be re-checked by plain
arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

from .edges import EdgeMap, Ring, RingMismatch, ring_from_name, tile_eval
from .tiling import Certificate, Color, TilingSystem


class UnknownColor(ValueError):
    """An edge map mentions a color outside the chosen color list."""


class RankMismatch(ValueError):
    """Two module elements of different ranks were combined."""


class DuplicateShift(ValueError):
    """A subset-sum witness reuses a translation."""


EntryKey = tuple[int, int, int]  # (x, y, coordinate index)


def _canon_entries(ring: Ring, entries: dict[EntryKey, int]) -> dict[EntryKey, int]:
    out: dict[EntryKey, int] = {}
    for key, value in entries.items():
        v = ring.canon(value)
        if v:
            out[key] = v
    return out


def _entry_sort_key(key: EntryKey) -> tuple[int, int, int]:
    x, y, idx = key
    return (y, x, idx)


class ModuleElement:
    """Immutable finitely supported vector-valued function on the grid.

    Entries are keyed by ``(x, y, idx)`` where ``idx`` names one of the
    ``rank`` coordinates.  Supports addition, negation, integer scaling and
    translation; all values live in the given coefficient ring.
    """

    __slots__ = ("ring", "rank", "_entries")

    def __init__(self, ring: Ring, rank: int,
                 entries: dict[EntryKey, int] | None = None):
        if rank < 0:
            raise ValueError("rank must be nonnegative")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "rank", rank)
        canon = _canon_entries(ring, entries or {})
        for (_, _, idx) in canon:
            if not 0 <= idx < rank:
                raise RankMismatch(f"coordinate {idx} outside rank {rank}")
        object.__setattr__(self, "_entries", canon)

    def __setattr__(self, name, value):
        raise AttributeError("ModuleElement is immutable")

    def value(self, x: int, y: int, idx: int) -> int:
        return self._entries.get((x, y, idx), 0)

    def support(self) -> list[EntryKey]:
        return sorted(self._entries, key=_entry_sort_key)

    def items(self) -> list[tuple[EntryKey, int]]:
        return [(key, self._entries[key]) for key in self.support()]

    def is_zero(self) -> bool:
        return not self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return (self.ring == other.ring and self.rank == other.rank
                and self._entries == other._entries)

    def __hash__(self):
        return hash((self.ring, self.rank,
                     tuple(sorted(self._entries.items()))))

    def _check_compatible(self, other: "ModuleElement") -> None:
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring.name} vs {other.ring.name}")
        if self.rank != other.rank:
            raise RankMismatch(f"rank {self.rank} vs {other.rank}")

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        self._check_compatible(other)
        merged = dict(self._entries)
        for key, value in other._entries.items():
            merged[key] = merged.get(key, 0) + value
        return ModuleElement(self.ring, self.rank, merged)

    def __neg__(self) -> "ModuleElement":
        return ModuleElement(self.ring, self.rank,
                             {k: -v for k, v in self._entries.items()})

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        return self + (-other)

    def scale(self, c: int) -> "ModuleElement":
        return ModuleElement(self.ring, self.rank,
                             {k: c * v for k, v in self._entries.items()})

    def translate(self, dx: int, dy: int) -> "ModuleElement":
        return ModuleElement(self.ring, self.rank,
                             {(x + dx, y + dy, idx): v
                              for (x, y, idx), v in self._entries.items()})

    def __repr__(self) -> str:
        inside = ", ".join(f"({x},{y},{idx}): {v:+d}"
                           for (x, y, idx), v in self.items())
        return f"ModuleElement[{self.ring.name}, rank {self.rank}]{{{inside}}}"


def zero_element(ring: Ring, rank: int) -> ModuleElement:
    return ModuleElement(ring, rank)


def unit(ring: Ring, rank: int, x: int, y: int, idx: int,
         value: int = 1) -> ModuleElement:
    return ModuleElement(ring, rank, {(x, y, idx): value})


def color_index(colors: Sequence[Color], color: Color, orient: str) -> int:
    """Coordinate index of an oriented color: H block first, then V block."""
    try:
        pos = colors.index(color)
    except ValueError:
        raise UnknownColor(f"color {color!r} not in color list") from None
    if orient == "H":
        return pos
    if orient == "V":
        return len(colors) + pos
    raise ValueError(f"orientation must be 'H' or 'V', got {orient!r}")


def from_edgemap(f: EdgeMap, colors: Sequence[Color]) -> ModuleElement:
    """Flatten an edge map into a module element of rank ``2 * len(colors)``."""
    rank = 2 * len(colors)
    entries: dict[EntryKey, int] = {}
    for ((x, y, orient), color), value in f.support():
        idx = color_index(colors, color, orient)
        entries[(x, y, idx)] = entries.get((x, y, idx), 0) + value
    return ModuleElement(f.ring, rank, entries)


def to_edgemap(e: ModuleElement, colors: Sequence[Color]) -> EdgeMap:
    """Inverse of :func:`from_edgemap` for elements of the matching rank."""
    if e.rank != 2 * len(colors):
        raise RankMismatch(
            f"rank {e.rank} does not match {len(colors)} colors")
    entries: dict[tuple[tuple[int, int, str], Color], int] = {}
    for (x, y, idx), value in e.items():
        if idx < len(colors):
            orient, color = "H", colors[idx]
        else:
            orient, color = "V", colors[idx - len(colors)]
        entries[((x, y, orient), color)] = value
    return EdgeMap(e.ring, entries.items())


@dataclass(frozen=True)
class SemimoduleInstance:
    """Bounded membership question: is ``target`` a nonnegative combination
    of translated ``generators``?

    ``mode`` is ``"semimodule"`` (arbitrary nonnegative coefficients) or
    ``"subset-sum"`` (0/1 coefficients, pairwise distinct translations).
    """

    ring: Ring
    rank: int
    generators: tuple[ModuleElement, ...]
    target: ModuleElement
    mode: str = "semimodule"

    def __post_init__(self):
        if self.mode not in ("semimodule", "subset-sum"):
            raise ValueError(f"unknown mode {self.mode!r}")
        for element in (*self.generators, self.target):
            if element.ring != self.ring:
                raise RingMismatch(
                    f"{element.ring.name} element in {self.ring.name} instance")
            if element.rank != self.rank:
                raise RankMismatch(
                    f"rank {element.rank} element in rank {self.rank} instance")


def tiling_to_instance(ts: TilingSystem, f0: EdgeMap,
                       mode: str = "semimodule") -> SemimoduleInstance:
    """Instance whose witnesses are the tile multisets cancelling ``f0``.

    Generators are the tile vectors in system order; the target is the
    negated starting map, so a witness sums to exactly ``-f0``.
    """
    colors = ts.colors
    generators = tuple(
        from_edgemap(tile_eval(tile, f0.ring, ts.distinguished), colors)
        for tile in ts.tiles)
    target = from_edgemap(-f0, colors)
    return SemimoduleInstance(f0.ring, 2 * len(colors), generators, target,
                              mode)


def tiling_to_subset_sum(ts: TilingSystem, f0: EdgeMap) -> SemimoduleInstance:
    return tiling_to_instance(ts, f0, mode="subset-sum")


class WitnessTerm(NamedTuple):
    gen: int
    dx: int
    dy: int
    coeff: int


SubsetPick = tuple[int, int, int]  # (gen, dx, dy)

Window = tuple[int, int, int, int]  # inclusive (x0, y0, x1, y1)


def eval_member_witness(instance: SemimoduleInstance,
                        terms: Iterable[WitnessTerm]) -> ModuleElement:
    total = zero_element(instance.ring, instance.rank)
    for gen, dx, dy, coeff in terms:
        total = total + instance.generators[gen].translate(dx, dy).scale(coeff)
    return total


def eval_subset_witness(instance: SemimoduleInstance,
                        picks: Iterable[SubsetPick]) -> ModuleElement:
    total = zero_element(instance.ring, instance.rank)
    seen: set[tuple[int, int]] = set()
    for gen, dx, dy in picks:
        if (dx, dy) in seen:
            raise DuplicateShift(f"translation ({dx}, {dy}) used twice")
        seen.add((dx, dy))
        total = total + instance.generators[gen].translate(dx, dy)
    return total


def verify_witness(instance: SemimoduleInstance, witness) -> bool:
    """Re-check a witness by direct summation."""
    if instance.mode == "semimodule":
        total = eval_member_witness(instance, witness)
    else:
        total = eval_subset_witness(instance, witness)
    return total == instance.target


class _OutOfFuel(Exception):
    pass


def _coeff_values(ring: Ring, max_coeff: int) -> tuple[int, ...]:
    if ring.modulus is None:
        return tuple(range(1, max_coeff + 1))
    return tuple(range(1, ring.modulus))


def _entries_by_idx(gens) -> dict[int, list[tuple[int, int, int, int]]]:
    """Index generator entries by coordinate index: idx -> (gen, ex, ey, ev)."""
    table: dict[int, list[tuple[int, int, int, int]]] = {}
    for gi, gen in enumerate(gens):
        for (ex, ey, eidx), ev in gen.items():
            table.setdefault(eidx, []).append((gi, ex, ey, ev))
    return table


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _member_mod_prime(instance: SemimoduleInstance,
                      window: Window) -> Optional[tuple[WitnessTerm, ...]]:
    """Exact windowed membership over a prime modulus.

    With coefficients in the field Z/p, membership in the span of the
    windowed translates is a finite linear system: one variable per
    (generator, translation) pair, one equation per grid coordinate any
    of them (or the target) touches.  Gaussian elimination decides it
    outright — a None here means no witness exists within the window,
    not that a budget ran out.
    """
    p = instance.ring.modulus
    variables: list[tuple[int, int, int]] = []
    columns: list[list[tuple[EntryKey, int]]] = []
    x0, y0, x1, y1 = window
    for gi, gen in enumerate(instance.generators):
        items = gen.items()
        if not items:
            continue
        for sy in range(y0, y1 + 1):
            for sx in range(x0, x1 + 1):
                variables.append((gi, sx, sy))
                columns.append([((ex + sx, ey + sy, eidx), ev)
                                for (ex, ey, eidx), ev in items])
    rows: dict[EntryKey, dict[int, int]] = {}
    for vi, column in enumerate(columns):
        for key, value in column:
            rows.setdefault(key, {})[vi] = value % p
    keys = set(rows) | set(instance.target.support())
    # Reduced row echelon form, maintained incrementally: each pivot row is
    # scaled to 1 at its pivot variable and contains no other pivot.
    pivots: dict[int, tuple[dict[int, int], int]] = {}
    for key in sorted(keys, key=_entry_sort_key):
        row = dict(rows.get(key, {}))
        rhs = instance.target.value(*key) % p
        for var in [v for v in sorted(row) if v in pivots]:
            factor = row.pop(var)
            prow, prhs = pivots[var]
            for c, v in prow.items():
                if c == var:
                    continue
                nv = (row.get(c, 0) - factor * v) % p
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
            rhs = (rhs - factor * prhs) % p
        if not row:
            if rhs:
                return None
            continue
        var = min(row)
        inv = pow(row[var], -1, p)
        prow = {c: (v * inv) % p for c, v in row.items()}
        prhs = (rhs * inv) % p
        for other, (orow, orhs) in list(pivots.items()):
            factor = orow.pop(var, 0)
            if not factor:
                continue
            for c, v in prow.items():
                if c == var:
                    continue
                nv = (orow.get(c, 0) - factor * v) % p
                if nv:
                    orow[c] = nv
                else:
                    orow.pop(c, None)
            pivots[other] = (orow, (orhs - factor * prhs) % p)
        pivots[var] = (prow, prhs)
    # Free variables are zero, so each pivot variable just takes its rhs.
    terms = []
    for var, (_, prhs) in pivots.items():
        if prhs:
            gi, sx, sy = variables[var]
            terms.append(WitnessTerm(gi, sx, sy, prhs))
    return tuple(sorted(terms, key=lambda t: (t.dy, t.dx, t.gen)))


def member_bounded(instance: SemimoduleInstance, window: Window,
                   max_coeff: int = 1,
                   fuel: int = 1_000_000) -> Optional[tuple[WitnessTerm, ...]]:
    """Search for a nonnegative-combination witness within bounds.

    Translations are restricted to the inclusive ``window`` box and, over
    the integers, coefficients to ``1..max_coeff``.  At each node the
    search branches on the residual coordinate with the fewest viable
    candidates: every representation must hit every residual coordinate
    with some translated generator, so branching over the candidates that
    hit the chosen one — each with every allowed coefficient, or excluded
    — loses no witness within the bounds.  A coordinate no candidate can
    hit is an immediate dead end.  Returns the witness found, or None if
    none exists within the bounds or the node budget runs out.

    Over a prime modulus the coefficients range over a field and the
    question is settled exactly by linear elimination instead (the cap
    and the budget are then irrelevant, and None is a definite no).
    """
    if instance.mode != "semimodule":
        raise ValueError("instance mode must be 'semimodule'")
    if instance.ring.modulus is not None and _is_prime(instance.ring.modulus):
        return _member_mod_prime(instance, window)
    x0, y0, x1, y1 = window
    gens = instance.generators
    by_idx = _entries_by_idx(gens)
    values = _coeff_values(instance.ring, max_coeff)
    signed = instance.ring.modulus is None
    nodes = 0

    def candidates(key: EntryKey, rvalue: int,
                   decided: set[SubsetPick]) -> list[tuple[int, int, int, int]]:
        kx, ky, kidx = key
        found = []
        for gi, ex, ey, ev in by_idx.get(kidx, ()):
            sx, sy = kx - ex, ky - ey
            if not (x0 <= sx <= x1 and y0 <= sy <= y1):
                continue
            if (gi, sx, sy) in decided:
                continue
            found.append((gi, sx, sy, ev))
        if signed:
            found.sort(key=lambda c: ((c[3] > 0) != (rvalue > 0),
                                      c[0], c[2], c[1]))
        else:
            found.sort(key=lambda c: (c[0], c[2], c[1]))
        return found

    def pick_key(residual: ModuleElement, decided: set[SubsetPick]):
        best = None
        for key in residual.support():
            options = candidates(key, residual.value(*key), decided)
            if not options:
                return key, options
            if best is None or len(options) < len(best[1]):
                best = (key, options)
        return best

    def dfs(residual: ModuleElement,
            decided: set[SubsetPick]) -> Optional[list[WitnessTerm]]:
        nonlocal nodes
        nodes += 1
        if nodes > fuel:
            raise _OutOfFuel
        if residual.is_zero():
            return []
        _, options = pick_key(residual, decided)
        excluded: list[SubsetPick] = []
        result: Optional[list[WitnessTerm]] = None
        for gi, sx, sy, _ in options:
            decided.add((gi, sx, sy))
            excluded.append((gi, sx, sy))
            shifted = gens[gi].translate(sx, sy)
            for coeff in values:
                rest = dfs(residual - shifted.scale(coeff), decided)
                if rest is not None:
                    result = [WitnessTerm(gi, sx, sy, coeff)] + rest
                    break
            if result is not None:
                break
        for pick in excluded:
            decided.remove(pick)
        return result

    try:
        found = dfs(instance.target, set())
    except _OutOfFuel:
        return None
    if found is None:
        return None
    return tuple(sorted(found, key=lambda t: (t.dy, t.dx, t.gen)))


def subset_sum_bounded(instance: SemimoduleInstance, window: Window,
                       fuel: int = 1_000_000
                       ) -> Optional[tuple[SubsetPick, ...]]:
    """Search for a 0/1 witness with pairwise distinct translations.

    Same branching scheme as :func:`member_bounded`, with coefficients
    fixed to 1 and a translation usable by at most one generator — the
    combinatorics of tile placements with no stacking.  Subset sums live
    over modular rings only; integer instances are refused.
    """
    if instance.mode != "subset-sum":
        raise ValueError("instance mode must be 'subset-sum'")
    if instance.ring.modulus is None:
        raise RingMismatch("subset-sum search needs a modular ring")
    x0, y0, x1, y1 = window
    gens = instance.generators
    by_idx = _entries_by_idx(gens)
    nodes = 0

    def candidates(key: EntryKey, decided: set[SubsetPick],
                   used: set[tuple[int, int]]) -> list[SubsetPick]:
        kx, ky, kidx = key
        found = []
        for gi, ex, ey, _ in by_idx.get(kidx, ()):
            sx, sy = kx - ex, ky - ey
            if not (x0 <= sx <= x1 and y0 <= sy <= y1):
                continue
            if (gi, sx, sy) in decided or (sx, sy) in used:
                continue
            found.append((gi, sx, sy))
        found.sort(key=lambda c: (c[0], c[2], c[1]))
        return found

    def pick_key(residual: ModuleElement, decided: set[SubsetPick],
                 used: set[tuple[int, int]]):
        best = None
        for key in residual.support():
            options = candidates(key, decided, used)
            if not options:
                return key, options
            if best is None or len(options) < len(best[1]):
                best = (key, options)
        return best

    def dfs(residual: ModuleElement, decided: set[SubsetPick],
            used: set[tuple[int, int]]) -> Optional[list[SubsetPick]]:
        nonlocal nodes
        nodes += 1
        if nodes > fuel:
            raise _OutOfFuel
        if residual.is_zero():
            return []
        _, options = pick_key(residual, decided, used)
        excluded: list[SubsetPick] = []
        result: Optional[list[SubsetPick]] = None
        for gi, sx, sy in options:
            decided.add((gi, sx, sy))
            excluded.append((gi, sx, sy))
            used.add((sx, sy))
            rest = dfs(residual - gens[gi].translate(sx, sy), decided, used)
            used.remove((sx, sy))
            if rest is not None:
                result = [(gi, sx, sy)] + rest
                break
        for pick in excluded:
            decided.remove(pick)
        return result

    try:
        found = dfs(instance.target, set(), set())
    except _OutOfFuel:
        return None
    if found is None:
        return None
    return tuple(sorted(found, key=lambda p: (p[2], p[1], p[0])))


def certificate_to_witness(cert: Certificate,
                           ts: TilingSystem) -> tuple[SubsetPick, ...]:
    """Read a tiling certificate as a subset-sum witness (tile index and
    position per placement)."""
    picks: list[SubsetPick] = []
    seen: set[tuple[int, int]] = set()
    for placement in cert.placements:
        if (placement.x, placement.y) in seen:
            raise DuplicateShift(
                f"two tiles at ({placement.x}, {placement.y})")
        seen.add((placement.x, placement.y))
        picks.append((ts.index_of(placement.tile), placement.x, placement.y))
    return tuple(sorted(picks, key=lambda p: (p[2], p[1], p[0])))


def witness_to_certificate(witness: Iterable[SubsetPick],
                           ts: TilingSystem) -> Certificate:
    """Inverse of :func:`certificate_to_witness` (width and row count are
    recomputed from the picks)."""
    from .tiling import Placement, sort_placements
    placements = [Placement(ts.tiles[gen], dx, dy)
                  for gen, dx, dy in witness]
    width = max((p.x for p in placements), default=0)
    rows = max((p.y for p in placements), default=0)
    return Certificate(sort_placements(placements), width, rows)


# ---------------------------------------------------------------------------
# serialization

def element_to_dict(e: ModuleElement) -> dict:
    return {
        "ring": e.ring.name,
        "rank": e.rank,
        "entries": [{"x": x, "y": y, "idx": idx, "value": v}
                    for (x, y, idx), v in e.items()],
    }


def element_from_dict(data: dict) -> ModuleElement:
    extra = set(data) - {"ring", "rank", "entries"}
    if extra:
        raise ValueError(f"unexpected fields: {sorted(extra)}")
    ring = ring_from_name(data["ring"])
    entries: dict[EntryKey, int] = {}
    for item in data["entries"]:
        extra = set(item) - {"x", "y", "idx", "value"}
        if extra:
            raise ValueError(f"unexpected entry fields: {sorted(extra)}")
        key = (int(item["x"]), int(item["y"]), int(item["idx"]))
        entries[key] = entries.get(key, 0) + int(item["value"])
    return ModuleElement(ring, int(data["rank"]), entries)


def instance_to_dict(instance: SemimoduleInstance) -> dict:
    return {
        "ring": instance.ring.name,
        "rank": instance.rank,
        "mode": instance.mode,
        "generators": [element_to_dict(g) for g in instance.generators],
        "target": element_to_dict(instance.target),
    }


def instance_from_dict(data: dict) -> SemimoduleInstance:
    extra = set(data) - {"ring", "rank", "mode", "generators", "target"}
    if extra:
        raise ValueError(f"unexpected fields: {sorted(extra)}")
    return SemimoduleInstance(
        ring_from_name(data["ring"]),
        int(data["rank"]),
        tuple(element_from_dict(g) for g in data["generators"]),
        element_from_dict(data["target"]),
        data["mode"],
    )


def witness_to_dict(mode: str, witness) -> dict:
    if mode == "semimodule":
        return {"mode": mode,
                "terms": [{"gen": t.gen, "dx": t.dx, "dy": t.dy,
                           "coeff": t.coeff} for t in witness]}
    if mode == "subset-sum":
        return {"mode": mode,
                "picks": [{"gen": g, "dx": dx, "dy": dy}
                          for g, dx, dy in witness]}
    raise ValueError(f"unknown mode {mode!r}")


def witness_from_dict(data: dict):
    mode = data["mode"]
    if mode == "semimodule":
        return tuple(WitnessTerm(int(t["gen"]), int(t["dx"]), int(t["dy"]),
                                 int(t["coeff"])) for t in data["terms"])
    if mode == "subset-sum":
        return tuple((int(p["gen"]), int(p["dx"]), int(p["dy"]))
                     for p in data["picks"])
    raise ValueError(f"unknown mode {mode!r}")
