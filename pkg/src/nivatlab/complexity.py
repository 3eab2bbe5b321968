"""The pattern-counting engine: shape complexity, languages, extension counts.

Counting enumerates a certified translate domain and deduplicates patterns by
canonical hashing.  Exactness flags propagate: anything computed from a
lower-bound domain is itself a lower bound.  Setting NIVATLAB_THREADS (0 =
auto) chunks the translate scan across a thread pool; the observable result
is identical to the sequential one.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Mapping

from .configurations import Configuration, Exactness, Pattern, as_points
from .errors import GeometryError, SoundnessError
from .geometry import ConvexLatticeSet, Line, Point, line_section, psub, supporting_line


@dataclass(frozen=True)
class ComplexityReport:
    """The number of distinct patterns of a shape, with provenance."""

    shape: tuple[Point, ...]
    count: int
    exactness: Exactness
    translates_examined: int

    @property
    def exact(self) -> bool:
        return self.exactness is Exactness.EXACT


def _thread_count() -> int:
    raw = os.environ.get("NIVATLAB_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    if n == 0:
        return os.cpu_count() or 1
    return max(1, n)


def _letter_keys(config: Configuration, cells: tuple[Point, ...], translates) -> set[tuple[str, ...]]:
    letter_at = config.letter_at
    threads = _thread_count()
    if threads > 1 and len(translates) >= 4 * threads:
        chunk = (len(translates) + threads - 1) // threads
        parts = [translates[i : i + chunk] for i in range(0, len(translates), chunk)]

        def scan(part):
            return {tuple(letter_at((g[0] + u[0], g[1] + u[1])) for g in cells) for u in part}

        with ThreadPoolExecutor(max_workers=threads) as pool:
            keys: set[tuple[str, ...]] = set()
            for piece in pool.map(scan, parts):
                keys |= piece
            return keys
    return {tuple(letter_at((g[0] + u[0], g[1] + u[1])) for g in cells) for u in translates}


def complexity(config: Configuration, shape: ConvexLatticeSet | Iterable[Point]) -> ComplexityReport:
    """The number of distinct shape-patterns over all translates of the configuration."""
    cells = as_points(shape)
    if not cells:
        return ComplexityReport((), 1, Exactness.EXACT, 0)
    domain = config.enumeration_domain(cells)
    keys = _letter_keys(config, cells, domain.translates)
    return ComplexityReport(cells, len(keys), domain.exactness, len(domain))


def language(config: Configuration, shape: ConvexLatticeSet | Iterable[Point]) -> frozenset[Pattern]:
    """The set of distinct shape-patterns (use `complexity` for the exactness flag)."""
    return language_report(config, shape)[0]


def language_report(
    config: Configuration, shape: ConvexLatticeSet | Iterable[Point]
) -> tuple[frozenset[Pattern], Exactness]:
    cells = as_points(shape)
    if not cells:
        return frozenset([Pattern(())]), Exactness.EXACT
    domain = config.enumeration_domain(cells)
    keys = _letter_keys(config, cells, domain.translates)
    offsets = tuple(psub(g, cells[0]) for g in cells)
    patterns = frozenset(Pattern(tuple(zip(offsets, k))) for k in keys)
    return patterns, domain.exactness


def complexity_table(
    config: Configuration, n_max: int, k_max: int
) -> dict[tuple[int, int], ComplexityReport]:
    """Complexity of every n-by-k block with 1 <= n <= n_max, 1 <= k <= k_max."""
    if n_max < 1 or k_max < 1:
        raise ValueError("table dimensions must be positive")
    out = {}
    for n in range(1, n_max + 1):
        for k in range(1, k_max + 1):
            cells = tuple((x, y) for x in range(n) for y in range(k))
            out[(n, k)] = complexity(config, cells)
    return out


def table_to_csv(table: Mapping[tuple[int, int], ComplexityReport]) -> str:
    lines = ["n,k,count,exact"]
    for (n, k) in sorted(table):
        rep = table[(n, k)]
        lines.append(f"{n},{k},{rep.count},{'1' if rep.exact else '0'}")
    return "\n".join(lines) + "\n"


# -- directional languages ---------------------------------------------------


@dataclass(frozen=True)
class DirectionalLanguage:
    """Patterns seen when sliding a shape along a line's minimal vector."""

    patterns: frozenset[Pattern]
    exactness: Exactness

    def __len__(self) -> int:
        return len(self.patterns)


def directional_language(
    config: Configuration,
    shape: ConvexLatticeSet | Iterable[Point],
    line: Line,
    base: Point = (0, 0),
    trange: tuple[str, int] = ("all", 0),
) -> DirectionalLanguage:
    """The patterns of shape+base+t*v for t in the requested range.

    trange is ('all', 0), ('forward', a) meaning t >= a along +v, or
    ('backward', a) meaning t >= a along -v.
    """
    cells = as_points(shape)
    if not cells:
        return DirectionalLanguage(frozenset([Pattern(())]), Exactness.EXACT)
    v = line.minimal_vector()
    step = v if trange[0] != "backward" else (-v[0], -v[1])
    domain = config.directional_translates(cells, base, v, trange)
    offsets = tuple(psub(g, cells[0]) for g in cells)
    letter_at = config.letter_at
    keys = {
        tuple(
            letter_at((g[0] + base[0] + t * step[0], g[1] + base[1] + t * step[1]))
            for g in cells
        )
        for t in domain.translates
    }
    patterns = frozenset(Pattern(tuple(zip(offsets, k))) for k in keys)
    return DirectionalLanguage(patterns, domain.exactness)


# -- extension counts --------------------------------------------------------


@dataclass(frozen=True)
class ExtensionTable:
    """Full-shape patterns grouped by their restriction to the shape minus its supporting line."""

    shape: tuple[Point, ...]
    base: tuple[Point, ...]
    extensions: dict[Pattern, tuple[Pattern, ...]]
    exactness: Exactness

    def count(self, base_pattern: Pattern) -> int:
        return len(self.extensions[base_pattern])

    def counts(self) -> dict[Pattern, int]:
        return {g: len(v) for g, v in self.extensions.items()}

    def excess(self) -> int:
        """Sum of (N - 1) over base patterns; equals the complexity increment when exact."""
        return sum(len(v) - 1 for v in self.extensions.values())


def extension_counts(config: Configuration, shape: ConvexLatticeSet, line: Line) -> ExtensionTable:
    """Group the shape's language by restriction to shape minus its supporting line.

    Validates, on exact data, that the summed extension excess equals the
    complexity difference between the shape and its base.
    """
    support = supporting_line(shape, line)
    on_line = line_section(shape, support)
    base_cells = tuple(sorted(shape.points - on_line))
    if not base_cells:
        raise GeometryError("the shape is a single line section; its base is empty")
    cells = as_points(shape)
    base_index = [i for i, g in enumerate(cells) if g in set(base_cells)]
    domain = config.enumeration_domain(cells)
    keys = _letter_keys(config, cells, domain.translates)

    offsets = tuple(psub(g, cells[0]) for g in cells)
    base_offsets = tuple(psub(base_cells[i], base_cells[0]) for i in range(len(base_cells)))
    grouped: dict[Pattern, list[Pattern]] = {}
    for key in sorted(keys):
        full = Pattern(tuple(zip(offsets, key)))
        restricted = Pattern(tuple(zip(base_offsets, (key[i] for i in base_index))))
        grouped.setdefault(restricted, []).append(full)
    table = ExtensionTable(
        cells, base_cells, {g: tuple(v) for g, v in grouped.items()}, domain.exactness
    )
    if domain.exactness is Exactness.EXACT:
        base_count = complexity(config, base_cells).count
        if table.excess() != len(keys) - base_count:
            raise SoundnessError(
                "extension-count identity failed: "
                f"excess {table.excess()} != {len(keys)} - {base_count}"
            )
    return table
