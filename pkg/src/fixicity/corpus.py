"""The built-in corpus of test graphs and corpus files.

A corpus file holds one entry per line: either a family spec such as
``px:3..5,1..4`` (ranges drop invalid combinations) or a graph6 string.
Lines starting with ``#`` and blank lines are ignored.  Expansion keeps the
first graph of every isomorphism class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .autsearch import canonical_form
from .families import SpecError, parse_family_spec
from .graph import Digraph, FormatError, Graph, graph6_decode

DEFAULT_SPECS = (
    "sporadic:all",
    "px:3..8,1..7",
    "spx:3..8,1..7",
    "dw:3..10",
    "sdw:3..10",
    "prism:3..12",
    "moebius:2..12",
    "kneser:5,2",
    "kneser:7,3",
    "cube:1..4",
    "gp:3..12,1..5",
    "circ:6..16,1,2",
    "circ:8..16,1,3",
    "circ:7,1,2",
    "circ:9,1,3",
    "circ:10,1,3",
    "circ:12,1,5",
    "circ:13,1,5",
    "circ:10,2,5",
)


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    graph: Graph


@dataclass
class CorpusSpec:
    entries: tuple[str, ...] = DEFAULT_SPECS
    dedupe: bool = True
    duplicates: list[tuple[str, str]] = field(default_factory=list)

    @classmethod
    def from_lines(cls, lines: Iterable[str]) -> "CorpusSpec":
        keep = []
        for raw in lines:
            line = raw.strip()
            if line and not line.startswith("#"):
                keep.append(line)
        return cls(tuple(keep))

    def expand(self) -> list[CorpusEntry]:
        """Build every graph in order, dropping later isomorphic copies."""
        out: list[CorpusEntry] = []
        seen: dict[str, str] = {}
        self.duplicates = []
        for lineno, item in enumerate(self.entries, start=1):
            for name, g in _expand_item(item, lineno):
                if self.dedupe:
                    key = canonical_form(g)[1]
                    if key in seen:
                        self.duplicates.append((name, seen[key]))
                        continue
                    seen[key] = name
                out.append(CorpusEntry(name, g))
        return out


def _expand_item(item: str, lineno: int) -> list[tuple[str, Graph]]:
    if ":" in item:
        try:
            members = parse_family_spec(item, skip_invalid=True)
        except SpecError as e:
            raise SpecError(f"line {lineno}: {e}", e.token) from None
        out = []
        for m in members:
            g = m.build()
            if isinstance(g, Digraph):
                raise SpecError(f"line {lineno}: {m.name} is a digraph, not a graph", m.name)
            out.append((m.name, g))
        return out
    try:
        return [(item, graph6_decode(item))]
    except FormatError as e:
        raise FormatError(f"line {lineno}: {e}") from None


def default_corpus() -> list[CorpusEntry]:
    return CorpusSpec().expand()
