"""OEIS b-file reading and writing.

A b-file is plain text with one ``index value`` pair per line; ``#`` lines
and blank lines are ignored.  Indices must be strictly increasing.
"""

from __future__ import annotations

import urllib.request
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Sequence, Tuple

from .errors import TribautoError

OEIS_URL = "https://oeis.org/{anum}/b{digits}.txt"


class BFileError(TribautoError, ValueError):
    pass


@dataclass(frozen=True)
class BFile:
    entries: Tuple[Tuple[int, int], ...]

    @property
    def values(self) -> List[int]:
        return [v for _, v in self.entries]

    def __len__(self):
        return len(self.entries)


def parse(text: str) -> BFile:
    entries = []
    last = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) < 2:
            raise BFileError(f"line {lineno}: expected 'index value', got {raw!r}")
        try:
            index, value = int(parts[0]), int(parts[1])
        except ValueError:
            raise BFileError(f"line {lineno}: non-integer field in {raw!r}") from None
        if last is not None and index <= last:
            raise BFileError(f"line {lineno}: index {index} does not increase past {last}")
        entries.append((index, value))
        last = index
    return BFile(tuple(entries))


def read(path) -> BFile:
    return parse(Path(path).read_text(encoding="utf-8"))


def format_bfile(values: Sequence[int], header: Iterable[str] = (), offset: int = 1) -> str:
    lines = [f"# {h}" for h in header]
    lines += [f"{offset + i} {v}" for i, v in enumerate(values)]
    return "\n".join(lines) + "\n"


def compare_index_lists(computed: Sequence[int], bfile: BFile, n_max: int, value_shift: int = 0):
    """Compare a computed increasing index list with a b-file of such indices.

    Only the overlapping range is compared: values up to ``n_max`` and up to
    the b-file's last value.  ``value_shift`` is added to each computed value
    first, for b-files indexing the underlying sequence differently.
    Returns ``(overlap, first_mismatch)``; the mismatch is
    ``(position, expected, computed)`` with ``expected`` or ``computed``
    ``None`` when one list runs out first.
    """
    if not bfile.entries:
        return 0, None
    cutoff = min(n_max + value_shift, bfile.values[-1])
    ours = [v + value_shift for v in computed if v + value_shift <= cutoff]
    theirs = [v for v in bfile.values if v <= cutoff]
    for pos in range(max(len(ours), len(theirs))):
        a = theirs[pos] if pos < len(theirs) else None
        b = ours[pos] if pos < len(ours) else None
        if a != b:
            return pos, (pos, a, b)
    return len(theirs), None


def fetch(anum: str, dest, timeout: float = 30.0) -> Path:  # pragma: no cover - network
    """Download ``b<digits>.txt`` for an A-number to ``dest``."""
    anum = anum.upper()
    url = OEIS_URL.format(anum=anum, digits=anum[1:])
    with urllib.request.urlopen(url, timeout=timeout) as response:
        data = response.read()
    dest = Path(dest)
    dest.write_bytes(data)
    return dest
