"""Text format for groups.

::

    # comments run to end of line; ';' may stand in for a line break
    group A
    dimV 4
    dimW 2
    bracket w1
    0 1 0 0
    -1 0 0 0
    0 0 0 1
    0 0 -1 0
    bracket w2
    ...

Each ``bracket`` block gives the coordinate matrix of the bracket along one
basis vector of the centre, one row per line.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import List, Optional, Tuple, Union

from .errors import ClassTwoError, GroupFileSyntaxError, NotAlternating
from .groups import ClassTwoGroup, make_group
from .linalg import RatMatrix, parse_rational

SHIPPED = ("paper-example.grp", "n21.grp", "n41.grp", "product-2x2.grp")


@dataclass(frozen=True)
class GroupFile:
    name: str
    dimV: int
    dimW: int
    labels: Tuple[str, ...]
    matrices: Tuple[RatMatrix, ...]
    # (line, col) of every matrix entry, indexed [block][row][col]
    positions: Tuple = ()

    def to_group(self) -> ClassTwoGroup:
        try:
            return make_group(self.name, self.dimV, self.dimW, list(self.matrices))
        except NotAlternating as exc:
            if self.positions and exc.block is not None:
                line, col = self.positions[exc.block][exc.row][exc.col]
                raise NotAlternating(f"{exc} (line {line}, column {col})", exc.block,
                                     exc.row, exc.col) from None
            raise


def _logical_lines(text: str):
    """Yield lists of (token, line, col) per logical line."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        raw = raw.split("#", 1)[0]
        start = 0
        for segment in raw.split(";"):
            toks = []
            pos = 0
            while pos < len(segment):
                if segment[pos].isspace():
                    pos += 1
                    continue
                end = pos
                while end < len(segment) and not segment[end].isspace():
                    end += 1
                toks.append((segment[pos:end], lineno, start + pos + 1))
                pos = end
            if toks:
                yield toks
            start += len(segment) + 1


def _int_field(line, keyword):
    if len(line) != 2 or line[0][0] != keyword:
        tok, ln, col = line[0]
        raise GroupFileSyntaxError(f"expected '{keyword} <int>'", ln, col)
    tok, ln, col = line[1]
    if not tok.isdigit():
        raise GroupFileSyntaxError(f"expected a nonnegative integer, got {tok!r}", ln, col)
    return int(tok)


def parse_group_file(text: str) -> GroupFile:
    lines = list(_logical_lines(text))
    if not lines:
        raise GroupFileSyntaxError("empty group file", 1, 1)
    it = iter(lines)

    def nxt(what):
        try:
            return next(it)
        except StopIteration:
            last = lines[-1][-1]
            raise GroupFileSyntaxError(f"unexpected end of file, expected {what}",
                                       last[1], last[2] + len(last[0])) from None

    head = nxt("'group <name>'")
    if head[0][0] != "group" or len(head) != 2:
        raise GroupFileSyntaxError("expected 'group <name>'", head[0][1], head[0][2])
    name = head[1][0]
    dim_v = _int_field(nxt("'dimV <int>'"), "dimV")
    dim_w = _int_field(nxt("'dimW <int>'"), "dimW")
    labels, mats, positions = [], [], []
    for b in range(dim_w):
        hdr = nxt("'bracket <label>'")
        if hdr[0][0] != "bracket" or len(hdr) > 2:
            raise GroupFileSyntaxError("expected 'bracket <label>'", hdr[0][1], hdr[0][2])
        labels.append(hdr[1][0] if len(hdr) == 2 else f"w{b + 1}")
        rows, pos = [], []
        for r in range(dim_v):
            line = nxt(f"row {r + 1} of bracket {labels[-1]}")
            if len(line) != dim_v:
                raise GroupFileSyntaxError(
                    f"row {r + 1} of bracket {labels[-1]} has {len(line)} entries, expected {dim_v}",
                    line[0][1], line[0][2])
            vals = []
            for tok, ln, col in line:
                try:
                    vals.append(parse_rational(tok))
                except ClassTwoError:
                    raise GroupFileSyntaxError(f"not a rational number: {tok!r}", ln, col) from None
            rows.append(vals)
            pos.append([(ln, col) for _, ln, col in line])
        mats.append(RatMatrix.from_rows(rows, cols=dim_v) if dim_v else RatMatrix(0, 0))
        positions.append(pos)
    extra = next(it, None)
    if extra is not None:
        raise GroupFileSyntaxError(f"unexpected trailing content {extra[0][0]!r}",
                                   extra[0][1], extra[0][2])
    return GroupFile(name, dim_v, dim_w, tuple(labels), tuple(mats), tuple(positions))


def shipped_path(name: str) -> Optional[Path]:
    if name not in SHIPPED:
        return None
    return Path(str(resources.files("classtwo") / "data" / name))


def read_text(source: Union[str, Path]) -> str:
    p = Path(source)
    if not p.exists():
        alt = shipped_path(p.name)
        if alt is not None and str(source) == p.name:
            p = alt
    return p.read_text()


def parse_group(source: Union[str, Path], text: Optional[str] = None) -> ClassTwoGroup:
    """Parse and validate a group from a path (or from ``text`` if given)."""
    if text is None:
        source_str = str(source)
        text = source_str if "\n" in source_str else read_text(source)
    return parse_group_file(text).to_group()


def format_group(group: ClassTwoGroup, labels: Optional[List[str]] = None) -> str:
    labels = labels or [f"w{i + 1}" for i in range(group.dimW)]
    out = [f"group {group.name.replace(' ', '_')}", f"dimV {group.dimV}", f"dimW {group.dimW}"]
    for label, form in zip(labels, group.coords):
        out.append(f"bracket {label}")
        for i in range(group.dimV):
            out.append(" ".join(str(x) for x in form.matrix.row(i)))
    return "\n".join(out) + "\n"
