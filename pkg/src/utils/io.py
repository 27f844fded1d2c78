"""Matrix text format shared by every command.

Integer matrices: a header line ``m n`` followed by m lines of n integers.
Sign matrices: rows of ``+ - 0`` tokens, optionally preceded by an ``n r``
header. ``#`` starts a comment anywhere on a line.
"""
from pathlib import Path
from typing import List, Sequence, Tuple

from ..errors import MatrixFormatError
from ..exactmat import IntMatrix

SIGN_TOKENS = {"+": 1, "-": -1, "0": 0}


def _content_lines(text: str) -> List[Tuple[int, List[str]]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if tokens:
            out.append((lineno, tokens))
    return out


def _header(lines, path) -> Tuple[int, int]:
    lineno, tokens = lines[0]
    if len(tokens) != 2:
        raise MatrixFormatError("header must be two integers 'rows cols'", lineno, path)
    try:
        rows, cols = int(tokens[0]), int(tokens[1])
    except ValueError:
        raise MatrixFormatError(f"bad header {' '.join(tokens)!r}", lineno, path) from None
    if rows < 0 or cols < 0:
        raise MatrixFormatError("negative dimensions in header", lineno, path)
    return rows, cols


def parse_matrix(text: str, path: str | None = None) -> IntMatrix:
    lines = _content_lines(text)
    if not lines:
        raise MatrixFormatError("empty matrix file", None, path)
    rows, cols = _header(lines, path)
    body = lines[1:]
    if len(body) != rows:
        last = body[-1][0] if body else lines[0][0]
        raise MatrixFormatError(f"expected {rows} rows, found {len(body)}", last, path)
    data = []
    for lineno, tokens in body:
        if len(tokens) != cols:
            raise MatrixFormatError(f"expected {cols} entries, found {len(tokens)}", lineno, path)
        try:
            data.append([int(t) for t in tokens])
        except ValueError:
            raise MatrixFormatError(f"non-integer entry in {' '.join(tokens)!r}", lineno, path) from None
    return IntMatrix.from_rows(data, cols=cols)


def read_matrix(path: str) -> IntMatrix:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise MatrixFormatError(f"cannot read: {e.strerror}", None, path) from e
    return parse_matrix(text, path)


def format_matrix(M: IntMatrix) -> str:
    lines = [f"{M.rows} {M.cols}"]
    lines += [" ".join(str(x) for x in M.row(i)) for i in range(M.rows)]
    return "\n".join(lines) + "\n"


def write_matrix(M: IntMatrix, path: str) -> None:
    Path(path).write_text(format_matrix(M))


def parse_sign_rows(text: str, path: str | None = None) -> List[List[int]]:
    lines = _content_lines(text)
    if not lines:
        raise MatrixFormatError("empty sign matrix file", None, path)
    expected = None
    if all(t.lstrip("-").isdigit() and t not in SIGN_TOKENS for t in lines[0][1]):
        expected = _header(lines, path)
        lines = lines[1:]
    rows = []
    for lineno, tokens in lines:
        bad = [t for t in tokens if t not in SIGN_TOKENS]
        if bad:
            raise MatrixFormatError(f"unknown sign token {bad[0]!r} (use + - 0)", lineno, path)
        if rows and len(tokens) != len(rows[0]):
            raise MatrixFormatError(f"expected {len(rows[0])} tokens, found {len(tokens)}", lineno, path)
        rows.append([SIGN_TOKENS[t] for t in tokens])
    if expected is not None and (len(rows), len(rows[0]) if rows else 0) != expected:
        raise MatrixFormatError(f"header says {expected[0]}x{expected[1]}, body is "
                                f"{len(rows)}x{len(rows[0]) if rows else 0}", None, path)
    return rows


def read_sign_rows(path: str) -> List[List[int]]:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise MatrixFormatError(f"cannot read: {e.strerror}", None, path) from e
    return parse_sign_rows(text, path)


def format_sign_rows(rows: Sequence[Sequence[int]]) -> str:
    token = {1: "+", -1: "-", 0: "0"}
    return "\n".join(" ".join(token[x] for x in r) for r in rows) + "\n"
