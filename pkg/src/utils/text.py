from typing import Iterable, Sequence


def _monomial(exponents: Sequence[int]) -> str:
    parts = []
    for i, e in enumerate(exponents, start=1):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts) or "1"


def binomial(v: Sequence[int]) -> str:
    # x^{v+} - x^{v-}, variables numbered from 1
    plus = [x if x > 0 else 0 for x in v]
    minus = [-x if x < 0 else 0 for x in v]
    return f"{_monomial(plus)} - {_monomial(minus)}"


def sign_token(x: int) -> str:
    return "+" if x > 0 else ("-" if x < 0 else "0")


def sign_string(v: Sequence[int]) -> str:
    return "".join(sign_token(x) for x in v)


def one_based(indices: Iterable[int]) -> str:
    return "{" + ",".join(str(i + 1) for i in indices) + "}"


def parse_supports(text: str) -> list[tuple[int, ...]]:
    """'1,2,3,4;1,2,4,9' -> [(0,1,2,3), (0,1,3,8)]."""
    supports = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if chunk:
            supports.append(tuple(sorted(int(x) - 1 for x in chunk.split(","))))
    return supports
