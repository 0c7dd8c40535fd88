"""Built-in posets used by the CLI and the verification campaigns."""

from __future__ import annotations

from . import kernels
from .poset import Poset, validate_up_rows


def chain(n: int) -> Poset:
    rows = [((1 << n) - 1) & ~((1 << i) - 1) for i in range(n)]
    return validate_up_rows(rows, [str(i) for i in range(n)])


def antichain(n: int) -> Poset:
    return validate_up_rows([1 << i for i in range(n)], [chr(ord("a") + i) for i in range(n)])


def from_covers(n: int, covers, labels=None) -> Poset:
    rows = [1 << i for i in range(n)]
    for a, b in covers:
        rows[a] |= 1 << b
    return validate_up_rows(kernels.transitive_closure(rows), labels)


def diamond() -> Poset:
    return from_covers(4, [(0, 1), (0, 2), (1, 3), (2, 3)], ["bot", "a", "b", "top"])


def m3() -> Poset:
    covers = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]
    return from_covers(5, covers, ["bot", "a", "b", "c", "top"])


def n5() -> Poset:
    covers = [(0, 1), (1, 4), (0, 2), (2, 3), (3, 4)]
    return from_covers(5, covers, ["bot", "a", "b", "c", "top"])


def fence4() -> Poset:
    # zigzag: 0 < 1 > 2 < 3
    return from_covers(4, [(0, 1), (2, 1), (2, 3)], ["p", "q", "r", "s"])


def cube() -> Poset:
    covers = [
        (0, 1), (0, 2), (0, 4),
        (1, 3), (1, 5), (2, 3), (2, 6), (4, 5), (4, 6),
        (3, 7), (5, 7), (6, 7),
    ]
    labels = ["000", "001", "010", "011", "100", "101", "110", "111"]
    return from_covers(8, covers, labels)


CATALOG: dict[str, Poset] = {
    **{f"chain{i}": chain(i) for i in range(1, 6)},
    **{f"antichain{i}": antichain(i) for i in range(1, 5)},
    "diamond": diamond(),
    "M3": m3(),
    "N5": n5(),
    "fence4": fence4(),
    "cube": cube(),
}


def catalog_names() -> list[str]:
    return list(CATALOG)


def catalog_poset(name: str) -> Poset:
    try:
        return CATALOG[name]
    except KeyError:
        known = ", ".join(CATALOG)
        raise KeyError(f"unknown catalog poset {name!r}; known: {known}") from None
