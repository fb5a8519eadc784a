"""Permutations of {0, ..., n-1} stored as tuples in one-line notation.

``p[i]`` is the image of ``i``.  Composition follows function composition:
``compose(p, q)`` applies ``q`` first.  User-facing cycle notation is 1-based.
"""

from __future__ import annotations

from typing import Iterable, Sequence

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    return tuple(p[i] for i in q)


def compose_all(n: int, perms: Iterable[Perm]) -> Perm:
    out = identity(n)
    for p in perms:
        out = compose(out, p)
    return out


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def transposition(n: int, i: int, j: int) -> Perm:
    p = list(range(n))
    p[i], p[j] = p[j], p[i]
    return tuple(p)


def is_permutation(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def cycles(p: Perm) -> list[tuple[int, ...]]:
    """All cycles of ``p`` including fixed points, each starting at its minimum."""
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = p[i]
        out.append(tuple(cyc))
    return out


def cycle_type(p: Perm) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in cycles(p)), reverse=True))


def is_transposition(p: Perm) -> bool:
    return cycle_type(p)[:2] == (2, 1) or cycle_type(p) == (2,)


def from_cycles(n: int, cycs: Iterable[Sequence[int]]) -> Perm:
    """Build a permutation from 1-based cycles, e.g. ``[[1, 2], [3, 4]]``."""
    p = list(range(n))
    used: set[int] = set()
    for cyc in cycs:
        cyc = [c - 1 for c in cyc]
        for c in cyc:
            if not 0 <= c < n:
                raise ValueError(f"point {c + 1} out of range for degree {n}")
            if c in used:
                raise ValueError(f"point {c + 1} repeated in cycle notation")
            used.add(c)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            p[a] = b
    return tuple(p)


def to_cycles(p: Perm) -> list[list[int]]:
    """Nontrivial cycles in 1-based notation."""
    return [[i + 1 for i in c] for c in cycles(p) if len(c) > 1]


def format_cycles(p: Perm) -> str:
    cs = to_cycles(p)
    if not cs:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cs)


def orbits(n: int, gens: Iterable[Perm]) -> list[frozenset[int]]:
    """Orbits of the group generated by ``gens`` acting on range(n)."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for i, j in enumerate(g):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
    groups: dict[int, set[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), set()).add(i)
    return sorted((frozenset(g) for g in groups.values()), key=min)


def num_orbits(n: int, gens: Iterable[Perm]) -> int:
    return len(orbits(n, gens))
