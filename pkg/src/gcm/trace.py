"""The linear system of trace elements over the monomial basis of degree m.

A monomial z_{1,g_1} ... z_{m,g_m} is identified with the vertex (g_1, ..., g_m).
The trace element a tr(b) c for the window [k, l) is the sum over h in G of the
monomials obtained by left-multiplying the inside block g_k..g_{l-1} by h.
All arithmetic here is over the integers or Fractions.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import config
from .errors import DimensionMismatch, ParseError, TooLarge, UnknownRow
from .graph import GcmGraph, windows
from .groups import GroupTable, build_group


@dataclass(frozen=True, order=True)
class TraceRow:
    window: tuple[int, int]
    outside: tuple[int, ...]  # g_1..g_{k-1} followed by g_l..g_m
    inside: tuple[int, ...]  # starts with the identity once canonical


class Infeasible:
    """Returned by express_monomial when the target is outside the row space."""

    def __repr__(self) -> str:
        return "Infeasible"

    def __bool__(self) -> bool:
        return False


INFEASIBLE = Infeasible()


class TraceSystem:
    def __init__(self, group: GroupTable, m: int, rows: list[TraceRow]):
        self.group = group
        self.m = m
        self.rows = rows
        self.num_columns = group.order**m
        self._index = {r: i for i, r in enumerate(rows)}

    def __len__(self) -> int:
        return len(self.rows)

    def canonical(self, window: tuple[int, int], outside: Sequence[int], inside: Sequence[int]) -> TraceRow:
        k, l = window
        if not 1 <= k < l <= self.m + 1:
            raise UnknownRow(f"bad window [{k},{l})")
        if len(inside) != l - k or len(outside) != self.m - (l - k):
            raise UnknownRow("block lengths do not match the window")
        G = self.group
        lead = int(G.inv[inside[0]])
        return TraceRow((k, l), tuple(int(x) for x in outside), tuple(G.mul(lead, x) for x in inside))

    def row_index(self, row: TraceRow) -> int:
        try:
            return self._index[row]
        except KeyError:
            raise UnknownRow(f"{row} is not a row of this system") from None

    def expand(self, row: TraceRow) -> list[int]:
        """Column indices of the |G| monomials in the row."""
        k, l = row.window
        G = self.group
        out = []
        for h in range(G.order):
            coords = list(row.outside[: k - 1]) + [G.mul(h, x) for x in row.inside] + list(row.outside[k - 1:])
            out.append(sum(c * G.order**i for i, c in enumerate(coords)))
        return out

    @cached_property
    def support(self) -> np.ndarray:
        """(rows, |G|) array of column indices."""
        return np.array([self.expand(r) for r in self.rows], dtype=np.int64)

    @cached_property
    def matrix(self) -> np.ndarray:
        """Dense 0/1 matrix B."""
        b = np.zeros((len(self.rows), self.num_columns), dtype=np.int64)
        b[np.repeat(np.arange(len(self.rows)), self.group.order), self.support.ravel()] = 1
        return b

    def describe(self, row: TraceRow) -> str:
        names = self.group.names
        k, l = row.window
        left = [f"z{i + 1},{names[g]}" for i, g in enumerate(row.outside[: k - 1])]
        mid = [f"z{k + i},{names[g]}" for i, g in enumerate(row.inside)]
        right = [f"z{l + i},{names[g]}" for i, g in enumerate(row.outside[k - 1:])]
        return " ".join(left + ["tr[" + " ".join(mid) + "]"] + right)


def build_trace_system(G: GroupTable, m: int, exact_cap: int = config.EXACT_CAP) -> TraceSystem:
    n = G.order
    if n**m > exact_cap:
        raise TooLarge(f"|G|^m = {n**m} exceeds the exact cap {exact_cap}")
    rows = []
    for k, l in windows(m):
        for outside in np.ndindex(*([n] * (m - (l - k)))):
            for rest in np.ndindex(*([n] * (l - k - 1))):
                rows.append(TraceRow((k, l), tuple(int(x) for x in outside), (0,) + tuple(int(x) for x in rest)))
    return TraceSystem(G, m, rows)


def verify_btb_identity(system: TraceSystem, graph: GcmGraph) -> bool:
    """Exact check of B^T B = C(m+1,2) I + A."""
    if (system.group.order, system.m) != (graph.n, graph.m) or system.num_columns != graph.num_vertices:
        raise DimensionMismatch("system and graph come from different (G, m)")
    B = system.matrix
    lhs = B.T @ B
    rhs = math.comb(graph.m + 1, 2) * np.eye(graph.num_vertices, dtype=np.int64) + graph.adjacency.astype(np.int64)
    return bool(np.array_equal(lhs, rhs))


# --- exact elimination ---------------------------------------------------------------


def bareiss_rank(rows: Iterable[Sequence[int]]) -> int:
    """Rank over Q by fraction-free elimination; pivot rows chosen by sparsity."""
    mat = [list(map(int, r)) for r in rows]
    mat = [r for r in mat if any(r)]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        candidates = [i for i in range(rank, len(mat)) if mat[i][col]]
        if not candidates:
            continue
        piv = min(candidates, key=lambda i: (sum(1 for x in mat[i] if x), i))
        mat[rank], mat[piv] = mat[piv], mat[rank]
        p = mat[rank][col]
        prow = mat[rank]
        for i in range(rank + 1, len(mat)):
            row = mat[i]
            a = row[col]
            if a:
                mat[i] = [(p * x - a * y) // prev for x, y in zip(row, prow)]
            elif p != prev:
                mat[i] = [(p * x) // prev for x in row]
        prev = p
        rank += 1
        if rank == len(mat):
            break
    return rank


def rational_rank(system: TraceSystem) -> int:
    return bareiss_rank(system.matrix.tolist())


def solve_rational(A: Sequence[Sequence[int]], b: Sequence[int]) -> list[Fraction] | None:
    """One solution of A y = b over Q (free variables set to 0), or None."""
    rows = [[Fraction(x) for x in r] + [Fraction(v)] for r, v in zip(A, b)]
    ncols = len(rows[0]) - 1 if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    if any(row[-1] != 0 and not any(row[:-1]) for row in rows):
        return None
    y = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        y[c] = rows[i][-1]
    return y


def express_monomial(system: TraceSystem, target: Sequence[int]) -> list[tuple[Fraction, TraceRow]] | Infeasible:
    """Write the target monomial as a rational combination of trace rows."""
    if len(target) != system.m:
        raise DimensionMismatch(f"target needs {system.m} coordinates")
    n = system.group.order
    t = sum(int(g) * n**i for i, g in enumerate(target))
    e = [0] * system.num_columns
    e[t] = 1
    y = solve_rational(system.matrix.T.tolist(), e)
    if y is None:
        return INFEASIBLE
    combo = [(c, row) for c, row in zip(y, system.rows) if c != 0]
    assert expand_combination(system, combo) == {t: Fraction(1)}
    return combo


def expand_combination(system: TraceSystem, terms: Iterable[tuple[Fraction, TraceRow]]) -> dict[int, Fraction]:
    acc: dict[int, Fraction] = {}
    for coeff, row in terms:
        system.row_index(row)
        for col in system.expand(row):
            acc[col] = acc.get(col, Fraction(0)) + Fraction(coeff)
    return {c: v for c, v in acc.items() if v != 0}


def verify_identity(system: TraceSystem, terms: Sequence[tuple[Fraction, TraceRow]],
                    claimed: tuple[Fraction, Sequence[int]] | None) -> bool:
    """True when sum(coeff * row) equals claimed_coeff * monomial exactly."""
    lhs = expand_combination(system, terms)
    if claimed is None or claimed[0] == 0:
        return lhs == {}
    coeff, target = claimed
    n = system.group.order
    t = sum(int(g) * n**i for i, g in enumerate(target))
    return lhs == {t: Fraction(coeff)}


# --- fixtures ------------------------------------------------------------------------


@dataclass
class IdentityFixture:
    group: GroupTable
    m: int
    terms: list[tuple[Fraction, TraceRow]]
    target_coeff: Fraction
    target: tuple[int, ...]
    system: TraceSystem


def parse_identity(data: dict) -> IdentityFixture:
    try:
        G = build_group(data["group"])
        m = int(data["m"])
        rename = {v: k for k, v in data.get("rename", {}).items()}
        system = build_trace_system(G, m)

        def elem(name: str) -> int:
            return G.index(rename.get(name, name))

        terms = []
        for t in data["terms"]:
            row = system.canonical(tuple(t["window"]), [elem(x) for x in t["outside"]], [elem(x) for x in t["inside"]])
            terms.append((Fraction(t["coeff"]), row))
        target = tuple(elem(x) for x in data["target_tuple"])
        return IdentityFixture(G, m, terms, Fraction(data["target_coeff"]), target, system)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad identity fixture: {exc}") from None


def load_identity(path: str | Path | None = None) -> IdentityFixture:
    """Load an identity fixture; the bundled C3 example is used when no path is given."""
    bundled = resources.files("gcm.data")
    if path is None:
        text = bundled.joinpath("example23.json").read_text()
    elif not Path(path).exists() and bundled.joinpath(str(path)).is_file():
        text = bundled.joinpath(str(path)).read_text()
    else:
        text = Path(path).read_text()
    return parse_identity(json.loads(text))


def check_fixture(fx: IdentityFixture) -> bool:
    return verify_identity(fx.system, fx.terms, (fx.target_coeff, fx.target))
