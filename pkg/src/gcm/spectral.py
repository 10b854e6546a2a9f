"""Eigenvalues and regularity of G_m(G).

Abelian groups get the exact integer spectrum from characters: a character
tuple (chi_1, ..., chi_m) contributes the eigenvalue -C(m+1,2) + |G| * n_chi,
where n_chi counts windows [k, l) whose partial product chi_k ... chi_{l-1}
is trivial.  Other groups get the smallest eigenvalue from Lanczos.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.sparse

from . import config
from .errors import NoConvergence, TooLarge
from .graph import GcmGraph, build_graph
from .groups import GroupTable, invariant_factors

INTEGER_TOL = 1e-6


@dataclass(frozen=True)
class ExactSpectrum:
    pairs: tuple[tuple[int, int], ...]  # (eigenvalue, multiplicity), descending

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    @property
    def size(self) -> int:
        return sum(mult for _, mult in self.pairs)

    @property
    def trace(self) -> int:
        return sum(lam * mult for lam, mult in self.pairs)

    @property
    def trace_of_square(self) -> int:
        return sum(lam * lam * mult for lam, mult in self.pairs)

    @property
    def lambda_min(self) -> int:
        return self.pairs[-1][0]

    @property
    def lambda_max(self) -> int:
        return self.pairs[0][0]

    def to_csv(self) -> str:
        return "".join(f"{lam},{mult}\n" for lam, mult in self.pairs)


def _character_table(G: GroupTable) -> np.ndarray:
    """Multiplication table of the character group, indexed by residue tuples."""
    moduli = invariant_factors(G).moduli
    res = [tuple(int(r) for r in t) for t in np.ndindex(*moduli)] if moduli else [()]
    pos = {r: i for i, r in enumerate(res)}
    n = len(res)
    table = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(res):
        for j, b in enumerate(res):
            table[i, j] = pos[tuple((x + y) % q for x, y, q in zip(a, b, moduli))]
    return table


def trivial_window_counts(G: GroupTable, m: int, oracle_cap: int = config.ORACLE_CAP) -> np.ndarray:
    """n_chi for every character tuple, via prefix products (index 0 is the trivial character)."""
    n = G.order
    if n**m > oracle_cap:
        raise TooLarge(f"|G|^m = {n**m} exceeds cap {oracle_cap}")
    table = _character_table(G)
    idx = np.arange(n**m, dtype=np.int64)
    prefix = np.zeros((n**m, m + 1), dtype=np.int64)
    for a in range(m):
        chi_a = (idx // n**a) % n
        prefix[:, a + 1] = table[prefix[:, a], chi_a]
    counts = np.zeros(n**m, dtype=np.int64)
    for a in range(m + 1):
        for b in range(a + 1, m + 1):
            counts += prefix[:, a] == prefix[:, b]
    return counts


def abelian_spectrum(G: GroupTable, m: int, oracle_cap: int = config.ORACLE_CAP) -> ExactSpectrum:
    counts = trivial_window_counts(G, m, oracle_cap)
    c = math.comb(m + 1, 2)
    hist = Counter((-c + G.order * counts).tolist())
    return ExactSpectrum(tuple(sorted(hist.items(), reverse=True)))


def predicted_srg_spectrum(n: int) -> dict[int, int]:
    """Eigenvalues of G_2(G) for |G| = n, dropping zero multiplicities."""
    spec = {3 * (n - 1): 1, n - 3: 3 * (n - 1), -3: n * n - 3 * n + 2}
    out: dict[int, int] = {}
    for lam, mult in spec.items():
        if mult:
            out[lam] = out.get(lam, 0) + mult
    return out


# --- numeric smallest eigenvalue ---------------------------------------------


@dataclass(frozen=True)
class NumericEigenvalue:
    value: float
    residual: float
    iterations: int

    @property
    def bracket(self) -> tuple[float, float]:
        """An interval that provably contains an eigenvalue of A."""
        return (self.value - self.residual, self.value + self.residual)

    @property
    def rounded(self) -> int | float:
        r = round(self.value)
        return int(r) if abs(self.value - r) < INTEGER_TOL else self.value


def sparse_adjacency(graph: GcmGraph) -> scipy.sparse.csr_matrix:
    t = graph.neighbor_table
    rows = np.repeat(np.arange(graph.num_vertices), graph.degree)
    data = np.ones(rows.size, dtype=np.float64)
    return scipy.sparse.csr_matrix((data, (rows, t.ravel())), shape=(graph.num_vertices,) * 2)


def lanczos_min(A, seed: int = 0, tol: float = 1e-10, max_iter: int | None = None,
                check_every: int = 5) -> NumericEigenvalue:
    """Smallest eigenvalue of a symmetric operator by Lanczos with full reorthogonalization."""
    n = A.shape[0]
    if max_iter is None:
        max_iter = 10 * n
    rng = np.random.default_rng(seed)
    v = np.ones(n) + 0.5 * rng.standard_normal(n)
    v /= np.linalg.norm(v)
    basis = [v]
    alphas: list[float] = []
    betas: list[float] = []
    scale = max(1.0, float(abs(A).sum(axis=1).max()))
    for it in range(1, min(max_iter, n) + 1):
        w = A @ basis[-1]
        alpha = float(basis[-1] @ w)
        Q = np.array(basis)
        w -= Q.T @ (Q @ w)
        w -= Q.T @ (Q @ w)
        beta = float(np.linalg.norm(w))
        alphas.append(alpha)
        breakdown = beta < 1e-12 * scale
        if breakdown or it % check_every == 0 or it == min(max_iter, n):
            theta, vecs = scipy.linalg.eigh_tridiagonal(np.array(alphas), np.array(betas),
                                                        select="i", select_range=(0, 0))
            y = vecs[:, 0]
            residual = 0.0 if breakdown else abs(beta * y[-1])
            if breakdown or residual <= tol * scale:
                # recompute the residual from the Ritz vector itself
                x = np.array(basis).T @ y
                true_res = float(np.linalg.norm(A @ x - theta[0] * x))
                return NumericEigenvalue(float(theta[0]), true_res, it)
        if breakdown:
            break
        betas.append(beta)
        basis.append(w / beta)
    raise NoConvergence(f"Lanczos did not converge in {max_iter} iterations")


def lambda_min_numeric(graph: GcmGraph, numeric_cap: int = config.NUMERIC_CAP,
                       seed: int = 0) -> NumericEigenvalue:
    if graph.num_vertices > numeric_cap:
        raise TooLarge(f"{graph.num_vertices} vertices exceeds the numeric cap {numeric_cap}")
    return lanczos_min(sparse_adjacency(graph), seed=seed, max_iter=10 * graph.num_vertices)


# --- regularity ----------------------------------------------------------------


@dataclass
class RegularityReport:
    vertices: int
    degree_observed: list[int]
    a_observed: list[int]
    c_observed: list[int] | None
    expected: dict[str, int] = field(default_factory=dict)

    @property
    def flags(self) -> dict[str, bool]:
        out = {
            "n": self.vertices == self.expected["n"],
            "k": self.degree_observed == [self.expected["k"]],
            "a": self.a_observed == [self.expected["a"]],
        }
        if self.c_observed is not None:
            # a complete graph has no non-adjacent pairs, so c holds vacuously
            out["c"] = self.c_observed in ([], [self.expected["c"]])
        return out

    @property
    def ok(self) -> bool:
        return all(self.flags.values())

    @property
    def parameters(self) -> tuple[int, ...]:
        p = [self.vertices, _single(self.degree_observed), _single(self.a_observed)]
        if self.c_observed is not None:
            p.append(_single(self.c_observed) if self.c_observed else None)
        return tuple(p)

    def to_dict(self) -> dict:
        return {
            "parameters": list(self.parameters),
            "expected": self.expected,
            "flags": self.flags,
            "ok": self.ok,
        }


def _single(values: list[int]) -> int:
    return values[0] if len(values) == 1 else -1


def check_regularity(graph: GcmGraph) -> RegularityReport:
    """Exhaustive edge regularity, plus strong regularity when m = 2."""
    A = graph.adjacency.astype(np.float32)
    common = (A @ A).round().astype(np.int64)  # float32 is exact for counts below 2^24
    deg = sorted(set(np.diag(common).tolist()))
    adj = graph.adjacency
    a_vals = sorted(set(common[adj].tolist()))
    c_vals = None
    if graph.m == 2:
        non = ~adj
        np.fill_diagonal(non, False)
        c_vals = sorted(set(common[non].tolist()))
    n, m = graph.n, graph.m
    expected = {"n": n**m, "k": math.comb(m + 1, 2) * (n - 1), "a": n + 2 * m - 4}
    if m == 2:
        expected["c"] = 6
    return RegularityReport(graph.num_vertices, deg, a_vals, c_vals, expected)


# --- the lambda_min question -------------------------------------------------------


class Verdict(enum.Enum):
    STRICTLY_ABOVE = "StrictlyAbove"
    AT_BOUND = "AtBound"
    BELOW = "Below"


@dataclass
class ProbeResult:
    group: str
    m: int
    verdict: Verdict
    bound: int
    lambda_min: float | int
    exact: bool
    bracket: tuple[float, float] | None = None

    @property
    def trace_space_full(self) -> bool:
        """T_G(m) = Q_G(m) exactly when lambda_min > -C(m+1,2)."""
        return self.verdict is Verdict.STRICTLY_ABOVE

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "m": self.m,
            "verdict": self.verdict.value,
            "bound": -self.bound,
            "lambda_min": self.lambda_min,
            "exact": self.exact,
            "bracket": list(self.bracket) if self.bracket else None,
        }


def question26_probe(G: GroupTable, m: int, numeric_cap: int = config.NUMERIC_CAP,
                     seed: int = 0) -> ProbeResult:
    c = math.comb(m + 1, 2)
    if G.is_abelian:
        lam = abelian_spectrum(G, m).lambda_min
        verdict = Verdict.STRICTLY_ABOVE if lam > -c else Verdict.AT_BOUND if lam == -c else Verdict.BELOW
        return ProbeResult(G.label, m, verdict, c, lam, True)
    graph = build_graph(G, m)
    est = lambda_min_numeric(graph, numeric_cap, seed)
    lo, hi = est.bracket
    if abs(est.value + c) < INTEGER_TOL:
        verdict = Verdict.AT_BOUND
    elif hi < -c:
        verdict = Verdict.BELOW
    elif lo > -c:
        verdict = Verdict.STRICTLY_ABOVE
    else:
        verdict = Verdict.AT_BOUND
    return ProbeResult(G.label, m, verdict, c, est.rounded, False, est.bracket)
