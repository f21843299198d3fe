"""Three-qubit concurrence lower bound tau_3 for X-states.

Each bipartition ij|k contributes six terms built from S = L (x) sigma_y, with
L running over the SO(4) generators on qubits i, j and sigma_y on qubit k. For
an X-state only the two generators whose nonzero entries sit on the
anti-diagonal can give a nonzero term; each of those touches two 2x2 blocks
m, m' and its sqrt-eigenvalues are sqrt(a_m b_m) +/- |c_m|.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .oracle import SIGMA_Y, concurrence_term_dense, num_qubits
from .xcore import XState

PARTITIONS: dict[str, tuple[tuple[int, ...], tuple[int, ...]]] = {
    "12|3": ((1, 2), (3,)),
    "13|2": ((1, 3), (2,)),
    "23|1": ((2, 3), (1,)),
}

# (row, col) of the -1 entry; the +1 sits at the transposed position.
_SO4_PAIRS = {1: (0, 3), 2: (1, 2), 3: (0, 1), 4: (0, 2), 5: (1, 3), 6: (2, 3)}

# Blocks touched by the two anti-diagonal generators, as produced by embed().
BLOCK_PAIRS: dict[tuple[str, int], tuple[int, int]] = {
    ("12|3", 1): (1, 2),
    ("12|3", 2): (3, 4),
    ("13|2", 1): (1, 3),
    ("13|2", 2): (2, 4),
    ("23|1", 1): (1, 4),
    ("23|1", 2): (2, 3),
}


def so_generators(dim: int) -> list[np.ndarray]:
    """Antisymmetric E_ab - E_ba generators of SO(dim), ordered by (a, b)."""
    gens = []
    for a, b in itertools.combinations(range(dim), 2):
        g = np.zeros((dim, dim))
        g[a, b], g[b, a] = -1.0, 1.0
        gens.append(g)
    return gens


def so4_generator(ell: int) -> np.ndarray:
    """L_1 has anti-diagonal (-1, 0, 0, 1), L_2 has (0, -1, 1, 0)."""
    r, c = _SO4_PAIRS[ell]
    g = np.zeros((4, 4))
    g[r, c], g[c, r] = -1.0, 1.0
    return g


def embed(op: np.ndarray, order: tuple[int, ...]) -> np.ndarray:
    """Reorder the tensor factors of ``op`` (acting on qubits ``order``) to 1..n."""
    n = len(order)
    if op.shape != (1 << n, 1 << n) or sorted(order) != list(range(1, n + 1)):
        raise ValueError("order must be a permutation of 1..n matching op")
    src = [q - 1 for q in order]
    axes = [src.index(q) for q in range(n)]
    t = op.reshape((2,) * (2 * n)).transpose(axes + [n + a for a in axes])
    return t.reshape(op.shape)


def is_anti_diagonal(m: np.ndarray, tol: float = 0.0) -> bool:
    dim = m.shape[0]
    mask = ~np.fliplr(np.eye(dim, dtype=bool))
    return bool(np.all(np.abs(m[mask]) <= tol))


@dataclass(frozen=True, eq=False)
class Generator:
    partition: str
    ell: int
    local: np.ndarray  # the SO(4) factor
    matrix: np.ndarray  # S in physical qubit order

    @property
    def key(self) -> tuple[str, int]:
        return (self.partition, self.ell)


def build_generators(n: int = 3) -> list[Generator]:
    if n != 3:
        raise ValueError("generators are built for three qubits only")
    gens = []
    for name, (pair, rest) in PARTITIONS.items():
        for ell in range(1, 7):
            local = so4_generator(ell)
            gens.append(Generator(name, ell, local, embed(np.kron(local, SIGMA_Y), pair + rest)))
    return gens


@dataclass(frozen=True)
class ConcurrenceReport:
    terms: dict[tuple[str, int], float]
    tau3: float

    @property
    def nonzero_term_count(self) -> int:
        return sum(1 for v in self.terms.values() if v > 0)


def pair_term(x: XState, m: int, m2: int) -> float:
    g = np.sqrt(x.a * x.b)
    cm = np.abs(x.c)
    roots = []
    for blk in (m, m2):
        roots += [g[blk - 1] + cm[blk - 1], abs(g[blk - 1] - cm[blk - 1])]
    roots.sort(reverse=True)
    return max(0.0, roots[0] - sum(roots[1:]))


def tau3_from_terms(terms) -> float:
    return math.sqrt(sum(v * v for v in terms) / 3.0)


def concurrence_terms(x: XState) -> ConcurrenceReport:
    if x.n != 3:
        raise ValueError(f"three-qubit state required (got n={x.n})")
    terms = {}
    for name in PARTITIONS:
        for ell in range(1, 7):
            pair = BLOCK_PAIRS.get((name, ell))
            terms[(name, ell)] = pair_term(x, *pair) if pair else 0.0
    return ConcurrenceReport(terms, tau3_from_terms(terms.values()))


def concurrence_terms_dense(rho: np.ndarray) -> dict[tuple[str, int], float]:
    """All 18 terms from the dense eigenproblem (works on stacks of matrices)."""
    if num_qubits(rho) != 3:
        raise ValueError("three-qubit matrix required")
    return {g.key: concurrence_term_dense(rho, g.matrix) for g in build_generators()}


def tau3(x: XState) -> float:
    return concurrence_terms(x).tau3


def _check_single(a: float, c: complex) -> tuple[float, float]:
    cm = abs(c)
    if not 0.0 <= a <= 1.0 or cm * cm > a * (1 - a) + 1e-12:
        raise ValueError("need 0 <= a <= 1 and |c|^2 <= a(1-a)")
    return float(a), cm


def tau3_dephasing_single_ghz(a: float, c: complex, p: float) -> float:
    """tau_3 of one GHZ-type block (a, 1-a, c) after dephasing of strength p."""
    a, c = _check_single(a, c)
    omega = c * (p - 1) ** 3
    gamma = a * (a - 1) * (p - 1) ** 3
    root = math.sqrt(max(gamma, 0.0))
    plus = a - a * a + c * (-omega + 2 * root)
    minus = a - a * a + c * (-omega - 2 * root)
    return max(0.0, math.sqrt(max(plus, 0.0)) - math.sqrt(max(minus, 0.0)))


def _tau3_depolarizing_expr(a: float, c: float, p: float) -> float:
    omega = c * (p - 1) ** 3
    q = (p - 2) * p * math.sqrt(4 * (p - 1) ** 2 * (a - a * a) - p * (p - 2))
    gamma = (a * (p - 2) ** 3 + (a - 1) * p**3) * ((a - 1) * (p - 2) ** 3 + a * p**3)
    # gamma <= 0 (it is -64 a'b'), so the cross term is sqrt(|omega^2 gamma|)
    cross = math.sqrt(abs(omega * omega * gamma)) / 4
    base = omega * omega - gamma / 64
    return q / 4 - math.sqrt(max(base - cross, 0.0)) + math.sqrt(max(base + cross, 0.0))


def tau3_depolarizing_single_ghz(a: float, c: complex, p: float) -> float:
    """tau_3 of one GHZ-type block (a, 1-a, c) after depolarizing of strength p."""
    a, c = _check_single(a, c)
    return max(0.0, _tau3_depolarizing_expr(a, c, p))


def classify_balance(x: XState, generator: Generator, tol: float = 0.0) -> str:
    """'balanced' if every nonzero diagonal entry of rho S rho* S has a nonzero partner.

    Works on the sparsity pattern only: entries are treated as nonzero when
    structurally present, so accidental cancellations are ignored.
    """
    rho = np.abs(x.to_dense()) > tol
    s = np.abs(generator.matrix) > 0
    step = lambda u, v: (u.astype(int) @ v.astype(int)) > 0  # noqa: E731
    pattern = reduce(step, [rho, s, rho, s])
    dim = pattern.shape[0]
    for m in range(dim):
        if pattern[m, m] and not pattern[m, dim - 1 - m]:
            return "unbalanced"
    return "balanced"


@dataclass(frozen=True)
class TermClass:
    partition: str
    group: str
    count: int
    balanced: bool


def _bipartitions(n: int):
    qubits = range(1, n + 1)
    for size in range((n + 1) // 2, n):
        for left in itertools.combinations(qubits, size):
            right = tuple(q for q in qubits if q not in left)
            if size == n - size and 1 not in left:
                continue  # each equal split once
            yield left, right


def _side_generators(size: int) -> list[np.ndarray]:
    return [SIGMA_Y] if size == 1 else so_generators(1 << size)


def enumerate_terms(n: int) -> list[TermClass]:
    """Bipartite generator terms that can be nonzero for an n-qubit X-state.

    A term survives only when S = L_A (x) L_B is anti-diagonal; this counts
    those products explicitly for every bipartition A|B.
    """
    if n not in (3, 4):
        raise ValueError(f"term enumeration supports n = 3 or 4, got {n}")
    out = []
    for left, right in _bipartitions(n):
        count = 0
        for la in _side_generators(len(left)):
            for lb in _side_generators(len(right)):
                if is_anti_diagonal(embed(np.kron(la, lb), left + right)):
                    count += 1
        group = f"SO({1 << len(left)})xSO({1 << len(right)})"
        name = "".join(map(str, left)) + "|" + "".join(map(str, right))
        out.append(TermClass(name, group, count, len(left) == len(right)))
    return out
