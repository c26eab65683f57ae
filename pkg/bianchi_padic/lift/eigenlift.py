"""Lifting the classical symbol to the ordinary overconvergent eigensymbol.

The eigensymbol's value at {0} - {inf} is

    lambda^-(T1 + T2) (Psi_0 | U_p^T1 U_pbar^T2)({0} - {inf})
        = lambda^-(T1 + T2) * sum over c mod p^T1 pbar^T2 of Psi_0({c / w} - {inf}) | (1 c; 0 w),

w = pi^T1 pibar^T2, for any lift Psi_0 of the classical symbol. Each node of the divisor tree
holds the restriction of that value to its disc; a node is the sum of its children.
"""

from __future__ import annotations

import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field
from typing import Callable, Optional

from ..arith import CycNum, PadicEmbedding, PadicNum, embed_padic
from ..dist import FinDist, Sigma0Matrix, dist_norm, profile
from ..exceptions import LiftError
from ..quadfield import Cusp, ElemK, Matrix2
from ..symbols import PartialSymbol
from .tree import PRIME, PRIME_BAR, DivisorTree, TreeNode

logger = logging.getLogger(__name__)

Filler = Callable[[int, int], PadicNum]


def default_moments(N: int, k: int) -> int:
    return N + k + 1


def random_filler(p: int, N: int, seed: int) -> Filler:
    """Higher moments drawn uniformly from Z/p^N, for uniqueness experiments."""
    rng = random.Random(seed)
    return lambda i, j: PadicNum.from_residue(p, rng.randrange(p ** N), N)


def initial_lift(
    symbol: PartialSymbol,
    cusp: Cusp,
    embedding: PadicEmbedding,
    M: int,
    N: int,
    scale: int = 0,
    fill: Optional[Filler] = None,
) -> FinDist:
    """A distribution specializing to p^scale * iota_p(symbol({cusp} - {inf}))."""
    value = symbol.value(cusp).map(lambda x: embed_padic(x, embedding))
    if scale:
        factor = PadicNum.from_rational(embedding.p, embedding.p ** scale, embedding.precision)
        value = value.scale(factor)
    return FinDist.from_dualpoly(value, embedding.p, M, N, fill)


@dataclass
class SweepRecord:
    sweep: int
    level: tuple[int, int]
    node_count: int
    agreement: Optional[int]

    def as_dict(self) -> dict:
        return {
            "sweep": self.sweep,
            "level": list(self.level),
            "node_count": self.node_count,
            "agreement": self.agreement,
        }


@dataclass
class LiftState:
    depth: tuple[int, int]
    eigenvalue: PadicNum
    scale_exponent: int
    iteration: int = 0
    values: dict[TreeNode, FinDist] = dataclass_field(default_factory=dict)
    iterates: list[tuple[tuple[int, int], FinDist]] = dataclass_field(default_factory=list)
    extra: dict[str, FinDist] = dataclass_field(default_factory=dict)
    log: list[SweepRecord] = dataclass_field(default_factory=list)

    def monotone(self) -> bool:
        levels = [record.agreement for record in self.log if record.agreement is not None]
        return all(a <= b for a, b in zip(levels, levels[1:]))


@dataclass
class LiftResult:
    tree: DivisorTree
    state: LiftState
    k: int
    N: int
    M: int
    lifter: Optional["EigenLifter"] = dataclass_field(default=None, repr=False, compare=False)

    @property
    def p(self) -> int:
        return self.state.eigenvalue.p

    def root(self) -> FinDist:
        return self.state.values[self.tree.root]

    def final(self) -> FinDist:
        return self.state.iterates[-1][1]

    def extra_sweep(self, kind: str) -> FinDist:
        """The root after one more normalized U_p (kind PRIME) or U_pbar (kind PRIME_BAR) sweep past the depth."""
        cached = self.state.extra.get(kind)
        if cached is not None:
            return cached
        if self.lifter is None:
            raise LiftError("extra sweeps need the lifter that built this result")
        if kind not in (PRIME, PRIME_BAR):
            raise LiftError(f"unknown sweep kind {kind!r}")
        T1, T2 = self.state.depth
        level = (T1 + 1, T2) if kind == PRIME else (T1, T2 + 1)
        value = self.lifter.iterate(level)
        self.state.extra[kind] = value
        logger.info("stage=lift extra_sweep=%s level=%s,%s agreement=%s", kind, *level, value.agreement(self.final()))
        return value

    def node_value(self, node: TreeNode) -> FinDist:
        try:
            return self.state.values[node]
        except KeyError as exc:
            raise LiftError(f"node {node} is outside the divisor tree of depth {self.tree.depth}") from exc

    def guaranteed(self, i: int, j: int, depth: Optional[tuple[int, int]] = None) -> int:
        """Precision of moment (i, j) independent of the choice of higher initial moments."""
        T1, T2 = depth or self.state.depth
        bound = profile(self.N, i, j)
        if i > self.k:
            bound = min(bound, T1 * (self.k + 1))
        if j > self.k:
            bound = min(bound, T2 * (self.k + 1))
        return bound

    def admissibility(self) -> list[dict]:
        root = self.root()
        return [
            {"u": u, "v": v, "norm": str(dist_norm(root, u, v))}
            for u in range(self.N + 1)
            for v in range(self.N + 1)
        ]

    def as_dict(self) -> dict:
        root = self.root()
        return {
            "depth": list(self.state.depth),
            "N": self.N,
            "M": self.M,
            "scale_exponent": self.state.scale_exponent,
            "tree": self.tree.serialize(),
            "sweeps": [record.as_dict() for record in self.state.log],
            "monotone": self.state.monotone(),
            "root": root.as_dict(),
            "guaranteed": [[self.guaranteed(i, j) for j in range(self.M)] for i in range(self.M)],
        }


class EigenLifter:
    """Dynamic programming of the normalized U_p / U_pbar iteration over a DivisorTree."""

    def __init__(
        self,
        symbol: PartialSymbol,
        embedding: PadicEmbedding,
        eigenvalue: CycNum,
        depth: tuple[int, int],
        N: int,
        M: Optional[int] = None,
        fill: Optional[Filler] = None,
        workers: int = 1,
        unit: Optional[ElemK] = None,
    ) -> None:
        self.symbol = symbol
        self.embedding = embedding
        self.p = embedding.p
        self.k = symbol.k
        self.N = N
        self.M = M or default_moments(N, symbol.k)
        self.fill = fill
        self.workers = max(1, workers)
        self.tree = DivisorTree(symbol.sums.prime, symbol.sums.prime_bar, depth, symbol.level, unit)
        self.eigenvalue = embed_padic(eigenvalue, embedding)
        if self.eigenvalue.is_zero or self.eigenvalue.valuation != 0:
            raise LiftError(f"eigenvalue {eigenvalue} is not a p-adic unit; only the ordinary lift is supported")
        if self.M <= self.k:
            raise LiftError(f"M={self.M} must exceed k={self.k}")
        if min(depth) < N:
            logger.warning(
                "stage=lift depth=%s N=%s note=higher moments are limited to the guaranteed precision", depth, N
            )
        self._inverse = self.eigenvalue.inverse()
        self._scale: Optional[int] = None

    def _map(self, fn, items):
        if self.workers == 1:
            return [fn(item) for item in items]
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            return list(pool.map(fn, items))

    def scale_exponent(self) -> int:
        """e = max(0, -min v_p) over the classical coefficients the iteration reads."""
        if self._scale is None:
            lowest = 0
            for level in self.tree.path():
                for node in self.tree.level_nodes(*level):
                    cusp = self.tree.cusp(node)
                    if cusp.is_infinity():
                        continue
                    for q in range(self.k + 1):
                        for r in range(self.k + 1):
                            value = embed_padic(self.symbol.coefficient(cusp, q, r), self.embedding)
                            if not value.is_zero:
                                lowest = min(lowest, value.valuation)
            self._scale = -lowest
            logger.info("stage=lift scale_exponent=%s", self._scale)
        return self._scale

    def disc_measure(self, node: TreeNode) -> FinDist:
        """lambda^-(i+j) Psi_0({b / w} - {inf}) | (1 b; 0 w) for the node's disc."""
        field = self.tree.field
        gamma = self.tree.uniformizer(node.i, node.j)
        start = initial_lift(
            self.symbol, self.tree.cusp(node), self.embedding, self.M, self.N, self.scale_exponent(), self.fill
        )
        matrix = Sigma0Matrix.from_matrix(Matrix2.of(field, 1, node.b, 0, gamma), self.embedding)
        moved = start.weight_action(matrix)
        if node.i + node.j:
            moved = moved.scale(self._inverse ** (node.i + node.j))
        return moved

    def iterate(self, level: tuple[int, int]) -> FinDist:
        measures = self._map(self.disc_measure, self.tree.nodes_at(*level))
        total = FinDist.zero(self.p, self.k, self.k, self.M, self.N)
        for measure in measures:
            total = total + measure
        return total

    def run(self) -> LiftResult:
        state = LiftState(self.tree.depth, self.eigenvalue, self.scale_exponent())
        previous: Optional[FinDist] = None
        for sweep, level in enumerate(self.tree.path()):
            current = self.iterate(level)
            agreement = current.agreement(previous) if previous is not None else None
            record = SweepRecord(sweep, level, self.tree.node_count(*level), agreement)
            state.log.append(record)
            state.iterates.append((level, current))
            state.iteration = sweep
            logger.info(
                "stage=lift sweep=%s level=%s,%s node_count=%s agreement=%s",
                sweep,
                level[0],
                level[1],
                record.node_count,
                agreement,
            )
            previous = current
        if not state.monotone():
            logger.warning("stage=lift convergence=non-monotone log=%s", [r.agreement for r in state.log])
        self._fill_tree(state)
        return LiftResult(self.tree, state, self.k, self.N, self.M, self)

    def _fill_tree(self, state: LiftState) -> None:
        leaves = self.tree.leaves()
        for node, value in zip(leaves, self._map(self.disc_measure, leaves)):
            state.values[node] = value
        T1, T2 = self.tree.depth
        for total in range(T1 + T2 - 1, -1, -1):
            for i in range(max(0, total - T2), min(T1, total) + 1):
                j = total - i
                nodes = self.tree.level_nodes(i, j)
                for node in nodes:
                    value = FinDist.zero(self.p, self.k, self.k, self.M, self.N)
                    for child in self.tree.children(node):
                        value = value + state.values[child]
                    state.values[node] = value
                logger.debug("stage=lift fill level=%s,%s node_count=%s", i, j, len(nodes))


def eigen_lift(
    symbol: PartialSymbol,
    embedding: PadicEmbedding,
    eigenvalue: CycNum,
    T: int,
    N: int,
    M: Optional[int] = None,
    fill: Optional[Filler] = None,
    workers: int = 1,
    depth: Optional[tuple[int, int]] = None,
    unit: Optional[ElemK] = None,
) -> LiftResult:
    """The ordinary eigensymbol's value at {0} - {inf}, with every disc of the tree."""
    return EigenLifter(symbol, embedding, eigenvalue, depth or (T, T), N, M, fill, workers, unit).run()


@dataclass
class LiftCheck:
    name: str
    ok: bool
    details: list[str] = dataclass_field(default_factory=list)

    def as_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "details": list(self.details)}


def _compare(name: str, first: FinDist, second: FinDist, bound: Callable[[int, int], int]) -> LiftCheck:
    check = LiftCheck(name, True)
    for i in range(first.M):
        for j in range(first.M):
            diff = first[i, j] - second[i, j]
            target = bound(i, j)
            if diff.absolute_precision < target and diff.is_zero:
                check.ok = False
                check.details.append(f"m[{i}][{j}] known only to O(p^{diff.absolute_precision}) < {target}")
            elif not diff.is_zero and diff.valuation < target:
                check.ok = False
                check.details.append(f"m[{i}][{j}] differs at valuation {diff.valuation} < {target}")
    logger.info("stage=lift check=%s ok=%s", name, check.ok)
    return check


def uniqueness_check(
    symbol: PartialSymbol,
    embedding: PadicEmbedding,
    eigenvalue: CycNum,
    T: int,
    N: int,
    M: Optional[int] = None,
    seeds: tuple[int, int] = (1, 2),
    workers: int = 1,
) -> LiftCheck:
    """Two lifts with independent random higher moments agree at the root to the guaranteed precision."""
    results = [
        eigen_lift(symbol, embedding, eigenvalue, T, N, M, fill=random_filler(embedding.p, N, seed), workers=workers)
        for seed in seeds
    ]
    first, second = results
    return _compare("uniqueness", first.root(), second.root(), first.guaranteed)


def eigen_check(result: LiftResult) -> LiftCheck:
    """One more normalized U_p sweep and one more U_pbar sweep each leave the root unchanged.

    Both are compared to the final iterate at the precision guaranteed at the lift depth.
    """
    final = result.final()
    check = LiftCheck("eigen", True)
    for kind in (PRIME, PRIME_BAR):
        part = _compare(f"eigen_{kind}", result.extra_sweep(kind), final, result.guaranteed)
        check.ok = check.ok and part.ok
        check.details.extend(f"U_{kind}: {detail}" for detail in part.details)
    return check


def measure_check(result: LiftResult) -> LiftCheck:
    """Every moment at every node of the tree is p-integral."""
    check = LiftCheck("measure", True)
    for node, value in result.state.values.items():
        if not value.is_integral():
            check.ok = False
            check.details.append(f"{node}: min valuation {value.min_valuation()}")
    logger.info("stage=lift check=measure nodes=%s ok=%s", len(result.state.values), check.ok)
    return check
