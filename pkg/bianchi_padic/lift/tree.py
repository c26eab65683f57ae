"""The divisor tree touched by the U_p / U_pbar iteration, kept in a networkx graph."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Optional

from ..exceptions import LiftError
from ..quadfield import CStabilityReport, Cusp, ElemK, IdealK, cusp_in_C

logger = logging.getLogger(__name__)

PRIME = "p"
PRIME_BAR = "pbar"


@dataclass(frozen=True)
class TreeNode:
    """The disc b + p^i pbar^j O_p, i.e. the cusp b / (pi^i pibar^j)."""

    i: int
    j: int
    b: ElemK

    @property
    def level(self) -> tuple[int, int]:
        return self.i, self.j

    def __repr__(self) -> str:
        return f"({self.i},{self.j},{self.b})"


class DivisorTree:
    """Lattice of residue discs 0 <= i <= T1, 0 <= j <= T2 with U_p and U_pbar branch edges.

    `unit` rescales the uniformizers to u pi and conj(u) pibar.
    """

    def __init__(
        self,
        prime: IdealK,
        prime_bar: IdealK,
        depth: tuple[int, int],
        level: Optional[IdealK] = None,
        unit: Optional[ElemK] = None,
    ) -> None:
        try:
            import networkx as nx
        except ImportError as exc:
            raise RuntimeError("networkx must be installed to build the divisor tree") from exc
        if min(depth) < 0:
            raise LiftError(f"invalid depth budget {depth}")
        self._graph = nx.DiGraph()
        self.prime = prime
        self.prime_bar = prime_bar
        self.field = prime.field
        self.depth = depth
        self.level = level
        if unit is None:
            unit = self.field.elem(1)
        self.pi = unit * prime.require_generator()
        self.pi_bar = unit.conj() * prime_bar.require_generator()
        self._build()

    @property
    def graph(self) -> Any:
        return self._graph

    @property
    def root(self) -> TreeNode:
        return TreeNode(0, 0, self.field.elem(0))

    def uniformizer(self, i: int, j: int) -> ElemK:
        return self.pi ** i * self.pi_bar ** j

    def modulus(self, i: int, j: int) -> IdealK:
        return self.prime ** i * self.prime_bar ** j

    def _build(self) -> None:
        T1, T2 = self.depth
        for i in range(T1 + 1):
            for j in range(T2 + 1):
                modulus = self.modulus(i, j)
                gamma = self.uniformizer(i, j)
                for b in modulus.residues():
                    node = TreeNode(i, j, b)
                    self._graph.add_node(node, cusp=Cusp.normalized(self.field, b, gamma), uniformizer=gamma)
        for i in range(T1 + 1):
            for j in range(T2 + 1):
                for node in self.level_nodes(i, j):
                    if i < T1:
                        self._link(node, PRIME)
                    if j < T2:
                        self._link(node, PRIME_BAR)
        logger.debug("stage=lift tree depth=%s nodes=%s edges=%s", self.depth, len(self), self._graph.number_of_edges())

    def _link(self, node: TreeNode, kind: str) -> None:
        step, i, j = (self.prime, node.i + 1, node.j) if kind == PRIME else (self.prime_bar, node.i, node.j + 1)
        modulus = self.modulus(i, j)
        gamma = self.uniformizer(node.i, node.j)
        for x in step.residues():
            child = TreeNode(i, j, modulus.reduce(node.b + x * gamma))
            self._graph.add_edge(node, child, kind=kind, shift=x)

    def level_nodes(self, i: int, j: int) -> list[TreeNode]:
        return [node for node in self._graph.nodes if node.i == i and node.j == j]

    def node_count(self, i: int, j: int) -> int:
        return len(self.level_nodes(i, j))

    def nodes_at(self, i: int, j: int) -> list[TreeNode]:
        """Discs of level (i, j), including levels past the depth that the graph does not hold."""
        T1, T2 = self.depth
        if i <= T1 and j <= T2:
            return self.level_nodes(i, j)
        return [TreeNode(i, j, b) for b in self.modulus(i, j).residues()]

    def cusp(self, node: TreeNode) -> Cusp:
        if node in self._graph:
            return self._graph.nodes[node]["cusp"]
        return Cusp.normalized(self.field, node.b, self.uniformizer(node.i, node.j))

    def expansion(self, i: int, j: int) -> Optional[str]:
        """Which operator refines level (i, j): U_p while it lags, U_pbar otherwise; None at the bottom."""
        T1, T2 = self.depth
        if (i, j) == (T1, T2):
            return None
        if (i <= j and i < T1) or j == T2:
            return PRIME
        return PRIME_BAR

    def children(self, node: TreeNode, kind: Optional[str] = None) -> list[TreeNode]:
        kind = kind or self.expansion(node.i, node.j)
        if kind is None:
            return []
        return [child for child in self._graph.successors(node) if self._graph.edges[node, child]["kind"] == kind]

    def path(self) -> list[tuple[int, int]]:
        """Levels visited from the root by the expansion rule."""
        levels = [(0, 0)]
        while True:
            i, j = levels[-1]
            kind = self.expansion(i, j)
            if kind is None:
                return levels
            levels.append((i + 1, j) if kind == PRIME else (i, j + 1))

    def leaves(self) -> list[TreeNode]:
        return self.level_nodes(*self.depth)

    def c_stability(self, m: IdealK) -> CStabilityReport:
        report = CStabilityReport()
        for node in self._graph.nodes:
            report.checked += 1
            cusp = self.cusp(node)
            if not cusp_in_C(self.field, m, cusp):
                report.counterexamples.append(("tree", repr(node), repr(cusp)))
        logger.info("stage=lift check=c_stability nodes=%s counterexamples=%s", report.checked, len(report.counterexamples))
        return report

    def serialize(self) -> Dict[str, Any]:
        levels: Dict[str, int] = {}
        for node in self._graph.nodes:
            key = f"{node.i},{node.j}"
            levels[key] = levels.get(key, 0) + 1
        return {
            "depth": list(self.depth),
            "nodes": len(self),
            "edges": self._graph.number_of_edges(),
            "levels": levels,
            "path": [list(level) for level in self.path()],
        }

    def __iter__(self) -> Iterable[TreeNode]:
        return iter(self._graph.nodes)

    def __len__(self) -> int:
        return self._graph.number_of_nodes()


__all__ = ["DivisorTree", "PRIME", "PRIME_BAR", "TreeNode"]
