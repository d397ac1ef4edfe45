"""Search budgets.

Every exponential search in the package is bounded by an explicit budget and
fails hard (BudgetExceeded) instead of silently truncating.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceeded


@dataclass(frozen=True)
class Budget:
    # firing-subset search is exponential in the vertex count
    max_firing_vertices: int = 24
    # effective divisors enumerated per linear system
    max_lattice_candidates: int = 2_000_000
    # degree-exact products enumerated per decomposition query
    max_products: int = 1_000_000
    # largest graded degree accepted by decomposition searches
    max_degree: int = 64
    # components + support points combined in metric subgraph searches
    max_subgraph_parts: int = 20

    def check_degree(self, m):
        from .errors import DegreeOverflow
        if m > self.max_degree:
            raise DegreeOverflow(f"degree {m} exceeds budget {self.max_degree}")

    def check_count(self, count, limit, what):
        if count > limit:
            raise BudgetExceeded(f"{what}: {count} exceeds budget {limit}")


DEFAULT_BUDGET = Budget()
