"""Cartan subalgebra classes of split classical real Lie algebras and the
Weyl/compact-group elements fixing a representative of every class."""

__version__ = "0.1.0"

from .roots import AlgebraKind, Family, WeylElement, kind  # noqa: E402
from .admissible import classify, enumerate_admissible, is_admissible, paper_representatives  # noqa: E402
from .stabilizer import check_against_paper, family_stabilizer, stabilizer  # noqa: E402

__all__ = [
    "AlgebraKind", "Family", "WeylElement", "kind",
    "classify", "enumerate_admissible", "is_admissible", "paper_representatives",
    "check_against_paper", "family_stabilizer", "stabilizer",
]
