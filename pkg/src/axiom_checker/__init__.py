# src/axiom_checker/__init__.py

from .axioms import AXIOM_STATEMENTS, AxiomReport, AxiomResult, OrderRelation, WrapPolicy, check_axioms, order_relation, successor_operator

__all__ = [
    "AXIOM_STATEMENTS",
    "AxiomReport",
    "AxiomResult",
    "OrderRelation",
    "WrapPolicy",
    "check_axioms",
    "order_relation",
    "successor_operator",
]
