# src/arithmetic_ops/multiplication.py

from src.arithmetic_ops.addition import addition_factors, controlled_successor
from src.arithmetic_ops.doubling import build_doubling
from src.arithmetic_ops.registers import ArithmeticOperator, RegisterLayout, embed, require_verified, swap_registers
from src.hilbert_core.operators import DEFAULT_MAX_DIM, FactoredOperator
from src.utils.logger import get_logger

logger = get_logger(__name__)


def build_multiplication_triple(model, literal=False, max_dim=DEFAULT_MAX_DIM):
    """
    Multiplication on three registers: |β⟩|β'⟩|β''⟩ -> |β⟩|β_0⟩|β'' + β·β'⟩.

    Applied in time order: controlled addition of register 2 into register 3 on
    the digit of a_1 of register 1, then for j = 2 … n a doubling of register 2
    followed by the controlled addition on a_j. A final doubling clears
    register 2 (2^n·β' ≡ 0); `literal=True` leaves it out, so register 2 ends
    at 2^(n-1)·β'.

    Returns:
        ArithmeticOperator: not unitary, since the doubling is not injective
    """
    require_verified(model)
    n = model.n
    layout = RegisterLayout(3, n).check(max_dim)
    pair_addition = FactoredOperator(reversed(addition_factors(model, max_dim=max_dim)))
    doubling = embed(build_doubling(model).op, (1,), layout, max_dim)

    steps = []
    for j, a in enumerate(model.ordering):
        if j > 0:
            steps.append(doubling)
        steps.append(controlled_successor(model, a, pair_addition))
    if not literal:
        steps.append(doubling)

    doublings = n - 1 if literal else n
    logger.debug(f"Built triple multiplication n={n} with {doublings} doublings")
    return ArithmeticOperator(
        name="multiplication-triple-literal" if literal else "multiplication-triple",
        layout=layout,
        op=FactoredOperator(reversed(steps)),
        factor_count=n * n + doublings,
        coarse_count=n + doublings,
        expanded_doubling_count=doublings * (n - 1),
        unitary=False,
        literal=literal,
    )


def build_multiplication_unitary(model, literal=False, max_dim=DEFAULT_MAX_DIM):
    """
    Multiplication on four registers: |β⟩|β'⟩|β''⟩|β_0⟩ -> |β⟩|β'⟩|β'' + β·β'⟩|β_0⟩.

    Register 2 is first copied into register 4 by addition. The product is then
    accumulated into register 3 by doubly-controlled successors: the digit of
    a_j in register 1 and of a_i in register 2 together add 2^(i+j-2), i.e.
    apply V_{a_{i+j-1}}, for i + j - 1 <= n. Register 2 is cleared against the
    copy with the inverse addition and finally exchanged with register 4. Every
    step permutes the basis, so the operator is unitary on the whole space.

    With `literal=True` the core is the doubling-based triple multiplication
    and no clearing step follows it. That operator agrees with the default
    whenever register 4 starts at β_0 but is not unitary.
    """
    require_verified(model)
    n = model.n
    ordering = model.ordering
    layout = RegisterLayout(4, n).check(max_dim)

    copy = addition_factors(model, source=1, target=3, layout=layout, max_dim=max_dim)
    exchange = swap_registers(layout, 1, 3)

    if literal:
        # The W-based core already leaves register 2 at β_0
        triple = build_multiplication_triple(model, literal=False, max_dim=max_dim)
        steps = copy + [embed(triple.op, (0, 1, 2), layout, max_dim), exchange]
        factor_count = n + triple.factor_count + 1
        coarse_count = 2 + triple.coarse_count
    else:
        core = []
        for j, a in enumerate(ordering):
            for i in range(n - j):
                partial = controlled_successor(model, ordering[i], model.V[ordering[i + j]])
                core.append(embed(controlled_successor(model, a, partial), (0, 1, 2), layout, max_dim))
        clear = [factor.adjoint() for factor in addition_factors(model, source=3, target=1, layout=layout, max_dim=max_dim)]
        steps = copy + core + clear + [exchange]
        factor_count = 2 * n + len(core) + 1
        coarse_count = 3 + n

    logger.debug(f"Built quadruple multiplication n={n} ({'literal' if literal else 'reversible'} core)")
    return ArithmeticOperator(
        name="multiplication-quadruple-literal" if literal else "multiplication-quadruple",
        layout=layout,
        op=FactoredOperator(reversed(steps)),
        factor_count=factor_count,
        coarse_count=coarse_count,
        unitary=not literal,
        literal=literal,
    )
