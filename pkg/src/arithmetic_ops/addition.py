# src/arithmetic_ops/addition.py

from src.arithmetic_ops.registers import ArithmeticOperator, RegisterLayout, embed, require_verified
from src.hilbert_core.operators import DEFAULT_MAX_DIM, FactoredOperator, IdentityOperator, KroneckerOperator, SumOperator
from src.hilbert_core.states import StateVector
from src.successor_model.model import CLASSIFY_TOL, Polarity, classify_state
from src.utils.logger import get_logger

logger = get_logger(__name__)


def controlled_successor(model, label, target):
    """P_{label,α} ⊗ I + P_{label,γ} ⊗ target on a (control, target) register pair."""
    return SumOperator(
        [
            KroneckerOperator(model.projector(label, Polarity.ALPHA), IdentityOperator(target.dim)),
            KroneckerOperator(model.projector(label, Polarity.GAMMA), target),
        ]
    )


def addition_factors(model, source=0, target=1, layout=None, max_dim=DEFAULT_MAX_DIM):
    """The n commuting factors of the register addition, lifted to `layout`, in a_1 … a_n order."""
    layout = layout or RegisterLayout(2, model.n)
    return [embed(controlled_successor(model, a, model.V[a]), (source, target), layout, max_dim) for a in model.ordering]


def build_addition(model, source=0, target=1, layout=None, max_dim=DEFAULT_MAX_DIM):
    """
    Register addition: the `target` register receives source + target mod 2^n.

    Args:
        model: Verified successor model
        source: Register read as the first summand and left unchanged
        target: Register that is overwritten with the sum
        layout: Register layout to act on; two registers by default

    Returns:
        ArithmeticOperator: n factors, unitary
    """
    require_verified(model)
    layout = (layout or RegisterLayout(2, model.n)).check(max_dim)
    factors = addition_factors(model, source, target, layout, max_dim)
    logger.debug(f"Built addition on registers ({source}, {target}) of {layout.k}, n={model.n}")
    return ArithmeticOperator(
        name="addition",
        layout=layout,
        op=FactoredOperator(reversed(factors)),
        factor_count=model.n,
        coarse_count=model.n,
    )


def addition_alternate(model, beta, beta_prime, tol=CLASSIFY_TOL):
    """
    Add by reading the bits of `beta_prime` and applying ∏_a (V_a)^{s'(a)} to `beta`.

    Both inputs must be family states to within `tol` (max amplitude deviation).

    Raises:
        UnclassifiableStateError: either input is not a family state
    """
    classify_state(model, beta, tol)
    bits = classify_state(model, beta_prime, tol)
    amps = beta.amps
    for a in model.params.labels:
        if bits[a]:
            amps = model.V[a].matvec(amps)
    return StateVector(amps, require_normalized=False)
