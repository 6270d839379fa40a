"""Asymptotics of the weighted Bergman kernel on C^n.

Computes the leading coefficient b0 and the trace of the subleading
coefficient b1 of the diagonal expansion of the Bergman projection kernel
for (0,q)-forms against e^{-2 k phi}, where the complex Hessian of phi has
constant signature (n_minus, n_plus) and q = n_minus.
"""

from .errors import (
    CrossCheckError,
    DegenerateHessianError,
    NumericalError,
    PhaseUnderdeterminedError,
    ResidualError,
    TransportInconsistencyError,
    ValidationError,
    WrongDegreeError,
)
from .forms import (
    FormOp,
    FormOpJet,
    compose,
    compose_jets,
    form_adjoint,
    form_trace,
    generator,
    hat_component,
)
from .jets import MultiIndex, PolyJet, jet_diff, jet_product, jet_swap_conjugate, lambda_pairing
from .weight import WeightJet, WeightSpec, normalize_weight, random_normal_weight

__all__ = [name for name in dir() if not name.startswith("_")]
