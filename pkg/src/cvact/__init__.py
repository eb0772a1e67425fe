"""Quantum correlations of two-mode Gaussian states through CNOT activation.

Submodules:

* :mod:`cvact.gaussian` -- covariance-matrix algebra, separability, classicality
* :mod:`cvact.states` -- standard states and symplectic maps
* :mod:`cvact.fock` -- Fock elements via four-index Hermite recurrences
* :mod:`cvact.negativity` -- output negativity, closed forms, lower bounds
* :mod:`cvact.activation` -- CNOT protocol output and the no-activation demo
"""

from .activation import faithfulness_check, negativity_oracle_dense, nogo_run, protocol_output
from .fock import build_r_matrix, fock_elements, hermite_table, husimi_at
from .gaussian import (
    StandardFormParams,
    assemble_standard_form,
    conditional_state,
    is_classical,
    ppt_separability,
    product_noise_compose,
    standard_form_invariants,
)
from .negativity import (
    lower_bound,
    negativity_coherent_mixture,
    negativity_pure,
    negativity_truncated,
)

__version__ = "0.1.0"
