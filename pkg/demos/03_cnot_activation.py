"""Non-Gaussian activation: CNOT gates reveal nonclassical correlations.

Each mode of the input is coupled to a vacuum ancilla by the adder
|m, n> -> |m, m + n>. The output across system|ancilla is entangled exactly
when the input has off-diagonal Fock elements, which for Gaussian inputs in
standard form means whenever the state is not a product.

    python demos/03_cnot_activation.py
"""

import numpy as np

from cvact.activation import faithfulness_check, negativity_oracle_dense, protocol_output
from cvact.fock import fock_elements
from cvact.gaussian import direct_sum
from cvact.negativity import negativity_l1
from cvact.states import coherent_mixture_cm, conjugate, squeezer, thermal_cm, tmsv_cm

# %% At a small cutoff the whole four-mode output fits in memory, so its
# negativity can be taken straight from the partially transposed spectrum.
tdm = fock_elements(coherent_mixture_cm(0.3), 4)
state = protocol_output(tdm)
print("dense output shape:", state.dense.shape)
print("negativity from spectrum :", f"{negativity_oracle_dense(state):.12f}")
print("negativity from l1 norm  :", f"{negativity_l1(tdm):.12f}")

# %% Classical inputs stay classical. A product of squeezed thermal states
# is first brought to standard form (diagonal in Fock space) so no
# off-diagonal mass remains.
sq = conjugate(squeezer(0.4), thermal_cm(0.2))
inputs = {
    "squeezed thermal product": direct_sum(sq, thermal_cm(0.5)),
    "coherent mixture 0.1": coherent_mixture_cm(0.1),
    "squeezed vacuum r=0.2": tmsv_cm(0.2),
}
for name, cm in inputs.items():
    print(f"{name:26s} -> {faithfulness_check(cm).value}")
