"""Why Gaussian circuits cannot turn classical noise into entanglement.

A separable two-mode state is written as a product state plus classical
noise P. Pushing it through local and global symplectic maps together with
an ancilla, the noise can be moved behind the circuit, so the output is the
noiseless output plus positive noise. A separability witness for the
noiseless output therefore covers the noisy one as well.

    python demos/02_gaussian_no_activation.py
"""

import numpy as np

from cvact.activation import NoGoScenario, nogo_run, random_scenario, swap_system_ancilla
from cvact.gaussian import is_classical, ppt_separability, product_noise_compose
from cvact.states import coherent_mixture_cm, vacuum_cm

# %% A coherent-state mixture is separable yet not classical: it is two
# vacua plus correlated displacement noise.
s2 = 1.0
P = s2 * np.kron(np.ones((2, 2)), np.eye(2))
cm, dec = product_noise_compose(vacuum_cm(), vacuum_cm(), P)
assert np.allclose(cm, coherent_mixture_cm(s2))
print("input classical:", is_classical(cm), "| input PPT:", ppt_separability(cm).verdict.value)
print("noise rank:", dec.rank, "eigenvalues:", np.round(dec.noise_eigs, 6))

# %% Swap system and ancilla modes: any product input gives a product
# output across AB|A'B', so the baseline certificate is just its two blocks.
scenario = NoGoScenario(dec, np.eye(2), np.eye(2), swap_system_ancilla(), vacuum_cm(2))
out = nogo_run(scenario)
print("certificate residual min eigenvalue:", f"{out.certificate.min_residual_eig:.2e}")
print("AB|A'B' min PT symplectic eigenvalue:", f"{out.pt_min_symplectic_eig:.4f} (>= 0.5 means PPT)")

# %% The same holds for random inputs, local maps and ancillas.
rng = np.random.default_rng(42)
worst = min(nogo_run(random_scenario(rng)).certificate.min_residual_eig for _ in range(200))
print("200 random scenarios, worst residual eigenvalue:", f"{worst:.2e}")
