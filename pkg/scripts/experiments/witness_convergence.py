import os
from fractions import Fraction

import numpy as np
import pandas as pd
from nilpotent_cortex import parameters
from nilpotent_cortex.cortex import perturbed_witness, random_cortex_target, witness_sequence
from nilpotent_cortex.cortex_sampler import CortexSampler, max_abs_poly
from nilpotent_cortex.data import save_cloud, save_data
from nilpotent_cortex.exactmath import max_norm
from nilpotent_cortex.gd_family import cortex_poly, make_gd
from nilpotent_cortex.utils import as_vector


l_d = [2, 3, 4, 5]
l_epsilon = [Fraction(1, 10 ** k) for k in range(1, 7)]
seed = 0

# exact witness schedules on the generic stratum
list_of_dict = []
dict_param = {}
rng = np.random.default_rng(seed)

for d in l_d:
    print('d', d)
    target = random_cortex_target(d, rng)
    schedule, _ = witness_sequence(d, target, l_epsilon)
    for step in schedule.steps:
        dict_param['d'] = d
        dict_param['epsilon'] = float(step.epsilon)
        dict_param['ell_norm'] = float(max_norm(step.ell))
        dict_param['x_norm'] = float(max_norm(step.x))
        dict_param['z_residual'] = float(max_norm(step.residual))
        list_of_dict.append(dict_param.copy())

df = pd.DataFrame(list_of_dict, columns=list(list_of_dict[0].keys()))
print(df.to_string(index=False))
save_data(df, 'witness_convergence.csv')

# degenerate stratum of g_2: y1 = 0, y2 != 0
degenerate = as_vector([0, 0, 0, 1, 0, 5, 0, 0])
l_eta = [Fraction(1, 10 ** k) for k in range(1, 5)]
report = perturbed_witness(2, degenerate, l_eta, [eta ** 2 for eta in l_eta])
print(report.to_text())
save_data(report.table, 'perturbed_witness.csv')

# floating clouds: how far the normalized images drift from Q_d = 0
list_of_dict = []
for d in [2, 3]:
    alg = make_gd(d).algebra
    for scale in [1e-1, 1e-2, 1e-3, 1e-4]:
        sampler = CortexSampler(samples=5000, scales=(scale,), random_state=seed).fit(alg)
        dict_param = {'d': d, 'scale': scale, 'accepted': sampler.accepted_,
                      'max_abs_Q': max_abs_poly(cortex_poly(d), sampler.cloud_)}
        list_of_dict.append(dict_param)
        if scale == 1e-3:
            save_cloud(sampler.cloud_, os.path.join(parameters.DATA_PATH, 'processed',
                                                    f'cloud_g{d}.csv'))

df = pd.DataFrame(list_of_dict)
print(df.to_string(index=False))
save_data(df, 'cloud_residuals.csv')
