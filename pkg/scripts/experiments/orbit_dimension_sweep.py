import numpy as np
import pandas as pd
from nilpotent_cortex.coadjoint import jump_indices, orbit_dimension
from nilpotent_cortex.cortex import codim_classifier
from nilpotent_cortex.data import save_algebra, save_data
from nilpotent_cortex.gd_family import expected_jump_set, make_gd
from nilpotent_cortex.liealg import z_perp
from nilpotent_cortex.utils import choose_random_rational_vector


l_d = [2, 3, 4, 5, 6, 7, 8]
samples = 100
seed = 0

list_of_dict = []
dict_param = {}

for d in l_d:
    print('d', d)
    rng = np.random.default_rng(seed + d)
    alg = make_gd(d).algebra
    jumps = expected_jump_set(d)
    save_algebra(alg, f'g{d}.json')
    perp_dim = z_perp(alg).dim

    # generic layer z_1 != 0
    dims, jump_hits = [], 0
    for _ in range(samples):
        ell = choose_random_rational_vector(alg.dim, rng, nonzero=(0,))
        dims.append(orbit_dimension(alg, ell))
        jump_hits += jump_indices(alg, ell) == jumps

    # z = 0: orbits of covectors in z^perp are points
    zero_z = choose_random_rational_vector(alg.dim, rng)
    zero_z = (0,) * d + zero_z[d:]

    verdict = codim_classifier(alg, seed=seed)

    dict_param['d'] = d
    dict_param['dim'] = alg.dim
    dict_param['dim_z_perp'] = perp_dim
    dict_param['min_orbit_dim'] = min(dims)
    dict_param['max_orbit_dim'] = max(dims)
    dict_param['jump_set_matches'] = jump_hits / samples
    dict_param['orbit_dim_on_z_perp'] = orbit_dimension(alg, zero_z)
    dict_param['generic_codim'] = verdict.generic_codim
    dict_param['classifier_applies'] = verdict.applies
    list_of_dict.append(dict_param.copy())


#for convenience we convert the list of dict to a dataframe
df = pd.DataFrame(list_of_dict, columns=list(list_of_dict[0].keys()))
print(df.to_string(index=False))
save_data(df, 'orbit_dimension_sweep.csv')
