import pytest

from leakyslab import SlabConfig, approximate_resonances, refine_all

# Reference eigenvalues eps = eps_R - i*Gamma/2 for the 17 leaky modes of
# the k0a = 30, U0 = 1.5 slab (tabulated to six decimals).
REFERENCE_EIGENVALUES = {
    24: (-0.973621, 0.0051042),
    25: (-0.928842, 0.0083833),
    26: (-0.882236, 0.0107847),
    27: (-0.833802, 0.0128120),
    28: (-0.783540, 0.0146215),
    29: (-0.731450, 0.0162860),
    30: (-0.677533, 0.0178462),
    31: (-0.621788, 0.0193273),
    32: (-0.564215, 0.0207462),
    33: (-0.504815, 0.0221150),
    34: (-0.443587, 0.0234424),
    35: (-0.380531, 0.0247350),
    36: (-0.315647, 0.0259981),
    37: (-0.248936, 0.0272358),
    38: (-0.180397, 0.0284514),
    39: (-0.110031, 0.0296476),
    40: (-0.037836, 0.0308267),
}


@pytest.fixture(scope="session")
def slab30() -> SlabConfig:
    return SlabConfig(half_width_A=30.0, core_index_U0=1.5)


@pytest.fixture(scope="session")
def approx_modes(slab30):
    return approximate_resonances(slab30)


@pytest.fixture(scope="session")
def refined_modes(slab30, approx_modes):
    return refine_all(approx_modes, slab30)
