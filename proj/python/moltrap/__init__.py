"""Quantized-motion dipole-dipole simulations for two trapped polar molecules.

Thin python layer over the C++ core. Frequencies are in units of 2*pi*kHz,
times in ms.
"""

import os

# Allow importing the extension from a CMake build tree without installing:
# point MOLTRAP_EXT_DIR at the directory containing the built _core module.
_ext_dir = os.environ.get("MOLTRAP_EXT_DIR")
if _ext_dir:
    __path__.append(_ext_dir)

from ._core import (  # noqa: E402,F401
    CouplingConstants,
    annihilation,
    aqrm_analytic_1d,
    aqrm_spectrum_1d,
    blockade_cz,
    ddi_exact,
    derive_couplings,
    iswap_one_pulse,
    motion_fidelity,
    pedersen_fidelity,
    quasi_blockade,
    quasi_blockade_calibrate,
    thermal_weights,
    __version__,
)
