"""Numerical quantum information in the computational basis.

States are numpy arrays (kets 1-D, density matrices 2-D). Channels are
objects in one of several representations that can be called on states,
composed and converted into each other.
"""

from .channels import (
    ChannelClass,
    DynamicalMatrix,
    IdentityChannel,
    KrausOperators,
    QuantumChannel,
    Stinespring,
    SuperOperator,
    UnitaryChannel,
    amplitude_damping,
    choi_to_kraus,
    compose_parallel,
    compose_sequential,
    convert,
    iscptni,
    iscptp,
    validate,
)
from .functionals import (
    bures_angle,
    bures_distance,
    concurrence,
    diamond_distance,
    fidelity,
    fidelity_sqrt,
    hs_distance,
    js_divergence,
    kl_divergence,
    log_negativity,
    negativity,
    norm_diamond,
    norm_hs,
    norm_trace,
    ppt,
    qjs_divergence,
    relative_entropy,
    shannon_entropy,
    superfidelity,
    trace_distance,
    vonneumann_entropy,
)
from .measurements import POVMMeasurement, PostSelectionMeasurement, iseffect, ispovm
from .randobj import (
    COE,
    CSE,
    CUE,
    ChoiJamiolkowskiMatrices,
    CircularEnsemble,
    CircularQuaternionEnsemble,
    CircularRealEnsemble,
    GinibreEnsemble,
    HaarKet,
    HilbertSchmidtStates,
    WishartEnsemble,
    sample,
    sample_channel,
    sample_circular,
    sample_ginibre,
    sample_haar_isometry,
    sample_haar_ket,
    sample_hs_state,
    sample_wishart,
)
from .states import (
    bra,
    hadamard,
    ket,
    ketbra,
    max_entangled,
    max_mixed,
    pauli_x,
    pauli_y,
    pauli_z,
    proj,
    sx,
    sy,
    sz,
    werner_state,
)
from .tensorops import (
    DimensionError,
    herm_func,
    kron,
    ptrace,
    ptranspose,
    res,
    reshuffle,
    tensor,
    unres,
)

__version__ = "0.1.0"
