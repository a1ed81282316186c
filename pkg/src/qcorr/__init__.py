"""qcorr: entanglement and discord-type correlation measures for small quantum systems."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DimensionError,
    InvalidStateError,
    NotHermitianError,
    QcorrError,
    UnsupportedDimensionError,
)
from .states import (  # noqa: E402
    DensityMatrix,
    TwoQubitForm,
    from_pure,
    random_mixed,
    random_pure,
    read_state,
    reduced,
    sigma_family,
    singlet,
    two_qubit_form,
    validate,
    werner,
    write_state,
)
from .infotheory import (  # noqa: E402
    distance,
    fidelity,
    mutual_information,
    relative_entropy,
    shannon,
    von_neumann,
)
from .correlations import MeasureResult, OptimizerConfig  # noqa: E402

__all__ = [
    "DensityMatrix",
    "DimensionError",
    "InvalidStateError",
    "MeasureResult",
    "NotHermitianError",
    "OptimizerConfig",
    "QcorrError",
    "TwoQubitForm",
    "UnsupportedDimensionError",
    "__version__",
    "distance",
    "fidelity",
    "from_pure",
    "mutual_information",
    "random_mixed",
    "random_pure",
    "read_state",
    "reduced",
    "relative_entropy",
    "shannon",
    "sigma_family",
    "singlet",
    "two_qubit_form",
    "validate",
    "von_neumann",
    "werner",
    "write_state",
]
