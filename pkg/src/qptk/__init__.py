"""qptk: quadratic-phase Fourier and wave packet transform toolkit."""

from .numerics import (
    Grid,
    GridMismatchError,
    SampledSignal,
    TruncationError,
    VerificationReport,
    digamma_quarter,
    inner_product,
    integrate,
    lp_norm,
)
from .qpft import (
    ParameterSet,
    classical_wpt,
    fractional,
    fresnel,
    iqpft,
    kernel,
    kernel_amplitude,
    linear_canonical,
    parse_preset,
    plain_fourier,
    qp_convolve,
    qpft_direct,
    qpft_fast,
    verify_qpft_identity,
)
from .wavelet import (
    QPWaveletAtom,
    WaveletSpec,
    gaussian_window,
    mexican_hat,
    morlet,
    mother,
    qp_atom,
)
from .qpwpt import (
    ChirpSamplingError,
    TFGrid,
    TFMap,
    energy,
    moyal,
    qpwpt_direct,
    qpwpt_fast,
    qpwpt_via_spectral,
    reconstruct,
    reproducing_kernel,
)
from .uncertainty import (
    UncertaintyResult,
    heisenberg_check,
    heisenberg_preset_bounds,
    lieb_check,
    log_check,
)
from .signals_io import (
    SignalRecipe,
    generate,
    read_signal,
    read_tfmap,
    write_signal,
    write_tfmap,
)

__version__ = "0.1.0"
