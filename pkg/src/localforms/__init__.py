"""Indefinite binary quadratic forms, hyperbolic Eisenstein series, cycle
integrals, and locally harmonic Maass forms, numerically."""

from .arith import (
    Discriminant,
    PellSolution,
    fundamental_divisors,
    is_discriminant,
    is_fundamental,
    kronecker,
    pell_fundamental,
)
from .characters import GenusCharacter, genus_char
from .cycles import CyclePath, cycle_integral, cycle_path
from .qforms import (
    ExactPoint,
    GroupElement,
    OnNetError,
    QForm,
    act,
    automorph,
    class_representatives,
    enclosing_forms,
    enumerate_shell,
    indicator,
    parson_boundary_forms,
    qtau,
    sign,
    value,
)
from .series import (
    EisParams,
    EvalBudget,
    EvalResult,
    eis2_fourier,
    eis2_hat,
    eis_E,
    eis_hat,
    eis_tilde,
    eisk_fourier,
    exp_poincare_P,
    lhmf_F,
    maass_poincare_Phi,
    main_identity_check,
    niebur_G,
    parson_f,
    parson_period,
    petersson_P,
    quantum_limit,
    theorem_constant,
    zagier_f,
)

__version__ = "0.1.0"
