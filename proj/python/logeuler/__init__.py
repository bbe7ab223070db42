"""Barotropic EOS family with a logarithmic branch, the symmetrizing change of
variables for the relativistic Euler system, and a 1D finite-volume
verification solver. Thin wrapper over the C++ core."""

from ._core import (
    AdmissibleWindow,
    AkVariant,
    ClassicalField1D,
    CoeffSet,
    ConsState,
    EosFamily,
    EosSpec,
    EvolvePairResult,
    Flux1D,
    LogeulerError,
    PrimState,
    PrimState1D,
    SpdReport,
    SymState,
    SymmetricField1D,
    SymmetryParams,
    Symmetrizer,
    characteristic_speeds,
    check_eos,
    cons_to_prim,
    d2p_drho2,
    dp_drho,
    enthalpy_density,
    evolve_pair,
    flux,
    lemma1_bounds,
    ode_residual,
    pressure,
    prim_to_cons,
    resolve_ak_variant,
    rho_of_v,
    run_scenario,
    sound_speed,
    subluminal_check,
    v_of_rho,
    verify_symmetrizer,
    wave_speeds,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissibleWindow",
    "AkVariant",
    "ClassicalField1D",
    "CoeffSet",
    "ConsState",
    "EosFamily",
    "EosSpec",
    "EvolvePairResult",
    "Flux1D",
    "LogeulerError",
    "PrimState",
    "PrimState1D",
    "SpdReport",
    "SymState",
    "SymmetricField1D",
    "SymmetryParams",
    "Symmetrizer",
    "characteristic_speeds",
    "check_eos",
    "cons_to_prim",
    "d2p_drho2",
    "dp_drho",
    "enthalpy_density",
    "evolve_pair",
    "flux",
    "lemma1_bounds",
    "ode_residual",
    "pressure",
    "prim_to_cons",
    "resolve_ak_variant",
    "rho_of_v",
    "run_scenario",
    "sound_speed",
    "subluminal_check",
    "v_of_rho",
    "verify_symmetrizer",
    "wave_speeds",
]
