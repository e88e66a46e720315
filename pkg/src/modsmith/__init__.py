"""modsmith: exact modular linear algebra with a coprimality side condition.

Solves A x = b mod n together with gcd(<w, x>, n) = 1, by Smith-form
reduction of the augmented matrix [A, -n*I], digit-carry Bezout identities
against prime-power moduli, and CRT recombination over the prime-power
divisors of n.
"""

from .arith import (
    PAdicDigits,
    PrimePowerFactorization,
    crt_pair,
    is_probable_prime,
    to_digits,
    valuation,
)
from .bezout import (
    BezoutCertificate,
    OpCounts,
    UnimodularColumnReducer,
    bezout_byte,
    bezout_multi,
    bezout_single,
    bezout_single_padic,
    extended_euclid,
    unimodular_pair,
)
from .crt import (
    DriverResult,
    FactorizationRequired,
    ResidueSolution,
    factorize_fallback,
    solve_mod_n,
    solve_mod_n_constrained,
    solve_mod_pr,
)
from .fieldsolve import (
    FieldMatrix,
    PrimeField,
    RationalField,
    kernel_basis,
    rank,
    solve_field_constrained,
    unique_case_check,
)
from .matrices import IntMatrix
from .modsolve import (
    ConstrainedResult,
    ConstraintData,
    IntegralSolution,
    SolutionDescription,
    constraint_split,
    is_unique,
    solve_constrained,
    solve_integral,
    solve_modular,
    solve_prime_power_constrained,
    unimodular_rank,
)
from .smith import (
    SmithDecomposition,
    smith_form,
    smith_form_augmented,
    smith_form_prime_power,
    verify_decomposition,
)

__all__ = [
    "BezoutCertificate",
    "ConstrainedResult",
    "ConstraintData",
    "DriverResult",
    "FactorizationRequired",
    "FieldMatrix",
    "IntMatrix",
    "IntegralSolution",
    "OpCounts",
    "PAdicDigits",
    "PrimeField",
    "PrimePowerFactorization",
    "RationalField",
    "ResidueSolution",
    "SmithDecomposition",
    "SolutionDescription",
    "UnimodularColumnReducer",
    "bezout_byte",
    "bezout_multi",
    "bezout_single",
    "bezout_single_padic",
    "constraint_split",
    "crt_pair",
    "extended_euclid",
    "factorize_fallback",
    "is_probable_prime",
    "is_unique",
    "kernel_basis",
    "rank",
    "smith_form",
    "smith_form_augmented",
    "smith_form_prime_power",
    "solve_constrained",
    "solve_field_constrained",
    "solve_integral",
    "solve_mod_n",
    "solve_mod_n_constrained",
    "solve_mod_pr",
    "solve_modular",
    "solve_prime_power_constrained",
    "to_digits",
    "unimodular_pair",
    "unimodular_rank",
    "unique_case_check",
    "valuation",
    "verify_decomposition",
]
