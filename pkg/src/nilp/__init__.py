"""Identity and Group Problems in unitriangular rational matrix groups, with
exact BCH and Lie-identity tooling."""
from .exactq import QMatrix, Rat, Subspace, fmt, q
from .invset import (ClassTooHigh, GeneratorSet, InvSetResult, brute_force_identity_oracle,
                     group_problem, identity_problem, invertible_subset)
from .utgroup import LieElement, UTMatrix, expm, logm, nilpotency_class

__all__ = [
    "ClassTooHigh", "GeneratorSet", "InvSetResult", "LieElement", "QMatrix", "Rat",
    "Subspace", "UTMatrix", "brute_force_identity_oracle", "expm", "fmt",
    "group_problem", "identity_problem", "invertible_subset", "logm",
    "nilpotency_class", "q",
]
