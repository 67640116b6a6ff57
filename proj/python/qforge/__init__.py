"""Two-photon polarization state synthesis."""

from ._qforge import (
    QforgeError,
    Recipe,
    PureRecipe,
    analytic_f,
    bell_diagonal,
    canonical_decompose,
    collins_gisin,
    compile,
    concurrence,
    family_d1,
    fidelity,
    invert_f,
    linear_entropy,
    mems,
    mems_boundary_tangle,
    ppt_separable,
    purity,
    random_density,
    random_pure,
    solve_pure,
    tangle,
    werner,
)

__all__ = [
    "QforgeError",
    "Recipe",
    "PureRecipe",
    "analytic_f",
    "bell_diagonal",
    "canonical_decompose",
    "collins_gisin",
    "compile",
    "concurrence",
    "family_d1",
    "fidelity",
    "invert_f",
    "linear_entropy",
    "mems",
    "mems_boundary_tangle",
    "ppt_separable",
    "purity",
    "random_density",
    "random_pure",
    "solve_pure",
    "tangle",
    "werner",
]
