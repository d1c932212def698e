"""Exact integral cohomology from truncated binomial rings."""

from binring.binomial import (BinElement, TruncatedBinAlgebra, comultiply, induced_map, mahler_expand,
                              mod_pn_period, monad_compose, multiply, sym_to_bin)
from binring.config import RunConfig
from binring.em import em_cohomology, em_cohomology_report, truncated_bin_cohomology
from binring.errors import BinringError, InvariantViolation, TruncationUnstable
from binring.fibration import (CellComplex, CellularLatticeSheaf, PointedSheafComplex, circle_bundle_model,
                               fibration_cohomology, pushforward_cohomology, split_model)
from binring.linalg import FgAbGroup, IntMatrix, LatticeCochainComplex, smith_normal_form
from binring.torsion import cyclotomic_phi_oracle, phi, psi

__all__ = [
    "BinElement", "BinringError", "CellComplex", "CellularLatticeSheaf", "FgAbGroup", "IntMatrix",
    "InvariantViolation", "LatticeCochainComplex", "PointedSheafComplex", "RunConfig", "TruncatedBinAlgebra",
    "TruncationUnstable", "circle_bundle_model", "comultiply", "cyclotomic_phi_oracle", "em_cohomology",
    "em_cohomology_report", "fibration_cohomology", "induced_map", "mahler_expand", "mod_pn_period",
    "monad_compose", "multiply", "phi", "psi", "pushforward_cohomology", "smith_normal_form", "split_model",
    "sym_to_bin", "truncated_bin_cohomology",
]
