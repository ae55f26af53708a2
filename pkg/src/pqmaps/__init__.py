"""pqmaps: desk-scale computations around spaces of rational and (p,q)-maps
between complex projective spaces.

Exact (p,q)-polynomial spaces and their dimension bookkeeping, Vandermonde
general-position certificates, simplicial resolutions of finite simplicial
surjections with their filtration spectral sequences, discriminant
membership tests, and Stone-Weierstrass-style least-squares approximation
of sampled maps.
"""

__version__ = "0.1.0"

from .gaussrat import GaussianRational
from .polynomials import (MapTuple, PQPolynomial, ProjectivePoint,
                          degree_of_map, monomial_count, veronese)
from .bookkeeping import (BettiTable, DimensionReport, E1Page, ProblemParams,
                          SymbolicGroup, build_e1_page, bundle_rank, dim_bound,
                          dimension_report, discriminant_codim, e1_entry_general,
                          e1_entry_stable, evaluate_page, load_shipped_table,
                          segal_case_flag, stable_range, stable_region)
from .genpos import (Configuration, certify_disjoint_simplices,
                     certify_fiber_dimension, certify_hyperplane_general_position,
                     certify_simplex_span, random_configuration, vanishing_nullity)
from .resolution import (ChainComplex, ResolutionData, SimplicialComplexData,
                         SimplicialSurjection, build_resolution,
                         check_resolution_equivalence, compare_embeddings,
                         fox_neuwirth_betti, homology, make_betti_table,
                         moment_embedding)
from .spectral import FilteredChainComplex, SpectralPages, spectral_sequence
from .discriminant import (ZeroCertificate, check_stabilization_membership,
                           has_common_zero, linearity_of_stabilization, min_norm)
from .approximator import (SampledMap, approximate_with_boundary, boundary_correct,
                           fit_ladder, fit_pq_map, fs_distance,
                           sample_projective_points)
