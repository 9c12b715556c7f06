"""Exact computations for covers of buildings obtained by Coxeter-matrix surgery."""

from .chambers import Building, ChamberSystem, Verdict, product_building, realize, thin_building, verify_building
from .cover import Cover, CoveredBall, FoldingData, build_ball, flag_nerve_check, surgery, verify_cover
from .coxeter import INF, CoxeterMatrix, is_spherical, nerve, spherical_poset, tits_reduce
from .errors import BudgetExceeded, BuildcoverError, InvalidArgument, InvalidInput, NotABuilding
from .products import ProductSpec, SquareSpec, product_cover_pipeline, product_matrix, square_matrix, square_nerve
from .simplicial import SimplicialComplex, octahedral_complex, punctured_check, reduced_homology

__version__ = "0.1.0"
