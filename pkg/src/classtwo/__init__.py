"""Exact decision procedures for complete nilpotent class-2 torsion-free groups."""

from .decide import (approx_by_standard, embeds_standard, example_group, full_rank_obstruction,
                     geom_equiv, iso_distinguish, paper_example, precedes)
from .forms import (AltForm, BinaryForm, FormPencil, ProjPoint, binary_rational_roots, contract,
                    pfaffian, pfaffian_pencil, rank_locus)
from .groups import (ClassTwoGroup, GroupHom, LieElement, bch_inv, bch_mul, bch_pow,
                     direct_product, graded_scaling_check, group_commutator, make_group, make_hom,
                     standard_group)
from .linalg import RatMatrix, det, kernel, rank, rref, solve
from .maltsev import free_group, hk_membership, lemma_bound, root_endomorphism

__version__ = "0.1.0"
