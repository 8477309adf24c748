"""Lattice arithmetic for Hassett divisors of cubic fourfolds and K3^[n]-type manifolds."""

from .conditions import (ConditionVerdict, cond_dagger, cond_hilb, cond_moduli, cond_star,
                         cond_twisted, verdict)
from .forms import (BinaryForm, TernaryForm, chevalley_solve, modular_nonrepresentation,
                    represents)
from .intfactor import Factorization, factorize, gcd_all, is_perfect_square
from .labels import (LabelWitness, ObstructionCertificate, disc_rank4, enumerate_labels_rank3,
                     enumerate_labels_rank4, gram_rank3, gram_rank4, kappa, label_rank3,
                     label_rank4, lambda_rank3, square_scale, twisted_label_search,
                     twisted_obstruction)
from .lattice import (IntLattice, determinant, direct_sum, divisibility, gram_new, is_primitive,
                      k3n_lattice, label_discriminant, mukai_lattice, pairing, rescale, signature,
                      sublattice_gram)
from .markman import (UEmbeddingCertificate, build_ambient, find_isotropic, partner,
                      theoremA_verdict, u_embedding)

__all__ = [
    "BinaryForm",
    "ConditionVerdict",
    "Factorization",
    "IntLattice",
    "LabelWitness",
    "ObstructionCertificate",
    "TernaryForm",
    "UEmbeddingCertificate",
    "build_ambient",
    "chevalley_solve",
    "cond_dagger",
    "cond_hilb",
    "cond_moduli",
    "cond_star",
    "cond_twisted",
    "determinant",
    "direct_sum",
    "disc_rank4",
    "divisibility",
    "enumerate_labels_rank3",
    "enumerate_labels_rank4",
    "factorize",
    "find_isotropic",
    "gcd_all",
    "gram_new",
    "gram_rank3",
    "gram_rank4",
    "is_perfect_square",
    "is_primitive",
    "k3n_lattice",
    "kappa",
    "label_discriminant",
    "label_rank3",
    "label_rank4",
    "lambda_rank3",
    "modular_nonrepresentation",
    "mukai_lattice",
    "pairing",
    "partner",
    "represents",
    "rescale",
    "signature",
    "square_scale",
    "sublattice_gram",
    "theoremA_verdict",
    "twisted_label_search",
    "twisted_obstruction",
    "u_embedding",
    "verdict",
]

__version__ = "0.1.0"
