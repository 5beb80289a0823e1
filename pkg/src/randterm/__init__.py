"""randterm: counting, ranking and Boltzmann sampling of lambda terms and trees."""

from .analytic import (BINARY_GF, BUILTIN_SPECS, LAMBDA_GF, MOTZKIN_GF,
                       GFSpec, NoRootError, Polynomial, branch_probs,
                       critical_value, eval_gf, eval_gf_deriv, mean_size,
                       std_dev, tune_for_mean)
from .boltzmann import (FREE_SIZE_CAP, AttemptsExhaustedError, RandomState,
                        Sample, SizeCapError, WindowSpec, bernoulli_select,
                        ceiled_sample_binary, ceiled_sample_lambda,
                        ceiled_sample_motzkin, draw_index, free_sample_binary,
                        free_sample_lambda, free_sample_motzkin,
                        sample_in_window, select_kind_binary,
                        select_kind_lambda, select_kind_motzkin, window_around)
from .counting import (count_binary, count_bounded, count_closed,
                       count_motzkin, count_plain, precompute)
from .inference import (Arrow, SimpleType, TypeVar, count_typable,
                        format_type, infer_type, is_typable, sample_typable)
from .terms import (Abs, App, BLeaf, BNode, BTree, DecodeError, Index, MBinary,
                    MLeaf, MTree, MUnary, ParseError, Term, btree_size,
                    close_term, decode_term, encode_term, free_index_excess,
                    mtree_size, parse_term, print_btree, print_mtree,
                    print_term, term_size)
from .unrank import (enumerate_terms, rank_plain, random_by_rank,
                     unrank_bounded, unrank_plain)

__version__ = "0.1.0"
