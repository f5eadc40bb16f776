"""Numeration systems on regular languages.

Build a trim DFA from a regex over an explicitly ordered alphabet, count
its language exactly, classify its growth, rank and unrank members in radix
order, and losslessly recode strings between two such languages, including
block-based compression over substring-closed languages.
"""

from .ans import Ans, new_ans, radix_cmp, radix_key
from .automata import (CharSet, Concat, Dfa, Epsilon, Lit, Nfa, Opt,
                       OrderedAlphabet, Plus, RegexAst, Star, Union, accepts,
                       compile_pattern, determinize, dump_dfa, equivalent,
                       factorial_closure, is_factorial, is_infinite, minimize,
                       parse_dfa, parse_regex, trim)
from .codec import (BlockCodecConfig, Converter, Frame, block_compress,
                    block_decompress, make_block_config, measure_block_cr)
from .counting import (CountCache, MatrixRep, OpCounters, PowerSums, mat_pow,
                       matrix_rep)
from .errors import (AlphabetError, AnscError, BlockMembershipError,
                     CapacityError, EmptyLanguageError, FiniteLanguageError,
                     FrameFormatError, NoSuchLengthError, NotFactorialError,
                     NotInLanguageError, NotTrimmedError, RegexSyntaxError)
from .growth import (CrPrediction, GrowthInfo, SccDecomposition, analyze_growth,
                     exact_scc_class, frobenius_root, index, polynomial_index,
                     predict_cr, scc_decompose)

__version__ = "0.1.0"
