"""AC-compatible Knuth-Bendix and recursive path orders.

Decide six AC-compatible term orders, search for orienting parameters of
rewrite systems, export orientability as linear-arithmetic constraints,
and generate the SAT-reduction instances showing the hard cases really
are hard.
"""

from .extensions import (
    ExtVerdict,
    OrderPairOracle,
    cmp_f,
    lex_ext,
    mul_ext,
    restrict_root,
    restrict_vars,
)
from .orders import (
    LinPoly,
    OrderEngine,
    OrderId,
    Relation,
    Verdict,
    compare,
    count_poly,
    emb_candidates,
    kvprime_geq,
    poly_ge,
    poly_gt,
    validate_params,
    wroot_eq,
    wroot_gt,
)
from .orient import (
    OrientResult,
    OrientStatus,
    SearchConfig,
    enumerate_partial_precedences,
    enumerate_total_precedences,
    orient_check,
    search,
)
from .reductions import (
    Assignment,
    CnfError,
    CnfFormula,
    MembershipInstance,
    construct_witness,
    encode_ackbo_orientability,
    encode_kv_orientability,
    encode_kvprime_membership,
    format_dimacs,
    parse_dimacs,
    sat_bruteforce,
)
from .smt import ConstraintProblem, decode_model, export_constraints
from .tpdb import TrsParseError, parse_term, parse_terms, parse_trs, print_trs
from .terms import (
    App,
    InvalidParamsError,
    OrderParams,
    Precedence,
    Rule,
    Signature,
    SignatureError,
    Symbol,
    Term,
    TermOrderError,
    Trs,
    UndeclaredSymbolError,
    Var,
    ac_canonical,
    ac_equal,
    admissible,
    substitute,
    top_flatten,
    var_count,
    vc,
    weight,
)

__version__ = "0.1.0"
