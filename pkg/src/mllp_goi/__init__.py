"""Polarized multiplicative linear logic: proofs, cut elimination, and a
two-layered relational interaction semantics with executable theorem checks."""

from .formula import Formula, Polarity, fmt, negate, parse, polarity
from .proof import Proof, Sequent, check, enumerate_proofs, parse_proof
from .cutelim import Strategy, normalize, reducible_cuts, step
from .goi import InterpPair, Mode, interp, mp, shape
from .exec_formula import check_converse, check_focus, check_invariance, ex, sigma_of
from .relcore import BlockRel, Window, fold_eval

__version__ = "0.1.0"

__all__ = [
    "BlockRel", "Formula", "InterpPair", "Mode", "Polarity", "Proof",
    "Sequent", "Strategy", "Window", "check", "check_converse", "check_focus",
    "check_invariance", "enumerate_proofs", "ex", "fmt", "fold_eval",
    "interp", "mp", "negate", "normalize", "parse", "parse_proof", "polarity",
    "reducible_cuts", "shape", "sigma_of", "step",
]
