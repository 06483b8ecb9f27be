"""Front end of the matrix query language: syntax, sorts, fragments, evaluation."""
from .ast import (Add, Apply, ConjTranspose, Diag, Expr, Mul, Ones, ScalarMul, Schur, Trace, Var, VProd, X,
                  power, pretty)
from .evaluate import evaluate, evaluate_scalar
from .normalize import normalize_linear
from .parser import parse
from .sorts import FULL, Fragment, Sort, fragment_check, fragment_report, sort_check

__all__ = [
    "Add", "Apply", "ConjTranspose", "Diag", "Expr", "Mul", "Ones", "ScalarMul", "Schur", "Trace", "Var",
    "VProd", "X", "power", "pretty", "evaluate", "evaluate_scalar", "normalize_linear", "parse",
    "FULL", "Fragment", "Sort", "fragment_check", "fragment_report", "sort_check",
]
