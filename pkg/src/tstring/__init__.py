"""Lusztig t-analogs of weight multiplicities for A_1^(1) and their
description through an extended Hecke indefinite theta function."""

from .series import Series3, TPoly
from .weyl import StringProblem, WeightVec, WeylElem, normalize_problem
from .kostant import build_kostant, kostka_foulkes, tstring_a
from .lattice import theta_term_list, theta_formal
from .identity import string_function_a, string_function_b, verify_formal

__version__ = "0.1.0"
