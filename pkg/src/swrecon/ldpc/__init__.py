"""Syndrome-based LDPC coding: matrices, construction, I/O and decoding."""

from .alist import AlistError, load_alist, save_alist
from .decoder import DEFAULT_MAX_ITERS, DecodeResult, decode, decode_shortened, verify
from .matrix import MatrixError, SparseParityMatrix, syndrome
from .ml import InconsistentSyndromeError, decode_ml_bruteforce, neg_log_likelihood
from .peg import generate, regular
from .shorten import ShortenedCode, nested_positions, shorten

__all__ = [
    "AlistError", "DEFAULT_MAX_ITERS", "DecodeResult", "InconsistentSyndromeError",
    "MatrixError", "ShortenedCode", "SparseParityMatrix", "decode", "decode_ml_bruteforce",
    "decode_shortened", "generate", "load_alist", "nested_positions", "neg_log_likelihood",
    "regular", "save_alist", "shorten", "syndrome", "verify",
]
