"""McEliece encryption with non-binary orthogonal Latin square codes."""

from .bitlinalg import (
    BitMatrix,
    Permutation,
    SymbolVector,
    apply_matrix,
    invert,
    make_rng,
    mat_mul,
    permute,
    random_nonsingular,
    random_permutation,
    unpermute,
)
from .errors import *  # noqa: F401,F403
from .latin import LatinSquare, MolsFamily, are_orthogonal, cyclic_mols, is_latin
from .mceliece import (
    Ciphertext,
    InsecureTestMode,
    KeyMetrics,
    PrivateKey,
    PublicKey,
    decrypt,
    encrypt,
    key_metrics,
    keygen,
    sample_error,
)
from .olsc import DecodeReport, OlscCode, build_code, decode, depth_model, encode, syndrome

__version__ = "0.1.0"
