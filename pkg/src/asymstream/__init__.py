"""Space-bounded string matching with one random-access string and one stream."""

from .core import (
    AlphabetMap,
    CharStream,
    ContractError,
    DomainError,
    SpaceMeter,
    TextOracle,
    meter_register,
    open_stream,
    open_text,
)
from .hashing import (
    Fingerprint,
    FingerprintContext,
    append_right,
    hash_of_string,
    prepend_left,
    select_modulus,
    slide_window,
    substring_hash,
)
from .lcs import (
    ApproxConfig,
    LcsSession,
    lcs_approx_decide,
    lcs_approx_logrounds,
    lcs_approx_multipass,
    lcs_exact,
    lcs_push,
    longest_suffix_in_text,
)
from .pattern_match import (
    MatchSession,
    fixed_pattern_stream_search,
    match_new_session,
    match_push,
    match_push_verified,
    match_run,
)
from .wildcard import (
    MatchBitmap,
    WildcardPattern,
    adversarial_instance,
    convolution_wildcard_oracle,
    naive_wildcard_oracle,
    sample,
    sampled_wildcard_match,
)

__version__ = "0.1.0"
