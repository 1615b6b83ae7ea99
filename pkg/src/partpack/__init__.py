"""Pattern counting and packing densities in set partitions."""

__version__ = "0.1.0"

from .core import (
    MODES,
    RESTRICTED,
    UNRESTRICTED,
    PatternSet,
    WordParseError,
    alternating,
    block_structure,
    canonize,
    classify_layering,
    format_word,
    from_blocks,
    is_order_isomorphic,
    parse_word,
    to_blocks,
    validate_canonical,
)
from .count import count_layered, count_restricted, count_unrestricted, count_with_last, density, occurrences
from .enumeration import layered_partitions, partitions, space_size, two_block_candidates, words
from .search import (
    CapExceeded,
    SearchResult,
    density_sequence,
    max_layered,
    max_over_partitions,
    max_over_words,
    max_two_block,
    swap_adjacent_delta,
    word_to_partition,
)
