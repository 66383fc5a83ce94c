"""Seifert surfaces as bandwords over espaliers."""

from .bandword import (
    Band,
    Deflation,
    EmbeddedBandRep,
    Inflation,
    InvariantReport,
    MoveError,
    MoveTrace,
    Slide,
    SlideVariant,
    Slip,
    Turn,
    Twirl,
    analyze,
    apply_move,
    band,
    bandword,
    split_at_terminal_edge,
)
from .braid import StandardBraidWord, words_equal
from .core import (
    Espalier,
    EspalierError,
    PairRelation,
    classify_pair,
    espalier_move,
    is_star,
    make_canonical,
    path,
    prec_less,
    split_at_edge,
    star,
    validate,
)
from .normalize import (
    BasketPresentation,
    Compressible,
    Disconnected,
    Fibered,
    choose_pivot_edge,
    classify,
    compressibility_witness,
    extract_basket,
    reduce_c,
    slide_step,
    to_star,
)
from .render import render_fence
from .verify import band_to_standard, braid_of, verify_move, verify_trace

__all__ = [name for name in dir() if not name.startswith("_")]
