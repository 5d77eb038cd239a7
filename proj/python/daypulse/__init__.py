"""Daily topic discovery and sentiment aggregation engine."""

try:
    from ._daypulse import *  # noqa: F401,F403  (installed layout)
    from ._daypulse import __doc__ as _core_doc
except ImportError:  # in-tree build: extension sits on sys.path directly
    from _daypulse import *  # noqa: F401,F403
    from _daypulse import __doc__ as _core_doc

__all__ = [
    "tokenize",
    "lemmatize",
    "Lexicon",
    "load_lexicon",
    "score_text",
    "classify",
    "normalize_sum",
    "LdaModel",
    "fit_lda",
    "coherence",
    "select_k",
    "DtmModel",
    "fit_dtm",
    "slice_seed",
    "assign_topics",
    "topic_trajectory",
    "build_cube",
]
