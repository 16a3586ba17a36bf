"""Exact construction, analysis and claim verification for GC_n node sets."""

__version__ = "0.1.0"


def clear_caches() -> None:
    """Drop memoized eliminations, indexes and usage tests (for cold timings)."""
    from . import analysis, incidence, interpolation

    for fn in (interpolation.is_poised, interpolation._fundamental_table, incidence.build_index,
               analysis.is_gc_set, analysis._uses):
        fn.cache_clear()
