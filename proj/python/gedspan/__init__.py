"""Span-level grammatical error detection.

Offsets are code-point indices into ``str`` values; spans are lists of
``(start, end)`` tuples, with ``start == end`` marking an insertion point.
"""

from ._core import (
    AnnotationParseError,
    DataError,
    EvaluationError,
    GedspanError,
    NormRules,
    align,
    decode_spans,
    detect_missing_end_punct,
    detect_space_before_punct,
    evaluate,
    label_tokens,
    levenshtein,
    map_spans_to_original,
    parse_annotated,
    run_pipeline,
    span_intersection,
    span_union,
    stratified_split,
    to_annotated,
    to_span_list_string,
    whitespace_tokens,
)

__version__ = "0.3.0"

__all__ = [name for name in dir() if not name.startswith("_")]
