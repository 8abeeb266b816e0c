"""Moore cubes: shaped cubes with clamped actions, composition and law checks."""

from ._moore import (
    BadIndex,
    CompositionUndefined,
    Cube,
    DimensionMismatch,
    EvalError,
    FormatError,
    InvalidShape,
    MooreError,
    Oracle,
    ParseError,
    Space,
    UnknownLaw,
    canonical,
    check_law,
    compare_action,
    compose,
    compose_grid,
    compose_lenient,
    connection,
    cube,
    degeneracy,
    equals_action,
    equals_strict,
    eval_expr,
    face,
    from_json,
    law_ids,
    load,
    parse_expr,
    point,
    render_svg,
    reverse,
    run_suite,
    save,
    tensor,
)

__all__ = [name for name in dir() if not name.startswith("_")]
