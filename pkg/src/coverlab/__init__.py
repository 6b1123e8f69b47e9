"""coverlab: a finite laboratory for cover spaces, completions, and frames,
plus exact real arithmetic on rational intervals."""

from .finkernel import (
    Carrier,
    CarrierMismatchError,
    CarrierSizeError,
    Cover,
    FiniteCoverSpace,
    Subset,
    canonicalize,
    discrete,
    indiscrete,
    meet,
    product,
    refines,
    space_from_cover,
    space_from_masks,
    transfer,
)
from .coverspace import (
    FiniteTopology,
    RegularityError,
    SubbasePresentation,
    close_subbase,
    from_topology,
    is_cauchy,
    is_cover_map,
    is_embedding,
    is_proper,
    is_strongly_regular,
    rather_below,
    regular_reflection,
    satisfies_cr,
    strongly_rather_below,
    to_topology,
)
from .cauchy import (
    CompletionSpace,
    PrincipalFilter,
    completion,
    dense_lift,
    filters_equivalent,
    finite_subcover,
    is_cauchy_filter,
    is_complete,
    is_separated,
    point_equiv,
    regular_representative,
    strong_completion,
)
from .locales import (
    FiniteLocale,
    FrameElement,
    LocalePoint,
    basic_open,
    ideal_closure,
    locale_of_space,
    locale_points,
    point_space,
    verify_equivalence,
)
from .xreal import (
    ConvergentSeq,
    CutLocator,
    Real,
    RInterval,
    add,
    cut_of_real,
    epsilon_net,
    find_apartness,
    inv,
    limit,
    limit_at_zero,
    mul,
    neg,
    real_of_cut,
    real_of_rat,
    sub,
    sum_series,
    uniform_convergence_check,
)

__version__ = "0.1.0"
