"""Exact computation with unique sums, balanced sets and dissociated sets
in finite abelian groups.

The package models a finite abelian group as an explicit product of cyclic
factors and provides, with exact arithmetic and brute-force-verifiable
answers throughout:

  * representation tables of A + A, the unique-sum and balanced predicates,
    translates, dilates, sumsets, generated subgroups (``groups``);
  * additive spans, dissociated sets, exact additive dimension, support
    compression, and the span-size bounds (``span``);
  * minimal/irreducible balanced structure, the midpoint witness graph, and
    the weight-compression proof that a translate of an irreducible
    balanced set is an additive basis of what it generates (``balanced``);
  * constructions of balanced and no-unique-sum sets, coordinate
    embeddings into a prime line, and integer models of residue sets
    (``construct``);
  * the density-increment engine over translate sets (``increment``);
  * exhaustive extremal values with certificates (``search``).
"""

from .config import DEFAULT, RunConfig
from .errors import (
    DilationError,
    GroupError,
    NotInSubgroupError,
    PreconditionError,
    RectificationError,
    RepresentationError,
    SetFileError,
    SizeLimitError,
    UniqueSumsError,
)
from .groups import (
    Elem,
    GMultiset,
    Group,
    GSet,
    SumTable,
    balanced_failure,
    dilate,
    has_no_unique_sum,
    is_balanced,
    make_group,
    minspan,
    negate,
    subgroup_generated,
    sum_table,
    sumset,
    translate,
    unique_sums,
)
from .span import (
    DimensionWitness,
    RatioReport,
    Representation,
    SpanBounds,
    additive_dimension,
    additive_span,
    dimension_ratio,
    is_additive_basis,
    is_dissociated,
    span_bounds_report,
    subset_representation,
    support_compress,
)
from .balanced import (
    BasisResult,
    MidpointGraph,
    WeightedRepresentation,
    balanced_core,
    graph_export,
    is_irreducible,
    midpoint_graph,
    minimal_balanced_subset,
    minimal_balanced_subsets,
    reachability_check,
    verify_additive_basis,
    weight_compress,
)
from .construct import (
    EmbedResult,
    RectifyResult,
    balanced_multiplicative,
    balanced_search,
    freiman_embed,
    grid_construction,
    is_prime,
    rectify,
    subset_representatives,
    sumset_construction,
)
from .increment import (
    IncrementOutcome,
    IncrementState,
    IncrementTrace,
    bad_elements,
    classify_pairs,
    increment_iterate,
    increment_step,
    two_families_bound,
    two_families_search,
)
from .search import (
    Certificate,
    all_of_size,
    bounds_dashboard,
    smallest_balanced,
    smallest_no_unique_sum,
    verify_certificate,
)
from .fileio import (
    load_multiset,
    load_set,
    save_multiset,
    save_set,
)

__version__ = "0.1.0"
