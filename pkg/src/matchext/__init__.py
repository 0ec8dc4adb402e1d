"""matchext: matching extendability toolkit.

Graph families, a blossom matching engine with Tutte certificates,
exhaustive k-extendability checks, constructive extension pipelines,
surface-extendability formulas and signed rotation-system embeddings.
"""

__version__ = "0.1.0"

from .graph import (
    Graph,
    GridVertex,
    BowtieVertex,
    Plain,
    connected_components,
    connectivity,
    induced_subgraph,
    is_bipartite,
    is_connected,
    min_degree,
    normalize_edge,
    remove_vertices,
)
from .generators import (
    bowtie,
    bowtie_vertex_id,
    cartesian_product,
    col_set,
    complete,
    complete_bipartite,
    cycle,
    grid_vertex_id,
    path,
    row_set,
)
from .matching import (
    Matching,
    TutteViolator,
    extend_to_perfect,
    has_perfect_matching,
    make_matching,
    maximum_matching,
    tutte_violator,
    tutte_violator_of_removal,
    verify_matching,
)
from .extendability import (
    ExtendabilityReport,
    NkReport,
    classify_extendable_graphs,
    extendability_number,
    is_k_extendable,
    is_nk_graph,
    k_matchings,
)
from .surfaces import (
    KLEIN_BOTTLE,
    PROJECTIVE_PLANE,
    SPHERE,
    TORUS,
    Surface,
    complete_graph_embeddable,
    control_bound_holds,
    degree_lower_bound,
    euler_characteristic,
    genus_complete,
    mu,
    mu_nk,
    mu_prime,
    nonorientable_genus_complete,
)
from .constructive import (
    BowtieMatchingPlan,
    RefutationAlarm,
    SeparatorChoice,
    bowtie_extend,
    c4cn_witness,
    classify_bowtie_edges,
    extend_via_separator,
    find_separator,
    lemma1_cover,
    lemma2_matching,
    lemma3_pm,
    lemma4_near_pm,
    separator_extend,
)
from .embedding import (
    ContributionReport,
    FaceStructure,
    RotationSystem,
    bowtie_rotation_N2,
    control_point,
    embedding_characteristic,
    euler_contributions,
    is_orientable,
    k5_torus_fixture,
    trace_faces,
    verify_embedding,
)
