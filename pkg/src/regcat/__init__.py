"""regcat: a regularity calculus on finite sets.

Generalized inverses of finite maps, higher-regularity star chains,
semicommutative diagram checking with obstructors, regular 3-cycles, and an
exhaustive pruned solver for the regularized Yang-Baxter equation.
"""

from .core import (
    FiniteSet,
    FinMap,
    ProductSet,
    Subset,
    build_map,
    check_subset_regularity,
    classify_map,
    compose,
    direct_image,
    identity,
    inverse_image,
    tensor,
)
from .inverses import (
    enumerate_inverses,
    generalized_from_inner,
    invertibility_class,
    is_inverse,
    closure_composite,
    projectors,
    section_inner_inverse,
    unique_generalized_inverse,
)
from .chains import (
    StarChain,
    check_chain,
    extend_periodic,
    find_chains,
    higher_projector,
    make_chain,
    star_compose,
)
from .diagrams import (
    Cycle,
    Diagram,
    FunctorData,
    RegularThreeCycle,
    check_regular_functor,
    find_regular_3cycles,
    is_commutative,
    is_cycle_morphism,
    is_semicommutative,
    obstruction_number,
    obstructor,
    path_compose,
    product_3cycle,
)
from .braiding import (
    Braiding,
    ObstructorAssignment,
    YbeProblem,
    check_prebraid_regularity,
    check_regular_braiding,
    check_symmetry,
    check_ybe,
    composite_prebraid,
    enumerate_idempotents,
    prebraid,
    solve_ybe,
)
from .dsl import Workspace, parse_workspace, render_workspace

__version__ = "0.1.0"
