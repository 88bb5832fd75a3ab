"""Exact workbench for P-matrix linear complementarity problems and
unique-sink orientations of cubes: pivot rules, worst-case families,
and property verification, all over arbitrary-precision rationals."""

from .cube import (
    Subcube,
    all_vertices,
    cyclic_shift,
    enumerate_subcubes,
    flip,
    hamming,
    ones,
    vertex_from_string,
    vertex_to_string,
    zeros,
)
from .exact import SingularMatrixError, format_rational, parse_rational, rat_det, rat_solve
from .gen import (
    GenSpec,
    gen_instance,
    gen_k_matrix,
    gen_p_matrix,
    gen_q,
    gen_random_orientation,
)
from .lcp import (
    LcpInstance,
    LcpSolution,
    basis_matrix,
    basis_of_vertex,
    basis_solution,
    check_solution,
    extract_solution,
    is_k_matrix,
    is_nondegenerate,
    is_p_matrix,
    load_instance,
    principal_pivot_transform,
    save_instance,
)
from .pivot import (
    PivotRule,
    RunTrace,
    detect_cycle,
    greedy_antipodal,
    greedy_subcube_sink,
    murty,
    murty_pi,
    random_edge,
    randomized_murty,
    run,
    run_greedy,
    solve,
)
from .uso import (
    MorrisOracle,
    OrientationOracle,
    PlcpOracle,
    UsoTable,
    antipodal_relabel,
    morris_instance,
    morris_outmap,
    plcp_outmap,
    read_table,
    reorient,
    restrict,
    tabulate,
    uniform,
    write_table,
)
from .verify import (
    VerifyReport,
    holt_klee,
    is_locally_up_uniform,
    is_two_uniform,
    is_two_up_uniform,
    is_uso,
    level,
    longest_path_exact,
    monotone_path_exists,
    potential,
    unique_completion_holds,
    upper_minus_count,
)

__version__ = "0.1.0"
