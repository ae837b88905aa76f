"""Classical laboratory for walk-based group commutativity testing.

Thin wrapper over the compiled `_bbwalk` extension. In an installed wheel the
extension lives inside this package; in a plain CMake build tree it sits on
`PYTHONPATH` as a top-level module.
"""

try:
    from ._bbwalk import *  # noqa: F401,F403
    from ._bbwalk import __doc__ as _core_doc
except ImportError:  # build-tree layout
    from _bbwalk import *  # noqa: F401,F403
    from _bbwalk import __doc__ as _core_doc

__doc__ = (__doc__ or "") + "\n\n" + (_core_doc or "")
__all__ = [
    "test_group_names",
    "group_info",
    "compute_p",
    "choose_l",
    "spectral_gap",
    "chain_matrix",
    "noncommuting_pair_probability",
    "randomized_commutativity_test",
    "quantum_commutativity_sim",
    "usc_instance",
    "find_split_collision",
    "pauli_commutes",
    "pauli_decide",
    "list_experiments",
    "run_experiment",
]
