from subspace.basis import (
    Subspace,
    distance_to_subspace,
    distances_to_subspace,
    membership_mask,
    pca_subspace,
    recovery_error,
    top_d_subspace,
)
