#pragma once

#include <algorithm>
#include <cmath>

namespace shearlab {

/// Every numerical threshold in the library, derived from a single knob.
///
/// `rank_rel` is the relative singular-value cutoff used by all rank
/// decisions (default 1e-9). Changing it rescales the other threshold
/// families by the same factor, so a CLI-level tolerance override moves
/// everything uniformly.
struct Tolerances {
    double rank_rel = 1e-9;

    double family_scale() const { return rank_rel / 1e-9; }

    /// Degeneracy guard before inverting a (possibly indefinite) Gram matrix:
    /// 1e-12 * max(1, ||g||_inf^dim), scale-aware.
    double det_floor(double inf_norm, int dim) const {
        return 1e-12 * family_scale() * std::max(1.0, std::pow(inf_norm, dim));
    }

    /// Eigenvalue threshold for counting metric signature signs.
    double signature_eig(double two_norm) const {
        return 1e-10 * family_scale() * two_norm;
    }

    /// Tangent/normal orthogonality residual bound.
    double orthogonality(double ambient_two_norm, double frame_two_norm) const {
        return 1e-9 * family_scale() * ambient_two_norm * frame_two_norm;
    }

    /// Positive-definiteness floor for the induced metric.
    double spacelike(double mean_diagonal) const {
        return 1e-10 * family_scale() * mean_diagonal;
    }

    /// Trace-free residual bound; `h_max` is the largest |h^a_ij| component.
    double trace_free(double h_max) const {
        return 1e-9 * family_scale() * (1.0 + h_max);
    }

    /// Umbilicity verification bound on ||A~_u||_F for umbilical basis vectors.
    /// Aggregates more rounding than a single trace, hence the larger family.
    double umbilical(double shear_frobenius) const {
        return 1e-7 * family_scale() * (1.0 + shear_frobenius);
    }

    /// Absolute singular-value cutoff when intersecting subspaces through
    /// stacked Euclidean projectors (projector entries are O(1)).
    double intersection() const { return 1e-7 * family_scale(); }
};

}  // namespace shearlab
