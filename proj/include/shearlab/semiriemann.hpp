#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "shearlab/errors.hpp"
#include "shearlab/expr.hpp"
#include "shearlab/tolerances.hpp"

namespace shearlab {

/// One upper-triangle metric component, written in the chart coordinates.
/// Indices are 0-based and must satisfy row <= col.
struct MetricEntry {
    int row = 0;
    int col = 0;
    std::string source;
};

/// Metric data evaluated at one chart point.
struct MetricValue {
    Eigen::VectorXd point;
    Eigen::MatrixXd g_lower;                // N x N symmetric
    Eigen::MatrixXd g_upper;                // inverse
    std::vector<Eigen::MatrixXd> d_g;       // d_g[c](a,b) = d_c g_ab
    double det = 0.0;
};

/// A semi-Riemannian manifold in a single coordinate chart: dimension,
/// coordinate names, upper-triangle metric component expressions and the
/// declared signature (n_minus, n_plus). Immutable after construction.
class AmbientManifold {
public:
    /// Validates and parses. Missing upper-triangle entries are zero.
    /// Throws Error / ParseError on structural problems.
    static std::shared_ptr<const AmbientManifold> create(std::vector<std::string> coordinates,
                                                         int n_minus, int n_plus,
                                                         const std::vector<MetricEntry>& entries);

    int dim() const { return static_cast<int>(coords_.size()); }
    int n_minus() const { return n_minus_; }
    int n_plus() const { return n_plus_; }
    bool riemannian() const { return n_minus_ == 0; }
    const std::vector<std::string>& coordinates() const { return coords_; }

    /// Component expression for (a,b); symmetric access.
    const Expression& component(int a, int b) const;

private:
    AmbientManifold() = default;

    std::vector<std::string> coords_;
    int n_minus_ = 0;
    int n_plus_ = 0;
    std::vector<Expression> upper_;  // row-major upper triangle incl. diagonal
};

/// Evaluate the metric at x: components, inverse, coordinate derivatives.
/// Checks non-degeneracy (det floor) and that the eigenvalue sign count
/// matches the declared signature.
MetricValue metric_at(const AmbientManifold& amb, const Eigen::VectorXd& x,
                      const Tolerances& tol = {});

/// Christoffel symbols of the Levi-Civita connection,
/// Gamma[a](b,c) = 1/2 g^{ad} (d_b g_dc + d_c g_db - d_d g_bc),
/// built from AD metric derivatives so they are exact up to rounding.
std::vector<Eigen::MatrixXd> christoffel(const AmbientManifold& amb, const Eigen::VectorXd& x,
                                         const Tolerances& tol = {});

/// Same, reusing an already evaluated MetricValue.
std::vector<Eigen::MatrixXd> christoffel(const MetricValue& mv);

/// Signed eigenvalue counts (negative, positive) of a symmetric matrix,
/// ignoring eigenvalues with |lambda| <= threshold. Exposed for the
/// Sylvester-invariance property tests.
std::pair<int, int> signature_of(const Eigen::MatrixXd& sym, double threshold);

}  // namespace shearlab
