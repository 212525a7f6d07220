#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "shearlab/errors.hpp"
#include "shearlab/expr.hpp"
#include "shearlab/semiriemann.hpp"
#include "shearlab/tolerances.hpp"

namespace shearlab {

/// A parametrized spacelike submanifold: one component expression per ambient
/// coordinate, written in the immersion parameters.
class ImmersionSpec {
public:
    static std::shared_ptr<const ImmersionSpec> create(
        std::shared_ptr<const AmbientManifold> ambient, std::vector<std::string> parameters,
        const std::vector<std::string>& components);

    const AmbientManifold& ambient() const { return *ambient_; }
    std::shared_ptr<const AmbientManifold> ambient_ptr() const { return ambient_; }

    int n() const { return static_cast<int>(params_.size()); }  // intrinsic dimension
    int N() const { return ambient_->dim(); }                   // ambient dimension
    int k() const { return N() - n(); }                         // codimension

    const std::vector<std::string>& parameters() const { return params_; }
    const Expression& component(int a) const { return components_.at(static_cast<std::size_t>(a)); }

private:
    ImmersionSpec() = default;

    std::shared_ptr<const AmbientManifold> ambient_;
    std::vector<std::string> params_;
    std::vector<Expression> components_;
};

/// Everything pointwise the curvature layer needs: the ambient metric data at
/// the image point, first and second parameter derivatives of the immersion,
/// the induced metric, and a normal frame.
///
/// The tangent frame `E` holds the coordinate vectors d(Phi)/du^i as columns.
/// The normal frame `Xi` spans the orthogonal complement of the column span
/// of E with respect to the ambient metric; its columns are Euclidean
/// orthonormal but in general *not* orthonormal for the ambient metric, so
/// normal-space computations go through the Gram matrix `G_N = Xi^T gbar Xi`.
struct FrameData {
    Eigen::VectorXd u;  // parameter point
    Eigen::VectorXd x;  // ambient image Phi(u)

    Eigen::MatrixXd E;                   // N x n, columns are tangent vectors
    std::vector<Eigen::MatrixXd> d2phi;  // per ambient index a: n x n Hessian of Phi^a

    MetricValue ambient;  // metric, inverse and derivatives at x

    Eigen::MatrixXd g;      // induced metric E^T gbar E (n x n, positive definite)
    Eigen::MatrixXd g_inv;  // its inverse

    Eigen::MatrixXd Xi;        // N x k normal frame
    Eigen::MatrixXd G_N;       // Xi^T gbar Xi (k x k, invertible, maybe indefinite)
    Eigen::MatrixXd G_N_inv;   // its inverse
    std::pair<int, int> normal_signature;  // (minus, plus) sign counts of G_N
    int ambient_n_minus = 0;   // declared ambient signature, for Riemannian-only checks

    int n = 0;
    int k = 0;
    int N = 0;
};

/// Evaluate the immersion at parameter point u and assemble the frame data.
///
/// Throws GeometryError with kind
///   NotImmersed            if dPhi drops rank,
///   NotSpacelike           if the induced metric is not positive definite,
///   DegenerateNormalMetric if the normal Gram matrix is not invertible,
/// and propagates metric-level errors from the ambient manifold.
FrameData frame_at(const ImmersionSpec& spec, const Eigen::VectorXd& u,
                   const Tolerances& tol = {});

/// Ambient-metric-orthogonal projection of an ambient vector onto the tangent
/// space: E g^{-1} E^T gbar v.
Eigen::VectorXd tangent_project(const FrameData& fd, const Eigen::VectorXd& v);

/// Complementary projection onto the normal space.
Eigen::VectorXd normal_project(const FrameData& fd, const Eigen::VectorXd& v);

/// Replace the normal frame by Xi * M (M invertible k x k) and refresh the
/// dependent Gram data. Frame-covariance tests rotate frames through this.
FrameData remix_normal_frame(const FrameData& fd, const Eigen::MatrixXd& M,
                             const Tolerances& tol = {});

}  // namespace shearlab
