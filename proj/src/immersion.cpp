#include "shearlab/immersion.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <set>
#include <span>

namespace shearlab {

std::shared_ptr<const ImmersionSpec> ImmersionSpec::create(
    std::shared_ptr<const AmbientManifold> ambient, std::vector<std::string> parameters,
    const std::vector<std::string>& components) {
    if (!ambient) throw Error("immersion needs an ambient manifold");
    if (parameters.empty()) throw Error("immersion needs at least one parameter");

    std::set<std::string> seen;
    for (const auto& p : parameters) {
        if (p.empty()) throw Error("empty parameter name");
        if (!seen.insert(p).second) throw Error("duplicate parameter name '" + p + "'");
    }

    const int N = ambient->dim();
    const int n = static_cast<int>(parameters.size());
    if (static_cast<int>(components.size()) != N)
        throw Error("expected " + std::to_string(N) + " immersion components, got " +
                    std::to_string(components.size()));
    if (n >= N)
        throw Error("intrinsic dimension " + std::to_string(n) +
                    " must be smaller than the ambient dimension " + std::to_string(N));

    auto spec = std::shared_ptr<ImmersionSpec>(new ImmersionSpec());
    spec->ambient_ = std::move(ambient);
    spec->params_ = std::move(parameters);
    spec->components_.reserve(static_cast<std::size_t>(N));
    for (const auto& src : components) spec->components_.push_back(parse(src, spec->params_));
    return spec;
}

FrameData frame_at(const ImmersionSpec& spec, const Eigen::VectorXd& u, const Tolerances& tol) {
    const int n = spec.n();
    const int N = spec.N();
    const int k = spec.k();
    if (u.size() != n)
        throw Error("parameter point has dimension " + std::to_string(u.size()) + ", expected " +
                    std::to_string(n));

    FrameData fd;
    fd.u = u;
    fd.n = n;
    fd.k = k;
    fd.N = N;
    fd.ambient_n_minus = spec.ambient().n_minus();
    fd.x = Eigen::VectorXd(N);
    fd.E = Eigen::MatrixXd(N, n);
    fd.d2phi.reserve(static_cast<std::size_t>(N));

    std::span<const double> pt(u.data(), static_cast<std::size_t>(u.size()));
    for (int a = 0; a < N; ++a) {
        Jet2 jet = spec.component(a).eval_jet2(pt);
        fd.x[a] = jet.value;
        fd.E.row(a) = jet.gradient.transpose();
        fd.d2phi.push_back(std::move(jet.hessian));
    }

    // rank of the differential, metric-independent
    Eigen::JacobiSVD<Eigen::MatrixXd> dsvd(fd.E);
    const auto& sv = dsvd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0 || sv(sv.size() - 1) < tol.rank_rel * sv(0))
        throw GeometryError(GeometryError::Kind::NotImmersed,
                            "differential drops rank at the given point (smallest singular "
                            "value " +
                                std::to_string(sv.size() ? sv(sv.size() - 1) : 0.0) + ")");

    fd.ambient = metric_at(spec.ambient(), fd.x, tol);
    const Eigen::MatrixXd& gbar = fd.ambient.g_lower;

    fd.g = fd.E.transpose() * gbar * fd.E;
    fd.g = ((fd.g + fd.g.transpose()) / 2.0).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ges(fd.g);
    const double diag_scale = std::max(1.0, std::abs(fd.g.trace()) / n);
    if (ges.eigenvalues().minCoeff() <= tol.spacelike(diag_scale))
        throw GeometryError(GeometryError::Kind::NotSpacelike,
                            "induced metric is not positive definite (smallest eigenvalue " +
                                std::to_string(ges.eigenvalues().minCoeff()) + ")");
    fd.g_inv = fd.g.llt().solve(Eigen::MatrixXd::Identity(n, n));

    // Normal space = nullspace of E^T gbar (ambient-orthogonality conditions).
    // Full Euclidean SVD; the trailing right singular vectors span the kernel.
    Eigen::MatrixXd C = fd.E.transpose() * gbar;  // n x N
    Eigen::JacobiSVD<Eigen::MatrixXd> nsvd(C, Eigen::ComputeFullV);
    fd.Xi = nsvd.matrixV().rightCols(k);

    fd.G_N = fd.Xi.transpose() * gbar * fd.Xi;
    fd.G_N = ((fd.G_N + fd.G_N.transpose()) / 2.0).eval();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(fd.G_N);
    const double gn_inf = fd.G_N.cwiseAbs().maxCoeff();
    if (std::abs(lu.determinant()) <= tol.det_floor(gn_inf, k))
        throw GeometryError(GeometryError::Kind::DegenerateNormalMetric,
                            "normal Gram matrix is numerically singular (det " +
                                std::to_string(lu.determinant()) + ")");
    fd.G_N_inv = lu.solve(Eigen::MatrixXd::Identity(k, k));
    fd.normal_signature = signature_of(fd.G_N, tol.signature_eig(fd.G_N.operatorNorm()));

    return fd;
}

Eigen::VectorXd tangent_project(const FrameData& fd, const Eigen::VectorXd& v) {
    if (v.size() != fd.N)
        throw Error("vector has dimension " + std::to_string(v.size()) + ", expected " +
                    std::to_string(fd.N));
    return fd.E * (fd.g_inv * (fd.E.transpose() * (fd.ambient.g_lower * v)));
}

Eigen::VectorXd normal_project(const FrameData& fd, const Eigen::VectorXd& v) {
    return v - tangent_project(fd, v);
}

FrameData remix_normal_frame(const FrameData& fd, const Eigen::MatrixXd& M,
                             const Tolerances& tol) {
    if (M.rows() != fd.k || M.cols() != fd.k)
        throw Error("normal frame change must be " + std::to_string(fd.k) + " x " +
                    std::to_string(fd.k));
    FrameData out = fd;
    out.Xi = fd.Xi * M;
    out.G_N = out.Xi.transpose() * fd.ambient.g_lower * out.Xi;
    out.G_N = ((out.G_N + out.G_N.transpose()) / 2.0).eval();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(out.G_N);
    const double gn_inf = out.G_N.cwiseAbs().maxCoeff();
    if (std::abs(lu.determinant()) <= tol.det_floor(gn_inf, fd.k))
        throw GeometryError(GeometryError::Kind::DegenerateNormalMetric,
                            "frame change makes the normal Gram matrix singular");
    out.G_N_inv = lu.solve(Eigen::MatrixXd::Identity(fd.k, fd.k));
    out.normal_signature = signature_of(out.G_N, tol.signature_eig(out.G_N.operatorNorm()));
    return out;
}

}  // namespace shearlab
