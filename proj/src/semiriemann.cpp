#include "shearlab/semiriemann.hpp"

#include <cmath>
#include <sstream>

namespace shearlab {

std::shared_ptr<const AmbientManifold> AmbientManifold::create(
    std::vector<std::string> coordinates, int n_minus, int n_plus,
    const std::vector<MetricEntry>& entries) {
    const int N = static_cast<int>(coordinates.size());
    if (N < 2) throw Error("ambient dimension must be at least 2");
    if (n_minus < 0 || n_plus < 0 || n_minus + n_plus != N)
        throw Error("signature (" + std::to_string(n_minus) + "," + std::to_string(n_plus) +
                    ") does not sum to dimension " + std::to_string(N));

    auto amb = std::shared_ptr<AmbientManifold>(new AmbientManifold());
    amb->coords_ = coordinates;
    amb->n_minus_ = n_minus;
    amb->n_plus_ = n_plus;
    amb->upper_.resize(static_cast<std::size_t>(N * (N + 1) / 2));

    std::vector<bool> seen(amb->upper_.size(), false);
    auto tri_index = [N](int a, int b) { return a * N - a * (a - 1) / 2 + (b - a); };

    bool any = false;
    for (const auto& e : entries) {
        if (e.row < 0 || e.col < 0 || e.row >= N || e.col >= N)
            throw Error("metric index (" + std::to_string(e.row + 1) + "," +
                        std::to_string(e.col + 1) + ") out of range for dimension " +
                        std::to_string(N));
        if (e.row > e.col)
            throw Error("metric entries use upper-triangle indices (row <= col); got (" +
                        std::to_string(e.row + 1) + "," + std::to_string(e.col + 1) + ")");
        auto idx = static_cast<std::size_t>(tri_index(e.row, e.col));
        if (seen[idx])
            throw Error("duplicate metric entry (" + std::to_string(e.row + 1) + "," +
                        std::to_string(e.col + 1) + ")");
        seen[idx] = true;
        amb->upper_[idx] = parse(e.source, coordinates);
        any = true;
    }
    if (!any) throw Error("metric has no components");

    // absent entries are structural zeros
    for (auto& slot : amb->upper_) {
        if (!slot.valid()) slot = parse("0", coordinates);
    }
    return amb;
}

const Expression& AmbientManifold::component(int a, int b) const {
    if (a > b) std::swap(a, b);
    const int N = dim();
    return upper_[static_cast<std::size_t>(a * N - a * (a - 1) / 2 + (b - a))];
}

std::pair<int, int> signature_of(const Eigen::MatrixXd& sym, double threshold) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
    int neg = 0, pos = 0;
    for (int i = 0; i < sym.rows(); ++i) {
        double lambda = es.eigenvalues()[i];
        if (lambda < -threshold)
            ++neg;
        else if (lambda > threshold)
            ++pos;
    }
    return {neg, pos};
}

MetricValue metric_at(const AmbientManifold& amb, const Eigen::VectorXd& x,
                      const Tolerances& tol) {
    const int N = amb.dim();
    if (x.size() != N)
        throw Error("point dimension " + std::to_string(x.size()) +
                    " does not match ambient dimension " + std::to_string(N));

    MetricValue mv;
    mv.point = x;
    mv.g_lower.setZero(N, N);
    mv.d_g.assign(static_cast<std::size_t>(N), Eigen::MatrixXd::Zero(N, N));

    std::span<const double> bind(x.data(), static_cast<std::size_t>(N));
    for (int a = 0; a < N; ++a) {
        for (int b = a; b < N; ++b) {
            Jet2 j = amb.component(a, b).eval_jet2(bind);
            mv.g_lower(a, b) = j.value;
            mv.g_lower(b, a) = j.value;
            for (int c = 0; c < N; ++c) {
                mv.d_g[static_cast<std::size_t>(c)](a, b) = j.gradient[c];
                mv.d_g[static_cast<std::size_t>(c)](b, a) = j.gradient[c];
            }
        }
    }

    Eigen::FullPivLU<Eigen::MatrixXd> lu(mv.g_lower);
    mv.det = lu.determinant();
    double inf_norm = mv.g_lower.cwiseAbs().rowwise().sum().maxCoeff();
    if (std::abs(mv.det) < tol.det_floor(inf_norm, N)) {
        std::ostringstream msg;
        msg << "degenerate metric: |det g| = " << std::abs(mv.det) << " at point ["
            << x.transpose() << "]";
        throw GeometryError(GeometryError::Kind::DegenerateMetric, msg.str());
    }
    mv.g_upper = lu.solve(Eigen::MatrixXd::Identity(N, N));

    double two_norm = mv.g_lower.operatorNorm();
    auto [neg, pos] = signature_of(mv.g_lower, tol.signature_eig(two_norm));
    if (neg != amb.n_minus() || pos != amb.n_plus()) {
        std::ostringstream msg;
        msg << "metric signature (" << neg << "," << pos << ") at point [" << x.transpose()
            << "] does not match declared (" << amb.n_minus() << "," << amb.n_plus() << ")";
        throw GeometryError(GeometryError::Kind::SignatureMismatch, msg.str());
    }
    return mv;
}

std::vector<Eigen::MatrixXd> christoffel(const MetricValue& mv) {
    const int N = static_cast<int>(mv.g_lower.rows());
    std::vector<Eigen::MatrixXd> gamma(static_cast<std::size_t>(N),
                                       Eigen::MatrixXd::Zero(N, N));
    for (int a = 0; a < N; ++a) {
        auto& ga = gamma[static_cast<std::size_t>(a)];
        for (int b = 0; b < N; ++b) {
            for (int c = b; c < N; ++c) {
                double sum = 0.0;
                for (int d = 0; d < N; ++d) {
                    sum += mv.g_upper(a, d) *
                           (mv.d_g[static_cast<std::size_t>(b)](d, c) +
                            mv.d_g[static_cast<std::size_t>(c)](d, b) -
                            mv.d_g[static_cast<std::size_t>(d)](b, c));
                }
                ga(b, c) = 0.5 * sum;
                ga(c, b) = ga(b, c);
            }
        }
    }
    return gamma;
}

std::vector<Eigen::MatrixXd> christoffel(const AmbientManifold& amb, const Eigen::VectorXd& x,
                                         const Tolerances& tol) {
    return christoffel(metric_at(amb, x, tol));
}

}  // namespace shearlab
