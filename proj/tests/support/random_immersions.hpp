#pragma once

// Deterministic generator of random spacelike immersions: a coordinate
// n-plane embedded in a flat N-dimensional ambient (Euclidean or Lorentzian),
// bent by small random cubic polynomials. The perturbation size keeps the
// induced metric positive definite on the sampled box, and every sample
// point is validated through frame_at before the immersion is returned, so
// consumers never see a degenerate draw.

#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "shearlab/immersion.hpp"

namespace testsupport {

struct RandomImmersion {
    std::shared_ptr<const shearlab::ImmersionSpec> spec;
    std::vector<Eigen::VectorXd> points;
    int n = 0;
    int k = 0;
    bool lorentzian = false;
};

namespace detail {

inline std::string fmt(double x) {
    std::ostringstream out;
    out.precision(12);
    out << x;
    return out.str();
}

// "(c)*ui*uj" with |c| in [0.05, 0.5]; parenthesized so signs never collide
inline std::string monomial(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> mag(0.05, 0.5);
    std::uniform_int_distribution<int> sign(0, 1);
    std::uniform_int_distribution<int> deg_d(1, 3);
    std::uniform_int_distribution<int> var_d(1, n);
    double c = mag(rng) * (sign(rng) ? 1.0 : -1.0);
    std::string out = "(" + fmt(c) + ")";
    const int deg = deg_d(rng);
    for (int i = 0; i < deg; ++i) out += "*u" + std::to_string(var_d(rng));
    return out;
}

inline std::string perturbation(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> terms_d(2, 4);
    const int terms = terms_d(rng);
    std::string sum;
    for (int t = 0; t < terms; ++t) {
        if (t) sum += " + ";
        sum += monomial(rng, n);
    }
    return "0.05*(" + sum + ")";
}

}  // namespace detail

/// One random immersion per seed; identical seeds give identical geometry.
inline RandomImmersion random_immersion(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dim_d(1, 3);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_real_distribution<double> point_d(-0.6, 0.6);

    RandomImmersion out;
    out.n = dim_d(rng);
    out.k = dim_d(rng);
    out.lorentzian = coin(rng) == 1;
    const int N = out.n + out.k;

    std::vector<std::string> coords;
    std::vector<shearlab::MetricEntry> metric;
    if (out.lorentzian) {
        coords.push_back("t");
        metric.push_back({0, 0, "-1"});
    }
    for (int a = static_cast<int>(coords.size()); a < N; ++a) {
        coords.push_back("x" + std::to_string(a + 1));
        metric.push_back({a, a, "1"});
    }
    auto ambient = shearlab::AmbientManifold::create(coords, out.lorentzian ? 1 : 0,
                                                     out.lorentzian ? N - 1 : N, metric);

    std::vector<std::string> params;
    for (int i = 1; i <= out.n; ++i) params.push_back("u" + std::to_string(i));

    for (int attempt = 0; attempt < 50; ++attempt) {
        // the n spatial slots right after any time coordinate carry the graph
        const int first_spatial = out.lorentzian ? 1 : 0;
        std::vector<std::string> components(static_cast<std::size_t>(N));
        for (int a = 0; a < N; ++a) {
            std::string expr = detail::perturbation(rng, out.n);
            int slot = a - first_spatial;
            if (slot >= 0 && slot < out.n)
                expr = "u" + std::to_string(slot + 1) + " + " + expr;
            components[static_cast<std::size_t>(a)] = expr;
        }

        std::vector<Eigen::VectorXd> pts;
        for (int p = 0; p < 3; ++p) {
            Eigen::VectorXd u(out.n);
            for (int i = 0; i < out.n; ++i) u[i] = point_d(rng);
            pts.push_back(std::move(u));
        }

        try {
            auto spec = shearlab::ImmersionSpec::create(ambient, params, components);
            for (const auto& u : pts) shearlab::frame_at(*spec, u);
            out.spec = std::move(spec);
            out.points = std::move(pts);
            return out;
        } catch (const shearlab::GeometryError&) {
            // degenerate draw; take fresh coefficients from the same stream
        }
    }
    throw shearlab::Error("random immersion generation failed for seed " +
                          std::to_string(seed));
}

inline std::vector<RandomImmersion> random_population(int count, std::uint64_t base_seed) {
    std::vector<RandomImmersion> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        out.push_back(random_immersion(base_seed + static_cast<std::uint64_t>(i)));
    return out;
}

}  // namespace testsupport
