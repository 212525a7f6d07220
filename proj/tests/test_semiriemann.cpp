#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "shearlab/semiriemann.hpp"

using namespace shearlab;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
    Eigen::VectorXd x(static_cast<int>(v.size()));
    int i = 0;
    for (double d : v) x[i++] = d;
    return x;
}

std::shared_ptr<const AmbientManifold> minkowski4() {
    return AmbientManifold::create({"t", "x", "y", "z"}, 1, 3,
                                   {{0, 0, "-1"}, {1, 1, "1"}, {2, 2, "1"}, {3, 3, "1"}});
}

std::shared_ptr<const AmbientManifold> euclidean3() {
    return AmbientManifold::create({"x", "y", "z"}, 0, 3,
                                   {{0, 0, "1"}, {1, 1, "1"}, {2, 2, "1"}});
}

// 2-dimensional ambient carrying the sphere chart metric diag(1, sin(theta)^2)
std::shared_ptr<const AmbientManifold> sphere_chart() {
    return AmbientManifold::create({"theta", "phi"}, 0, 2,
                                   {{0, 0, "1"}, {1, 1, "sin(theta)^2"}});
}

}  // namespace

TEST_CASE("constant metrics evaluate with zero derivatives") {
    auto amb = minkowski4();
    MetricValue mv = metric_at(*amb, vec({0.3, -1.2, 7.0, 0.0}));
    Eigen::VectorXd diag(4);
    diag << -1, 1, 1, 1;
    CHECK((mv.g_lower - diag.asDiagonal().toDenseMatrix()).norm() == 0.0);
    for (const auto& d : mv.d_g) CHECK(d.norm() == 0.0);
    for (const auto& gamma : christoffel(mv)) CHECK(gamma.norm() == 0.0);
}

TEST_CASE("euclidean inverse is the identity") {
    auto amb = euclidean3();
    MetricValue mv = metric_at(*amb, vec({1.0, 2.0, 3.0}));
    CHECK((mv.g_upper - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-15);
}

TEST_CASE("sphere chart metric at the equator") {
    auto amb = sphere_chart();
    MetricValue mv = metric_at(*amb, vec({M_PI / 2.0, 0.7}));
    CHECK(mv.g_lower(0, 0) == doctest::Approx(1.0));
    CHECK(mv.g_lower(1, 1) == doctest::Approx(1.0));
    // d_theta g_phiphi = 2 sin(theta) cos(theta) = 0 at the equator
    CHECK(mv.d_g[0](1, 1) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("sphere chart Christoffels match the hand formulas") {
    auto amb = sphere_chart();
    double theta = M_PI / 3.0;
    auto gamma = christoffel(*amb, vec({theta, 1.1}));
    // Gamma^theta_phiphi = -sin cos, Gamma^phi_thetaphi = cot
    CHECK(gamma[0](1, 1) == doctest::Approx(-std::sin(theta) * std::cos(theta)));
    CHECK(gamma[1](0, 1) == doctest::Approx(std::cos(theta) / std::sin(theta)));
    CHECK(gamma[1](1, 0) == doctest::Approx(std::cos(theta) / std::sin(theta)));
    CHECK(gamma[0](0, 0) == doctest::Approx(0.0));
    CHECK(gamma[0](0, 1) == doctest::Approx(0.0));
}

TEST_CASE("expanding 2d metric -dt^2 + t^2 dx^2") {
    auto amb = AmbientManifold::create({"t", "x"}, 1, 1, {{0, 0, "-1"}, {1, 1, "t^2"}});
    double t = 1.7;
    auto gamma = christoffel(*amb, vec({t, 0.4}));
    CHECK(gamma[0](1, 1) == doctest::Approx(t));          // Gamma^t_xx = t
    CHECK(gamma[1](0, 1) == doctest::Approx(1.0 / t));    // Gamma^x_tx = 1/t
    CHECK(gamma[1](1, 0) == doctest::Approx(1.0 / t));
}

TEST_CASE("christoffels agree with finite differences of the metric") {
    auto amb = AmbientManifold::create(
        {"x1", "x2"}, 0, 2,
        {{0, 0, "1"}, {0, 1, "0.3*sin(x2)"}, {1, 1, "2 + x1^2"}});
    std::mt19937_64 rng(7u);
    std::uniform_real_distribution<double> pt(-1.0, 1.0);
    const double h = 1e-6;
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::VectorXd x = vec({pt(rng), pt(rng)});
        MetricValue mv = metric_at(*amb, x);

        // rebuild Gamma from centered differences of g components
        std::vector<Eigen::MatrixXd> dg_fd(2, Eigen::MatrixXd::Zero(2, 2));
        for (int c = 0; c < 2; ++c) {
            Eigen::VectorXd xp = x, xm = x;
            xp[c] += h;
            xm[c] -= h;
            MetricValue mp = metric_at(*amb, xp);
            MetricValue mm = metric_at(*amb, xm);
            dg_fd[static_cast<std::size_t>(c)] = (mp.g_lower - mm.g_lower) / (2.0 * h);
        }
        MetricValue mv_fd = mv;
        mv_fd.d_g = dg_fd;
        auto gamma_ad = christoffel(mv);
        auto gamma_fd = christoffel(mv_fd);
        for (int a = 0; a < 2; ++a)
            CHECK((gamma_ad[static_cast<std::size_t>(a)] - gamma_fd[static_cast<std::size_t>(a)])
                      .cwiseAbs()
                      .maxCoeff() < 1e-6);
    }
}

TEST_CASE("christoffel symmetry and metric compatibility") {
    auto spheres = sphere_chart();
    auto expanding =
        AmbientManifold::create({"t", "x"}, 1, 1, {{0, 0, "-1"}, {1, 1, "t^2"}});
    auto cross = AmbientManifold::create(
        {"x1", "x2"}, 0, 2, {{0, 0, "1"}, {0, 1, "0.3*sin(x2)"}, {1, 1, "2 + x1^2"}});

    std::mt19937_64 rng(99u);
    std::uniform_real_distribution<double> u01(0.2, 1.4);
    auto check_ambient = [&](const AmbientManifold& amb) {
        for (int trial = 0; trial < 20; ++trial) {
            Eigen::VectorXd x(2);
            x << u01(rng), u01(rng);
            MetricValue mv = metric_at(amb, x);
            auto gamma = christoffel(mv);
            const int N = amb.dim();
            for (int a = 0; a < N; ++a) {
                // exact symmetry in the lower pair
                CHECK((gamma[static_cast<std::size_t>(a)] -
                       gamma[static_cast<std::size_t>(a)].transpose())
                          .norm() == 0.0);
            }
            // d_c g_ab - Gamma^d_ca g_db - Gamma^d_cb g_ad = 0
            for (int c = 0; c < N; ++c)
                for (int a = 0; a < N; ++a)
                    for (int b = 0; b < N; ++b) {
                        double r = mv.d_g[static_cast<std::size_t>(c)](a, b);
                        for (int d = 0; d < N; ++d)
                            r -= gamma[static_cast<std::size_t>(d)](c, a) * mv.g_lower(d, b) +
                                 gamma[static_cast<std::size_t>(d)](c, b) * mv.g_lower(a, d);
                        CHECK(std::abs(r) < 1e-8);
                    }
        }
    };
    check_ambient(*spheres);
    check_ambient(*expanding);
    check_ambient(*cross);
}

TEST_CASE("inverse satisfies the conditioned identity bound") {
    auto cross = AmbientManifold::create(
        {"x1", "x2"}, 0, 2, {{0, 0, "1"}, {0, 1, "0.3*sin(x2)"}, {1, 1, "2 + x1^2"}});
    MetricValue mv = metric_at(*cross, vec({0.9, -0.4}));
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(mv.g_lower);
    double cond = svd.singularValues()(0) / svd.singularValues()(svd.singularValues().size() - 1);
    CHECK((mv.g_lower * mv.g_upper - Eigen::MatrixXd::Identity(2, 2)).norm() <= 1e-10 * cond);
}

TEST_CASE("signature mismatch is an error") {
    auto wrong = AmbientManifold::create({"t", "x"}, 0, 2, {{0, 0, "-1"}, {1, 1, "1"}});
    CHECK_THROWS_AS(metric_at(*wrong, vec({0.0, 0.0})), GeometryError);
    try {
        metric_at(*wrong, vec({0.0, 0.0}));
    } catch (const GeometryError& err) {
        CHECK(err.kind() == GeometryError::Kind::SignatureMismatch);
    }
}

TEST_CASE("degenerate metric is an error") {
    auto amb = AmbientManifold::create({"x", "y"}, 0, 2, {{0, 0, "x"}, {1, 1, "1"}});
    CHECK_THROWS_AS(metric_at(*amb, vec({0.0, 1.0})), GeometryError);
    try {
        metric_at(*amb, vec({0.0, 1.0}));
    } catch (const GeometryError& err) {
        CHECK(err.kind() == GeometryError::Kind::DegenerateMetric);
    }
    // and fine away from the degeneracy
    CHECK_NOTHROW(metric_at(*amb, vec({2.0, 1.0})));
}

TEST_CASE("domain errors propagate from the expression layer") {
    auto amb = AmbientManifold::create({"x", "y"}, 0, 2, {{0, 0, "1/x"}, {1, 1, "1"}});
    CHECK_THROWS_AS(metric_at(*amb, vec({0.0, 0.0})), DomainError);
}

TEST_CASE("structural validation") {
    CHECK_THROWS_AS(AmbientManifold::create({"x"}, 0, 1, {{0, 0, "1"}}), Error);
    CHECK_THROWS_AS(AmbientManifold::create({"x", "y"}, 1, 3, {{0, 0, "1"}}), Error);
    CHECK_THROWS_AS(
        AmbientManifold::create({"x", "y"}, 0, 2, {{1, 0, "1"}}), Error);  // lower triangle
    CHECK_THROWS_AS(AmbientManifold::create({"x", "y"}, 0, 2, {{0, 0, "1"}, {0, 0, "2"}}),
                    Error);  // duplicate
    CHECK_THROWS_AS(AmbientManifold::create({"x", "y"}, 0, 2, {{0, 0, "z"}}),
                    ParseError);  // undeclared coordinate
}

TEST_CASE("eigenvalue sign count is congruence invariant") {
    std::mt19937_64 rng(1234u);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> mag(0.5, 2.0);
    std::uniform_int_distribution<int> coin(0, 1);

    for (int trial = 0; trial < 50; ++trial) {
        const int N = 4;
        // symmetric matrix with eigenvalues bounded away from zero
        Eigen::MatrixXd A(N, N);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) A(i, j) = gauss(rng);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
        Eigen::MatrixXd Q = qr.householderQ();
        Eigen::VectorXd lambda(N);
        for (int i = 0; i < N; ++i) lambda[i] = (coin(rng) ? 1.0 : -1.0) * mag(rng);
        Eigen::MatrixXd S = Q * lambda.asDiagonal() * Q.transpose();
        S = ((S + S.transpose()) / 2.0).eval();

        Eigen::MatrixXd R(N, N);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) R(i, j) = gauss(rng);
        Eigen::MatrixXd P = Eigen::MatrixXd::Identity(N, N) + 0.25 / R.operatorNorm() * R;

        Eigen::MatrixXd congruent = P.transpose() * S * P;
        congruent = ((congruent + congruent.transpose()) / 2.0).eval();

        auto sig1 = signature_of(S, 1e-10 * S.operatorNorm());
        auto sig2 = signature_of(congruent, 1e-10 * congruent.operatorNorm());
        CHECK(sig1.first == sig2.first);
        CHECK(sig1.second == sig2.second);
    }
}
