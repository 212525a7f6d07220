#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "shearlab/immersion.hpp"

using namespace shearlab;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
    Eigen::VectorXd x(static_cast<int>(v.size()));
    int i = 0;
    for (double d : v) x[i++] = d;
    return x;
}

std::shared_ptr<const AmbientManifold> euclidean(int N) {
    std::vector<std::string> coords;
    std::vector<MetricEntry> entries;
    for (int a = 0; a < N; ++a) {
        coords.push_back("x" + std::to_string(a + 1));
        entries.push_back({a, a, "1"});
    }
    return AmbientManifold::create(coords, 0, N, entries);
}

std::shared_ptr<const AmbientManifold> minkowski(int N) {
    std::vector<std::string> coords{"t"};
    std::vector<MetricEntry> entries{{0, 0, "-1"}};
    for (int a = 1; a < N; ++a) {
        coords.push_back("x" + std::to_string(a));
        entries.push_back({a, a, "1"});
    }
    return AmbientManifold::create(coords, 1, N - 1, entries);
}

// ambient-metric projector onto the normal space
Eigen::MatrixXd normal_projector(const FrameData& fd) {
    return fd.Xi * fd.G_N_inv * fd.Xi.transpose() * fd.ambient.g_lower;
}

}  // namespace

TEST_CASE("coordinate plane in euclidean 3-space") {
    auto spec = ImmersionSpec::create(euclidean(3), {"u", "v"}, {"u", "v", "0"});
    FrameData fd = frame_at(*spec, vec({0.3, -1.0}));

    CHECK(fd.n == 2);
    CHECK(fd.k == 1);
    CHECK((fd.g - Eigen::MatrixXd::Identity(2, 2)).norm() == 0.0);
    for (const auto& h : fd.d2phi) CHECK(h.norm() == 0.0);

    // normal frame spans the z axis
    CHECK(std::abs(fd.Xi(2, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(fd.Xi(0, 0)) < 1e-14);
    CHECK(fd.G_N(0, 0) == doctest::Approx(1.0));
    CHECK(fd.normal_signature == std::pair<int, int>(0, 1));

    Eigen::VectorXd w = vec({2.0, 5.0, -7.0});
    CHECK((tangent_project(fd, w) - vec({2.0, 5.0, 0.0})).norm() < 1e-14);
    CHECK((normal_project(fd, w) - vec({0.0, 0.0, -7.0})).norm() < 1e-14);
}

TEST_CASE("round sphere chart: induced metric and radial normal") {
    auto spec = ImmersionSpec::create(
        euclidean(3), {"theta", "phi"},
        {"2*sin(theta)*cos(phi)", "2*sin(theta)*sin(phi)", "2*cos(theta)"});
    double theta = M_PI / 3.0;
    FrameData fd = frame_at(*spec, vec({theta, 0.7}));

    CHECK(fd.g(0, 0) == doctest::Approx(4.0));
    CHECK(fd.g(1, 1) == doctest::Approx(4.0 * std::sin(theta) * std::sin(theta)));
    CHECK(fd.g(0, 1) == doctest::Approx(0.0).epsilon(1e-12));

    // the position vector is purely normal on a centred sphere
    CHECK(tangent_project(fd, fd.x).norm() < 1e-12);
    CHECK((normal_project(fd, fd.x) - fd.x).norm() < 1e-12);

    // one second-derivative spot check: d^2/dtheta^2 of 2 sin(theta) cos(phi)
    CHECK(fd.d2phi[0](0, 0) == doctest::Approx(-2.0 * std::sin(theta) * std::cos(0.7)));
}

TEST_CASE("graph over a null direction keeps a flat induced metric") {
    auto spec = ImmersionSpec::create(minkowski(4), {"u", "v"},
                                      {"u^2 + v", "u", "v", "u^2 + v"});
    FrameData fd = frame_at(*spec, vec({0.8, -0.2}));

    CHECK((fd.g - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-13);
    CHECK(fd.normal_signature == std::pair<int, int>(1, 1));

    Eigen::VectorXd ell = vec({1.0, 0.0, 0.0, 1.0});  // null and normal
    CHECK((normal_project(fd, ell) - ell).norm() < 1e-12);
    CHECK(tangent_project(fd, ell).norm() < 1e-12);

    Eigen::VectorXd du = fd.E.col(0);
    CHECK((tangent_project(fd, du) - du).norm() < 1e-12);
}

TEST_CASE("timelike and null curves are rejected") {
    auto amb = minkowski(2);
    auto timelike = ImmersionSpec::create(amb, {"s"}, {"s", "0.1*s"});
    auto null_curve = ImmersionSpec::create(amb, {"s"}, {"s", "s"});
    for (const auto& spec : {timelike, null_curve}) {
        try {
            frame_at(*spec, vec({1.0}));
            FAIL("expected NotSpacelike");
        } catch (const GeometryError& err) {
            CHECK(err.kind() == GeometryError::Kind::NotSpacelike);
        }
    }
}

TEST_CASE("rank drop is rejected") {
    auto spec = ImmersionSpec::create(euclidean(2), {"u"}, {"u^2", "u^3"});
    try {
        frame_at(*spec, vec({0.0}));
        FAIL("expected NotImmersed");
    } catch (const GeometryError& err) {
        CHECK(err.kind() == GeometryError::Kind::NotImmersed);
    }
    CHECK_NOTHROW(frame_at(*spec, vec({1.0})));
}

TEST_CASE("tangent/normal split is complete, orthogonal and idempotent") {
    auto graph = ImmersionSpec::create(euclidean(3), {"u", "v"},
                                       {"u", "v", "sin(u)*cos(v)"});
    auto lorentz = ImmersionSpec::create(minkowski(4), {"u", "v"},
                                         {"0.2*u^2", "u", "v", "0.3*u*v"});
    std::mt19937_64 rng(41u);
    std::uniform_real_distribution<double> pt(-1.2, 1.2);

    for (const auto& spec : {graph, lorentz}) {
        for (int trial = 0; trial < 8; ++trial) {
            FrameData fd = frame_at(*spec, vec({pt(rng), pt(rng)}));
            const Eigen::MatrixXd& gbar = fd.ambient.g_lower;

            double frame_norm = std::max(fd.E.operatorNorm(), fd.Xi.operatorNorm());
            double bound = Tolerances{}.orthogonality(gbar.operatorNorm(), frame_norm);
            CHECK((fd.E.transpose() * gbar * fd.Xi).cwiseAbs().maxCoeff() <= bound);

            Eigen::VectorXd w(fd.N);
            for (int a = 0; a < fd.N; ++a) w[a] = pt(rng);
            Eigen::VectorXd tp = tangent_project(fd, w);
            Eigen::VectorXd np = normal_project(fd, w);
            CHECK((tp + np - w).norm() < 1e-12 * std::max(1.0, w.norm()));
            CHECK((tangent_project(fd, tp) - tp).norm() < 1e-11);
            CHECK(std::abs(tp.dot(gbar * np)) < 1e-11);
        }
    }
}

TEST_CASE("normal projector is invariant under frame changes") {
    auto spec = ImmersionSpec::create(minkowski(4), {"u", "v"},
                                      {"0.2*u^2", "u", "v", "0.3*u*v"});
    FrameData fd = frame_at(*spec, vec({0.6, -0.9}));
    Eigen::MatrixXd P = normal_projector(fd);

    std::mt19937_64 rng(5u);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        Eigen::MatrixXd M(fd.k, fd.k);
        do {
            for (int i = 0; i < fd.k; ++i)
                for (int j = 0; j < fd.k; ++j) M(i, j) = gauss(rng);
        } while (std::abs(M.determinant()) < 0.1);

        FrameData mixed = remix_normal_frame(fd, M);
        CHECK((mixed.G_N - M.transpose() * fd.G_N * M).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((normal_projector(mixed) - P).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(mixed.normal_signature == fd.normal_signature);
    }
}

TEST_CASE("helix curve has a two-dimensional riemannian normal space") {
    auto spec = ImmersionSpec::create(euclidean(3), {"s"}, {"cos(s)", "sin(s)", "0.5*s"});
    FrameData fd = frame_at(*spec, vec({0.9}));
    CHECK(fd.n == 1);
    CHECK(fd.k == 2);
    CHECK(fd.g(0, 0) == doctest::Approx(1.25));
    CHECK(fd.normal_signature == std::pair<int, int>(0, 2));
}

TEST_CASE("construction errors") {
    auto amb = euclidean(3);
    CHECK_THROWS_AS(ImmersionSpec::create(nullptr, {"u"}, {"u", "0", "0"}), Error);
    CHECK_THROWS_AS(ImmersionSpec::create(amb, {}, {"1", "2", "3"}), Error);
    CHECK_THROWS_AS(ImmersionSpec::create(amb, {"u", "u"}, {"u", "0", "0"}), Error);
    CHECK_THROWS_AS(ImmersionSpec::create(amb, {"u"}, {"u", "0"}), Error);
    CHECK_THROWS_AS(ImmersionSpec::create(amb, {"u", "v", "w"}, {"u", "v", "w"}), Error);
    CHECK_THROWS_AS(ImmersionSpec::create(amb, {"u"}, {"u", "q", "0"}), ParseError);

    auto spec = ImmersionSpec::create(amb, {"u"}, {"u", "0", "0"});
    CHECK_THROWS_AS(frame_at(*spec, vec({1.0, 2.0})), Error);
    FrameData fd = frame_at(*spec, vec({1.0}));
    CHECK_THROWS_AS(tangent_project(fd, vec({1.0, 2.0})), Error);
}
