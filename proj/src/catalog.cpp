#include "shearlab/catalog.hpp"

#include <sstream>

#include "shearlab/errors.hpp"

namespace shearlab {

namespace {

std::vector<CatalogEntry> make_entries() {
    std::vector<CatalogEntry> entries;

    entries.push_back(
        {"plane",
         R"(# affine plane in Euclidean 3-space
[ambient]
dimension   = 3
signature   = 0,3
coordinates = x, y, z
g[1,1] = 1
g[2,2] = 1
g[3,3] = 1

[immersion]
parameters   = u, v
component[1] = u
component[2] = v
component[3] = 0

[samples]
point = 0.3, -1.2
point = 2, 5
)",
         {0, 1, "totally-umbilical", 0},
         "h = 0 identically (affine map, flat ambient), so the shear space is zero "
         "and the whole normal line is umbilical."});

    entries.push_back(
        {"sphere",
         R"(# round sphere of radius 2, polar chart away from the poles
[ambient]
dimension   = 3
signature   = 0,3
coordinates = x, y, z
g[1,1] = 1
g[2,2] = 1
g[3,3] = 1

[immersion]
parameters   = theta, phi
component[1] = 2*sin(theta)*cos(phi)
component[2] = 2*sin(theta)*sin(phi)
component[3] = 2*cos(theta)

[samples]
point = pi/3, pi/5
point = 1.0472, 0.6283
point = 2, 4
)",
         {0, 1, "totally-umbilical", 0},
         "Hand oracle: h(e_i,e_j) = -(1/2) g_ij along the outward unit radial "
         "normal, so htilde = 0, |H| = 1/2, and the normal line is umbilical."});

    entries.push_back(
        {"cylinder",
         R"(# right circular cylinder in Euclidean 3-space
[ambient]
dimension   = 3
signature   = 0,3
coordinates = x, y, z
g[1,1] = 1
g[2,2] = 1
g[3,3] = 1

[immersion]
parameters   = u, v
component[1] = cos(u)
component[2] = sin(u)
component[3] = v

[samples]
point = 1.2, 0.3
point = pi/2, -2
)",
         {1, 0, "no-umbilical-directions", 0},
         "Hand oracle: with the outward normal (cos u, sin u, 0), h(du,du) = -1 and "
         "h(dv,dv) = 0, so htilde = diag(-1/2, 1/2) on the only normal direction: "
         "one shear direction, nothing umbilical."});

    entries.push_back(
        {"torus",
         R"(# product of two unit circles in Euclidean 4-space
[ambient]
dimension   = 4
signature   = 0,4
coordinates = x1, x2, x3, x4
g[1,1] = 1
g[2,2] = 1
g[3,3] = 1
g[4,4] = 1

[immersion]
parameters   = u, v
component[1] = cos(u)
component[2] = sin(u)
component[3] = cos(v)
component[4] = sin(v)

[samples]
point = 0.9, -0.4
point = pi/5, pi/7
grid  = 0.05:6.2:8, 0.05:6.2:8
)",
         {1, 1, "single-shear-direction", 0},
         "Hand oracle: h(du,du) = -(cos u, sin u, 0, 0), h(dv,dv) = -(0,0,cos v,"
         "sin v), h(du,dv) = 0; subtracting g*H leaves htilde spanned by the "
         "difference of the two circle normals, while their sum (the H direction) "
         "is umbilical."});

    entries.push_back(
        {"minksphere",
         R"(# round sphere of radius 2 inside the t = 0 slice of Minkowski space
[ambient]
dimension   = 4
signature   = 1,3
coordinates = t, x, y, z
g[1,1] = -1
g[2,2] = 1
g[3,3] = 1
g[4,4] = 1

[immersion]
parameters   = theta, phi
component[1] = 0
component[2] = 2*sin(theta)*cos(phi)
component[3] = 2*sin(theta)*sin(phi)
component[4] = 2*cos(theta)

[samples]
point = pi/3, pi/5
point = 1.9, -0.6
)",
         {0, 2, "totally-umbilical", 0},
         "Hand oracle: the second derivatives stay in the t = 0 slice, so the "
         "Weingarten operator of the timelike normal vanishes and the radial "
         "normal reproduces the Euclidean sphere: htilde = 0, both normal "
         "directions umbilical."});

    entries.push_back(
        {"nullgraph",
         R"(# graph over a null direction in Minkowski space: shear on a null line
[ambient]
dimension   = 4
signature   = 1,3
coordinates = t, x, y, z
g[1,1] = -1
g[2,2] = 1
g[3,3] = 1
g[4,4] = 1

[immersion]
parameters   = u, v
component[1] = u^2 + v
component[2] = u
component[3] = v
component[4] = u^2 + v

[samples]
point = 0.8, -0.2
point = 0, 0
point = 1.5, 2
)",
         {1, 1, "single-shear-direction", 1},
         "Hand oracle: every second derivative is a multiple of the null vector "
         "l = (1,0,0,1), the induced metric is exactly flat, htilde(du,du) = l = "
         "-htilde(dv,dv). The shear space and the umbilical space are both the "
         "null line spanned by l, so they intersect in dimension 1."});

    entries.push_back(
        {"helix",
         R"(# helix curve in Euclidean 3-space: curves carry no shear
[ambient]
dimension   = 3
signature   = 0,3
coordinates = x, y, z
g[1,1] = 1
g[2,2] = 1
g[3,3] = 1

[immersion]
parameters   = s
component[1] = cos(s)
component[2] = sin(s)
component[3] = s/2

[samples]
point = 0.9
point = -3
)",
         {0, 2, "totally-umbilical", 0},
         "A 1x1 symmetric tensor equals its trace part, so htilde vanishes for "
         "every curve and both normal directions are umbilical."});

    entries.push_back(
        {"cubicgraph",
         R"(# cubic graph over a null direction: rank drops on the u = 0 line
[ambient]
dimension   = 4
signature   = 1,3
coordinates = t, x, y, z
g[1,1] = -1
g[2,2] = 1
g[3,3] = 1
g[4,4] = 1

[immersion]
parameters   = u, v
component[1] = u^3
component[2] = u
component[3] = v
component[4] = u^3

[samples]
point = 1, -1
point = -0.5, 2
grid  = -1:1:5, -1:1:3
)",
         {1, 1, "single-shear-direction", 1},
         "Hand oracle: second derivatives are 6u times the null vector (1,0,0,1), "
         "so away from u = 0 the structure matches the null graph; on the u = 0 "
         "line h vanishes and the point is totally umbilical. The explicit sample "
         "points avoid u = 0; the grid crosses it on purpose for scan demos."});

    // invariant gate: expectations must be dimensionally consistent
    for (const auto& entry : entries) {
        ParsedSpec parsed = entry.parse();
        const int n = parsed.immersion->n();
        const int k = parsed.immersion->k();
        if (entry.expected.m + entry.expected.d != k)
            throw Error("catalog entry '" + entry.name + "': expected m + d != k");
        if (entry.expected.d > std::min(k, n * (n + 1) / 2 - 1))
            throw Error("catalog entry '" + entry.name + "': expected d above the bound");
        if (parsed.points.empty())
            throw Error("catalog entry '" + entry.name + "': no sample points");
    }
    return entries;
}

}  // namespace

const std::vector<CatalogEntry>& list_entries() {
    static const std::vector<CatalogEntry> entries = make_entries();
    return entries;
}

const CatalogEntry& find_entry(const std::string& name) {
    for (const auto& entry : list_entries())
        if (entry.name == name) return entry;
    throw Error("unknown catalog entry '" + name + "'");
}

CatalogRun run_entry(const CatalogEntry& entry, const Tolerances& tol) {
    CatalogRun run;
    ParsedSpec parsed = entry.parse();
    for (const Eigen::VectorXd& point : parsed.points) {
        std::ostringstream where;
        where << "point (";
        for (int i = 0; i < point.size(); ++i) where << (i ? ", " : "") << point[i];
        where << ")";
        try {
            ShearReport rep = classify(*parsed.immersion, point, tol);
            auto mismatch = [&](const std::string& what, const std::string& got,
                               const std::string& want) {
                run.problems.push_back(entry.name + " at " + where.str() + ": " + what +
                                       " = " + got + ", expected " + want);
            };
            if (rep.d != entry.expected.d)
                mismatch("d", std::to_string(rep.d), std::to_string(entry.expected.d));
            if (rep.m != entry.expected.m)
                mismatch("m", std::to_string(rep.m), std::to_string(entry.expected.m));
            if (rep.label != entry.expected.label)
                mismatch("label", rep.label, entry.expected.label);
            if (rep.intersection_dim != entry.expected.intersection)
                mismatch("intersection dim", std::to_string(rep.intersection_dim),
                         std::to_string(entry.expected.intersection));
            run.reports.push_back(std::move(rep));
        } catch (const Error& err) {
            run.problems.push_back(entry.name + " at " + where.str() + ": " + err.what());
        }
    }
    run.passed = run.problems.empty() && !run.reports.empty();
    return run;
}

}  // namespace shearlab
