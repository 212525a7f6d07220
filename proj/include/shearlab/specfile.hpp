#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "shearlab/immersion.hpp"

namespace shearlab {

/// One rectangular sampling axis: count values from min to max inclusive.
struct GridAxis {
    double min = 0.0;
    double max = 0.0;
    int count = 1;
};

/// Result of parsing a spec file: the geometry plus whatever sampling data
/// the [samples] section declared.
struct ParsedSpec {
    std::shared_ptr<const ImmersionSpec> immersion;
    std::vector<Eigen::VectorXd> points;  // explicit sample points, input order
    std::vector<GridAxis> grid;           // one axis per parameter; empty if no grid

    /// Explicit points followed by the expanded grid.
    std::vector<Eigen::VectorXd> all_samples() const;
};

/// Parse the line-oriented spec format:
///
///   # comment
///   [ambient]
///   dimension   = 3
///   signature   = 0,3            # n_minus, n_plus
///   coordinates = x, y, z
///   g[1,1] = 1                   # upper triangle, 1-based; omitted = 0
///   ...
///   [immersion]
///   parameters   = u, v
///   component[1] = cos(u)
///   ...
///   [samples]                    # optional
///   point = pi/3, pi/5           # repeatable; constant expressions allowed
///   grid  = 0:1:5, -1:1:3        # min:max:count per parameter, at most one
///
/// Problems raise SpecError with a 1-based line number.
ParsedSpec parse_spec_text(const std::string& text);

/// Read and parse a spec file; file-system problems raise SpecError.
ParsedSpec load_spec_file(const std::string& path);

/// Row-major grid expansion, last axis fastest.
std::vector<Eigen::VectorXd> expand_grid(const std::vector<GridAxis>& axes);

}  // namespace shearlab
