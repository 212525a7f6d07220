#pragma once

#include <string>

#include "shearlab/shear.hpp"

namespace shearlab {

/// JSON form of one report:
///   {point, d, m, k, label, shear_basis, umbilical_basis, intersection_dim,
///    checks: {dims_sum, wedge, operator_rank, duality_residual},
///    tolerances: {rank_rel, trace_free, umbilical, intersection}}
/// Bases are arrays of columns (normal components, k values each). Numbers
/// use shortest round-trip formatting, so re-parsing reproduces them
/// bit-exactly.
std::string report_to_json(const ShearReport& rep, int indent = 2);

/// Array of per-point reports in input order.
std::string reports_to_json(const std::vector<ShearReport>& reps, int indent = 2);

/// Human-readable block for one report.
std::string report_to_text(const ShearReport& rep);

/// Per-point lines, partition summary and the constancy verdict.
std::string scan_to_text(const ScanResult& scan);

}  // namespace shearlab
