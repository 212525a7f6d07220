#pragma once

#include <string>
#include <vector>

#include "shearlab/shear.hpp"
#include "shearlab/specfile.hpp"

namespace shearlab {

struct CatalogExpected {
    int d = 0;
    int m = 0;
    std::string label;
    int intersection = 0;
};

/// A reference immersion with independently derived expected results. The
/// geometry is stored as spec-file text (the same format the CLI reads), so
/// the catalog exercises the full parsing path.
///
/// Expectations apply to the explicit `point` samples; a `grid` in the text,
/// when present, is a sampling aid for scan demonstrations and may cross
/// rank transitions deliberately.
struct CatalogEntry {
    std::string name;
    std::string spec_text;
    CatalogExpected expected;
    std::string note;  // how the expected values were derived

    ParsedSpec parse() const { return parse_spec_text(spec_text); }
};

/// The built-in entries, validated on first use: each expected tuple must
/// satisfy m + d = k and d <= min(k, n(n+1)/2 - 1).
const std::vector<CatalogEntry>& list_entries();

/// Lookup by name; unknown names raise Error.
const CatalogEntry& find_entry(const std::string& name);

struct CatalogRun {
    bool passed = false;
    std::vector<ShearReport> reports;     // one per explicit sample point
    std::vector<std::string> problems;    // mismatch/error descriptions
};

/// Classify the entry at each explicit sample point and compare (d, m,
/// label, intersection dim) against the expected tuple.
CatalogRun run_entry(const CatalogEntry& entry, const Tolerances& tol = {});

}  // namespace shearlab
