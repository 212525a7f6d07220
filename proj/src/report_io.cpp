#include "shearlab/report_io.hpp"

#include <charconv>
#include <json.hpp>
#include <sstream>

namespace shearlab {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string num(double v) {
    char buf[40];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

std::string point_str(const Eigen::VectorXd& u) {
    std::string s = "(";
    for (int i = 0; i < u.size(); ++i) s += (i ? ", " : "") + num(u[i]);
    return s + ")";
}

ordered_json columns(const Eigen::MatrixXd& B) {
    ordered_json cols = ordered_json::array();
    for (int c = 0; c < B.cols(); ++c) {
        ordered_json col = ordered_json::array();
        for (int r = 0; r < B.rows(); ++r) col.push_back(B(r, c));
        cols.push_back(std::move(col));
    }
    return cols;
}

ordered_json to_json(const ShearReport& rep) {
    ordered_json j;
    ordered_json point = ordered_json::array();
    for (int i = 0; i < rep.u.size(); ++i) point.push_back(rep.u[i]);
    j["point"] = std::move(point);
    j["d"] = rep.d;
    j["m"] = rep.m;
    j["k"] = rep.k;
    j["label"] = rep.label;
    j["shear_basis"] = columns(rep.S);
    j["umbilical_basis"] = columns(rep.U);
    j["intersection_dim"] = rep.intersection_dim;
    j["checks"] = {{"dims_sum", rep.dims_sum_ok},
                   {"wedge", rep.wedge_ok},
                   {"operator_rank", rep.operator_rank_ok},
                   {"duality_residual", rep.duality_residual}};
    j["tolerances"] = {{"rank_rel", rep.tol.rank_rel},
                       {"trace_free", rep.tol.trace_free(rep.h_max)},
                       {"umbilical", rep.tol.umbilical(rep.htilde_fro)},
                       {"intersection", rep.tol.intersection()}};
    return j;
}

}  // namespace

std::string report_to_json(const ShearReport& rep, int indent) {
    return to_json(rep).dump(indent);
}

std::string reports_to_json(const std::vector<ShearReport>& reps, int indent) {
    ordered_json arr = ordered_json::array();
    for (const auto& rep : reps) arr.push_back(to_json(rep));
    return arr.dump(indent);
}

std::string report_to_text(const ShearReport& rep) {
    std::ostringstream out;
    out << "point " << point_str(rep.u) << "\n";
    out << "  n=" << rep.n << " k=" << rep.k << " ambient N=" << rep.N << "\n";
    out << "  d=" << rep.d << " m=" << rep.m << "  label: " << rep.label << "\n";
    out << "  intersection dim: " << rep.intersection_dim;
    if (rep.riemannian_direct_sum.has_value())
        out << "  (riemannian direct sum: " << (*rep.riemannian_direct_sum ? "yes" : "NO")
            << ")";
    out << "\n";
    out << "  checks: dims-sum " << (rep.dims_sum_ok ? "ok" : "FAIL") << ", wedge "
        << (rep.wedge_ok ? "ok" : "FAIL") << " (rank " << rep.wedge_rank << "), operator-rank "
        << (rep.operator_rank_ok ? "ok" : "FAIL") << " (rank " << rep.op_rank
        << "), duality residual " << num(rep.duality_residual) << "\n";
    out << "  H (normal components): " << point_str(rep.H) << "\n";
    if (rep.S.cols() > 0) {
        out << "  shear basis:";
        for (int c = 0; c < rep.S.cols(); ++c) out << " " << point_str(rep.S.col(c));
        out << "\n";
    }
    if (rep.U.cols() > 0) {
        out << "  umbilical basis:";
        for (int c = 0; c < rep.U.cols(); ++c) out << " " << point_str(rep.U.col(c));
        out << "\n";
    }
    if (rep.d == 1) {
        out << "  G: " << point_str(rep.G) << "\n";
        out << "  Atilde rows:";
        for (int r = 0; r < rep.Atilde.rows(); ++r)
            out << " " << point_str(rep.Atilde.row(r));
        out << "\n";
    }
    return out.str();
}

std::string scan_to_text(const ScanResult& scan) {
    std::ostringstream out;
    for (const auto& entry : scan.entries) {
        out << point_str(entry.u) << " -> ";
        if (entry.report)
            out << "d=" << entry.report->d << " m=" << entry.report->m << "  "
                << entry.report->label << "\n";
        else
            out << "error: " << entry.error << "\n";
    }
    out << "scanned " << scan.entries.size() << " points, " << scan.failures
        << " failed: " << (scan.constant ? "constant" : "non-constant") << "\n";
    for (const auto& group : scan.partition)
        out << "  (d=" << group.d << ", m=" << group.m << "): " << group.indices.size()
            << " points\n";
    return out.str();
}

}  // namespace shearlab
