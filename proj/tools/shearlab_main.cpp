#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "shearlab/catalog.hpp"
#include "shearlab/errors.hpp"
#include "shearlab/expr.hpp"
#include "shearlab/report_io.hpp"
#include "shearlab/shear.hpp"
#include "shearlab/specfile.hpp"

namespace {

using namespace shearlab;

Tolerances resolve_tolerances(double tol_flag) {
    Tolerances tol;
    if (const char* env = std::getenv("SHEARLAB_TOL")) {
        try {
            tol.rank_rel = std::stod(env);
        } catch (...) {
            throw Error("SHEARLAB_TOL is not a number: '" + std::string(env) + "'");
        }
    }
    if (!std::isnan(tol_flag)) tol.rank_rel = tol_flag;
    if (tol.rank_rel <= 0.0 || tol.rank_rel >= 1.0)
        throw Error("tolerance must be in (0, 1)");
    return tol;
}

Eigen::VectorXd parse_point(const std::string& text, int n) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string part = text.substr(start, comma - start);
        try {
            values.push_back(parse(part, {}).eval({}));
        } catch (const Error& err) {
            throw Error("bad --point value '" + part + "': " + err.what());
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (static_cast<int>(values.size()) != n)
        throw Error("--point needs " + std::to_string(n) + " values, got " +
                    std::to_string(values.size()));
    Eigen::VectorXd p(static_cast<int>(values.size()));
    for (int i = 0; i < p.size(); ++i) p[i] = values[static_cast<std::size_t>(i)];
    return p;
}

int cmd_classify(const std::string& spec_path, const std::string& point_text, bool use_grid,
                 double tol_flag, const std::string& format) {
    Tolerances tol = resolve_tolerances(tol_flag);
    ParsedSpec spec = load_spec_file(spec_path);

    std::vector<Eigen::VectorXd> points;
    if (!point_text.empty()) {
        points.push_back(parse_point(point_text, spec.immersion->n()));
    } else if (use_grid) {
        points = expand_grid(spec.grid);
        if (points.empty()) throw Error("--grid given but the spec declares no grid");
    } else {
        points = spec.all_samples();
        if (points.empty())
            throw Error("spec has no [samples]; pass --point or add sample points");
    }

    std::vector<ShearReport> reports;
    reports.reserve(points.size());
    for (const Eigen::VectorXd& p : points) reports.push_back(classify_report(*spec.immersion, p, tol));

    if (format == "json") {
        if (reports.size() == 1)
            std::cout << report_to_json(reports.front()) << "\n";
        else
            std::cout << reports_to_json(reports) << "\n";
    } else {
        for (const auto& rep : reports) std::cout << report_to_text(rep);
    }

    for (const auto& rep : reports)
        if (!rep.dims_sum_ok || !rep.wedge_ok || !rep.operator_rank_ok) return 1;
    return 0;
}

int cmd_scan(const std::string& spec_path, bool use_grid, double tol_flag, int threads) {
    Tolerances tol = resolve_tolerances(tol_flag);
    ParsedSpec spec = load_spec_file(spec_path);

    std::vector<Eigen::VectorXd> points;
    if (use_grid) {
        points = expand_grid(spec.grid);
        if (points.empty()) throw Error("--grid given but the spec declares no grid");
    } else {
        points = spec.all_samples();
        if (points.empty()) throw Error("spec has no [samples] to scan");
    }

    ScanResult scan = constancy_scan(*spec.immersion, points, tol, threads);
    std::cout << scan_to_text(scan);
    return scan.failures == 0 ? 0 : 1;
}

int cmd_catalog(const std::string& run_name, bool run_all, double tol_flag) {
    Tolerances tol = resolve_tolerances(tol_flag);
    if (run_name.empty() && !run_all) {
        for (const auto& entry : list_entries())
            std::cout << entry.name << ": expect d=" << entry.expected.d
                      << " m=" << entry.expected.m << " label=" << entry.expected.label
                      << " intersection=" << entry.expected.intersection << "\n";
        return 0;
    }

    std::vector<const CatalogEntry*> todo;
    if (run_all)
        for (const auto& entry : list_entries()) todo.push_back(&entry);
    else
        todo.push_back(&find_entry(run_name));

    bool ok = true;
    for (const CatalogEntry* entry : todo) {
        CatalogRun run = run_entry(*entry, tol);
        if (run.passed) {
            std::cout << "PASS " << entry->name << " (d=" << entry->expected.d
                      << ", m=" << entry->expected.m << ", " << entry->expected.label
                      << ", " << run.reports.size() << " points)\n";
        } else {
            ok = false;
            std::cout << "FAIL " << entry->name << "\n";
            for (const auto& problem : run.problems) std::cout << "  " << problem << "\n";
        }
    }
    return ok ? 0 : 1;
}

int cmd_check(const std::string& spec_path, double tol_flag) {
    Tolerances tol = resolve_tolerances(tol_flag);
    ParsedSpec spec = load_spec_file(spec_path);
    std::vector<Eigen::VectorXd> points = spec.all_samples();
    for (const Eigen::VectorXd& p : points) frame_at(*spec.immersion, p, tol);
    std::cout << "ok: n=" << spec.immersion->n() << " k=" << spec.immersion->k()
              << " N=" << spec.immersion->N() << ", " << points.size()
              << " sample points validated\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pointwise shear/umbilical structure of spacelike submanifolds"};
    app.require_subcommand(1);

    std::string spec_path, point_text, format = "text", run_name;
    bool use_grid = false, run_all = false;
    double tol_flag = std::numeric_limits<double>::quiet_NaN();
    int threads = 0;

    CLI::App* classify_cmd =
        app.add_subcommand("classify", "classify the immersion at sample points");
    classify_cmd->add_option("--spec", spec_path, "spec file")->required();
    auto* point_opt = classify_cmd->add_option("--point", point_text,
                                               "comma-separated parameter values");
    auto* grid_opt = classify_cmd->add_flag("--grid", use_grid, "use the spec's grid");
    point_opt->excludes(grid_opt);
    classify_cmd->add_option("--tol", tol_flag, "relative rank tolerance");
    classify_cmd->add_option("--format", format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));

    CLI::App* scan_cmd = app.add_subcommand("scan", "dimension constancy scan");
    scan_cmd->add_option("--spec", spec_path, "spec file")->required();
    scan_cmd->add_flag("--grid", use_grid, "use the spec's grid only");
    scan_cmd->add_option("--tol", tol_flag, "relative rank tolerance");
    scan_cmd->add_option("--threads", threads, "worker threads (0 = auto)");

    CLI::App* catalog_cmd = app.add_subcommand("catalog", "built-in reference immersions");
    auto* run_opt = catalog_cmd->add_option("--run", run_name, "run one entry by name");
    auto* all_opt = catalog_cmd->add_flag("--all", run_all, "run every entry");
    run_opt->excludes(all_opt);
    catalog_cmd->add_option("--tol", tol_flag, "relative rank tolerance");

    CLI::App* check_cmd = app.add_subcommand("check", "parse and validate a spec file");
    check_cmd->add_option("--spec", spec_path, "spec file")->required();
    check_cmd->add_option("--tol", tol_flag, "relative rank tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (classify_cmd->parsed())
            return cmd_classify(spec_path, point_text, use_grid, tol_flag, format);
        if (scan_cmd->parsed()) return cmd_scan(spec_path, use_grid, tol_flag, threads);
        if (catalog_cmd->parsed()) return cmd_catalog(run_name, run_all, tol_flag);
        if (check_cmd->parsed()) return cmd_check(spec_path, tol_flag);
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 2;
}
