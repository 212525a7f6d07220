#include "shearlab/specfile.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "shearlab/errors.hpp"
#include "shearlab/expr.hpp"

namespace shearlab {

namespace {

std::string trim(std::string_view s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string_view::npos) return {};
    std::size_t b = s.find_last_not_of(" \t\r");
    return std::string(s.substr(a, b - a + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t p = s.find(sep, start);
        out.push_back(trim(std::string_view(s).substr(start, p - start)));
        if (p == std::string::npos) break;
        start = p + 1;
    }
    return out;
}

double eval_const(const std::string& src, int line, const char* what) {
    try {
        Expression e = parse(src, {});
        return e.eval({});
    } catch (const Error& err) {
        throw SpecError(line, std::string(what) + ": " + err.what());
    }
}

int parse_int(const std::string& src, int line, const char* what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(src.data(), src.data() + src.size(), value);
    if (ec != std::errc{} || ptr != src.data() + src.size())
        throw SpecError(line, std::string(what) + ": not an integer: '" + src + "'");
    return value;
}

struct KV {
    int line = 0;
    std::string value;
};

struct Section {
    int line = 0;  // header line, 0 = absent
    std::map<std::string, KV> scalars;
    std::vector<std::pair<std::string, KV>> repeated;  // point lines, indexed keys
};

// "g[1,2]" -> ("g", {1,2}); "component[3]" -> ("component", {3})
bool parse_indexed(const std::string& key, std::string& base, std::vector<int>& idx, int line) {
    std::size_t open = key.find('[');
    if (open == std::string::npos) return false;
    if (key.back() != ']') throw SpecError(line, "malformed key '" + key + "'");
    base = key.substr(0, open);
    idx.clear();
    for (const std::string& part :
         split(key.substr(open + 1, key.size() - open - 2), ','))
        idx.push_back(parse_int(part, line, "index"));
    return true;
}

}  // namespace

std::vector<Eigen::VectorXd> expand_grid(const std::vector<GridAxis>& axes) {
    if (axes.empty()) return {};
    double total = 1.0;
    for (const auto& ax : axes) total *= ax.count;
    if (total > 1e6) throw Error("grid would expand to more than 1e6 points");

    std::vector<Eigen::VectorXd> out;
    out.reserve(static_cast<std::size_t>(total));
    const int n = static_cast<int>(axes.size());
    std::vector<int> pos(static_cast<std::size_t>(n), 0);
    while (true) {
        Eigen::VectorXd p(n);
        for (int i = 0; i < n; ++i) {
            const GridAxis& ax = axes[static_cast<std::size_t>(i)];
            p[i] = ax.count == 1 ? ax.min
                                 : ax.min + (ax.max - ax.min) * pos[static_cast<std::size_t>(i)] /
                                       (ax.count - 1);
        }
        out.push_back(std::move(p));
        int axis = n - 1;
        while (axis >= 0 &&
               ++pos[static_cast<std::size_t>(axis)] == axes[static_cast<std::size_t>(axis)].count) {
            pos[static_cast<std::size_t>(axis)] = 0;
            --axis;
        }
        if (axis < 0) break;
    }
    return out;
}

std::vector<Eigen::VectorXd> ParsedSpec::all_samples() const {
    std::vector<Eigen::VectorXd> out = points;
    for (auto& p : expand_grid(grid)) out.push_back(std::move(p));
    return out;
}

ParsedSpec parse_spec_text(const std::string& text) {
    std::map<std::string, Section> sections;
    Section* current = nullptr;
    std::string current_name;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (std::size_t hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw SpecError(lineno, "unterminated section header");
            std::string name = trim(std::string_view(line).substr(1, line.size() - 2));
            if (name != "ambient" && name != "immersion" && name != "samples")
                throw SpecError(lineno, "unknown section '" + name + "'");
            if (sections.count(name)) throw SpecError(lineno, "duplicate section '" + name + "'");
            current = &sections[name];
            current->line = lineno;
            current_name = name;
            continue;
        }

        std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw SpecError(lineno, "expected 'key = value'");
        if (!current) throw SpecError(lineno, "key outside of any section");
        std::string key = trim(std::string_view(line).substr(0, eq));
        std::string value = trim(std::string_view(line).substr(eq + 1));
        if (key.empty()) throw SpecError(lineno, "empty key");
        if (value.empty()) throw SpecError(lineno, "empty value for '" + key + "'");

        bool repeatable = (current_name == "samples" && key == "point");
        bool indexed = key.find('[') != std::string::npos;
        if (repeatable || indexed) {
            if (indexed) {
                for (const auto& [k, kv] : current->repeated)
                    if (k == key) throw SpecError(lineno, "duplicate key '" + key + "'");
            }
            current->repeated.push_back({key, {lineno, value}});
        } else {
            if (current->scalars.count(key))
                throw SpecError(lineno, "duplicate key '" + key + "'");
            current->scalars[key] = {lineno, value};
        }
    }

    auto need_section = [&](const char* name) -> Section& {
        auto it = sections.find(name);
        if (it == sections.end()) throw SpecError(0, std::string("missing [") + name + "] section");
        return it->second;
    };
    auto need_key = [](Section& sec, const char* key) -> KV& {
        auto it = sec.scalars.find(key);
        if (it == sec.scalars.end())
            throw SpecError(sec.line, std::string("missing key '") + key + "'");
        return it->second;
    };

    // ---- [ambient] ----
    Section& amb = need_section("ambient");
    for (const auto& [key, kv] : amb.scalars)
        if (key != "dimension" && key != "signature" && key != "coordinates")
            throw SpecError(kv.line, "unknown key '" + key + "' in [ambient]");

    KV& dim_kv = need_key(amb, "dimension");
    int N = parse_int(dim_kv.value, dim_kv.line, "dimension");

    KV& sig_kv = need_key(amb, "signature");
    std::vector<std::string> sig = split(sig_kv.value, ',');
    if (sig.size() != 2) throw SpecError(sig_kv.line, "signature must be 'n_minus,n_plus'");
    int n_minus = parse_int(sig[0], sig_kv.line, "signature");
    int n_plus = parse_int(sig[1], sig_kv.line, "signature");

    KV& coords_kv = need_key(amb, "coordinates");
    std::vector<std::string> coords = split(coords_kv.value, ',');
    if (static_cast<int>(coords.size()) != N)
        throw SpecError(coords_kv.line, "expected " + std::to_string(N) + " coordinates, got " +
                                            std::to_string(coords.size()));

    std::vector<MetricEntry> entries;
    for (const auto& [key, kv] : amb.repeated) {
        std::string base;
        std::vector<int> idx;
        parse_indexed(key, base, idx, kv.line);
        if (base != "g" || idx.size() != 2)
            throw SpecError(kv.line, "unknown key '" + key + "' in [ambient]");
        if (idx[0] < 1 || idx[1] < 1 || idx[0] > N || idx[1] > N || idx[0] > idx[1])
            throw SpecError(kv.line, "g indices must satisfy 1 <= i <= j <= " +
                                         std::to_string(N));
        entries.push_back({idx[0] - 1, idx[1] - 1, kv.value});
    }

    std::shared_ptr<const AmbientManifold> ambient;
    try {
        ambient = AmbientManifold::create(coords, n_minus, n_plus, entries);
    } catch (const ParseError& err) {
        throw SpecError(amb.line, std::string("in a metric component: ") + err.what());
    } catch (const Error& err) {
        throw SpecError(amb.line, err.what());
    }

    // ---- [immersion] ----
    Section& imm = need_section("immersion");
    for (const auto& [key, kv] : imm.scalars)
        if (key != "parameters")
            throw SpecError(kv.line, "unknown key '" + key + "' in [immersion]");

    KV& params_kv = need_key(imm, "parameters");
    std::vector<std::string> params = split(params_kv.value, ',');

    std::vector<std::string> components(static_cast<std::size_t>(N));
    std::vector<bool> have(static_cast<std::size_t>(N), false);
    for (const auto& [key, kv] : imm.repeated) {
        std::string base;
        std::vector<int> idx;
        parse_indexed(key, base, idx, kv.line);
        if (base != "component" || idx.size() != 1)
            throw SpecError(kv.line, "unknown key '" + key + "' in [immersion]");
        if (idx[0] < 1 || idx[0] > N)
            throw SpecError(kv.line,
                            "component index must be in 1.." + std::to_string(N));
        components[static_cast<std::size_t>(idx[0] - 1)] = kv.value;
        have[static_cast<std::size_t>(idx[0] - 1)] = true;
    }
    for (int a = 0; a < N; ++a)
        if (!have[static_cast<std::size_t>(a)])
            throw SpecError(imm.line, "missing component[" + std::to_string(a + 1) + "]");

    ParsedSpec out;
    try {
        out.immersion = ImmersionSpec::create(ambient, params, components);
    } catch (const ParseError& err) {
        throw SpecError(imm.line, std::string("in a component: ") + err.what());
    } catch (const Error& err) {
        throw SpecError(imm.line, err.what());
    }
    const int n = out.immersion->n();

    // ---- [samples] ----
    auto it = sections.find("samples");
    if (it != sections.end()) {
        Section& smp = it->second;
        for (const auto& [key, kv] : smp.scalars)
            if (key != "grid")
                throw SpecError(kv.line, "unknown key '" + key + "' in [samples]");

        for (const auto& [key, kv] : smp.repeated) {
            if (key != "point") throw SpecError(kv.line, "unknown key '" + key + "'");
            std::vector<std::string> parts = split(kv.value, ',');
            if (static_cast<int>(parts.size()) != n)
                throw SpecError(kv.line, "point needs " + std::to_string(n) + " values");
            Eigen::VectorXd p(n);
            for (int i = 0; i < n; ++i)
                p[i] = eval_const(parts[static_cast<std::size_t>(i)], kv.line, "point value");
            out.points.push_back(std::move(p));
        }

        if (auto git = smp.scalars.find("grid"); git != smp.scalars.end()) {
            const KV& kv = git->second;
            std::vector<std::string> axes = split(kv.value, ',');
            if (static_cast<int>(axes.size()) != n)
                throw SpecError(kv.line, "grid needs " + std::to_string(n) + " axes");
            for (const std::string& axis : axes) {
                std::vector<std::string> f = split(axis, ':');
                if (f.size() != 3)
                    throw SpecError(kv.line, "grid axis must be 'min:max:count'");
                GridAxis ax;
                ax.min = eval_const(f[0], kv.line, "grid min");
                ax.max = eval_const(f[1], kv.line, "grid max");
                ax.count = parse_int(f[2], kv.line, "grid count");
                if (ax.count < 1 || ax.count > 10000)
                    throw SpecError(kv.line, "grid count must be in 1..10000");
                out.grid.push_back(ax);
            }
        }
    }
    return out;
}

ParsedSpec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError(0, "cannot open spec file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec_text(buf.str());
}

}  // namespace shearlab
