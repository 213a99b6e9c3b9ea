#include "nevlab/io.hpp"

#include "nevlab/error.hpp"

#include <json.hpp>
#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace nevlab {

namespace {

using ojson = nlohmann::ordered_json;

int line_of(const YAML::Node& node) { return node.Mark().line >= 0 ? node.Mark().line + 1 : 0; }

[[noreturn]] void fail(const YAML::Node& node, const std::string& what)
{
    const int line = line_of(node);
    throw ParseError("line " + std::to_string(line) + ": " + what, line);
}

double read_number(const YAML::Node& node, const std::string& what)
{
    if (!node.IsScalar())
        fail(node, what + " must be a number");
    try {
        return node.as<double>();
    } catch (const YAML::Exception&) {
        fail(node, what + " must be a number, got '" + node.Scalar() + "'");
    }
}

ComplexPoly read_poly(const YAML::Node& parent, const char* key, const std::string& where)
{
    const YAML::Node node = parent[key];
    if (!node)
        fail(parent, where + " is missing coefficient list '" + key + "'");
    if (!node.IsSequence())
        fail(node, where + " '" + key + "' must be a list of [re, im] pairs");
    std::vector<cplx> coeffs;
    for (std::size_t k = 0; k < node.size(); ++k) {
        const YAML::Node pair = node[k];
        if (!pair.IsSequence() || pair.size() != 2)
            fail(pair, where + " '" + key + "' entry " + std::to_string(k) + " must be an [re, im] pair");
        coeffs.emplace_back(read_number(pair[0], "real part"), read_number(pair[1], "imaginary part"));
    }
    return ComplexPoly(std::move(coeffs));
}

std::string csv_number(double x)
{
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

ojson number_or_null(double x) { return std::isfinite(x) ? ojson(x) : ojson(nullptr); }

} // namespace

HolomorphicCurve parse_curve_spec(const std::string& text)
{
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        const int line = e.mark.line >= 0 ? e.mark.line + 1 : 0;
        throw ParseError("line " + std::to_string(line) + ": " + e.msg, line);
    }
    if (!root.IsMap())
        throw ParseError("line 1: curve specification must be a key-value mapping", 1);

    static const std::set<std::string> known{"n", "sigma", "K", "components", "name", "description"};
    for (const auto& kv : root) {
        const auto key = kv.first.as<std::string>();
        if (!known.contains(key))
            fail(kv.first, "unknown key '" + key + "'");
    }

    if (!root["n"])
        fail(root, "missing key 'n'");
    if (!root["sigma"])
        fail(root, "missing key 'sigma'");
    if (!root["components"])
        fail(root, "missing key 'components'");

    const double n_raw = read_number(root["n"], "n");
    if (n_raw < 1 || n_raw != std::floor(n_raw))
        fail(root["n"], "n must be a positive integer");
    const int n = static_cast<int>(n_raw);
    const double sigma = read_number(root["sigma"], "sigma");
    if (!(sigma >= 0.0))
        fail(root["sigma"], "sigma must be nonnegative");
    std::optional<double> K;
    if (root["K"]) {
        K = read_number(root["K"], "K");
        if (!(*K > 0.0))
            fail(root["K"], "K must be positive");
    }

    const YAML::Node comps = root["components"];
    if (!comps.IsSequence())
        fail(comps, "'components' must be a list");
    if (static_cast<int>(comps.size()) != n + 1)
        fail(comps, "expected n + 1 = " + std::to_string(n + 1) + " components, found " +
                        std::to_string(comps.size()));

    const int max_deg = static_cast<int>(std::floor(2.0 * sigma + 2.0 + 1e-12));
    std::vector<CurveComponent> parsed;
    for (int j = 0; j <= n; ++j) {
        const YAML::Node c = comps[static_cast<std::size_t>(j)];
        const std::string where = "component " + std::to_string(j);
        if (!c.IsMap() || !c["type"])
            fail(c, where + " must be a mapping with a 'type'");
        const auto type = c["type"].as<std::string>();
        if (j >= 1 && type != "exppoly")
            fail(c, where + " must be nonvanishing (type exppoly), got '" + type + "'");
        if (type == "poly") {
            parsed.push_back(CurveComponent::poly(read_poly(c, "Q", where)));
        } else if (type == "exppoly") {
            auto p = read_poly(c, "P", where);
            if (j >= 1 && p.degree() > max_deg)
                fail(c["P"], where + " has exponent degree " + std::to_string(p.degree()) +
                                 " > floor(2 sigma + 2) = " + std::to_string(max_deg));
            if (j == n && !p.is_zero())
                fail(c["P"], where + " must be the constant 1 (P = [])");
            parsed.push_back(CurveComponent::exp_poly(std::move(p)));
        } else if (type == "polyexp") {
            auto q = read_poly(c, "Q", where);
            auto p = read_poly(c, "P", where);
            parsed.push_back(CurveComponent::poly_exp(std::move(q), std::move(p)));
        } else {
            fail(c["type"], where + " has unknown type '" + type + "' (poly, exppoly, polyexp)");
        }
    }

    try {
        return HolomorphicCurve(std::move(parsed), sigma, K);
    } catch (const ValidationError& e) {
        fail(comps, e.what());
    }
}

HolomorphicCurve load_curve_spec(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open curve specification '" + path + "'", 0);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_curve_spec(buf.str());
}

std::string characteristic_csv(const CharacteristicTable& table)
{
    std::string out = std::string(kCharacteristicCsvHeader) + "\n";
    for (std::size_t k = 0; k < table.radii.size(); ++k)
        out += csv_number(table.radii[k]) + "," + csv_number(table.T_area[k]) + "," + csv_number(table.T_jensen[k]) +
               "," + csv_number(table.n_counting[k]) + "\n";
    return out;
}

std::string characteristic_json(const CharacteristicTable& table)
{
    ojson j;
    j["radii"] = table.radii;
    j["T_area"] = table.T_area;
    j["T_jensen"] = table.T_jensen;
    j["n_t"] = table.n_counting;
    j["max_route_gap"] = table.max_route_gap();
    return j.dump(2) + "\n";
}

std::string branch_csv(const LocusBranch& branch)
{
    std::string out = std::string(kBranchCsvHeader) + "\n";
    for (const auto& p : branch.trace)
        out += csv_number(p.z.real()) + "," + csv_number(p.z.imag()) + "," + csv_number(p.arclen) + "," +
               csv_number(p.active ? p.density : 0.0) + "\n";
    return out;
}

std::string locus_json(const LocusSummary& locus)
{
    ojson j;
    j["r0"] = locus.r0;
    j["r_max"] = locus.r_max;
    j["b"] = number_or_null(locus.b);
    j["c0"] = locus.c0;
    ojson branches = ojson::array();
    for (const auto& br : locus.branches) {
        ojson b;
        b["pair"] = {br.pair.first, br.pair.second};
        b["b_k"] = br.b;
        b["c_k"] = br.c;
        b["active"] = br.active;
        b["points"] = br.trace.size();
        b["outer_radius"] = br.outer_radius();
        b["active_mass"] = br.active_mass(locus.r0, locus.r_max);
        branches.push_back(std::move(b));
    }
    j["branches"] = std::move(branches);
    return j.dump(2) + "\n";
}

std::string harness_json(const HarnessReport& report, std::uint64_t seed, int count)
{
    ojson j;
    j["seed"] = seed;
    j["count"] = count;
    j["green_minimum"] = report.green_minimum;
    j["lemma1"] = {{"min_margin", number_or_null(report.lemma1_min)}, {"margins", report.lemma1_margins}};
    j["lemma2"] = {{"min_margin", number_or_null(report.lemma2_min)}, {"margins", report.lemma2_margins}};
    ojson failures = ojson::array();
    for (const auto& f : report.failures)
        failures.push_back({{"lemma", f.lemma}, {"index", f.index}, {"margin", f.margin}});
    j["failures"] = std::move(failures);
    return j.dump(2) + "\n";
}

std::string bound_report_json(const BoundReport& r)
{
    ojson j;
    j["n"] = r.n;
    j["sigma"] = r.sigma;
    j["K"] = r.K;
    j["K_estimated"] = r.K_estimated;
    j["epsilon"] = r.epsilon;
    j["theorem_constant"] = r.theorem_constant;
    j["prop4_constant"] = r.prop4_constant;

    ojson rows = ojson::array();
    for (const auto& row : r.rows)
        rows.push_back({{"r", row.r},
                        {"T", row.T},
                        {"T_bound", row.T_bound},
                        {"T_star", row.T_star},
                        {"T_star_bound", row.T_star_bound},
                        {"tail", row.tail}});
    j["rows"] = std::move(rows);

    j["prop1"] = {{"points", r.prop1.points},
                  {"worst_margin", number_or_null(r.prop1.worst_margin)},
                  {"worst_scaled_margin", number_or_null(r.prop1.worst_scaled)}};
    ojson p2 = ojson::array();
    for (const auto& row : r.prop2.rows)
        p2.push_back({{"r", row.r}, {"u_minus_ustar", row.excess}, {"bound", row.bound}});
    j["prop2"] = {{"threshold", number_or_null(r.prop2.threshold)}, {"rows", std::move(p2)}};
    j["prop3"] = {{"has_locus", r.has_locus},
                  {"r0", r.r0},
                  {"b", number_or_null(r.prop3.b)},
                  {"b_ceiling", r.prop3.b_ceiling},
                  {"c0", r.prop3.c0},
                  {"c0_ceiling", r.prop3.c0_ceiling},
                  {"branch_count", r.branch_count.count},
                  {"branch_bound", r.branch_count.bound}};
    j["verdicts"] = {{"prop1", r.prop1_ok},
                     {"prop2", r.prop2_ok},
                     {"prop3", r.prop3_ok},
                     {"prop4", r.prop4_ok},
                     {"theorem", r.theorem_ok},
                     {"all", r.all_ok()}};
    j["notes"] = r.notes;
    return j.dump(2) + "\n";
}

std::string bound_report_summary(const BoundReport& r)
{
    std::ostringstream os;
    auto verdict = [](bool ok) { return ok ? "ok" : "FAIL"; };
    os << std::setprecision(6);
    os << "n = " << r.n << ", sigma = " << r.sigma << ", K = " << r.K << (r.K_estimated ? " (estimated)" : "")
       << ", epsilon = " << r.epsilon << "\n";
    os << "C(n, sigma) = " << r.theorem_constant << "\n\n";
    os << std::setw(12) << "r" << std::setw(16) << "T(r)" << std::setw(16) << "K C r^(s+1)" << std::setw(16)
       << "T*(r)" << std::setw(16) << "prop4 bound" << "  tail\n";
    for (const auto& row : r.rows)
        os << std::setw(12) << row.r << std::setw(16) << row.T << std::setw(16) << row.T_bound << std::setw(16)
           << row.T_star << std::setw(16) << row.T_star_bound << "  " << (row.tail ? "*" : "") << "\n";
    os << "\n";
    os << "prop1  tie points " << r.prop1.points << ", worst scaled margin " << r.prop1.worst_scaled << "  "
       << verdict(r.prop1_ok) << "\n";
    os << "prop2  threshold radius " << r.prop2.threshold << "  " << verdict(r.prop2_ok) << "\n";
    os << "prop3  b = " << r.prop3.b << " <= " << r.prop3.b_ceiling << ", c0 = " << r.prop3.c0
       << " <= " << r.prop3.c0_ceiling << ", branches " << r.branch_count.count << " <= " << r.branch_count.bound
       << "  " << verdict(r.prop3_ok) << "\n";
    os << "prop4  " << verdict(r.prop4_ok) << "\n";
    os << "theorem  " << verdict(r.theorem_ok) << "\n";
    for (const auto& note : r.notes)
        os << "note: " << note << "\n";
    return os.str();
}

} // namespace nevlab
