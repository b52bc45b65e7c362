#include "dimer/serialize.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "dimer/errors.hpp"
#include "json.hpp"

namespace dimer {

using nlohmann::json;

std::string match_table_to_json(const MatchTable& table) {
    json j;
    j["graph_id"] = table.graph_id;
    if (table.num_vertices % 2 == 0)
        j["n"] = table.n();
    else
        j["num_vertices"] = table.num_vertices;  // odd-order graphs have no integer n
    std::vector<std::string> counts;
    counts.reserve(table.counts.size());
    for (const auto& c : table.counts) counts.push_back(to_decimal(c));
    j["counts"] = counts;
    return j.dump(2);
}

MatchTable match_table_from_json(const std::string& text) {
    json j = json::parse(text);
    MatchTable table;
    table.graph_id = j.at("graph_id").get<std::string>();
    if (j.contains("n"))
        table.num_vertices = 2 * j.at("n").get<int>();
    else
        table.num_vertices = j.at("num_vertices").get<int>();
    for (const auto& c : j.at("counts")) table.counts.push_back(bigint_from_decimal(c.get<std::string>()));
    return table;
}

std::string entropy_series_to_json(const EntropySeries& series) {
    json j;
    j["r"] = series.r;
    j["p_window"] = {series.p_window_lo, series.p_window_hi};
    j["sizes_used"] = series.sizes_used;
    json coeffs = json::array();
    for (const auto& c : series.coefficients)
        coeffs.push_back({{"k", c.k}, {"dk", c.dk}, {"sigma", c.sigma}});
    j["coefficients"] = coeffs;
    return j.dump(2);
}

EntropySeries entropy_series_from_json(const std::string& text) {
    json j = json::parse(text);
    EntropySeries series;
    series.r = j.at("r").get<int>();
    series.p_window_lo = j.at("p_window").at(0).get<double>();
    series.p_window_hi = j.at("p_window").at(1).get<double>();
    series.sizes_used = j.at("sizes_used").get<std::vector<int>>();
    for (const auto& c : j.at("coefficients"))
        series.coefficients.push_back(
            {c.at("k").get<int>(), c.at("dk").get<double>(), c.at("sigma").get<double>()});
    return series;
}

std::string entropy_series_to_csv(const EntropySeries& series) {
    std::ostringstream out;
    out << "k,dk,sigma\n";
    out << std::setprecision(17);
    for (const auto& c : series.coefficients)
        out << c.k << ',' << c.dk << ',' << c.sigma << '\n';
    return out.str();
}

namespace {
std::string rational_string(const BigRat& q) { return q.get_str(); }

BigRat rational_from_string(const std::string& s) {
    BigRat q(s);
    q.canonicalize();
    return q;
}
}  // namespace

std::string geom_densities_to_json(const GeomDensities& densities) {
    json j;
    j["lattice_id"] = densities.lattice_id;
    j["num_vertices"] = densities.num_vertices;
    j["finite_size_warning"] = densities.finite_size_warning;
    json rows = json::array();
    for (const auto& p : densities.patterns)
        rows.push_back({{"pattern", pattern_name(p.id)},
                        {"count", to_decimal(p.count)},
                        {"density", rational_string(p.density)}});
    j["patterns"] = rows;
    return j.dump(2);
}

GeomDensities geom_densities_from_json(const std::string& text) {
    json j = json::parse(text);
    GeomDensities out;
    out.lattice_id = j.at("lattice_id").get<std::string>();
    out.num_vertices = j.at("num_vertices").get<int>();
    out.finite_size_warning = j.at("finite_size_warning").get<bool>();
    for (const auto& row : j.at("patterns")) {
        PatternDensity p;
        std::string name = row.at("pattern").get<std::string>();
        if (name == "G1_four_loop") p.id = PatternId::G1_four_loop;
        else if (name == "G2_six_loop") p.id = PatternId::G2_six_loop;
        else if (name == "G3_theta") p.id = PatternId::G3_theta;
        else if (name == "G4_ladder") p.id = PatternId::G4_ladder;
        else throw IoError("geom_densities_from_json: unknown pattern " + name);
        p.count = bigint_from_decimal(row.at("count").get<std::string>());
        p.density = rational_from_string(row.at("density").get<std::string>());
        out.patterns.push_back(std::move(p));
    }
    return out;
}

std::string geom_densities_table(const std::vector<GeomDensities>& rows) {
    std::ostringstream out;
    out << std::left << std::setw(24) << "lattice" << std::setw(10) << "G1" << std::setw(10)
        << "G2" << std::setw(10) << "G3" << std::setw(10) << "G4" << "warn\n";
    for (const auto& row : rows) {
        out << std::left << std::setw(24) << row.lattice_id;
        for (const auto& p : row.patterns) out << std::setw(10) << p.density.get_str();
        out << (row.finite_size_warning ? "yes" : "-") << "\n";
    }
    return out.str();
}

std::string relation_model_to_json(const RelationModel& model) {
    json j;
    j["k"] = model.k;
    std::vector<std::string> basis;
    for (const auto& b : model.basis) basis.push_back(b.name());
    j["basis"] = basis;
    j["coefficients"] = model.coefficients;
    j["coefficient_sigmas"] = model.coefficient_sigmas;
    j["residual_norm"] = model.residual_norm;
    j["families"] = model.families;
    j["design"] = model.design;
    j["covariance"] = model.covariance;
    json loo = json::array();
    for (size_t i = 0; i < model.loo_errors.size(); ++i) {
        json row;
        row["family"] = model.families[i];
        if (std::isnan(model.loo_errors[i])) {
            row["error"] = nullptr;
            row["sigma"] = nullptr;
        } else {
            row["error"] = model.loo_errors[i];
            row["sigma"] = model.loo_sigmas[i];
        }
        loo.push_back(row);
    }
    j["leave_one_out"] = loo;
    return j.dump(2);
}

std::string certificate_report_to_json(const CertificateReport& report) {
    json j;
    j["config"] = {{"mm", report.config.mm},
                   {"lL", report.config.lL},
                   {"jq", report.config.jq},
                   {"aQ", report.config.aQ.get_str()},
                   {"substitute_u", report.config.substitute_u},
                   {"threshold_low", report.config.low()},
                   {"threshold_high", report.config.high()}};
    json certs = json::array();
    for (const auto& c : report.certificates)
        certs.push_back({{"i", c.i}, {"jq", report.config.jq}, {"degree", c.degree}});
    j["certificates"] = certs;
    json viol = json::array();
    for (const auto& v : report.violations)
        viol.push_back({{"index", v.index}, {"degree", v.degree}});
    j["violations"] = viol;
    return j.dump(2);
}

std::string eq28_report_to_json(const Eq28Report& report) {
    json j;
    j["j_grid"] = report.j_grid;
    j["sizes"] = report.sizes;
    j["b"] = report.b;
    json cells = json::array();
    for (const auto& c : report.cells)
        cells.push_back(
            {{"h", c.h}, {"k", c.k}, {"coeff", c.coeff}, {"flagged", c.flagged}});
    j["cells"] = cells;
    j["max_flagged_abs"] = report.max_flagged_abs;
    return j.dump(2);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("read_text_file: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("write_text_file: cannot open " + path);
    out << text;
    if (!out) throw IoError("write_text_file: write failed for " + path);
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr))
        throw IoError("sha256_hex: digest failure");
    std::ostringstream out;
    out << std::hex << std::setfill('0');
    for (unsigned int i = 0; i < len; ++i) out << std::setw(2) << static_cast<int>(digest[i]);
    return out.str();
}

}  // namespace dimer
