// dimerlab: batch front end for exact dimer statistics on lattice graphs.
//
// Subcommands: lattice, matchings, entropy, geometry, relations, kernel,
// pipeline. Exit codes: 0 success, 1 stage failure, 2 config error.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dimer/entropy.hpp"
#include "dimer/eq28.hpp"
#include "dimer/errors.hpp"
#include "dimer/geometry.hpp"
#include "dimer/kernel.hpp"
#include "dimer/lattice.hpp"
#include "dimer/matchings.hpp"
#include "dimer/pipeline.hpp"
#include "dimer/relations.hpp"
#include "dimer/serialize.hpp"
#include "json.hpp"

namespace {

using namespace dimer;

std::vector<int> parse_tuple(const std::string& text) {
    std::vector<int> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, 'x'))
        if (!item.empty()) out.push_back(std::stoi(item));
    if (out.empty()) throw InvalidParameterError("empty size tuple");
    return out;
}

std::vector<std::vector<int>> parse_tuple_list(const std::string& text) {
    std::vector<std::vector<int>> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(parse_tuple(item));
    return out;
}

Graph graph_from_flags(const std::string& in_path, const std::string& family,
                       const std::string& sizes, std::optional<std::uint64_t> seed,
                       std::vector<std::string>* warnings = nullptr) {
    if (!in_path.empty()) return read_edge_list(in_path);
    if (family.empty())
        throw InvalidParameterError("either --in or --family/--sizes is required");
    LatticeSpec spec;
    spec.family = family_from_name(family);
    spec.sizes = parse_tuple(sizes);
    spec.seed = seed;
    BuiltLattice built = build_lattice(spec);
    if (warnings) *warnings = built.warnings;
    for (const auto& w : built.warnings) std::cerr << "warning: " << w << "\n";
    return built.graph;
}

int run_lattice(const std::string& family, const std::string& sizes,
                std::optional<std::uint64_t> seed, const std::string& out_path) {
    Graph g = graph_from_flags("", family, sizes, seed);
    if (out_path.empty()) {
        std::cout << edge_list_text(g);
    } else {
        write_edge_list(g, out_path);
        std::cout << g.id() << ": " << g.num_vertices() << " vertices, " << g.num_edges()
                  << " edges -> " << out_path << "\n";
    }
    return 0;
}

int run_matchings(const std::string& in_path, const std::string& family,
                  const std::string& sizes, std::optional<std::uint64_t> seed, bool brute,
                  const std::string& order_name, int j_cap, int width_budget, int threads,
                  const std::string& out_path) {
    Graph g = graph_from_flags(in_path, family, sizes, seed);
    MatchTable table;
    if (brute) {
        table = count_matchings_brute(g);
    } else {
        DpOptions opts;
        opts.j_cap = j_cap;
        opts.width_budget = width_budget;
        opts.threads = threads;
        if (order_name == "natural")
            table = count_matchings_dp(g, identity_order(g), opts);
        else if (order_name == "cm")
            table = count_matchings_dp(g, cuthill_mckee_order(g), opts);
        else
            table = count_matchings_auto(g, opts);
    }
    std::string text = match_table_to_json(table);
    if (out_path.empty())
        std::cout << text << "\n";
    else
        write_text_file(out_path, text);
    return 0;
}

int run_entropy(const std::string& family, const std::string& sizes_list,
                std::optional<std::uint64_t> seed, long p_base, int p_count, int kmax,
                int threads, int width_budget, const std::string& out_path,
                const std::string& csv_path) {
    LatticeFamily fam = family_from_name(family);
    auto tuples = parse_tuple_list(sizes_list);
    if (tuples.size() < 3)
        throw InvalidParameterError("entropy: need >= 3 sizes in --sizes-list");
    std::vector<std::vector<LambdaSample>> per_size;
    std::vector<int> sizes_used;
    int r = 0;
    for (const auto& t : tuples) {
        LatticeSpec spec;
        spec.family = fam;
        spec.sizes = t;
        spec.seed = seed;
        Graph g = build_lattice(spec).graph;
        if (g.num_vertices() % 2 != 0)
            throw InvalidParameterError("entropy: odd-order lattice size");
        r = g.regularity().value_or(g.degree(0));
        int n = g.num_vertices() / 2;
        DpOptions opts;
        opts.j_cap = std::min<int>(n, static_cast<int>((static_cast<long>(n) * p_count +
                                                        p_base - 1) /
                                                       p_base));
        opts.width_budget = width_budget;
        opts.threads = threads;
        MatchTable table = count_matchings_auto(g, opts);
        per_size.push_back(lambda_samples(table));
        sizes_used.push_back(n);
    }
    std::vector<LambdaPoint> points;
    ExtrapolationOptions exopts;
    exopts.log_prefactor_correction = true;
    for (int k = 1; k <= p_count; ++k) {
        BigRat p = make_rational(k, p_base);
        Extrapolation ex = extrapolate_lambda(per_size, p, exopts);
        points.push_back({p, ex.value, ex.error});
    }
    EntropySeries series = extract_dk(points, r, kmax);
    series.sizes_used = sizes_used;
    std::string text = entropy_series_to_json(series);
    if (out_path.empty())
        std::cout << text << "\n";
    else
        write_text_file(out_path, text);
    if (!csv_path.empty()) write_text_file(csv_path, entropy_series_to_csv(series));
    return 0;
}

int run_geometry(const std::string& in_path, const std::string& family,
                 const std::string& sizes, std::optional<std::uint64_t> seed, int threads,
                 const std::string& out_path) {
    std::vector<std::string> warnings;
    Graph g = graph_from_flags(in_path, family, sizes, seed, &warnings);
    GeomDensities dens = compute_geom_densities(g, !warnings.empty(), threads);
    std::cout << geom_densities_table({dens});
    if (!out_path.empty()) write_text_file(out_path, geom_densities_to_json(dens));
    return 0;
}

int run_relations(int k, const std::string& obs_path, const std::string& out_path) {
    nlohmann::json j = nlohmann::json::parse(read_text_file(obs_path));
    std::vector<RelationObservation> obs;
    for (const auto& row : j) {
        RelationObservation o;
        o.family = row.at("family").get<std::string>();
        o.densities = geom_densities_from_json(read_text_file(row.at("densities").get<std::string>()));
        o.dk = row.at("dk").get<double>();
        o.sigma = row.at("sigma").get<double>();
        o.bipartite = row.value("bipartite", true);
        obs.push_back(std::move(o));
    }
    RelationModel model = fit_relation(k, obs);
    std::string text = relation_model_to_json(model);
    if (out_path.empty())
        std::cout << text << "\n";
    else
        write_text_file(out_path, text);
    std::cout << "residual_norm = " << model.residual_norm << "\n";
    return 0;
}

int run_kernel(const KernelConfig& cfg, bool eq28_mode, const std::string& sizes_list,
               int h_max, int k_max, const std::string& out_path, const std::string& log_path) {
    if (eq28_mode) {
        auto tuples = parse_tuple_list(sizes_list);
        if (tuples.empty())
            throw InvalidParameterError("kernel --eq28: --sizes-list of cycle sizes required");
        std::vector<MatchTable> tables;
        for (const auto& t : tuples) {
            if (t.size() != 1)
                throw InvalidParameterError("kernel --eq28: cycle sizes are single integers");
            Graph g = build_cycle(t[0]);
            Eq28Options probe;
            probe.h_max = h_max;
            probe.k_max = k_max;
            DpOptions opts;
            opts.j_cap = k_max + 4;
            tables.push_back(count_matchings_auto(g, opts));
        }
        Eq28Options opts;
        opts.h_max = h_max;
        opts.k_max = k_max;
        Eq28Report report = verify_eq28_numeric(tables, opts);
        std::string text = eq28_report_to_json(report);
        if (out_path.empty())
            std::cout << text << "\n";
        else
            write_text_file(out_path, text);
        std::cout << "max |flagged coefficient| = " << report.max_flagged_abs << "\n";
        return 0;
    }
    CertificateReport report = run_certificates(cfg);
    if (!out_path.empty()) write_text_file(out_path, certificate_report_to_json(report));
    if (!log_path.empty()) write_text_file(log_path, report.proof_log);
    std::cout << report.proof_log;
    return 0;
}

int run_pipeline_cmd(const std::string& config_path, PipelineConfig flag_cfg,
                     const std::string& report_format) {
    PipelineConfig cfg = flag_cfg;
    if (!config_path.empty()) {
        // The config file overrides flag-provided fields.
        cfg = pipeline_config_from_json(read_text_file(config_path));
        if (cfg.out_dir.empty()) cfg.out_dir = flag_cfg.out_dir;
        if (cfg.threads == 1) cfg.threads = flag_cfg.threads;
    }
    PipelineResult result = run_pipeline(cfg);
    std::cout << "pipeline: " << result.artifacts.size() << " artifacts under " << result.out_dir
              << "\n";
    for (const auto& note : result.notes) std::cout << "note: " << note << "\n";
    ReportFormat fmt = ReportFormat::text;
    if (report_format == "json") fmt = ReportFormat::json;
    else if (report_format == "csv") fmt = ReportFormat::csv;
    for (const auto& path : export_report(result, fmt)) std::cout << "report: " << path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact dimer statistics on lattice graphs"};
    app.require_subcommand(1);

    // lattice
    auto* lat = app.add_subcommand("lattice", "build a lattice and write its edge list");
    std::string lat_family, lat_sizes, lat_out;
    std::optional<std::uint64_t> lat_seed;
    lat->add_option("--family", lat_family, "cycle|hypercubic|honeycomb|prism|random_bipartite")
        ->required();
    lat->add_option("--sizes", lat_sizes, "size tuple, e.g. 6x6")->required();
    lat->add_option("--seed", lat_seed, "seed (random family)");
    lat->add_option("--out", lat_out, "output edge-list path");

    // matchings
    auto* mat = app.add_subcommand("matchings", "exact j-matching counts");
    std::string mat_in, mat_family, mat_sizes, mat_order = "auto", mat_out;
    std::optional<std::uint64_t> mat_seed;
    bool mat_brute = false;
    int mat_jcap = -1, mat_width = 28, mat_threads = 1;
    mat->add_option("--in", mat_in, "edge-list file");
    mat->add_option("--family", mat_family, "lattice family (alternative to --in)");
    mat->add_option("--sizes", mat_sizes, "size tuple");
    mat->add_option("--seed", mat_seed, "seed (random family)");
    mat->add_flag("--brute", mat_brute, "exhaustive oracle (<= 20 vertices)");
    mat->add_option("--order", mat_order, "natural|cm|auto");
    mat->add_option("--j-cap", mat_jcap, "truncate counts at this j");
    mat->add_option("--width-budget", mat_width, "frontier width budget");
    mat->add_option("--threads", mat_threads, "worker threads");
    mat->add_option("--out", mat_out, "output JSON path");

    // entropy
    auto* ent = app.add_subcommand("entropy", "extrapolate lambda(p) and extract d_k");
    std::string ent_family, ent_sizes_list, ent_out, ent_csv;
    std::optional<std::uint64_t> ent_seed;
    long ent_pbase = 16;
    int ent_pcount = 8, ent_kmax = 4, ent_threads = 1, ent_width = 28;
    ent->add_option("--family", ent_family)->required();
    ent->add_option("--sizes-list", ent_sizes_list, "comma list of size tuples, e.g. 4x16,4x24")
        ->required();
    ent->add_option("--seed", ent_seed);
    ent->add_option("--p-base", ent_pbase, "p grid denominator");
    ent->add_option("--p-count", ent_pcount, "number of p grid points");
    ent->add_option("--kmax", ent_kmax, "highest fitted k");
    ent->add_option("--threads", ent_threads);
    ent->add_option("--width-budget", ent_width);
    ent->add_option("--out", ent_out, "series JSON path");
    ent->add_option("--csv", ent_csv, "series CSV path");

    // geometry
    auto* geo = app.add_subcommand("geometry", "pattern densities G1..G4");
    std::string geo_in, geo_family, geo_sizes, geo_out;
    std::optional<std::uint64_t> geo_seed;
    int geo_threads = 1;
    geo->add_option("--in", geo_in, "edge-list file");
    geo->add_option("--family", geo_family);
    geo->add_option("--sizes", geo_sizes);
    geo->add_option("--seed", geo_seed);
    geo->add_option("--threads", geo_threads);
    geo->add_option("--out", geo_out, "densities JSON path");

    // relations
    auto* rel = app.add_subcommand("relations", "fit d_k against pattern densities");
    int rel_k = 4;
    std::string rel_obs, rel_out;
    rel->add_option("--k", rel_k)->required();
    rel->add_option("--obs", rel_obs, "JSON list of {family, densities, dk, sigma}")->required();
    rel->add_option("--out", rel_out, "model JSON path");

    // kernel
    auto* ker = app.add_subcommand("kernel", "symbolic degree certificates / 1/n degree check");
    KernelConfig ker_cfg;
    std::string ker_aq = "0", ker_out, ker_log, ker_sizes;
    bool ker_formal_u = false, ker_eq28 = false;
    long ker_tlow = -1, ker_thigh = -1;
    int ker_hmax = 2, ker_kmax = 4;
    ker->add_option("--mm", ker_cfg.mm, "series order");
    ker->add_option("--lL", ker_cfg.lL, "lowest active order");
    ker->add_option("--jq", ker_cfg.jq, "rh power probed");
    ker->add_option("--aQ", ker_aq, "u-profile parameter (rational)");
    ker->add_flag("--formal-u", ker_formal_u, "keep u_v formal");
    ker->add_option("--threshold-low", ker_tlow);
    ker->add_option("--threshold-high", ker_thigh);
    ker->add_flag("--eq28", ker_eq28, "run the numeric 1/n degree check on cycles");
    ker->add_option("--sizes-list", ker_sizes, "cycle sizes for --eq28, e.g. 120,240,360");
    ker->add_option("--h-max", ker_hmax);
    ker->add_option("--k-max", ker_kmax);
    ker->add_option("--out", ker_out, "JSON output path");
    ker->add_option("--log", ker_log, "proof log path");

    // pipeline
    auto* pip = app.add_subcommand("pipeline", "run the full batch pipeline");
    std::string pip_config, pip_out = "run", pip_format = "text";
    int pip_threads = 1;
    pip->add_option("--config", pip_config, "pipeline config JSON (overrides flags)");
    pip->add_option("--out", pip_out, "output directory");
    pip->add_option("--threads", pip_threads);
    pip->add_option("--format", pip_format, "report format: text|csv|json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (lat->parsed()) return run_lattice(lat_family, lat_sizes, lat_seed, lat_out);
        if (mat->parsed())
            return run_matchings(mat_in, mat_family, mat_sizes, mat_seed, mat_brute, mat_order,
                                 mat_jcap, mat_width, mat_threads, mat_out);
        if (ent->parsed())
            return run_entropy(ent_family, ent_sizes_list, ent_seed, ent_pbase, ent_pcount,
                               ent_kmax, ent_threads, ent_width, ent_out, ent_csv);
        if (geo->parsed())
            return run_geometry(geo_in, geo_family, geo_sizes, geo_seed, geo_threads, geo_out);
        if (rel->parsed()) return run_relations(rel_k, rel_obs, rel_out);
        if (ker->parsed()) {
            BigRat aq(ker_aq);
            aq.canonicalize();
            ker_cfg.aQ = aq;
            ker_cfg.substitute_u = !ker_formal_u;
            if (ker_tlow >= 0) ker_cfg.threshold_low = ker_tlow;
            if (ker_thigh >= 0) ker_cfg.threshold_high = ker_thigh;
            return run_kernel(ker_cfg, ker_eq28, ker_sizes, ker_hmax, ker_kmax, ker_out, ker_log);
        }
        if (pip->parsed()) {
            PipelineConfig flag_cfg;
            flag_cfg.out_dir = pip_out;
            flag_cfg.threads = pip_threads;
            return run_pipeline_cmd(pip_config, flag_cfg, pip_format);
        }
    } catch (const InvalidParameterError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const StageError& e) {
        std::cerr << "stage failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
