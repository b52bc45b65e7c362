#include "dimer/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <set>
#include <sstream>

#include "dimer/errors.hpp"
#include "dimer/matchings.hpp"
#include "dimer/serialize.hpp"
#include "json.hpp"

namespace dimer {

namespace fs = std::filesystem;
using nlohmann::json;

LatticeSpec FamilySchedule::spec_for(const std::vector<int>& sizes) const {
    LatticeSpec spec;
    spec.family = family;
    spec.sizes = sizes;
    spec.seed = seed;
    return spec;
}

void PipelineConfig::validate() const {
    if (p_base < 1) throw InvalidParameterError("pipeline config: p_base must be >= 1");
    if (p_count < 1 || p_count > p_base)
        throw InvalidParameterError("pipeline config: need 1 <= p_count <= p_base");
    if (kmax < 2 || kmax > 7)
        throw InvalidParameterError("pipeline config: kmax must lie in [2, 7]");
    if (p_count < kmax + 2)
        throw InvalidParameterError("pipeline config: p_count must be >= kmax+2 for the fit");
    if (out_dir.empty()) throw InvalidParameterError("pipeline config: out_dir required");
    std::set<std::string> labels;
    for (const auto& fam : families) {
        if (fam.label.empty()) throw InvalidParameterError("pipeline config: family label required");
        if (!labels.insert(fam.label).second)
            throw InvalidParameterError("pipeline config: duplicate family label " + fam.label);
        if (fam.sizes_list.size() < 3)
            throw InvalidParameterError("pipeline config: family " + fam.label +
                                        " needs >= 3 sizes for extrapolation");
        if (fam.geometry_sizes.empty())
            throw InvalidParameterError("pipeline config: family " + fam.label +
                                        " needs geometry_sizes");
    }
    kernel.validate();
}

namespace {

std::string sanitize(const std::string& name) {
    std::string out;
    for (char c : name)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
    return out;
}

struct ArtifactStore {
    fs::path root;
    std::vector<ArtifactRecord> records;

    // Returns the existing content when the artifact is already on disk.
    std::optional<std::string> load(const std::string& name, const std::string& rel) {
        fs::path p = root / rel;
        if (!fs::exists(p)) return std::nullopt;
        std::string bytes = read_text_file(p.string());
        records.push_back({name, rel, sha256_hex(bytes), true});
        return bytes;
    }

    void store(const std::string& name, const std::string& rel, const std::string& bytes) {
        fs::path p = root / rel;
        fs::create_directories(p.parent_path());
        write_text_file(p.string(), bytes);
        records.push_back({name, rel, sha256_hex(bytes), false});
    }
};

std::string manifest_json_text(const PipelineConfig& cfg, std::vector<ArtifactRecord> records,
                               const std::vector<std::string>& notes) {
    std::sort(records.begin(), records.end(),
              [](const ArtifactRecord& a, const ArtifactRecord& b) { return a.name < b.name; });
    json j;
    j["config"] = json::parse(pipeline_config_to_json(cfg));
    json arts = json::array();
    for (const auto& r : records)
        arts.push_back({{"name", r.name}, {"path", r.path}, {"sha256", r.sha256}});
    j["artifacts"] = arts;
    j["notes"] = notes;
    return j.dump(2);
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& cfg) {
    cfg.validate();
    PipelineResult result;
    result.out_dir = cfg.out_dir;
    ArtifactStore store{fs::path(cfg.out_dir), {}};
    fs::create_directories(store.root);
    std::string stage = "lattice";

    auto fail = [&](const std::string& what) -> StageError {
        return StageError(stage, what, manifest_json_text(cfg, store.records, result.notes));
    };

    try {
        // ---- lattice + matchings + entropy, per family ----
        std::map<std::string, std::vector<MatchTable>> tables_by_family;
        std::map<std::string, Graph> rep_graph_by_family;  // geometry representative
        std::map<std::string, bool> warn_by_family;
        for (const auto& fam : cfg.families) {
            stage = "lattice";
            std::vector<Graph> graphs;
            for (const auto& sizes : fam.sizes_list) {
                LatticeSpec spec = fam.spec_for(sizes);
                std::string name = "lattice/" + sanitize(spec.name());
                std::string rel = name + ".edges";
                if (auto cached = store.load(name, rel)) {
                    graphs.push_back(parse_edge_list(*cached));
                } else {
                    BuiltLattice built = build_lattice(spec);
                    for (const auto& w : built.warnings)
                        result.notes.push_back(fam.label + ": " + w);
                    store.store(name, rel, edge_list_text(built.graph));
                    graphs.push_back(built.graph);
                }
            }
            {
                LatticeSpec spec = fam.spec_for(fam.geometry_sizes);
                BuiltLattice built = build_lattice(spec);
                warn_by_family[fam.label] = !built.warnings.empty();
                rep_graph_by_family.emplace(fam.label, built.graph);
            }

            stage = "matchings";
            std::vector<MatchTable>& tables = tables_by_family[fam.label];
            for (size_t gi = 0; gi < graphs.size(); ++gi) {
                const Graph& g = graphs[gi];
                LatticeSpec spec = fam.spec_for(fam.sizes_list[gi]);
                std::string name = "matchings/" + sanitize(spec.name());
                std::string rel = name + ".json";
                if (auto cached = store.load(name, rel)) {
                    tables.push_back(match_table_from_json(*cached));
                    continue;
                }
                if (g.num_vertices() % 2 != 0)
                    throw InvalidParameterError("family " + fam.label +
                                                " has an odd-order size; entropy pipeline "
                                                "requires even volumes");
                int n = g.num_vertices() / 2;
                long x = static_cast<long>(n) * cfg.p_count;
                int j_cap = static_cast<int>((x + cfg.p_base - 1) / cfg.p_base);
                DpOptions opts;
                opts.j_cap = std::min(j_cap, n);
                opts.width_budget = cfg.dp_width_budget;
                opts.threads = cfg.threads;
                MatchTable table = count_matchings_auto(g, opts);
                // Table IDs use the spec name so cached artifacts are stable.
                table.graph_id = spec.name();
                store.store(name, rel, match_table_to_json(table));
                tables.push_back(std::move(table));
            }

            stage = "entropy";
            std::string name = "entropy/" + sanitize(fam.label);
            std::string rel = name + ".json";
            const Graph& rep = rep_graph_by_family.at(fam.label);
            if (auto cached = store.load(name, rel)) {
                result.series_by_family[fam.label] = entropy_series_from_json(*cached);
            } else {
                std::vector<std::vector<LambdaSample>> per_size;
                std::vector<int> sizes_used;
                for (const auto& t : tables) {
                    per_size.push_back(lambda_samples(t));
                    sizes_used.push_back(t.n());
                }
                std::vector<LambdaPoint> points;
                ExtrapolationOptions exopts;
                exopts.log_prefactor_correction = true;
                for (int k = 1; k <= cfg.p_count; ++k) {
                    BigRat p = make_rational(k, cfg.p_base);
                    Extrapolation ex = extrapolate_lambda(per_size, p, exopts);
                    points.push_back({p, ex.value, ex.error});
                }
                int r = rep.regularity().value_or(rep.num_vertices() ? rep.degree(0) : 0);
                EntropySeries series = extract_dk(points, r, cfg.kmax);
                series.sizes_used = sizes_used;
                store.store(name, rel, entropy_series_to_json(series));
                result.series_by_family[fam.label] = std::move(series);
            }

            stage = "geometry";
            name = "geometry/" + sanitize(fam.label);
            rel = name + ".json";
            if (auto cached = store.load(name, rel)) {
                result.densities_by_family[fam.label] = geom_densities_from_json(*cached);
            } else {
                GeomDensities dens =
                    compute_geom_densities(rep, warn_by_family.at(fam.label), cfg.threads);
                store.store(name, rel, geom_densities_to_json(dens));
                result.densities_by_family[fam.label] = std::move(dens);
            }
        }

        // ---- relations across families ----
        stage = "relations";
        for (int k = 2; k <= cfg.kmax; ++k) {
            auto basis = relation_basis(k);
            std::vector<RelationObservation> obs;
            for (const auto& fam : cfg.families) {
                const auto& series = result.series_by_family.at(fam.label);
                const auto& dens = result.densities_by_family.at(fam.label);
                RelationObservation o;
                o.family = fam.label;
                o.densities = dens;
                o.dk = series.at(k).dk;
                o.sigma = series.at(k).sigma;
                const Graph& rep = rep_graph_by_family.at(fam.label);
                o.bipartite = bipartition(rep).bipartite;
                obs.push_back(std::move(o));
            }
            if (obs.size() < basis.size()) {
                result.notes.push_back("relations: skipped k=" + std::to_string(k) +
                                       " (needs >= " + std::to_string(basis.size()) +
                                       " families)");
                continue;
            }
            try {
                RelationModel model = fit_relation(k, obs);
                std::string name = "relations/k" + std::to_string(k);
                store.store(name, name + ".json", relation_model_to_json(model));
                result.relations.emplace_back(k, std::move(model));
            } catch (const DegenerateDesignError& err) {
                result.notes.push_back("relations: skipped k=" + std::to_string(k) + " (" +
                                       err.what() + ")");
            }
        }

        // ---- kernel ----
        stage = "kernel";
        if (cfg.run_kernel) {
            CertificateReport report = run_certificates(cfg.kernel);
            store.store("kernel/certificates", "kernel/certificates.json",
                        certificate_report_to_json(report));
            store.store("kernel/proof_log", "kernel/proof_log.txt", report.proof_log);
            result.kernel_report = std::move(report);
        }
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& err) {
        throw fail(err.what());
    }

    stage = "manifest";
    std::sort(result.notes.begin(), result.notes.end());
    result.manifest_json = manifest_json_text(cfg, store.records, result.notes);
    write_text_file((store.root / "manifest.json").string(), result.manifest_json);
    std::sort(store.records.begin(), store.records.end(),
              [](const ArtifactRecord& a, const ArtifactRecord& b) { return a.name < b.name; });
    result.artifacts = store.records;
    return result;
}

std::vector<std::string> export_report(const PipelineResult& bundle, ReportFormat format) {
    fs::path root(bundle.out_dir);
    std::vector<std::string> written;
    if (format == ReportFormat::json) {
        fs::path p = root / "manifest.json";
        write_text_file(p.string(), bundle.manifest_json);
        written.push_back(p.string());
    } else if (format == ReportFormat::csv) {
        for (const auto& [label, series] : bundle.series_by_family) {
            fs::path p = root / ("report_" + sanitize(label) + ".csv");
            write_text_file(p.string(), entropy_series_to_csv(series));
            written.push_back(p.string());
        }
    } else {
        std::ostringstream out;
        out << "== entropy series ==\n";
        for (const auto& [label, series] : bundle.series_by_family) {
            out << label << " (r=" << series.r << ", sizes n =";
            for (int n : series.sizes_used) out << ' ' << n;
            out << ")\n";
            for (const auto& c : series.coefficients)
                out << "  d_" << c.k << " = " << c.dk << " +- " << c.sigma << "\n";
        }
        out << "\n== geometric densities ==\n";
        std::vector<GeomDensities> rows;
        for (const auto& [label, dens] : bundle.densities_by_family) rows.push_back(dens);
        out << geom_densities_table(rows);
        out << "\n== relation fits ==\n";
        for (const auto& [k, model] : bundle.relations) {
            out << "d_" << k << " ~";
            for (size_t c = 0; c < model.basis.size(); ++c)
                out << (c ? " + " : " ") << "c[" << c << "]*" << model.basis[c].name();
            out << "\n  c =";
            for (double c : model.coefficients) out << ' ' << c;
            out << "\n  residual_norm = " << model.residual_norm << "\n";
        }
        if (bundle.kernel_report) {
            out << "\n== kernel ==\n";
            out << "Sq2 violations: " << bundle.kernel_report->violations.size() << "\n";
            out << bundle.kernel_report->proof_log;
        }
        for (const auto& note : bundle.notes) out << "note: " << note << "\n";
        fs::path p = root / "report.txt";
        write_text_file(p.string(), out.str());
        written.push_back(p.string());
    }
    return written;
}

std::string pipeline_config_to_json(const PipelineConfig& cfg) {
    json j;
    json fams = json::array();
    for (const auto& fam : cfg.families) {
        json f;
        f["label"] = fam.label;
        f["family"] = family_name(fam.family);
        f["sizes_list"] = fam.sizes_list;
        f["geometry_sizes"] = fam.geometry_sizes;
        if (fam.seed) f["seed"] = *fam.seed;
        fams.push_back(f);
    }
    j["families"] = fams;
    j["p_base"] = cfg.p_base;
    j["p_count"] = cfg.p_count;
    j["kmax"] = cfg.kmax;
    j["run_kernel"] = cfg.run_kernel;
    j["kernel"] = {{"mm", cfg.kernel.mm},
                   {"lL", cfg.kernel.lL},
                   {"jq", cfg.kernel.jq},
                   {"aQ", cfg.kernel.aQ.get_str()},
                   {"substitute_u", cfg.kernel.substitute_u}};
    if (cfg.kernel.threshold_low) j["kernel"]["threshold_low"] = *cfg.kernel.threshold_low;
    if (cfg.kernel.threshold_high) j["kernel"]["threshold_high"] = *cfg.kernel.threshold_high;
    j["threads"] = cfg.threads;
    j["dp_width_budget"] = cfg.dp_width_budget;
    j["out_dir"] = cfg.out_dir;
    j["seed"] = cfg.seed;
    return j.dump(2);
}

PipelineConfig pipeline_config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& err) {
        throw InvalidParameterError(std::string("pipeline config: bad JSON: ") + err.what());
    }
    PipelineConfig cfg;
    for (const auto& f : j.value("families", json::array())) {
        FamilySchedule fam;
        fam.label = f.at("label").get<std::string>();
        fam.family = family_from_name(f.at("family").get<std::string>());
        fam.sizes_list = f.at("sizes_list").get<std::vector<std::vector<int>>>();
        fam.geometry_sizes = f.at("geometry_sizes").get<std::vector<int>>();
        if (f.contains("seed")) fam.seed = f.at("seed").get<std::uint64_t>();
        cfg.families.push_back(std::move(fam));
    }
    cfg.p_base = j.value("p_base", cfg.p_base);
    cfg.p_count = j.value("p_count", cfg.p_count);
    cfg.kmax = j.value("kmax", cfg.kmax);
    cfg.run_kernel = j.value("run_kernel", cfg.run_kernel);
    if (j.contains("kernel")) {
        const auto& k = j.at("kernel");
        cfg.kernel.mm = k.value("mm", cfg.kernel.mm);
        cfg.kernel.lL = k.value("lL", cfg.kernel.lL);
        cfg.kernel.jq = k.value("jq", cfg.kernel.jq);
        if (k.contains("aQ")) {
            BigRat aq(k.at("aQ").get<std::string>());
            aq.canonicalize();
            cfg.kernel.aQ = aq;
        }
        cfg.kernel.substitute_u = k.value("substitute_u", cfg.kernel.substitute_u);
        if (k.contains("threshold_low")) cfg.kernel.threshold_low = k.at("threshold_low").get<long>();
        if (k.contains("threshold_high"))
            cfg.kernel.threshold_high = k.at("threshold_high").get<long>();
    }
    cfg.threads = j.value("threads", cfg.threads);
    cfg.dp_width_budget = j.value("dp_width_budget", cfg.dp_width_budget);
    cfg.out_dir = j.value("out_dir", cfg.out_dir);
    cfg.seed = j.value("seed", cfg.seed);
    return cfg;
}

}  // namespace dimer
