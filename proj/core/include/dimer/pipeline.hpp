#ifndef DIMER_PIPELINE_HPP
#define DIMER_PIPELINE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dimer/entropy.hpp"
#include "dimer/geometry.hpp"
#include "dimer/kernel.hpp"
#include "dimer/lattice.hpp"
#include "dimer/relations.hpp"

namespace dimer {

// One lattice family with its size schedule. `sizes_list` holds the
// family's size parameters per growing approximant; `geometry_sizes` is
// the representative used for pattern counting.
struct FamilySchedule {
    std::string label;
    LatticeFamily family = LatticeFamily::cycle;
    std::vector<std::vector<int>> sizes_list;
    std::vector<int> geometry_sizes;
    std::optional<std::uint64_t> seed;

    LatticeSpec spec_for(const std::vector<int>& sizes) const;
};

struct PipelineConfig {
    std::vector<FamilySchedule> families;
    // Common density grid p = k / p_base, k = 1..p_count; every size must
    // realize each p with an integer dimer count j = p n.
    long p_base = 16;
    int p_count = 8;
    int kmax = 4;
    bool run_kernel = true;
    KernelConfig kernel;
    int threads = 1;
    int dp_width_budget = 28;
    std::string out_dir;
    std::uint64_t seed = 0;

    void validate() const;
};

struct ArtifactRecord {
    std::string name;
    std::string path;  // relative to out_dir
    std::string sha256;
    bool reused = false;  // loaded from a previous run instead of recomputed
};

struct PipelineResult {
    std::string out_dir;
    std::vector<ArtifactRecord> artifacts;
    std::string manifest_json;
    std::map<std::string, EntropySeries> series_by_family;
    std::map<std::string, GeomDensities> densities_by_family;
    std::vector<std::pair<int, RelationModel>> relations;
    std::optional<CertificateReport> kernel_report;
    std::vector<std::string> notes;
};

// Stage failure carrying the stage name and the partial manifest of
// artifacts completed before the failure.
struct StageError : std::runtime_error {
    StageError(const std::string& stage_name, const std::string& what,
               std::string partial_manifest_json)
        : std::runtime_error(stage_name + ": " + what),
          stage(stage_name),
          partial_manifest(std::move(partial_manifest_json)) {}
    std::string stage;
    std::string partial_manifest;
};

// Build lattices, count matchings, extract d_k, count pattern densities,
// fit relations, run the kernel; artifacts are written under out_dir and
// reused (content-addressed) on reruns.
PipelineResult run_pipeline(const PipelineConfig& cfg);

enum class ReportFormat { json, csv, text };

// Render the bundle: json re-emits the manifest path list, csv writes
// per-family entropy series, text writes the human-readable summary.
// Returns the written file paths.
std::vector<std::string> export_report(const PipelineResult& bundle, ReportFormat format);

// Config (de)serialization for the CLI and golden files.
std::string pipeline_config_to_json(const PipelineConfig& cfg);
PipelineConfig pipeline_config_from_json(const std::string& text);

}  // namespace dimer

#endif
