#include <cmath>
#include <filesystem>

#include "dimer/errors.hpp"
#include "dimer/pipeline.hpp"
#include "dimer/serialize.hpp"
#include "doctest.h"

using namespace dimer;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("dimer_test_" + name);
    fs::remove_all(dir);
    return dir;
}

PipelineConfig cycles_config(const std::string& name) {
    PipelineConfig cfg;
    FamilySchedule fam;
    fam.label = "cycles";
    fam.family = LatticeFamily::cycle;
    fam.sizes_list = {{40}, {80}, {120}, {160}};
    fam.geometry_sizes = {40};
    cfg.families.push_back(fam);
    cfg.p_base = 20;
    cfg.p_count = 8;
    cfg.kmax = 4;
    cfg.run_kernel = false;
    cfg.out_dir = fresh_dir(name).string();
    return cfg;
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("empty family list yields an empty bundle with a valid index") {
    PipelineConfig cfg;
    cfg.run_kernel = false;
    cfg.out_dir = fresh_dir("empty").string();
    PipelineResult result = run_pipeline(cfg);
    CHECK(result.artifacts.empty());
    CHECK(fs::exists(fs::path(cfg.out_dir) / "manifest.json"));
    CHECK(result.manifest_json.find("\"artifacts\": []") != std::string::npos);
}

TEST_CASE("cycles-only pipeline reproduces d_2 = 0.125") {
    PipelineConfig cfg = cycles_config("cycles");
    PipelineResult result = run_pipeline(cfg);
    const EntropySeries& s = result.series_by_family.at("cycles");
    CHECK(std::abs(s.at(2).dk - 0.125) < 5e-3);
    CHECK(s.at(2).sigma < 5e-3);
    // relations for k=2..3 fit (single family, constant basis)
    CHECK(result.relations.size() >= 1);
}

TEST_CASE("determinism: identical config twice gives identical manifests") {
    PipelineConfig cfg = cycles_config("det1");
    PipelineResult r1 = run_pipeline(cfg);
    fs::remove_all(cfg.out_dir);
    PipelineResult r2 = run_pipeline(cfg);
    CHECK(r1.manifest_json == r2.manifest_json);
    REQUIRE(r1.artifacts.size() == r2.artifacts.size());
    for (size_t i = 0; i < r1.artifacts.size(); ++i)
        CHECK(r1.artifacts[i].sha256 == r2.artifacts[i].sha256);
}

TEST_CASE("stage isolation: downstream artifacts rebuild from cached upstream") {
    PipelineConfig cfg = cycles_config("cache");
    PipelineResult r1 = run_pipeline(cfg);
    // wipe the entropy artifact, keep lattices and matchings
    fs::remove(fs::path(cfg.out_dir) / "entropy" / "cycles.json");
    PipelineResult r2 = run_pipeline(cfg);
    CHECK(r1.manifest_json == r2.manifest_json);
    int reused = 0, rebuilt = 0;
    for (const auto& a : r2.artifacts) {
        if (a.reused) ++reused;
        if (!a.reused) ++rebuilt;
    }
    CHECK(reused > 0);   // matchings/lattice came from cache
    CHECK(rebuilt > 0);  // entropy was recomputed
}

TEST_CASE("pipeline config json round trip") {
    PipelineConfig cfg = cycles_config("cfg");
    cfg.kernel.mm = 8;
    cfg.kernel.threshold_low = 77;
    std::string text = pipeline_config_to_json(cfg);
    PipelineConfig back = pipeline_config_from_json(text);
    CHECK(back.p_base == cfg.p_base);
    CHECK(back.kmax == cfg.kmax);
    CHECK(back.kernel.mm == 8);
    CHECK(back.kernel.low() == 77);
    REQUIRE(back.families.size() == 1);
    CHECK(back.families[0].sizes_list == cfg.families[0].sizes_list);
    CHECK(pipeline_config_to_json(back) == text);
}

TEST_CASE("config validation errors") {
    PipelineConfig cfg;
    cfg.out_dir = "";
    CHECK_THROWS_AS(cfg.validate(), InvalidParameterError);
    cfg = cycles_config("val");
    cfg.p_count = 3;  // below kmax + 2
    CHECK_THROWS_AS(cfg.validate(), InvalidParameterError);
    cfg = cycles_config("val2");
    cfg.families[0].sizes_list = {{40}, {80}};
    CHECK_THROWS_AS(cfg.validate(), InvalidParameterError);
    CHECK_THROWS_AS(pipeline_config_from_json("{not json"), InvalidParameterError);
}

TEST_CASE("export_report text and csv") {
    PipelineConfig cfg = cycles_config("report");
    cfg.run_kernel = true;  // exercise the kernel summary line
    cfg.kernel.mm = 6;
    PipelineResult result = run_pipeline(cfg);

    auto text_paths = export_report(result, ReportFormat::text);
    REQUIRE(text_paths.size() == 1);
    std::string report = read_text_file(text_paths[0]);
    CHECK(report.find("Sq2") != std::string::npos);
    CHECK(report.find("d_2") != std::string::npos);

    auto csv_paths = export_report(result, ReportFormat::csv);
    REQUIRE(csv_paths.size() == 1);
    CHECK(read_text_file(csv_paths[0]).rfind("k,dk,sigma\n", 0) == 0);

    auto json_paths = export_report(result, ReportFormat::json);
    REQUIRE(json_paths.size() == 1);
}

TEST_CASE("stage errors carry the stage name") {
    PipelineConfig cfg = cycles_config("err");
    cfg.dp_width_budget = 1;  // forces the matchings stage to fail
    try {
        run_pipeline(cfg);
        FAIL("expected StageError");
    } catch (const StageError& err) {
        CHECK(err.stage == "matchings");
        CHECK(err.partial_manifest.find("artifacts") != std::string::npos);
    }
}

}  // TEST_SUITE
