#ifndef DIMER_SERIALIZE_HPP
#define DIMER_SERIALIZE_HPP

#include <string>

#include "dimer/entropy.hpp"
#include "dimer/eq28.hpp"
#include "dimer/geometry.hpp"
#include "dimer/kernel.hpp"
#include "dimer/matchings.hpp"
#include "dimer/relations.hpp"

namespace dimer {

// Counts serialized as decimal strings so the JSON round-trips exactly.
std::string match_table_to_json(const MatchTable& table);
MatchTable match_table_from_json(const std::string& text);

std::string entropy_series_to_json(const EntropySeries& series);
EntropySeries entropy_series_from_json(const std::string& text);
// One row per k: "k,dk,sigma".
std::string entropy_series_to_csv(const EntropySeries& series);

std::string geom_densities_to_json(const GeomDensities& densities);
GeomDensities geom_densities_from_json(const std::string& text);
// Aligned G1..G4 table for terminal output.
std::string geom_densities_table(const std::vector<GeomDensities>& rows);

std::string relation_model_to_json(const RelationModel& model);

std::string certificate_report_to_json(const CertificateReport& report);

std::string eq28_report_to_json(const Eq28Report& report);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Hex SHA-256 of a byte string; used for the content-addressed manifest.
std::string sha256_hex(const std::string& bytes);

}  // namespace dimer

#endif
