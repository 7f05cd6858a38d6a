#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "metricgraph/density.hpp"
#include "metricgraph/matrix.hpp"
#include "metricgraph/netapps.hpp"
#include "metricgraph/pipeline.hpp"
#include "metricgraph/proximity.hpp"

namespace metricgraph::io {

struct LabeledMatrix {
    std::vector<std::string> ids;
    SquareMatrix matrix;
};

// Matrix CSV: header row of entity identifiers, then one row per entity of
// identifier followed by n decimal values. Written values round-trip exactly.
LabeledMatrix read_matrix_csv(const std::filesystem::path& path);
void write_matrix_csv(const std::filesystem::path& path, const LabeledMatrix& m);

// Entity table CSV (`id,<col1>,...`) with an optional sidecar JSON declaring
// per-column kinds; columns default to numeric.
EntityTable read_entity_table(const std::filesystem::path& csv_path,
                              const std::filesystem::path& meta_path = {});

// Document corpus CSV, long format `entity_id,doc_id,count`.
DocumentCorpus read_corpus_csv(const std::filesystem::path& path);

// Strict-mode config parsing: unknown keys anywhere are a ParseError.
PipelineConfig parse_config(const nlohmann::json& j);
PipelineConfig load_config(const std::filesystem::path& path);

nlohmann::json semimetric_report_json(const SemimetricReport& r,
                                      std::size_t max_listed = 100);
nlohmann::json density_report_json(const ConcentrationReport& r,
                                   const std::vector<std::string>& ids);
std::string density_report_csv(const ConcentrationReport& r,
                               const std::vector<std::string>& ids);
nlohmann::json influence_report_json(const InfluenceReport& r);
nlohmann::json spectral_report_json(const SpectralClasses& s,
                                    const std::vector<std::string>& ids);

// Locale-independent decimal parsing/formatting.
double parse_double(const std::string& s, std::size_t line_no = 0);
std::string format_full(double v);      // exact round-trip (17 significant digits)
double round_sig(double v, int digits); // report values are rounded to 12

// FNV-1a 64-bit digest of a file's bytes, hex-encoded.
std::string file_digest(const std::filesystem::path& path);
std::string string_digest(const std::string& s);

}  // namespace metricgraph::io
