#pragma once

#include <optional>
#include <string>
#include <vector>

#include "metricgraph/density.hpp"
#include "metricgraph/gauge.hpp"
#include "metricgraph/matrix.hpp"
#include "metricgraph/proximity.hpp"

namespace metricgraph {

struct DensityOptions {
    std::optional<double> r;  // nullopt = "auto"
    RadialWeight psi{1.0};
    MassMeasure nu = MassMeasure::lebesgue();
    double z_threshold = 2.0;
};

enum class BuilderKind { Cosine, Cooccurrence, FieldMetric, Euclidean, Direct };

/// Everything the batch pipeline needs; parsed from a single strict-mode JSON
/// document (unknown keys are rejected).
struct PipelineConfig {
    BuilderKind builder = BuilderKind::Cosine;
    FieldMetricSchema field_schema;
    WeightScheme weights = WeightScheme::ones();
    std::size_t max_order = 4;
    double conv_tol = 1e-9;
    double lambda = 1.0;
    DensityOptions density;
    double validation_tol = 1e-9;
    double spectral_eps = 1e-6;
    double spectral_delta = 1e-6;
};

/// One raw data source: a feature table, a document corpus, or a direct
/// proximity matrix.
struct PipelineInput {
    std::optional<EntityTable> table;
    std::optional<DocumentCorpus> corpus;
    std::optional<SquareMatrix> matrix;
    std::vector<std::string> matrix_ids;

    static PipelineInput from_table(EntityTable t);
    static PipelineInput from_corpus(DocumentCorpus c);
    static PipelineInput from_matrix(std::vector<std::string> ids, SquareMatrix m);

    std::size_t size() const;
    const std::vector<std::string>& ids() const;
    std::size_t index_of(const std::string& id) const;
    PipelineInput without(const std::string& id) const;
};

struct PipelineResult {
    std::vector<std::string> ids;
    SquareMatrix phi;
    std::optional<SquareMatrix> corr;  // cosine builder only
    std::optional<SquareMatrix> de;    // normalized Euclidean component, cosine builder
    GaugeResult gauge;
    SquareMatrix d;  // final distance: lambda * de + d_phi when de is present
    SemimetricReport phi_report;
    std::vector<MergeEntry> merges;  // co-occurrence duplicate merges
    std::vector<std::string> warnings;
};

/// Runs proximity construction and the triangular gauge end to end.
PipelineResult run_pipeline(const PipelineInput& input, const PipelineConfig& config);

}  // namespace metricgraph
