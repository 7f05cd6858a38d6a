#include "metricgraph/pipeline.hpp"

#include <algorithm>

namespace metricgraph {

PipelineInput PipelineInput::from_table(EntityTable t) {
    PipelineInput in;
    in.table = std::move(t);
    return in;
}

PipelineInput PipelineInput::from_corpus(DocumentCorpus c) {
    PipelineInput in;
    in.corpus = std::move(c);
    return in;
}

PipelineInput PipelineInput::from_matrix(std::vector<std::string> ids, SquareMatrix m) {
    if (ids.size() != m.order())
        throw DimensionError("matrix id count does not match order");
    PipelineInput in;
    in.matrix = std::move(m);
    in.matrix_ids = std::move(ids);
    return in;
}

std::size_t PipelineInput::size() const { return ids().size(); }

const std::vector<std::string>& PipelineInput::ids() const {
    if (table) return table->ids;
    if (corpus) return corpus->entity_ids;
    if (matrix) return matrix_ids;
    throw ValidationError("pipeline input is empty");
}

std::size_t PipelineInput::index_of(const std::string& id) const {
    const auto& all = ids();
    auto it = std::find(all.begin(), all.end(), id);
    if (it == all.end()) throw LookupError("unknown entity id: " + id);
    return static_cast<std::size_t>(it - all.begin());
}

PipelineInput PipelineInput::without(const std::string& id) const {
    if (table) return from_table(table->without(id));
    if (corpus) return from_corpus(corpus->without(id));
    if (matrix) {
        const std::size_t a = index_of(id);
        std::vector<std::string> kept = matrix_ids;
        kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(a));
        return from_matrix(std::move(kept), matrix->without(a));
    }
    throw ValidationError("pipeline input is empty");
}

PipelineResult run_pipeline(const PipelineInput& input, const PipelineConfig& config) {
    PipelineResult res;

    switch (config.builder) {
        case BuilderKind::Cosine: {
            if (!input.table)
                throw ValidationError("cosine builder requires an entity table");
            auto cosine = build_cosine_proximity(*input.table);
            res.ids = input.table->ids;
            res.phi = std::move(cosine.phi);
            res.corr = std::move(cosine.corr);
            res.de = build_normalized_euclidean(*input.table);
            res.warnings = std::move(cosine.warnings);
            break;
        }
        case BuilderKind::Cooccurrence: {
            if (!input.corpus)
                throw ValidationError("co-occurrence builder requires a document corpus");
            DocumentCorpus merged = merge_duplicates(*input.corpus, res.merges);
            res.ids = merged.entity_ids;
            res.phi = build_cooccurrence_proximity(merged, &res.warnings);
            break;
        }
        case BuilderKind::FieldMetric: {
            if (!input.table)
                throw ValidationError("field-metric builder requires an entity table");
            res.ids = input.table->ids;
            res.phi = build_field_metric(*input.table, config.field_schema);
            break;
        }
        case BuilderKind::Euclidean: {
            if (!input.table)
                throw ValidationError("euclidean builder requires an entity table");
            res.ids = input.table->ids;
            res.phi = build_normalized_euclidean(*input.table);
            break;
        }
        case BuilderKind::Direct: {
            if (!input.matrix)
                throw ValidationError("direct builder requires a proximity matrix");
            res.ids = input.matrix_ids;
            res.phi = *input.matrix;
            break;
        }
    }

    res.phi_report = validate_semimetric(res.phi, config.validation_tol);
    res.gauge = triangular_gauge(res.phi, config.weights, config.max_order,
                                 config.conv_tol);
    res.d = res.de ? combined_distance(*res.de, res.gauge.distances, config.lambda)
                   : res.gauge.distances;
    return res;
}

}  // namespace metricgraph
