#pragma once

#include <string>
#include <vector>

#include "metricgraph/matrix.hpp"

namespace metricgraph {

enum class ColumnKind { Numeric, CategoricalCode };

/// N entities with an M-vector of real-valued properties each.
struct EntityTable {
    std::vector<std::string> ids;
    std::vector<std::string> column_names;
    std::vector<ColumnKind> column_kinds;        // defaults to Numeric per column
    std::vector<std::vector<double>> features;   // N rows x M columns

    std::size_t size() const { return ids.size(); }
    std::size_t columns() const { return features.empty() ? 0 : features.front().size(); }
    void validate() const;  // unique ids, rectangular, N >= 1, M >= 1
    EntityTable without(const std::string& id) const;
    std::size_t index_of(const std::string& id) const;  // LookupError if absent
};

/// Entity-per-document appearance counts, N entities x M documents.
struct DocumentCorpus {
    std::vector<std::string> entity_ids;
    std::vector<std::string> doc_ids;
    std::vector<std::vector<long long>> counts;

    std::size_t entities() const { return entity_ids.size(); }
    std::size_t documents() const { return doc_ids.size(); }
    void validate() const;  // counts >= 0, no all-zero entity row, non-empty
    DocumentCorpus without(const std::string& id) const;
    std::size_t index_of(const std::string& id) const;
};

enum class FieldKind {
    AbsoluteDifference,  // |x - y|
    DiscreteIndicator,   // 0 if equal, 1 otherwise
    Masked,              // contributes 0
};

/// Per-column metric recipe. Combine::Sum adds the per-column metrics
/// (the mixed-attribute metric); Combine::MaskedEuclidean takes the Euclidean
/// norm of the difference restricted to the unmasked coordinates (the
/// seminorm pseudo-metrics).
struct FieldMetricSchema {
    enum class Combine { Sum, MaskedEuclidean };
    struct Field {
        FieldKind kind = FieldKind::AbsoluteDifference;
        double scale = 1.0;
    };
    Combine combine = Combine::Sum;
    std::vector<Field> fields;

    void validate() const;  // at least one unmasked column
};

struct CosineProximity {
    SquareMatrix phi;   // 1 - corr, diagonal forced to 0
    SquareMatrix corr;  // Gram matrix of the row-normalized features
    std::vector<std::string> warnings;
};

/// Row-normalizes the feature table, forms the cosine correlation matrix and
/// phi = ones - corr. Throws ValidationError naming the entity on a zero-norm
/// row. Warns (does not clamp) when negative features push phi outside [0,1].
CosineProximity build_cosine_proximity(const EntityTable& t);

/// Co-occurrence proximity phi(a,b) = (M - M_ab)/M where M_ab counts the
/// documents in which both a and b have a positive count. The diagonal is
/// forced to 0. Appends a duplicate warning per coinciding pair if `warnings`
/// is given.
SquareMatrix build_cooccurrence_proximity(const DocumentCorpus& c,
                                          std::vector<std::string>* warnings = nullptr);

struct MergeEntry {
    std::string kept;
    std::vector<std::string> absorbed;
};

/// Merges entities whose positive-count document supports coincide exactly;
/// the lexicographically smallest id is kept and counts are summed.
DocumentCorpus merge_duplicates(const DocumentCorpus& c, std::vector<MergeEntry>& log);

SquareMatrix build_field_metric(const EntityTable& t, const FieldMetricSchema& s);

/// d(i,j) = ||v_i - v_j||_2 / max_c ||v_c||_2.
SquareMatrix build_normalized_euclidean(const EntityTable& t);

}  // namespace metricgraph
