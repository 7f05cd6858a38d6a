#include "metricgraph/proximity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_set>

namespace metricgraph {

namespace {

double row_norm(const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x * x;
    return std::sqrt(sum);
}

}  // namespace

void EntityTable::validate() const {
    if (ids.empty()) throw ValidationError("entity table is empty");
    if (features.size() != ids.size())
        throw DimensionError("feature row count does not match id count");
    const std::size_t m = features.front().size();
    if (m == 0) throw ValidationError("entity table has no feature columns");
    for (const auto& row : features)
        if (row.size() != m) throw DimensionError("ragged feature row");
    std::unordered_set<std::string> seen;
    for (const auto& id : ids)
        if (!seen.insert(id).second)
            throw ValidationError("duplicate entity id: " + id);
    if (!column_kinds.empty() && column_kinds.size() != m)
        throw DimensionError("column kind count does not match feature columns");
}

std::size_t EntityTable::index_of(const std::string& id) const {
    auto it = std::find(ids.begin(), ids.end(), id);
    if (it == ids.end()) throw LookupError("unknown entity id: " + id);
    return static_cast<std::size_t>(it - ids.begin());
}

EntityTable EntityTable::without(const std::string& id) const {
    const std::size_t a = index_of(id);
    EntityTable out;
    out.column_names = column_names;
    out.column_kinds = column_kinds;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i == a) continue;
        out.ids.push_back(ids[i]);
        out.features.push_back(features[i]);
    }
    return out;
}

void DocumentCorpus::validate() const {
    if (entity_ids.empty() || doc_ids.empty())
        throw ValidationError("document corpus is empty");
    if (counts.size() != entity_ids.size())
        throw DimensionError("count row count does not match entity count");
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i].size() != doc_ids.size())
            throw DimensionError("ragged count row");
        bool any = false;
        for (long long c : counts[i]) {
            if (c < 0) throw ValidationError("negative count for entity " + entity_ids[i]);
            any = any || c > 0;
        }
        if (!any)
            throw ValidationError("entity appears in no document: " + entity_ids[i]);
    }
    std::unordered_set<std::string> seen;
    for (const auto& id : entity_ids)
        if (!seen.insert(id).second)
            throw ValidationError("duplicate entity id: " + id);
}

std::size_t DocumentCorpus::index_of(const std::string& id) const {
    auto it = std::find(entity_ids.begin(), entity_ids.end(), id);
    if (it == entity_ids.end()) throw LookupError("unknown entity id: " + id);
    return static_cast<std::size_t>(it - entity_ids.begin());
}

DocumentCorpus DocumentCorpus::without(const std::string& id) const {
    const std::size_t a = index_of(id);
    DocumentCorpus out;
    out.doc_ids = doc_ids;
    for (std::size_t i = 0; i < entity_ids.size(); ++i) {
        if (i == a) continue;
        out.entity_ids.push_back(entity_ids[i]);
        out.counts.push_back(counts[i]);
    }
    return out;
}

void FieldMetricSchema::validate() const {
    if (fields.empty()) throw ValidationError("field metric schema has no columns");
    bool any_unmasked = false;
    for (const auto& f : fields) {
        if (f.scale < 0) throw ValidationError("negative field scale");
        any_unmasked = any_unmasked || f.kind != FieldKind::Masked;
    }
    if (!any_unmasked)
        throw ValidationError("field metric schema masks every column");
}

CosineProximity build_cosine_proximity(const EntityTable& t) {
    t.validate();
    const std::size_t n = t.size();
    const std::size_t m = t.columns();

    std::vector<std::vector<double>> unit(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double norm = row_norm(t.features[i]);
        if (norm <= 0.0)
            throw ValidationError("zero-norm feature row for entity " + t.ids[i]);
        unit[i].resize(m);
        for (std::size_t c = 0; c < m; ++c) unit[i][c] = t.features[i][c] / norm;
    }

    CosineProximity out;
    out.corr = SquareMatrix(n);
    out.phi = SquareMatrix(n);
    bool out_of_range = false;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double dot = 0.0;
            for (std::size_t c = 0; c < m; ++c) dot += unit[i][c] * unit[j][c];
            out.corr(i, j) = dot;
            out.phi(i, j) = i == j ? 0.0 : 1.0 - dot;
            if (i != j && (out.phi(i, j) < 0.0 || out.phi(i, j) > 1.0))
                out_of_range = true;
        }
    }
    if (out_of_range)
        out.warnings.push_back(
            "cosine proximity outside [0,1]; input has negative features");
    return out;
}

SquareMatrix build_cooccurrence_proximity(const DocumentCorpus& c,
                                          std::vector<std::string>* warnings) {
    c.validate();
    const std::size_t n = c.entities();
    const double m = static_cast<double>(c.documents());

    SquareMatrix phi(n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            std::size_t shared = 0;
            for (std::size_t d = 0; d < c.documents(); ++d)
                if (c.counts[a][d] > 0 && c.counts[b][d] > 0) ++shared;
            const double value = (m - static_cast<double>(shared)) / m;
            phi(a, b) = phi(b, a) = value;
            if (shared == c.documents() && warnings)
                warnings->push_back("entities coincide in all documents: " +
                                    c.entity_ids[a] + ", " + c.entity_ids[b] +
                                    " (consider merge_duplicates)");
        }
    }
    return phi;
}

DocumentCorpus merge_duplicates(const DocumentCorpus& c, std::vector<MergeEntry>& log) {
    c.validate();
    const std::size_t n = c.entities();

    // Group rows by their positive-count document support.
    std::map<std::vector<bool>, std::vector<std::size_t>> groups;
    std::vector<std::vector<bool>> supports(n);
    for (std::size_t i = 0; i < n; ++i) {
        supports[i].resize(c.documents());
        for (std::size_t d = 0; d < c.documents(); ++d)
            supports[i][d] = c.counts[i][d] > 0;
        groups[supports[i]].push_back(i);
    }

    std::vector<bool> drop(n, false);
    std::vector<std::vector<long long>> merged_counts = c.counts;
    std::map<std::size_t, MergeEntry> entries;  // keyed by kept row index
    for (auto& [support, members] : groups) {
        if (members.size() < 2) continue;
        std::size_t kept = members.front();
        for (std::size_t i : members)
            if (c.entity_ids[i] < c.entity_ids[kept]) kept = i;
        MergeEntry entry{c.entity_ids[kept], {}};
        for (std::size_t i : members) {
            if (i == kept) continue;
            drop[i] = true;
            entry.absorbed.push_back(c.entity_ids[i]);
            for (std::size_t d = 0; d < c.documents(); ++d)
                merged_counts[kept][d] += c.counts[i][d];
        }
        std::sort(entry.absorbed.begin(), entry.absorbed.end());
        entries[kept] = std::move(entry);
    }

    DocumentCorpus out;
    out.doc_ids = c.doc_ids;
    for (std::size_t i = 0; i < n; ++i) {
        if (drop[i]) continue;
        out.entity_ids.push_back(c.entity_ids[i]);
        out.counts.push_back(merged_counts[i]);
    }
    for (auto& [kept, entry] : entries) log.push_back(std::move(entry));
    return out;
}

SquareMatrix build_field_metric(const EntityTable& t, const FieldMetricSchema& s) {
    t.validate();
    s.validate();
    if (s.fields.size() != t.columns())
        throw DimensionError("schema column count does not match table columns");

    const std::size_t n = t.size();
    SquareMatrix d(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t c = 0; c < s.fields.size(); ++c) {
                const auto& f = s.fields[c];
                if (f.kind == FieldKind::Masked) continue;
                double term = 0.0;
                if (f.kind == FieldKind::AbsoluteDifference)
                    term = std::abs(t.features[i][c] - t.features[j][c]);
                else  // DiscreteIndicator
                    term = t.features[i][c] == t.features[j][c] ? 0.0 : 1.0;
                term *= f.scale;
                if (s.combine == FieldMetricSchema::Combine::Sum)
                    acc += term;
                else
                    acc += term * term;
            }
            if (s.combine == FieldMetricSchema::Combine::MaskedEuclidean)
                acc = std::sqrt(acc);
            d(i, j) = d(j, i) = acc;
        }
    }
    return d;
}

SquareMatrix build_normalized_euclidean(const EntityTable& t) {
    t.validate();
    const std::size_t n = t.size();
    double max_norm = 0.0;
    for (const auto& row : t.features) max_norm = std::max(max_norm, row_norm(row));
    if (max_norm <= 0.0)
        throw ValidationError("all feature rows are zero; cannot normalize");

    SquareMatrix d(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double sum = 0.0;
            for (std::size_t c = 0; c < t.columns(); ++c) {
                const double diff = t.features[i][c] - t.features[j][c];
                sum += diff * diff;
            }
            d(i, j) = d(j, i) = std::sqrt(sum) / max_norm;
        }
    }
    return d;
}

}  // namespace metricgraph
