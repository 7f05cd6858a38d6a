#include "metricgraph/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace metricgraph::io {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

void check_keys(const nlohmann::json& j, const std::vector<std::string>& allowed,
                const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            throw ParseError("unknown config key '" + it.key() + "' in " + where);
    }
}

}  // namespace

double parse_double(const std::string& s, std::size_t line_no) {
    double value = 0.0;
    const char* begin = s.data();
    const char* end = begin + s.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    while (ptr < end && (*ptr == ' ' || *ptr == '\t')) ++ptr;
    if (ec != std::errc{} || ptr != end)
        throw ParseError("invalid decimal value '" + s + "'", line_no);
    return value;
}

std::string format_full(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double round_sig(double v, int digits) {
    if (v == 0.0 || !std::isfinite(v)) return v;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*e", digits - 1, v);
    return std::strtod(buf, nullptr);
}

LabeledMatrix read_matrix_csv(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    if (lines.empty()) throw ParseError("empty matrix file: " + path.string(), 1);

    LabeledMatrix out;
    out.ids = split_csv_line(lines[0]);
    const std::size_t n = out.ids.size();
    if (n == 0) throw ParseError("matrix header has no identifiers", 1);
    if (lines.size() < n + 1)
        throw ParseError("matrix file has fewer rows than header entries",
                         lines.size());

    out.matrix = SquareMatrix(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t line_no = i + 2;
        const auto fields = split_csv_line(lines[i + 1]);
        if (fields.size() != n + 1)
            throw ParseError("expected " + std::to_string(n + 1) + " fields, got " +
                                 std::to_string(fields.size()),
                             line_no);
        if (fields[0] != out.ids[i])
            throw ParseError("row identifier '" + fields[0] +
                                 "' does not match header '" + out.ids[i] + "'",
                             line_no);
        for (std::size_t j = 0; j < n; ++j)
            out.matrix(i, j) = parse_double(fields[j + 1], line_no);
    }
    return out;
}

void write_matrix_csv(const std::filesystem::path& path, const LabeledMatrix& m) {
    if (m.ids.size() != m.matrix.order())
        throw DimensionError("matrix id count does not match order");
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write file: " + path.string());
    for (std::size_t j = 0; j < m.ids.size(); ++j)
        out << (j ? "," : "") << m.ids[j];
    out << "\n";
    for (std::size_t i = 0; i < m.ids.size(); ++i) {
        out << m.ids[i];
        for (std::size_t j = 0; j < m.ids.size(); ++j)
            out << "," << format_full(m.matrix(i, j));
        out << "\n";
    }
}

EntityTable read_entity_table(const std::filesystem::path& csv_path,
                              const std::filesystem::path& meta_path) {
    const auto lines = read_lines(csv_path);
    if (lines.empty()) throw ParseError("empty entity file: " + csv_path.string(), 1);

    EntityTable t;
    const auto header = split_csv_line(lines[0]);
    if (header.size() < 2 || header[0] != "id")
        throw ParseError("entity header must be 'id,<col1>,...'", 1);
    t.column_names.assign(header.begin() + 1, header.end());
    const std::size_t m = t.column_names.size();

    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto fields = split_csv_line(lines[i]);
        if (fields.size() != m + 1)
            throw ParseError("expected " + std::to_string(m + 1) + " fields, got " +
                                 std::to_string(fields.size()),
                             i + 1);
        t.ids.push_back(fields[0]);
        std::vector<double> row(m);
        for (std::size_t c = 0; c < m; ++c) row[c] = parse_double(fields[c + 1], i + 1);
        t.features.push_back(std::move(row));
    }

    t.column_kinds.assign(m, ColumnKind::Numeric);
    if (!meta_path.empty()) {
        std::ifstream meta(meta_path);
        if (!meta) throw ParseError("cannot open metadata file: " + meta_path.string());
        nlohmann::json j;
        try {
            meta >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("invalid metadata JSON: ") + e.what());
        }
        check_keys(j, {"columns"}, "metadata");
        for (const auto& col : j.at("columns")) {
            check_keys(col, {"name", "kind"}, "metadata column");
            const std::string name = col.at("name").get<std::string>();
            const std::string kind = col.at("kind").get<std::string>();
            auto it = std::find(t.column_names.begin(), t.column_names.end(), name);
            if (it == t.column_names.end())
                throw ParseError("metadata names unknown column '" + name + "'");
            const auto idx = static_cast<std::size_t>(it - t.column_names.begin());
            if (kind == "numeric")
                t.column_kinds[idx] = ColumnKind::Numeric;
            else if (kind == "categorical-code")
                t.column_kinds[idx] = ColumnKind::CategoricalCode;
            else
                throw ParseError("unknown column kind '" + kind + "'");
        }
    }
    t.validate();
    return t;
}

DocumentCorpus read_corpus_csv(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    if (lines.empty()) throw ParseError("empty corpus file: " + path.string(), 1);
    const auto header = split_csv_line(lines[0]);
    if (header != std::vector<std::string>{"entity_id", "doc_id", "count"})
        throw ParseError("corpus header must be 'entity_id,doc_id,count'", 1);

    DocumentCorpus c;
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, long long>> cells;
    auto intern = [](std::vector<std::string>& pool, const std::string& s) {
        auto it = std::find(pool.begin(), pool.end(), s);
        if (it != pool.end()) return static_cast<std::size_t>(it - pool.begin());
        pool.push_back(s);
        return pool.size() - 1;
    };
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto fields = split_csv_line(lines[i]);
        if (fields.size() != 3)
            throw ParseError("expected 3 fields, got " + std::to_string(fields.size()),
                             i + 1);
        long long count = 0;
        auto [ptr, ec] =
            std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), count);
        if (ec != std::errc{} || ptr != fields[2].data() + fields[2].size())
            throw ParseError("invalid count '" + fields[2] + "'", i + 1);
        if (count < 0) throw ParseError("negative count", i + 1);
        const std::size_t e = intern(c.entity_ids, fields[0]);
        const std::size_t d = intern(c.doc_ids, fields[1]);
        cells.push_back({{e, d}, count});
    }
    c.counts.assign(c.entities(), std::vector<long long>(c.documents(), 0));
    for (const auto& [pos, count] : cells) c.counts[pos.first][pos.second] += count;
    c.validate();
    return c;
}

PipelineConfig parse_config(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("config must be a JSON object");
    PipelineConfig cfg;
    check_keys(j,
               {"builder", "field_schema", "weights", "max_order", "conv_tol", "lambda",
                "metric_constant", "density", "tolerances"},
               "config");

    if (j.contains("builder")) {
        const std::string b = j.at("builder").get<std::string>();
        if (b == "cosine") cfg.builder = BuilderKind::Cosine;
        else if (b == "cooccurrence") cfg.builder = BuilderKind::Cooccurrence;
        else if (b == "field-metric") cfg.builder = BuilderKind::FieldMetric;
        else if (b == "euclidean") cfg.builder = BuilderKind::Euclidean;
        else if (b == "direct") cfg.builder = BuilderKind::Direct;
        else throw ParseError("unknown builder '" + b + "'");
    }

    if (j.contains("field_schema")) {
        const auto& fs = j.at("field_schema");
        check_keys(fs, {"combine", "fields"}, "field_schema");
        if (fs.contains("combine")) {
            const std::string c = fs.at("combine").get<std::string>();
            if (c == "sum") cfg.field_schema.combine = FieldMetricSchema::Combine::Sum;
            else if (c == "masked-euclidean")
                cfg.field_schema.combine = FieldMetricSchema::Combine::MaskedEuclidean;
            else throw ParseError("unknown field combine '" + c + "'");
        }
        for (const auto& f : fs.at("fields")) {
            check_keys(f, {"kind", "scale"}, "field");
            FieldMetricSchema::Field field;
            const std::string k = f.at("kind").get<std::string>();
            if (k == "abs") field.kind = FieldKind::AbsoluteDifference;
            else if (k == "discrete") field.kind = FieldKind::DiscreteIndicator;
            else if (k == "masked") field.kind = FieldKind::Masked;
            else throw ParseError("unknown field kind '" + k + "'");
            if (f.contains("scale")) field.scale = f.at("scale").get<double>();
            cfg.field_schema.fields.push_back(field);
        }
    }

    if (j.contains("weights")) {
        const auto& w = j.at("weights");
        if (w.is_string()) {
            const std::string s = w.get<std::string>();
            if (s == "ones") cfg.weights = WeightScheme::ones();
            else if (s == "harmonic") cfg.weights = WeightScheme::harmonic();
            else throw ParseError("unknown weight scheme '" + s + "'");
        } else if (w.is_array()) {
            cfg.weights = WeightScheme::custom_weights(w.get<std::vector<double>>());
        } else {
            throw ParseError("weights must be \"ones\", \"harmonic\" or an array");
        }
    }
    if (j.contains("metric_constant"))
        cfg.weights.metric_constant = j.at("metric_constant").get<double>();
    if (j.contains("max_order")) {
        const long long v = j.at("max_order").get<long long>();
        if (v < 1) throw ParseError("max_order must be at least 1");
        cfg.max_order = static_cast<std::size_t>(v);
    }
    if (j.contains("conv_tol")) cfg.conv_tol = j.at("conv_tol").get<double>();
    if (j.contains("lambda")) cfg.lambda = j.at("lambda").get<double>();

    if (j.contains("density")) {
        const auto& dj = j.at("density");
        check_keys(dj, {"r", "q", "nu", "z_threshold"}, "density");
        if (dj.contains("r")) {
            if (dj.at("r").is_string()) {
                if (dj.at("r").get<std::string>() != "auto")
                    throw ParseError("density r must be a number or \"auto\"");
                cfg.density.r = std::nullopt;
            } else {
                cfg.density.r = dj.at("r").get<double>();
            }
        }
        if (dj.contains("q")) cfg.density.psi.q = dj.at("q").get<double>();
        if (dj.contains("nu")) {
            const auto& nu = dj.at("nu");
            if (nu.is_string()) {
                if (nu.get<std::string>() != "lebesgue")
                    throw ParseError("nu must be \"lebesgue\" or {\"dirac\": e0}");
                cfg.density.nu = MassMeasure::lebesgue();
            } else {
                check_keys(nu, {"dirac"}, "nu");
                cfg.density.nu = MassMeasure::dirac(nu.at("dirac").get<double>());
            }
        }
        if (dj.contains("z_threshold"))
            cfg.density.z_threshold = dj.at("z_threshold").get<double>();
    }

    if (j.contains("tolerances")) {
        const auto& tj = j.at("tolerances");
        check_keys(tj, {"validation_tol", "spectral_eps", "spectral_delta"},
                   "tolerances");
        if (tj.contains("validation_tol"))
            cfg.validation_tol = tj.at("validation_tol").get<double>();
        if (tj.contains("spectral_eps"))
            cfg.spectral_eps = tj.at("spectral_eps").get<double>();
        if (tj.contains("spectral_delta"))
            cfg.spectral_delta = tj.at("spectral_delta").get<double>();
    }
    return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid config JSON: ") + e.what());
    }
    return parse_config(j);
}

nlohmann::json semimetric_report_json(const SemimetricReport& r, std::size_t max_listed) {
    nlohmann::json j;
    j["symmetric"] = r.symmetric;
    j["zero_diagonal"] = r.zero_diagonal;
    j["non_negative"] = r.non_negative;
    j["is_metric"] = r.is_metric;
    j["min_offdiag"] = round_sig(r.min_offdiag, 12);
    j["triangle_violation_count"] = r.triangle_violations.size();
    nlohmann::json viols = nlohmann::json::array();
    for (std::size_t v = 0; v < r.triangle_violations.size() && v < max_listed; ++v) {
        const auto& t = r.triangle_violations[v];
        viols.push_back({{"i", t.i},
                         {"k", t.k},
                         {"j", t.j},
                         {"lhs", round_sig(t.lhs, 12)},
                         {"rhs", round_sig(t.rhs, 12)}});
    }
    j["triangle_violations"] = std::move(viols);
    return j;
}

nlohmann::json density_report_json(const ConcentrationReport& r,
                                   const std::vector<std::string>& ids) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : r.entries) {
        arr.push_back({{"id", ids[e.entity]},
                       {"c_r", round_sig(e.c_r, 12)},
                       {"r_max", round_sig(e.r_max, 12)},
                       {"z", round_sig(e.z, 12)},
                       {"robust_z", round_sig(e.robust_z, 12)},
                       {"flag", to_string(e.flag)}});
    }
    return arr;
}

std::string density_report_csv(const ConcentrationReport& r,
                               const std::vector<std::string>& ids) {
    std::string out = "id,c_r,r_max,z,robust_z,flag\n";
    for (const auto& e : r.entries) {
        out += ids[e.entity];
        out += "," + format_full(round_sig(e.c_r, 12));
        out += "," + format_full(round_sig(e.r_max, 12));
        out += "," + format_full(round_sig(e.z, 12));
        out += "," + format_full(round_sig(e.robust_z, 12));
        out += "," + to_string(e.flag) + "\n";
    }
    return out;
}

nlohmann::json influence_report_json(const InfluenceReport& r) {
    return {{"id", r.id},
            {"influence", round_sig(r.influence, 12)},
            {"order", r.exact_closure ? nlohmann::json("exact-closure")
                                      : nlohmann::json(r.recompute_order)}};
}

nlohmann::json spectral_report_json(const SpectralClasses& s,
                                    const std::vector<std::string>& ids) {
    nlohmann::json j;
    nlohmann::json eigs = nlohmann::json::array();
    for (double v : s.eigenvalues) eigs.push_back(round_sig(v, 12));
    j["eigenvalues"] = std::move(eigs);
    j["subspace_dim"] = s.subspace_dim;

    // classes: [[kept, absorbed...]] for every kept entity that absorbed
    // something, plus per-entity residuals.
    std::map<std::size_t, std::vector<std::size_t>> classes;
    for (const auto& [red, rep] : s.representatives) classes[rep].push_back(red);
    nlohmann::json cls = nlohmann::json::array();
    for (const auto& [rep, members] : classes) {
        nlohmann::json group = nlohmann::json::array();
        group.push_back(ids[rep]);
        for (std::size_t m : members) group.push_back(ids[m]);
        cls.push_back(std::move(group));
    }
    j["classes"] = std::move(cls);
    nlohmann::json res = nlohmann::json::array();
    for (double v : s.residuals) res.push_back(round_sig(v, 12));
    j["residuals"] = std::move(res);
    nlohmann::json red = nlohmann::json::array();
    for (std::size_t a : s.redundant) red.push_back(ids[a]);
    j["redundant"] = std::move(red);
    return j;
}

std::string string_digest(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string file_digest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return string_digest(ss.str());
}

}  // namespace metricgraph::io
