// Batch front end: build proximity/distance matrices from raw data, run the
// density analytics, and answer neighborhood/influence/spectral queries.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "metricgraph/density.hpp"
#include "metricgraph/eigensolver.hpp"
#include "metricgraph/errors.hpp"
#include "metricgraph/io.hpp"
#include "metricgraph/netapps.hpp"
#include "metricgraph/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace metricgraph;

namespace {

// Exit codes: 0 ok, 2 input parse, 3 numeric/divergence, 4 lookup, 5 internal.
constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitLookup = 4;
constexpr int kExitInternal = 5;

void emit_error(const std::string& cls, const std::string& message,
                std::size_t line = 0) {
    json err;
    err["error"]["class"] = cls;
    err["error"]["message"] = message;
    if (line > 0) err["error"]["line"] = line;
    std::cerr << err.dump() << "\n";
}

// One process owns its output directory exclusively.
class OutputLock {
public:
    explicit OutputLock(const fs::path& dir) : path_(dir / ".lock") {
        fs::create_directories(dir);
        if (fs::exists(path_))
            throw ValidationError("output directory is locked by another run: " +
                                  dir.string());
        std::ofstream(path_) << "locked\n";
    }
    ~OutputLock() {
        std::error_code ec;
        fs::remove(path_, ec);
    }

private:
    fs::path path_;
};

std::string iso_timestamp() {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

PipelineInput load_input(const fs::path& data, const fs::path& meta,
                         const PipelineConfig& cfg) {
    switch (cfg.builder) {
        case BuilderKind::Cooccurrence:
            return PipelineInput::from_corpus(io::read_corpus_csv(data));
        case BuilderKind::Direct: {
            auto m = io::read_matrix_csv(data);
            return PipelineInput::from_matrix(std::move(m.ids), std::move(m.matrix));
        }
        default:
            return PipelineInput::from_table(io::read_entity_table(data, meta));
    }
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write file: " + path.string());
    out << j.dump(2) << "\n";
}

int cmd_build(const fs::path& data, const fs::path& meta, const fs::path& config_path,
              const fs::path& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();
    const PipelineConfig cfg = io::load_config(config_path);
    const PipelineInput input = load_input(data, meta, cfg);
    OutputLock lock(out_dir);

    const auto t1 = std::chrono::steady_clock::now();
    const PipelineResult res = run_pipeline(input, cfg);
    const auto t2 = std::chrono::steady_clock::now();

    io::write_matrix_csv(out_dir / "phi.csv", {res.ids, res.phi});
    io::write_matrix_csv(out_dir / "dphi.csv", {res.ids, res.gauge.distances});
    if (res.de) io::write_matrix_csv(out_dir / "de.csv", {res.ids, *res.de});
    if (res.corr) io::write_matrix_csv(out_dir / "corr.csv", {res.ids, *res.corr});
    io::write_matrix_csv(out_dir / "d.csv", {res.ids, res.d});

    json validation;
    validation["phi"] = io::semimetric_report_json(res.phi_report);
    validation["d_phi"] = io::semimetric_report_json(res.gauge.triangle_report);
    validation["gauge"] = {
        {"order", res.gauge.exact_closure ? json("exact-closure")
                                          : json(res.gauge.order_used)},
        {"converged", res.gauge.converged}};
    validation["warnings"] = res.warnings;
    json merges = json::array();
    for (const auto& m : res.merges) {
        merges.push_back({{"kept", m.kept}, {"absorbed", m.absorbed}});
    }
    validation["merges"] = std::move(merges);
    write_json(out_dir / "validation.json", validation);

    const auto t3 = std::chrono::steady_clock::now();
    auto ms = [](auto a, auto b) {
        return std::chrono::duration_cast<std::chrono::milliseconds>(b - a).count();
    };
    json manifest;
    manifest["artifact_version"] = "0.1.0";
    manifest["inputs"][data.filename().string()] = io::file_digest(data);
    if (!meta.empty())
        manifest["inputs"][meta.filename().string()] = io::file_digest(meta);
    manifest["config_digest"] = io::file_digest(config_path);
    manifest["generated_at"] = iso_timestamp();
    manifest["durations_ms"] = {{"load", ms(t0, t1)}, {"pipeline", ms(t1, t2)},
                                {"write", ms(t2, t3)}};
    write_json(out_dir / "manifest.json", manifest);
    return kExitOk;
}

int cmd_analyze(const fs::path& matrix_path, const fs::path& config_path,
                const fs::path& out_dir, const std::string& format) {
    const PipelineConfig cfg =
        config_path.empty() ? PipelineConfig{} : io::load_config(config_path);
    const auto m = io::read_matrix_csv(matrix_path);
    OutputLock lock(out_dir);

    const SemimetricReport check = validate_semimetric(m.matrix, cfg.validation_tol);
    if (!check.symmetric || !check.zero_diagonal || !check.non_negative)
        throw ValidationError("input is not a distance matrix (symmetry/diagonal/sign)");
    if (!check.triangle_violations.empty())
        std::cerr << "warning: matrix has " << check.triangle_violations.size()
                  << " triangle violations (gauged truncation?)\n";

    const ConcentrationReport report = density_map(
        m.matrix, {}, cfg.density.r, cfg.density.psi, cfg.density.nu,
        cfg.density.z_threshold);

    if (format == "csv") {
        std::ofstream out(out_dir / "density.csv");
        out << io::density_report_csv(report, m.ids);
    } else {
        write_json(out_dir / "density.json", io::density_report_json(report, m.ids));
    }
    std::ofstream rmax_out(out_dir / "rmax.csv");
    rmax_out << "id,r_max\n";
    for (const auto& e : report.entries)
        rmax_out << m.ids[e.entity] << "," << io::format_full(io::round_sig(e.r_max, 12))
                 << "\n";
    return kExitOk;
}

int cmd_validate(const fs::path& matrix_path, double tol) {
    const auto m = io::read_matrix_csv(matrix_path);
    std::cout << io::semimetric_report_json(validate_semimetric(m.matrix, tol)).dump(2)
              << "\n";
    return kExitOk;
}

int cmd_query_neighbors(const fs::path& matrix_path, const std::string& id, double eps) {
    const auto m = io::read_matrix_csv(matrix_path);
    auto it = std::find(m.ids.begin(), m.ids.end(), id);
    if (it == m.ids.end()) throw LookupError("unknown entity id: " + id);
    const auto a = static_cast<std::size_t>(it - m.ids.begin());
    json arr = json::array();
    for (const auto& [b, dist] : neighbors(m.matrix, a, eps))
        arr.push_back({{"id", m.ids[b]}, {"distance", io::round_sig(dist, 12)}});
    std::cout << arr.dump(2) << "\n";
    return kExitOk;
}

int cmd_query_nearest(const fs::path& matrix_path, const std::string& id,
                      const std::string& subset_csv) {
    const auto m = io::read_matrix_csv(matrix_path);
    auto index_of = [&](const std::string& s) {
        auto it = std::find(m.ids.begin(), m.ids.end(), s);
        if (it == m.ids.end()) throw LookupError("unknown entity id: " + s);
        return static_cast<std::size_t>(it - m.ids.begin());
    };
    const std::size_t a = index_of(id);
    std::vector<std::size_t> subset;
    std::stringstream ss(subset_csv);
    std::string item;
    while (std::getline(ss, item, ',')) subset.push_back(index_of(item));

    json arr = json::array();
    for (std::size_t b : nearest_in_subset(m.matrix, a, subset)) arr.push_back(m.ids[b]);
    std::cout << arr.dump(2) << "\n";
    return kExitOk;
}

int cmd_query_influence(const fs::path& data, const fs::path& meta,
                        const fs::path& config_path, const std::string& id) {
    const PipelineConfig cfg = io::load_config(config_path);
    const PipelineInput input = load_input(data, meta, cfg);
    std::cout << io::influence_report_json(influence(input, cfg, id)).dump(2) << "\n";
    return kExitOk;
}

int cmd_query_spectral(const fs::path& matrix_path, const fs::path& config_path,
                       std::optional<double> eps, std::optional<double> delta) {
    PipelineConfig cfg;
    if (!config_path.empty()) cfg = io::load_config(config_path);
    if (eps) cfg.spectral_eps = *eps;
    if (delta) cfg.spectral_delta = *delta;
    const auto m = io::read_matrix_csv(matrix_path);
    const SpectralClasses classes =
        spectral_classes(m.matrix, cfg.spectral_eps, cfg.spectral_delta);
    std::cout << io::spectral_report_json(classes, m.ids).dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"metric-graph analytics toolkit"};
    app.require_subcommand(1);

    std::string data, matrix_path, meta, config_path, out_dir;
    std::string id, subset, format = "json";
    double eps = 0.0, tol = 1e-9;
    std::optional<double> spectral_eps, spectral_delta;

    auto* build = app.add_subcommand("build", "Build proximity and distance matrices");
    build->add_option("input", data, "Entity/corpus/matrix CSV")->required();
    build->add_option("--meta", meta, "Column-kind sidecar JSON");
    build->add_option("--config", config_path, "Pipeline config JSON")->required();
    build->add_option("--out", out_dir, "Output directory")->required();

    auto* analyze = app.add_subcommand("analyze", "Density / concentration analytics");
    analyze->add_option("matrix", matrix_path, "Distance matrix CSV")->required();
    analyze->add_option("--config", config_path, "Pipeline config JSON");
    analyze->add_option("--out", out_dir, "Output directory")->required();
    analyze->add_option("--format", format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    auto* validate = app.add_subcommand("validate", "Semimetric/metric validation");
    validate->add_option("matrix", matrix_path, "Matrix CSV")->required();
    validate->add_option("--tol", tol, "Comparison slack");

    auto* query = app.add_subcommand("query", "Neighborhood / influence queries");
    query->require_subcommand(1);
    auto* q_neighbors = query->add_subcommand("neighbors", "Entities within eps");
    q_neighbors->add_option("matrix", matrix_path)->required();
    q_neighbors->add_option("--id", id)->required();
    q_neighbors->add_option("--eps", eps)->required();
    auto* q_nearest = query->add_subcommand("nearest", "Closest entities in a subset");
    q_nearest->add_option("matrix", matrix_path)->required();
    q_nearest->add_option("--id", id)->required();
    q_nearest->add_option("--subset", subset, "Comma-separated ids")->required();
    auto* q_influence = query->add_subcommand("influence", "Leave-one-out influence");
    q_influence->add_option("input", data, "Raw data file (per config builder)")
        ->required();
    q_influence->add_option("--meta", meta);
    q_influence->add_option("--config", config_path)->required();
    q_influence->add_option("--id", id)->required();
    auto* q_spectral = query->add_subcommand("spectral", "Equivalence-class reduction");
    q_spectral->add_option("matrix", matrix_path, "Correlation matrix CSV")->required();
    q_spectral->add_option("--config", config_path);
    q_spectral->add_option("--eps", spectral_eps);
    q_spectral->add_option("--delta", spectral_delta);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitParse;
    }

    try {
        if (*build) return cmd_build(data, meta, config_path, out_dir);
        if (*analyze) return cmd_analyze(matrix_path, config_path, out_dir, format);
        if (*validate) return cmd_validate(matrix_path, tol);
        if (*q_neighbors) return cmd_query_neighbors(matrix_path, id, eps);
        if (*q_nearest) return cmd_query_nearest(matrix_path, id, subset);
        if (*q_influence) return cmd_query_influence(data, meta, config_path, id);
        if (*q_spectral)
            return cmd_query_spectral(matrix_path, config_path, spectral_eps,
                                      spectral_delta);
        emit_error("internal", "no subcommand dispatched");
        return kExitInternal;
    } catch (const ParseError& e) {
        emit_error("parse", e.what(), e.line);
        return kExitParse;
    } catch (const DimensionError& e) {
        emit_error("parse", e.what());
        return kExitParse;
    } catch (const ValidationError& e) {
        emit_error("validation", e.what());
        return kExitParse;
    } catch (const ParameterError& e) {
        emit_error("parameter", e.what());
        return kExitParse;
    } catch (const DivergenceError& e) {
        emit_error("divergence",
                   std::string(e.what()) +
                       " (C_r requires r > 0 and q > 1 for the integral to converge)");
        return kExitNumeric;
    } catch (const ConvergenceError& e) {
        emit_error("numeric", e.what());
        return kExitNumeric;
    } catch (const LookupError& e) {
        emit_error("lookup", e.what());
        return kExitLookup;
    } catch (const std::exception& e) {
        emit_error("internal", e.what());
        return kExitInternal;
    }
}
