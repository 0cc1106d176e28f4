#include "sfa/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "sfa/errors.hpp"

namespace sfa {
namespace {

using nlohmann::json;

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

[[noreturn]] void fail(const std::string& path, std::size_t line, const std::string& what) {
    throw IoError(path + ":" + std::to_string(line) + ": " + what);
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path + " for reading");
    }
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open " + path + " for writing");
    }
    return out;
}

void close_out(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) {
        throw IoError("write failed on " + path);
    }
}

void chomp(std::string& line) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
        line.pop_back();
    }
}

double parse_double(const std::string& token, const std::string& path, std::size_t line) {
    const char* begin = token.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    while (end != nullptr && (*end == ' ' || *end == '\t')) {
        ++end;
    }
    if (end == begin || end == nullptr || *end != '\0') {
        fail(path, line, "expected a number, got '" + token + "'");
    }
    return v;
}

std::vector<double> split_row(const std::string& line, const std::string& path, std::size_t lineno) {
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        const std::string token = line.substr(start, comma == std::string::npos
                                                         ? std::string::npos
                                                         : comma - start);
        row.push_back(parse_double(token, path, lineno));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return row;
}

// Returns the value of a "# key=value" header, if this line is one.
bool header_value(const std::string& line, const std::string& key, std::string& value) {
    const std::string prefix = "# " + key + "=";
    if (line.rfind(prefix, 0) != 0) {
        return false;
    }
    value = line.substr(prefix.size());
    return true;
}

const json& require_field(const json& j, const char* key) {
    if (!j.contains(key)) {
        throw ConfigError(key, "missing required field");
    }
    return j.at(key);
}

double number_field(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    const json& v = j.at(key);
    if (!v.is_number()) {
        throw ConfigError(key, "expected a number");
    }
    return v.get<double>();
}

std::size_t count_field(const json& j, const char* key, std::size_t fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    const json& v = j.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ConfigError(key, "expected a nonnegative integer");
    }
    return static_cast<std::size_t>(v.get<long long>());
}

}  // namespace

Signal read_signal_csv(const std::string& path) {
    auto in = open_in(path);
    std::vector<double> samples;
    double sample_rate = 1.0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        chomp(line);
        if (line.empty()) {
            fail(path, lineno, "empty line");
        }
        if (line[0] == '#') {
            std::string value;
            if (header_value(line, "sample_rate", value)) {
                sample_rate = parse_double(value, path, lineno);
            }
            continue;
        }
        samples.push_back(parse_double(line, path, lineno));
    }
    if (samples.empty()) {
        throw IoError(path + ": no samples");
    }
    try {
        return Signal(std::move(samples), sample_rate);
    } catch (const std::exception& e) {
        throw IoError(path + ": " + e.what());
    }
}

void write_signal_csv(const std::string& path, const Signal& x) {
    auto out = open_out(path);
    out << "# sample_rate=" << g17(x.sample_rate()) << "\n";
    for (std::size_t n = 0; n < x.size(); ++n) {
        out << g17(x[n]) << "\n";
    }
    close_out(out, path);
}

std::vector<double> read_vector_csv(const std::string& path) {
    auto in = open_in(path);
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        chomp(line);
        if (line.empty()) {
            fail(path, lineno, "empty line");
        }
        if (line[0] == '#') {
            continue;
        }
        values.push_back(parse_double(line, path, lineno));
    }
    return values;
}

Matrix read_matrix_csv(const std::string& path) {
    auto in = open_in(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        chomp(line);
        if (line.empty()) {
            fail(path, lineno, "empty line");
        }
        if (line[0] == '#') {
            continue;
        }
        auto row = split_row(line, path, lineno);
        if (!rows.empty() && row.size() != rows.front().size()) {
            fail(path, lineno, "ragged row");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw IoError(path + ": no rows");
    }
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t n = 0; n < m.rows(); ++n) {
        for (std::size_t k = 0; k < m.cols(); ++k) {
            m(n, k) = rows[n][k];
        }
    }
    return m;
}

void write_matrix_csv(const std::string& path, const Matrix& m, const std::string& comment) {
    auto out = open_out(path);
    if (!comment.empty()) {
        out << "# " << comment << "\n";
    }
    for (std::size_t n = 0; n < m.rows(); ++n) {
        for (std::size_t k = 0; k < m.cols(); ++k) {
            out << (k == 0 ? "" : ",") << g17(m(n, k));
        }
        out << "\n";
    }
    close_out(out, path);
}

void write_decomposition(const std::string& prefix, const Decomposition& d) {
    json meta;
    meta["n_samples"] = d.n_samples();
    meta["n_freqs"] = d.n_freqs();
    meta["grid_denominator"] = d.grid.denominator();
    meta["sample_rate"] = d.sample_rate;
    meta["kind"] = d.info.kind;
    meta["init"] = d.info.init;
    meta["lam"] = d.info.lam;
    meta["lam1"] = d.info.lam1;
    meta["mu"] = d.info.mu;
    meta["mm_iters"] = d.info.mm_iters;
    meta["max_admm_iters"] = d.info.max_admm_iters;
    meta["tol_primal"] = d.info.tol_primal;
    meta["tol_change"] = d.info.tol_change;
    meta["admm_iterations"] = d.info.admm_iterations;
    meta["converged"] = d.info.converged;
    meta["primal_residual"] = d.info.primal_residual;
    meta["feasibility_gap"] = d.info.feasibility_gap;
    meta["mm_feasibility_max"] = d.info.mm_feasibility_max;
    meta["objective"] = d.info.objective;
    auto out = open_out(prefix + ".json");
    out << meta.dump(2) << "\n";
    close_out(out, prefix + ".json");
    write_matrix_csv(prefix + ".a.csv", d.a);
    write_matrix_csv(prefix + ".b.csv", d.b);
}

Decomposition read_decomposition(const std::string& prefix) {
    auto in = open_in(prefix + ".json");
    json meta;
    try {
        in >> meta;
    } catch (const json::exception& e) {
        throw IoError(prefix + ".json: " + e.what());
    }
    Decomposition d;
    try {
        d.a = read_matrix_csv(prefix + ".a.csv");
        d.b = read_matrix_csv(prefix + ".b.csv");
        const auto n_samples = meta.at("n_samples").get<std::size_t>();
        const auto n_freqs = meta.at("n_freqs").get<std::size_t>();
        const auto denom = meta.at("grid_denominator").get<std::size_t>();
        if (d.a.rows() != n_samples || d.a.cols() != n_freqs || d.b.rows() != n_samples ||
            d.b.cols() != n_freqs) {
            throw IoError(prefix + ": coefficient files disagree with metadata");
        }
        d.grid = FrequencyGrid(n_freqs, denom);
        d.sample_rate = meta.at("sample_rate").get<double>();
        d.info.kind = meta.at("kind").get<std::string>();
        d.info.init = meta.at("init").get<std::string>();
        d.info.lam = meta.at("lam").get<double>();
        d.info.lam1 = meta.at("lam1").get<double>();
        d.info.mu = meta.at("mu").get<double>();
        d.info.mm_iters = meta.at("mm_iters").get<std::size_t>();
        d.info.max_admm_iters = meta.at("max_admm_iters").get<std::size_t>();
        d.info.tol_primal = meta.at("tol_primal").get<double>();
        d.info.tol_change = meta.at("tol_change").get<double>();
        d.info.admm_iterations = meta.at("admm_iterations").get<std::size_t>();
        d.info.converged = meta.at("converged").get<bool>();
        d.info.primal_residual = meta.at("primal_residual").get<double>();
        d.info.feasibility_gap = meta.at("feasibility_gap").get<double>();
        d.info.mm_feasibility_max = meta.at("mm_feasibility_max").get<double>();
        d.info.objective = meta.at("objective").get<double>();
    } catch (const json::exception& e) {
        throw IoError(prefix + ".json: " + e.what());
    }
    return d;
}

void write_spectrum_csv(const std::string& path, const FrequencyGrid& grid,
                        const std::vector<double>& z) {
    auto out = open_out(path);
    out << "# columns: k,f,z\n";
    for (std::size_t k = 0; k < z.size(); ++k) {
        out << k << "," << g17(grid.freq(k)) << "," << g17(z[k]) << "\n";
    }
    close_out(out, path);
}

void write_trace_csv(const std::string& path, const std::vector<IterationStats>& rows) {
    auto out = open_out(path);
    out << "# columns: iter,objective,primal_residual,feasibility_gap\n";
    for (const auto& r : rows) {
        out << r.iter << "," << g17(r.objective) << "," << g17(r.primal_residual) << ","
            << g17(r.feasibility_gap) << "\n";
    }
    close_out(out, path);
}

void write_band_csv(const std::string& path, const BandComponent& bc) {
    auto out = open_out(path);
    out << "# center_omega=" << g17(bc.center_omega) << "\n";
    out << "# sample_rate=" << g17(bc.sample_rate) << "\n";
    out << "# columns: n,t,g,aM,bM,theta_deg\n";
    const double nan = std::nan("");
    std::vector<double> theta;
    if (bc.has_merge) {
        theta = inst_phase(bc).theta;
    }
    for (std::size_t n = 0; n < bc.samples.size(); ++n) {
        const double t = static_cast<double>(n) / bc.sample_rate;
        const double am = bc.has_merge ? bc.a_merged[n] : nan;
        const double bm = bc.has_merge ? bc.b_merged[n] : nan;
        const double deg = bc.has_merge ? theta[n] * 180.0 / std::numbers::pi : nan;
        out << n << "," << g17(t) << "," << g17(bc.samples[n]) << "," << g17(am) << ","
            << g17(bm) << "," << g17(deg) << "\n";
    }
    close_out(out, path);
}

BandComponent read_band_csv(const std::string& path) {
    auto in = open_in(path);
    BandComponent bc;
    bool have_center = false;
    bool all_finite = true;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        chomp(line);
        if (line.empty()) {
            fail(path, lineno, "empty line");
        }
        if (line[0] == '#') {
            std::string value;
            if (header_value(line, "center_omega", value)) {
                bc.center_omega = parse_double(value, path, lineno);
                have_center = true;
            } else if (header_value(line, "sample_rate", value)) {
                bc.sample_rate = parse_double(value, path, lineno);
            }
            continue;
        }
        const auto row = split_row(line, path, lineno);
        if (row.size() != 6) {
            fail(path, lineno, "expected 6 columns");
        }
        bc.samples.push_back(row[2]);
        bc.a_merged.push_back(row[3]);
        bc.b_merged.push_back(row[4]);
        if (!std::isfinite(row[3]) || !std::isfinite(row[4])) {
            all_finite = false;
        }
    }
    if (bc.samples.empty()) {
        throw IoError(path + ": no rows");
    }
    if (!have_center) {
        throw IoError(path + ": missing center_omega header");
    }
    bc.has_merge = all_finite;
    if (!bc.has_merge) {
        bc.a_merged.clear();
        bc.b_merged.clear();
    }
    return bc;
}

void write_phasediff_csv(const std::string& path, const std::vector<double>& delta,
                         const std::vector<double>& locking, double sample_rate) {
    if (delta.size() != locking.size()) {
        throw std::invalid_argument("phasediff: delta and plv lengths differ");
    }
    auto out = open_out(path);
    out << "# sample_rate=" << g17(sample_rate) << "\n";
    out << "# columns: n,t,dtheta_deg,plv\n";
    for (std::size_t n = 0; n < delta.size(); ++n) {
        const double t = static_cast<double>(n) / sample_rate;
        out << n << "," << g17(t) << "," << g17(delta[n] * 180.0 / std::numbers::pi) << ","
            << g17(locking[n]) << "\n";
    }
    close_out(out, path);
}

AnalyzeConfig read_config_json(const std::string& path) {
    auto in = open_in(path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
    if (!j.is_object()) {
        throw IoError(path + ": config must be a JSON object");
    }
    static const char* known[] = {"grid_count",     "grid_denominator", "lam",
                                  "lam1",           "mu",               "mm_iters",
                                  "max_admm_iters", "tol_primal",       "tol_change",
                                  "spectral_init"};
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* k : known) {
            if (key == k) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            throw ConfigError(key, "unknown field");
        }
    }
    AnalyzeConfig cfg;
    require_field(j, "grid_count");
    cfg.grid_count = count_field(j, "grid_count", 0);
    if (cfg.grid_count == 0) {
        throw ConfigError("grid_count", "must be a positive integer");
    }
    cfg.grid_denominator = count_field(j, "grid_denominator", 0);
    SolverConfig& s = cfg.solver;
    s.lam = number_field(j, "lam", s.lam);
    if (!(s.lam > 0.0)) {
        throw ConfigError("lam", "must be positive");
    }
    s.lam1 = number_field(j, "lam1", s.lam1);
    if (!(s.lam1 > 0.0)) {
        throw ConfigError("lam1", "must be positive");
    }
    s.mu = number_field(j, "mu", s.mu);
    if (j.contains("mu") && !(s.mu > 0.0)) {
        throw ConfigError("mu", "must be positive");
    }
    s.mm_iters = count_field(j, "mm_iters", s.mm_iters);
    if (s.mm_iters == 0) {
        throw ConfigError("mm_iters", "must be a positive integer");
    }
    s.max_admm_iters = count_field(j, "max_admm_iters", s.max_admm_iters);
    if (s.max_admm_iters == 0) {
        throw ConfigError("max_admm_iters", "must be a positive integer");
    }
    s.tol_primal = number_field(j, "tol_primal", s.tol_primal);
    if (!(s.tol_primal > 0.0)) {
        throw ConfigError("tol_primal", "must be positive");
    }
    s.tol_change = number_field(j, "tol_change", s.tol_change);
    if (s.tol_change < 0.0) {
        throw ConfigError("tol_change", "must be nonnegative");
    }
    if (j.contains("spectral_init")) {
        if (!j.at("spectral_init").is_boolean()) {
            throw ConfigError("spectral_init", "expected a boolean");
        }
        s.spectral_init = j.at("spectral_init").get<bool>();
    }
    return cfg;
}

std::string config_echo_json(const AnalyzeConfig& cfg) {
    json j;
    j["grid_count"] = cfg.grid_count;
    j["grid_denominator"] = cfg.grid().denominator();
    j["lam"] = cfg.solver.lam;
    j["lam1"] = cfg.solver.lam1;
    j["mu"] = cfg.solver.effective_mu();
    j["mm_iters"] = cfg.solver.mm_iters;
    j["max_admm_iters"] = cfg.solver.max_admm_iters;
    j["tol_primal"] = cfg.solver.tol_primal;
    j["tol_change"] = cfg.solver.tol_change;
    j["spectral_init"] = cfg.solver.spectral_init;
    return j.dump();
}

void write_manifest(const std::string& path, const RunManifest& m) {
    json j;
    j["command"] = m.command;
    j["inputs"] = m.inputs;
    j["outputs"] = m.outputs;
    if (!m.config_json.empty()) {
        try {
            j["config"] = json::parse(m.config_json);
        } catch (const json::exception& e) {
            throw IoError(path + ": bad config echo: " + e.what());
        }
    }
    j["wall_seconds"] = m.wall_seconds;
    if (m.has_solver_stats) {
        json s;
        s["iterations"] = m.iterations;
        s["converged"] = m.converged;
        s["primal_residual"] = m.primal_residual;
        s["feasibility_gap"] = m.feasibility_gap;
        j["solver"] = s;
    }
    auto out = open_out(path);
    out << j.dump(2) << "\n";
    close_out(out, path);
}

}  // namespace sfa
