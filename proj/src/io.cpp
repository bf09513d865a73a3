#include "mhdci/io.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mhdci {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void config_error(const std::string& what) {
    throw std::runtime_error("config: " + what);
}

double parse_double(const std::string& key, const std::string& val) {
    std::size_t pos = 0;
    double out = 0.0;
    try {
        out = std::stod(val, &pos);
    } catch (const std::exception&) {
        config_error("bad numeric value for " + key + ": '" + val + "'");
    }
    if (pos != val.size()) config_error("trailing junk in value for " + key);
    return out;
}

long long parse_int(const std::string& key, const std::string& val) {
    std::size_t pos = 0;
    long long out = 0;
    try {
        out = std::stoll(val, &pos);
    } catch (const std::exception&) {
        config_error("bad integer value for " + key + ": '" + val + "'");
    }
    if (pos != val.size()) config_error("trailing junk in value for " + key);
    return out;
}

bool parse_bool(const std::string& key, const std::string& val) {
    if (val == "true" || val == "on" || val == "1") return true;
    if (val == "false" || val == "off" || val == "0") return false;
    config_error("bad boolean value for " + key + ": '" + val + "'");
}

void validate_config(const RunConfig& c) {
    if (!(c.params.a > 1.0)) config_error("a must exceed 1");
    if (c.params.b < 1) config_error("b must be a positive integer");
    if (!(c.params.beta > 0.0)) config_error("beta must be positive");
    if (!(c.params.eta > 0.0 && c.params.eta < 2.0))
        config_error("eta must lie in (0, 2)");
    if (!(c.params.c_u > 0.0 && c.params.c_b > 0.0))
        config_error("c_u and c_b must be positive");
    if (c.q_max < 0) config_error("q_max must be >= 0");
    if (c.grid_n < 8) config_error("grid_n must be >= 8");
    if (c.time_n < 5) config_error("time_n must be >= 5");
    if (c.t_pad < -1) config_error("t_pad must be >= -1");
    if (!(c.residual_tol > 0.0 && c.identity_tol > 0.0 && c.oracle_tol > 0.0))
        config_error("tolerances must be positive");
    if (c.output_dir.empty()) config_error("output_dir must be nonempty");
    parse_seed_profile(c.seed_profile);
}

std::string bool_text(bool v) { return v ? "true" : "false"; }

// Sequential "key value" manifest reader.
struct ManifestReader {
    std::istringstream in;
    explicit ManifestReader(const std::string& text) : in(text) {}

    std::string expect(const std::string& key) {
        std::string line;
        while (std::getline(in, line)) {
            line = trim(line);
            if (line.empty()) continue;
            const std::size_t sp = line.find(' ');
            if (sp == std::string::npos)
                throw std::runtime_error("manifest: malformed line '" + line + "'");
            const std::string k = line.substr(0, sp);
            if (k != key)
                throw std::runtime_error("manifest: expected key '" + key +
                                         "', found '" + k + "'");
            return trim(line.substr(sp + 1));
        }
        throw std::runtime_error("manifest: missing key '" + key + "'");
    }
};

void write_field_header(std::ostream& out, const char* kind, int n,
                        int components, std::uint64_t cfg_hash) {
    out << "MHDFIELD v1\n"
        << "kind " << kind << "\n"
        << "n " << n << "\n"
        << "components " << components << "\n"
        << "config " << hash_hex(cfg_hash) << "\n"
        << "data\n";
}

struct FieldHeader {
    std::string kind;
    int n = 0;
    int components = 0;
};

FieldHeader read_field_header(std::istream& in, const std::string& path) {
    std::string line;
    auto next = [&]() {
        if (!std::getline(in, line))
            throw std::runtime_error("field dump truncated: " + path);
        return trim(line);
    };
    if (next() != "MHDFIELD v1")
        throw std::runtime_error("not a field dump: " + path);
    FieldHeader h;
    std::string l = next();
    if (l.rfind("kind ", 0) != 0) throw std::runtime_error("bad kind: " + path);
    h.kind = l.substr(5);
    l = next();
    if (l.rfind("n ", 0) != 0) throw std::runtime_error("bad size: " + path);
    h.n = std::stoi(l.substr(2));
    l = next();
    if (l.rfind("components ", 0) != 0)
        throw std::runtime_error("bad component count: " + path);
    h.components = std::stoi(l.substr(11));
    l = next();
    if (l.rfind("config ", 0) != 0)
        throw std::runtime_error("bad config line: " + path);
    l = next();
    if (l != "data") throw std::runtime_error("missing data marker: " + path);
    if (h.n < 1 || h.components < 1)
        throw std::runtime_error("bad field dump geometry: " + path);
    return h;
}

void write_doubles(std::ostream& out, const std::vector<double>& v) {
    out.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(v.size() * sizeof(double)));
}

void read_doubles(std::istream& in, std::vector<double>& v,
                  const std::string& path) {
    in.read(reinterpret_cast<char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
    if (static_cast<std::size_t>(in.gcount()) != v.size() * sizeof(double))
        throw std::runtime_error("field dump truncated: " + path);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return in;
}

std::string slice_file(const std::string& dir, const char* stem, int j) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s_%04d.fld", stem, j);
    return dir + "/" + buf;
}

void csv_preamble(std::ostream& out, std::uint64_t cfg_hash) {
    out << "# MHDDIAG v1 config=" << hash_hex(cfg_hash) << "\n";
}

}  // namespace

// ---- configuration -------------------------------------------------------

SeedProfile parse_seed_profile(const std::string& name) {
    if (name == "linear") return SeedProfile::linear;
    if (name == "exponential") return SeedProfile::exponential;
    throw std::runtime_error("config: unknown seed_profile '" + name +
                             "' (expected linear or exponential)");
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig c;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            config_error("line " + std::to_string(lineno) +
                         ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            config_error("line " + std::to_string(lineno) + ": empty key or value");

        if (key == "a") {
            c.params.a = parse_double(key, val);
        } else if (key == "b") {
            c.params.b = parse_int(key, val);
        } else if (key == "beta") {
            c.params.beta = parse_double(key, val);
        } else if (key == "eta") {
            c.params.eta = parse_double(key, val);
        } else if (key == "c_u") {
            c.params.c_u = parse_double(key, val);
        } else if (key == "c_b") {
            c.params.c_b = parse_double(key, val);
        } else if (key == "q_max") {
            c.q_max = static_cast<int>(parse_int(key, val));
        } else if (key == "grid_n") {
            c.grid_n = static_cast<int>(parse_int(key, val));
        } else if (key == "time_n") {
            c.time_n = static_cast<int>(parse_int(key, val));
        } else if (key == "t_pad") {
            c.t_pad = static_cast<int>(parse_int(key, val));
        } else if (key == "strict_regime") {
            c.strict_regime = parse_bool(key, val);
        } else if (key == "strict_products") {
            c.strict_products = parse_bool(key, val);
        } else if (key == "force_resolution") {
            c.force_resolution = parse_bool(key, val);
        } else if (key == "dump_fields") {
            c.dump_fields = parse_bool(key, val);
        } else if (key == "emit_vtk") {
            c.emit_vtk = parse_bool(key, val);
        } else if (key == "output_dir") {
            c.output_dir = val;
        } else if (key == "seed_profile") {
            c.seed_profile = val;
        } else if (key == "residual_tol") {
            c.residual_tol = parse_double(key, val);
        } else if (key == "identity_tol") {
            c.identity_tol = parse_double(key, val);
        } else if (key == "oracle_tol") {
            c.oracle_tol = parse_double(key, val);
        } else {
            config_error("unknown key '" + key + "'");
        }
    }
    validate_config(c);
    return c;
}

RunConfig load_config(const std::string& path) {
    return parse_config_text(read_file_bytes(path));
}

std::string format_config(const RunConfig& c) {
    std::ostringstream out;
    out << "a = " << format_double(c.params.a) << "\n"
        << "b = " << c.params.b << "\n"
        << "beta = " << format_double(c.params.beta) << "\n"
        << "eta = " << format_double(c.params.eta) << "\n"
        << "c_u = " << format_double(c.params.c_u) << "\n"
        << "c_b = " << format_double(c.params.c_b) << "\n"
        << "q_max = " << c.q_max << "\n"
        << "grid_n = " << c.grid_n << "\n"
        << "time_n = " << c.time_n << "\n"
        << "t_pad = " << c.t_pad << "\n"
        << "strict_regime = " << bool_text(c.strict_regime) << "\n"
        << "strict_products = " << bool_text(c.strict_products) << "\n"
        << "force_resolution = " << bool_text(c.force_resolution) << "\n"
        << "dump_fields = " << bool_text(c.dump_fields) << "\n"
        << "emit_vtk = " << bool_text(c.emit_vtk) << "\n"
        << "output_dir = " << c.output_dir << "\n"
        << "seed_profile = " << c.seed_profile << "\n"
        << "residual_tol = " << format_double(c.residual_tol) << "\n"
        << "identity_tol = " << format_double(c.identity_tol) << "\n"
        << "oracle_tol = " << format_double(c.oracle_tol) << "\n";
    return out.str();
}

std::uint64_t config_hash(const RunConfig& c) {
    // The hash identifies the computation, not the storage location: two
    // runs of one configuration into different directories must emit
    // byte-identical artifacts, so output_dir stays out of the digest.
    RunConfig keyed = c;
    keyed.output_dir = "out";
    const std::string text = format_config(keyed);
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : text) {
        h ^= static_cast<std::uint64_t>(ch);
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// ---- field dumps ---------------------------------------------------------

void write_field(const std::string& path, const ScalarField& f,
                 std::uint64_t cfg_hash) {
    auto out = open_out(path);
    write_field_header(out, "scalar", f.n, 1, cfg_hash);
    write_doubles(out, f.v);
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_field(const std::string& path, const VectorField& f,
                 std::uint64_t cfg_hash) {
    auto out = open_out(path);
    write_field_header(out, "vector", f.n, 3, cfg_hash);
    for (const auto& comp : f.c) write_doubles(out, comp);
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_field(const std::string& path, const TensorField& f,
                 std::uint64_t cfg_hash) {
    auto out = open_out(path);
    write_field_header(out, "tensor", f.n, 9, cfg_hash);
    for (const auto& comp : f.c) write_doubles(out, comp);
    if (!out) throw std::runtime_error("write failed: " + path);
}

ScalarField read_scalar_field(const std::string& path) {
    auto in = open_in(path);
    const FieldHeader h = read_field_header(in, path);
    if (h.kind != "scalar" || h.components != 1)
        throw std::runtime_error("not a scalar dump: " + path);
    ScalarField f(h.n);
    read_doubles(in, f.v, path);
    return f;
}

VectorField read_vector_field(const std::string& path) {
    auto in = open_in(path);
    const FieldHeader h = read_field_header(in, path);
    if (h.kind != "vector" || h.components != 3)
        throw std::runtime_error("not a vector dump: " + path);
    VectorField f(h.n);
    for (auto& comp : f.c) read_doubles(in, comp, path);
    return f;
}

TensorField read_tensor_field(const std::string& path) {
    auto in = open_in(path);
    const FieldHeader h = read_field_header(in, path);
    if (h.kind != "tensor" || h.components != 9)
        throw std::runtime_error("not a tensor dump: " + path);
    TensorField f(h.n);
    for (auto& comp : f.c) read_doubles(in, comp, path);
    return f;
}

// ---- checkpoints ---------------------------------------------------------

void write_checkpoint(const std::string& dir, const State& s,
                      const ParamSet& params, std::uint64_t cfg_hash,
                      bool with_fields) {
    ensure_directory(dir);
    {
        auto out = open_out(dir + "/manifest.txt");
        out << "MHDCKPT v1\n"
            << "config " << hash_hex(cfg_hash) << "\n"
            << "q " << s.q << "\n"
            << "n " << s.n << "\n"
            << "slices " << s.slices() << "\n"
            << "t0 " << format_double(s.t0) << "\n"
            << "dt " << format_double(s.dt) << "\n"
            << "a " << format_double(params.a) << "\n"
            << "b " << params.b << "\n"
            << "beta " << format_double(params.beta) << "\n"
            << "eta " << format_double(params.eta) << "\n"
            << "c_u " << format_double(params.c_u) << "\n"
            << "c_b " << format_double(params.c_b) << "\n"
            << "fields " << (with_fields ? 1 : 0) << "\n";
    }
    if (!with_fields) return;
    for (int j = 0; j < s.slices(); ++j) {
        const std::size_t sj = static_cast<std::size_t>(j);
        write_field(slice_file(dir, "u", j), s.u[sj], cfg_hash);
        write_field(slice_file(dir, "b", j), s.b[sj], cfg_hash);
        write_field(slice_file(dir, "p", j), s.p[sj], cfg_hash);
        write_field(slice_file(dir, "ru", j), s.r_u[sj], cfg_hash);
        write_field(slice_file(dir, "rb", j), s.r_b[sj], cfg_hash);
    }
}

CheckpointInfo read_checkpoint_info(const std::string& dir) {
    ManifestReader m(read_file_bytes(dir + "/manifest.txt"));
    std::string magic_line = m.expect("MHDCKPT");
    if (magic_line != "v1")
        throw std::runtime_error("manifest: unsupported version " + magic_line);
    CheckpointInfo info;
    info.cfg_hash = std::stoull(m.expect("config"), nullptr, 16);
    info.q = std::stoi(m.expect("q"));
    info.n = std::stoi(m.expect("n"));
    info.slices = std::stoi(m.expect("slices"));
    info.t0 = std::stod(m.expect("t0"));
    info.dt = std::stod(m.expect("dt"));
    info.params.a = std::stod(m.expect("a"));
    info.params.b = std::stoll(m.expect("b"));
    info.params.beta = std::stod(m.expect("beta"));
    info.params.eta = std::stod(m.expect("eta"));
    info.params.c_u = std::stod(m.expect("c_u"));
    info.params.c_b = std::stod(m.expect("c_b"));
    info.has_fields = std::stoi(m.expect("fields")) != 0;
    if (info.n < 1 || info.slices < 1 || !(info.dt > 0.0))
        throw std::runtime_error("manifest: invalid geometry in " + dir);
    return info;
}

State read_checkpoint_state(const std::string& dir) {
    const CheckpointInfo info = read_checkpoint_info(dir);
    if (!info.has_fields)
        throw std::runtime_error("checkpoint has no field dumps: " + dir);
    State s;
    s.q = info.q;
    s.n = info.n;
    s.t0 = info.t0;
    s.dt = info.dt;
    for (int j = 0; j < info.slices; ++j) {
        s.u.push_back(read_vector_field(slice_file(dir, "u", j)));
        s.b.push_back(read_vector_field(slice_file(dir, "b", j)));
        s.p.push_back(read_scalar_field(slice_file(dir, "p", j)));
        s.r_u.push_back(read_tensor_field(slice_file(dir, "ru", j)));
        s.r_b.push_back(read_tensor_field(slice_file(dir, "rb", j)));
        require_same_grid(s.u.back().n, s.n, "checkpoint slice grid");
    }
    return s;
}

// ---- CSV reports ---------------------------------------------------------

void write_diagnostics_csv(const std::string& path, const DiagnosticsReport& rep,
                           std::uint64_t cfg_hash) {
    auto out = open_out(path);
    csv_preamble(out, cfg_hash);
    out << "level,slice,t,energy,cross_helicity,magnetic_helicity,"
           "u_l1,u_l2,u_l3,u_linf,b_l1,b_l2,b_l3,b_linf,"
           "ru_l1,ru_l2,ru_l3,ru_linf,rb_l1,rb_l2,rb_l3,rb_linf,"
           "u_c1,b_c1,interior,residual_u,residual_b,est_valid,est_u,est_b\n";
    for (const SliceDiagnostics& r : rep.rows) {
        out << rep.q << ',' << r.j << ',' << format_double(r.t) << ','
            << format_double(r.energy) << ',' << format_double(r.cross_helicity)
            << ',' << format_double(r.magnetic_helicity);
        for (double v : r.u_lp) out << ',' << format_double(v);
        for (double v : r.b_lp) out << ',' << format_double(v);
        for (double v : r.ru_lp) out << ',' << format_double(v);
        for (double v : r.rb_lp) out << ',' << format_double(v);
        out << ',' << format_double(r.u_c1) << ',' << format_double(r.b_c1)
            << ',' << (r.interior ? 1 : 0) << ',' << format_double(r.residual_u)
            << ',' << format_double(r.residual_b) << ',' << (r.est_valid ? 1 : 0)
            << ',' << format_double(r.est_u) << ',' << format_double(r.est_b)
            << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_margins_csv(const std::string& path, const StepReport& rep,
                       std::uint64_t cfg_hash) {
    auto out = open_out(path);
    csv_preamble(out, cfg_hash);
    out << "name,value,budget,satisfied\n";
    for (const MarginRow& m : rep.margins) {
        out << m.name << ',' << format_double(m.value) << ','
            << format_double(m.budget) << ',' << (m.satisfied ? 1 : 0) << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_helicity_csv(const std::string& path, const HelicityGrowthReport& rep,
                        std::uint64_t cfg_hash) {
    auto out = open_out(path);
    csv_preamble(out, cfg_hash);
    out << "t,h_prev,h_next,deviation,da_l2,b_next_l2,a_prev_l2,db_l2,bound,"
           "within_bound\n";
    for (const HelicityGrowthRow& r : rep.rows) {
        out << format_double(r.t) << ',' << format_double(r.h_prev) << ','
            << format_double(r.h_next) << ',' << format_double(r.deviation) << ','
            << format_double(r.da_l2) << ',' << format_double(r.b_next_l2) << ','
            << format_double(r.a_prev_l2) << ',' << format_double(r.db_l2) << ','
            << format_double(r.bound) << ',' << (r.within_bound ? 1 : 0) << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_block_sweep_csv(const std::string& path,
                           const std::vector<BlockScalingRow>& rows,
                           std::uint64_t cfg_hash) {
    auto out = open_out(path);
    csv_preamble(out, cfg_hash);
    out << "lambda,r,M,p,norm_direct,norm_oracle,sup_direct,sup_oracle,"
           "support_direct,support_oracle,psupport_direct,psupport_oracle\n";
    for (const BlockScalingRow& r : rows) {
        out << format_double(r.lambda) << ',' << format_double(r.r) << ',' << r.M
            << ',' << format_double(r.p) << ',' << format_double(r.norm_direct)
            << ',' << format_double(r.norm_oracle) << ','
            << format_double(r.sup_direct) << ',' << format_double(r.sup_oracle)
            << ',' << format_double(r.support_direct) << ','
            << format_double(r.support_oracle) << ','
            << format_double(r.psupport_direct) << ','
            << format_double(r.psupport_oracle) << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

// ---- summaries -----------------------------------------------------------

namespace {

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6e", v);
    return buf;
}

}  // namespace

std::string format_step_report(const StepReport& rep) {
    std::ostringstream out;
    out << "step " << rep.q_from << " -> " << rep.q_to << "  grid " << rep.n
        << "^3  dt " << format_double(rep.dt) << "  slices " << rep.slices_in
        << " -> " << rep.slices_out << "\n";
    out << "scales: ell " << sci(rep.ell) << "  r " << sci(rep.r)
        << "  r_lambda " << rep.r_lambda << "  time kernel halfwidth "
        << rep.mollifier_halfwidth
        << (rep.time_mollifier_degenerate ? " (degenerate)" : "") << "\n";
    out << "resolution: max frequency " << sci(rep.resolution.max_frequency)
        << "  nyquist " << sci(rep.resolution.nyquist) << "  "
        << (rep.resolution.resolved ? "resolved" : "aliased (reported)") << "\n";
    out << "audits:\n";
    out << "  div  sup        u " << sci(rep.max_div_u) << "  b "
        << sci(rep.max_div_b) << "\n";
    out << "  mean removed    u " << sci(rep.max_mean_u) << "  b "
        << sci(rep.max_mean_b) << "\n";
    out << "  stress shape    pre  sym " << sci(rep.pre_sym_defect_ru)
        << "  trace " << sci(rep.pre_trace_ru) << "  skew "
        << sci(rep.pre_skew_defect_rb) << "\n";
    out << "                  post sym " << sci(rep.post_sym_defect_ru)
        << "  trace " << sci(rep.post_trace_ru) << "  skew "
        << sci(rep.post_skew_defect_rb) << "\n";
    out << "  zero mode       u " << sci(rep.zero_mode_audit_u) << "  b "
        << sci(rep.zero_mode_audit_b) << "\n";
    out << "  pressure cross  " << sci(rep.pressure_poisson_residual) << "\n";
    out << "  cutoff sat      u " << sci(rep.chi_max_arg_u) << "  b "
        << sci(rep.chi_max_arg_b) << "\n";
    out << "perturbation: |w|_2 " << sci(rep.w_l2) << "  |d|_2 " << sci(rep.d_l2)
        << "  |w|_inf " << sci(rep.w_sup) << "  |d|_inf " << sci(rep.d_sup)
        << "\n";
    out << "margins (value / budget):\n";
    for (const MarginRow& m : rep.margins) {
        out << "  " << (m.satisfied ? "ok  " : "over") << "  " << m.name << "  "
            << sci(m.value) << " / " << sci(m.budget) << "\n";
    }
    return out.str();
}

std::string format_diagnostics_summary(const DiagnosticsReport& rep) {
    std::ostringstream out;
    out << "level " << rep.q << "  grid " << rep.n << "^3  dt "
        << format_double(rep.dt) << "  slices " << rep.rows.size() << "\n";
    for (const SliceDiagnostics& r : rep.rows) {
        out << "  t " << format_double(r.t) << "  E " << sci(r.energy)
            << "  H_ub " << sci(r.cross_helicity) << "  H_bb "
            << sci(r.magnetic_helicity);
        if (r.interior) {
            out << "  res_u " << sci(r.residual_u) << "  res_b "
                << sci(r.residual_b);
        }
        out << "\n";
    }
    out << "max residual: u " << sci(rep.max_residual_u) << "  b "
        << sci(rep.max_residual_b) << "\n";
    out << "max time-differencing estimate: u " << sci(rep.max_est_u) << "  b "
        << sci(rep.max_est_b) << "\n";
    return out.str();
}

// ---- VTK -----------------------------------------------------------------

namespace {

void vtk_header(std::ostream& out, const std::string& name, int n) {
    const double h = 2.0 * M_PI / n;
    out << "# vtk DataFile Version 3.0\n"
        << name << "\n"
        << "ASCII\n"
        << "DATASET STRUCTURED_POINTS\n"
        << "DIMENSIONS " << n << ' ' << n << ' ' << n << "\n"
        << "ORIGIN " << format_double(-M_PI) << ' ' << format_double(-M_PI)
        << ' ' << format_double(-M_PI) << "\n"
        << "SPACING " << format_double(h) << ' ' << format_double(h) << ' '
        << format_double(h) << "\n"
        << "POINT_DATA " << grid_size(n) << "\n";
}

}  // namespace

void write_vtk_scalar(const std::string& path, const std::string& name,
                      const ScalarField& f) {
    auto out = open_out(path);
    vtk_header(out, name, f.n);
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (int iz = 0; iz < f.n; ++iz)
        for (int iy = 0; iy < f.n; ++iy)
            for (int ix = 0; ix < f.n; ++ix)
                out << format_double(f.at(ix, iy, iz)) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_vtk_vector(const std::string& path, const std::string& name,
                      const VectorField& f) {
    auto out = open_out(path);
    vtk_header(out, name, f.n);
    out << "VECTORS " << name << " double\n";
    for (int iz = 0; iz < f.n; ++iz) {
        for (int iy = 0; iy < f.n; ++iy) {
            for (int ix = 0; ix < f.n; ++ix) {
                const std::size_t idx =
                    (static_cast<std::size_t>(ix) * f.n + iy) * f.n + iz;
                out << format_double(f.c[0][idx]) << ' '
                    << format_double(f.c[1][idx]) << ' '
                    << format_double(f.c[2][idx]) << "\n";
            }
        }
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

// ---- file utilities ------------------------------------------------------

void ensure_directory(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw std::runtime_error("cannot create directory " + dir + ": " +
                                 ec.message());
}

std::string read_file_bytes(const std::string& path) {
    auto in = open_in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file_bytes(const std::string& path, const std::string& bytes) {
    auto out = open_out(path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace mhdci
