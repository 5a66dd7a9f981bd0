#include "gaslab/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace gaslab {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_double(const std::string& raw, const std::string& where) {
    std::string s = trim(raw);
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw ConfigError(where + ": not a number: '" + raw + "'");
    return v;
}

long parse_long(const std::string& raw, const std::string& where) {
    std::string s = trim(raw);
    long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw ConfigError(where + ": not an integer: '" + raw + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, p);
}

ConfigMap ConfigMap::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str(), path);
}

ConfigMap ConfigMap::parse_string(const std::string& text, const std::string& origin) {
    ConfigMap m;
    m.origin_ = origin;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string t = trim(line);
        if (t.empty()) continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        Entry e;
        e.key = trim(t.substr(0, eq));
        e.value = trim(t.substr(eq + 1));
        e.line = lineno;
        if (e.key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        if (m.find(e.key))
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" +
                              e.key + "'");
        m.entries_.push_back(std::move(e));
    }
    return m;
}

const ConfigMap::Entry* ConfigMap::find(const std::string& key) const {
    for (const auto& e : entries_)
        if (e.key == key) return &e;
    return nullptr;
}

bool ConfigMap::has(const std::string& key) const { return find(key) != nullptr; }

std::string ConfigMap::get_string(const std::string& key) {
    const Entry* e = find(key);
    if (!e) throw ConfigError(origin_ + ": missing required key '" + key + "'");
    e->consumed = true;
    return e->value;
}

std::string ConfigMap::get_string_or(const std::string& key, const std::string& def) {
    const Entry* e = find(key);
    if (!e) return def;
    e->consumed = true;
    return e->value;
}

double ConfigMap::get_double(const std::string& key) {
    return parse_double(get_string(key), origin_ + ": key '" + key + "'");
}

double ConfigMap::get_double_or(const std::string& key, double def) {
    const Entry* e = find(key);
    if (!e) return def;
    e->consumed = true;
    return parse_double(e->value, origin_ + ": key '" + key + "'");
}

long ConfigMap::get_int(const std::string& key) {
    return parse_long(get_string(key), origin_ + ": key '" + key + "'");
}

long ConfigMap::get_int_or(const std::string& key, long def) {
    const Entry* e = find(key);
    if (!e) return def;
    e->consumed = true;
    return parse_long(e->value, origin_ + ": key '" + key + "'");
}

std::vector<double> ConfigMap::get_double_list_or(const std::string& key,
                                                  std::vector<double> def) {
    const Entry* e = find(key);
    if (!e) return def;
    e->consumed = true;
    std::vector<double> out;
    if (trim(e->value).empty()) return out;
    for (const auto& part : split(e->value, ','))
        out.push_back(parse_double(part, origin_ + ": key '" + key + "'"));
    return out;
}

std::vector<std::string> ConfigMap::keys_with_prefix(const std::string& prefix) const {
    std::vector<std::pair<long, std::string>> hits;
    for (const auto& e : entries_) {
        if (e.key.size() <= prefix.size() || e.key.compare(0, prefix.size(), prefix) != 0)
            continue;
        std::string suffix = e.key.substr(prefix.size());
        if (!std::all_of(suffix.begin(), suffix.end(),
                         [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            continue;
        hits.emplace_back(std::stol(suffix), e.key);
    }
    std::sort(hits.begin(), hits.end());
    std::vector<std::string> out;
    for (auto& h : hits) out.push_back(std::move(h.second));
    return out;
}

void ConfigMap::finish() const {
    for (const auto& e : entries_)
        if (!e.consumed)
            throw ConfigError(origin_ + ":" + std::to_string(e.line) + ": unknown key '" +
                              e.key + "'");
}

// ---------------------------------------------------------------------------
// typed extraction
// ---------------------------------------------------------------------------

BgkConfig bgk_config_from(ConfigMap& m) {
    BgkConfig c;
    c.kn = m.get_double_or("kn", c.kn);
    c.f0 = m.get_double_or("f0", c.f0);
    c.grid.n_cells = static_cast<int>(m.get_int_or("n_x", c.grid.n_cells));
    c.vgrid.n_v1 = static_cast<int>(m.get_int_or("n_v1", c.vgrid.n_v1));
    c.vgrid.n_v2 = static_cast<int>(m.get_int_or("n_v2", c.vgrid.n_v2));
    c.vgrid.v_max = m.get_double_or("v_max", c.vgrid.v_max);
    c.vgrid.scale = m.get_double_or("v_scale", c.vgrid.scale);
    c.dt_cfl = m.get_double_or("dt_cfl", c.dt_cfl);
    c.t_end = m.get_double_or("t_end", c.t_end);
    c.sample_interval = m.get_double_or("sample_interval", c.sample_interval);
    c.remap_trigger = m.get_double_or("remap_trigger", c.remap_trigger);
    c.snapshot_times = m.get_double_list_or("snapshot_times", {});
    c.checkpoint_interval = m.get_double_or("checkpoint_interval", c.checkpoint_interval);
    c.checkpoint_path = m.get_string_or("checkpoint_path", c.checkpoint_path);
    c.entropy_check = m.get_int_or("entropy_check", 0) != 0;
    m.finish();
    c.validate();
    return c;
}

DsmcConfig dsmc_config_from(ConfigMap& m) {
    DsmcConfig c;
    c.kn = m.get_double_or("kn", c.kn);
    c.f0 = m.get_double_or("f0", c.f0);
    c.n_cells = static_cast<int>(m.get_int_or("n_cells", c.n_cells));
    c.particles_per_cell =
        static_cast<int>(m.get_int_or("particles_per_cell", c.particles_per_cell));
    c.dt = m.get_double_or("dt", c.dt);
    c.t_end = m.get_double_or("t_end", c.t_end);
    c.n_ensemble = static_cast<int>(m.get_int_or("n_ensemble", c.n_ensemble));
    c.time_avg_window = m.get_double_or("time_avg_window", c.time_avg_window);
    c.rng_seed = static_cast<uint64_t>(m.get_int_or("rng_seed", static_cast<long>(c.rng_seed)));
    c.sample_interval = m.get_double_or("sample_interval", c.sample_interval);
    m.finish();
    c.validate();
    return c;
}

CnsConfig cns_config_from(ConfigMap& m) {
    CnsConfig c;
    c.g0 = m.get_double_or("g0", c.g0);
    c.delta = m.get_double_or("delta", c.delta);
    c.c_mu = m.get_double_or("c_mu", c.c_mu);
    c.c_kappa = m.get_double_or("c_kappa", c.c_kappa);
    c.rho0 = m.get_double_or("rho0", c.rho0);
    c.n_cells = static_cast<int>(m.get_int_or("n_cells", c.n_cells));
    c.dt = m.get_double_or("dt", c.dt);
    c.t_end = m.get_double_or("t_end", c.t_end);
    c.sample_interval = m.get_double_or("sample_interval", c.sample_interval);
    m.finish();
    c.validate();
    return c;
}

SteadyNsConfig steady_ns_config_from(ConfigMap& m) {
    SteadyNsConfig c;
    c.nu = m.get_double_or("nu", c.nu);
    c.N = static_cast<int>(m.get_int_or("n_modes", c.N));
    c.damping = m.get_double_or("damping", c.damping);
    c.max_iter = static_cast<int>(m.get_int_or("max_iter", c.max_iter));
    c.residual_tol = m.get_double_or("residual_tol", c.residual_tol);
    c.sobolev_c = m.get_double_or("sobolev_c", c.sobolev_c);

    std::string preset = m.get_string_or("force_preset", "");
    std::vector<std::string> mode_keys = m.keys_with_prefix("force_mode_");
    if (!preset.empty() && !mode_keys.empty())
        throw ConfigError(m.origin() + ": force_preset and force_mode_* are exclusive");
    if (!preset.empty()) {
        if (preset == "shear") {
            c.force = shear_force(c.N, m.get_double_or("force_amplitude", 1.0));
        } else if (preset == "random") {
            int kmax = static_cast<int>(m.get_int_or("force_kmax", 2));
            double target = m.get_double_or("force_hminus1", 0.01);
            uint64_t seed = static_cast<uint64_t>(m.get_int_or("force_seed", 1));
            c.force = random_divfree_force(c.N, kmax, target, seed);
        } else {
            throw ConfigError(m.origin() + ": unknown force_preset '" + preset + "'");
        }
    } else {
        int fn = static_cast<int>(m.get_int_or("force_n", 0));
        c.force = FourierVectorField(fn);
        for (const auto& key : mode_keys) {
            std::vector<double> vals = m.get_double_list_or(key, {});
            if (vals.size() != 6)
                throw ConfigError(m.origin() + ": key '" + key +
                                  "': want kx,ky,kz,comp,re,im");
            int kx = static_cast<int>(vals[0]), ky = static_cast<int>(vals[1]),
                kz = static_cast<int>(vals[2]), comp = static_cast<int>(vals[3]);
            if (std::abs(kx) > fn || std::abs(ky) > fn || std::abs(kz) > fn || comp < 0 ||
                comp > 2)
                throw ConfigError(m.origin() + ": key '" + key + "': mode out of range");
            std::complex<double> val(vals[4], vals[5]);
            // one key per conjugate pair: set both halves, then let
            // symmetrize() reconcile anything specified twice
            c.force.at(kx, ky, kz, comp) = val;
            c.force.at(-kx, -ky, -kz, comp) = std::conj(val);
        }
        c.force.symmetrize();
    }
    m.finish();
    c.validate();
    return c;
}

// ---------------------------------------------------------------------------
// canonical rendering
// ---------------------------------------------------------------------------

namespace {
struct Lines {
    std::ostringstream os;
    void kv(const char* k, const std::string& v) { os << k << " = " << v << "\n"; }
    void kv(const char* k, double v) { kv(k, format_double(v)); }
    void kv(const char* k, long v) { kv(k, std::to_string(v)); }
    void kv(const char* k, int v) { kv(k, std::to_string(v)); }
    std::string str() const { return os.str(); }
};

std::string join_doubles(const std::vector<double>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += format_double(v[i]);
    }
    return out;
}
}  // namespace

std::string render_config(const BgkConfig& c) {
    Lines l;
    l.kv("kn", c.kn);
    l.kv("f0", c.f0);
    l.kv("n_x", c.grid.n_cells);
    l.kv("n_v1", c.vgrid.n_v1);
    l.kv("n_v2", c.vgrid.n_v2);
    l.kv("v_max", c.vgrid.v_max);
    l.kv("v_scale", c.vgrid.scale);
    l.kv("dt_cfl", c.dt_cfl);
    l.kv("t_end", c.t_end);
    l.kv("sample_interval", c.sample_interval);
    l.kv("remap_trigger", c.remap_trigger);
    if (!c.snapshot_times.empty()) l.kv("snapshot_times", join_doubles(c.snapshot_times));
    l.kv("checkpoint_interval", c.checkpoint_interval);
    if (!c.checkpoint_path.empty()) l.kv("checkpoint_path", c.checkpoint_path);
    l.kv("entropy_check", c.entropy_check ? 1 : 0);
    return l.str();
}

std::string render_config(const DsmcConfig& c) {
    Lines l;
    l.kv("kn", c.kn);
    l.kv("f0", c.f0);
    l.kv("n_cells", c.n_cells);
    l.kv("particles_per_cell", c.particles_per_cell);
    l.kv("dt", c.dt);
    l.kv("t_end", c.t_end);
    l.kv("n_ensemble", c.n_ensemble);
    l.kv("time_avg_window", c.time_avg_window);
    l.kv("rng_seed", static_cast<long>(c.rng_seed));
    l.kv("sample_interval", c.sample_interval);
    return l.str();
}

std::string render_config(const CnsConfig& c) {
    Lines l;
    l.kv("g0", c.g0);
    l.kv("delta", c.delta);
    l.kv("c_mu", c.c_mu);
    l.kv("c_kappa", c.c_kappa);
    l.kv("rho0", c.rho0);
    l.kv("n_cells", c.n_cells);
    l.kv("dt", c.dt);
    l.kv("t_end", c.t_end);
    l.kv("sample_interval", c.sample_interval);
    return l.str();
}

std::string render_config(const SteadyNsConfig& c) {
    Lines l;
    l.kv("nu", c.nu);
    l.kv("n_modes", c.N);
    l.kv("damping", c.damping);
    l.kv("max_iter", c.max_iter);
    l.kv("residual_tol", c.residual_tol);
    l.kv("sobolev_c", c.sobolev_c);
    l.kv("force_n", c.force.N);
    long j = 0;
    for (int kx = -c.force.N; kx <= c.force.N; ++kx)
        for (int ky = -c.force.N; ky <= c.force.N; ++ky)
            for (int kz = -c.force.N; kz <= c.force.N; ++kz) {
                if (kx < 0 || (kx == 0 && (ky < 0 || (ky == 0 && kz <= 0)))) continue;
                for (int comp = 0; comp < 3; ++comp) {
                    const auto& v = c.force.at(kx, ky, kz, comp);
                    if (v == std::complex<double>(0.0, 0.0)) continue;
                    std::string key = "force_mode_" + std::to_string(j++);
                    l.kv(key.c_str(),
                         std::to_string(kx) + "," + std::to_string(ky) + "," +
                             std::to_string(kz) + "," + std::to_string(comp) + "," +
                             format_double(v.real()) + "," + format_double(v.imag()));
                }
            }
    return l.str();
}

// ---------------------------------------------------------------------------

bool operator==(const BgkConfig& a, const BgkConfig& b) {
    return a.kn == b.kn && a.f0 == b.f0 && a.grid.n_cells == b.grid.n_cells &&
           a.vgrid.n_v1 == b.vgrid.n_v1 && a.vgrid.n_v2 == b.vgrid.n_v2 &&
           a.vgrid.v_max == b.vgrid.v_max && a.vgrid.scale == b.vgrid.scale &&
           a.dt_cfl == b.dt_cfl && a.t_end == b.t_end &&
           a.sample_interval == b.sample_interval && a.remap_trigger == b.remap_trigger &&
           a.snapshot_times == b.snapshot_times &&
           a.checkpoint_interval == b.checkpoint_interval &&
           a.checkpoint_path == b.checkpoint_path && a.entropy_check == b.entropy_check;
}

bool operator==(const DsmcConfig& a, const DsmcConfig& b) {
    return a.kn == b.kn && a.f0 == b.f0 && a.n_cells == b.n_cells &&
           a.particles_per_cell == b.particles_per_cell && a.dt == b.dt &&
           a.t_end == b.t_end && a.n_ensemble == b.n_ensemble &&
           a.time_avg_window == b.time_avg_window && a.rng_seed == b.rng_seed &&
           a.sample_interval == b.sample_interval;
}

bool operator==(const CnsConfig& a, const CnsConfig& b) {
    return a.g0 == b.g0 && a.delta == b.delta && a.c_mu == b.c_mu &&
           a.c_kappa == b.c_kappa && a.rho0 == b.rho0 && a.n_cells == b.n_cells &&
           a.dt == b.dt && a.t_end == b.t_end && a.sample_interval == b.sample_interval;
}

bool operator==(const SteadyNsConfig& a, const SteadyNsConfig& b) {
    return a.nu == b.nu && a.N == b.N && a.damping == b.damping &&
           a.max_iter == b.max_iter && a.residual_tol == b.residual_tol &&
           a.sobolev_c == b.sobolev_c && a.force.N == b.force.N && a.force.c == b.force.c;
}

}  // namespace gaslab
