#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gaslab/bgk.hpp"
#include "gaslab/cns.hpp"
#include "gaslab/dsmc.hpp"
#include "gaslab/steady_ns.hpp"

namespace gaslab {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat key = value text, '#' comments. Duplicate keys and (after typed
/// extraction) unknown keys are errors naming the line.
class ConfigMap {
public:
    static ConfigMap parse_file(const std::string& path);
    static ConfigMap parse_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key);
    double get_double(const std::string& key);
    double get_double_or(const std::string& key, double def);
    long get_int(const std::string& key);
    long get_int_or(const std::string& key, long def);
    std::vector<double> get_double_list_or(const std::string& key, std::vector<double> def);
    std::string get_string_or(const std::string& key, const std::string& def);

    /// Keys matching prefix followed by an integer suffix, in suffix order.
    std::vector<std::string> keys_with_prefix(const std::string& prefix) const;

    /// Throws ConfigError on any key never consumed (unknown key, with line).
    void finish() const;

    const std::string& origin() const { return origin_; }

private:
    struct Entry {
        std::string key, value;
        int line = 0;
        mutable bool consumed = false;
    };
    const Entry* find(const std::string& key) const;
    std::string origin_;
    std::vector<Entry> entries_;
};

BgkConfig bgk_config_from(ConfigMap& m);
DsmcConfig dsmc_config_from(ConfigMap& m);
CnsConfig cns_config_from(ConfigMap& m);
SteadyNsConfig steady_ns_config_from(ConfigMap& m);

/// Canonical key=value text; parse(render(c)) == c exactly (doubles are
/// rendered with max_digits10).
std::string render_config(const BgkConfig& c);
std::string render_config(const DsmcConfig& c);
std::string render_config(const CnsConfig& c);
std::string render_config(const SteadyNsConfig& c);

bool operator==(const BgkConfig& a, const BgkConfig& b);
bool operator==(const DsmcConfig& a, const DsmcConfig& b);
bool operator==(const CnsConfig& a, const CnsConfig& b);
bool operator==(const SteadyNsConfig& a, const SteadyNsConfig& b);

std::string format_double(double v);  // shortest exact round-trip decimal

}  // namespace gaslab
