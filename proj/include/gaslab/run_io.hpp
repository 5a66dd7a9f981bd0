#pragma once

#include <string>
#include <utility>
#include <vector>

namespace gaslab {

inline constexpr const char* kVersion = "gaslab 0.1.0";

std::string sha256_hex(const std::string& data);
std::string sha256_file(const std::string& path);

/// CSV with %.17g-style shortest-round-trip numbers, classic locale, '\n' ends.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path, const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);
    void row_mixed(const std::vector<std::string>& cells);
    void close();
    ~CsvWriter();

private:
    struct Impl;
    Impl* impl_;
};

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;  // NaN for empty cells
    bool has_column(const std::string& name) const;
    std::vector<double> column(const std::string& name) const;  // throws if missing
};
CsvTable read_csv(const std::string& path);

struct RunManifest {
    std::string subcommand;
    std::string config_text;  // canonical snapshot
    std::string version = kVersion;
    std::string start_time, end_time;  // ISO 8601 UTC
    std::vector<std::pair<std::string, std::string>> outputs;  // (relative path, sha256)
    std::vector<std::string> notes;  // remap events, seeds, certificates...

    /// Written to <dir>/manifest.txt atomically (temp file + rename).
    void write(const std::string& dir) const;
};

/// <out_root>/<slug>-<UTC timestamp>/ (suffix -2, -3... on collision).
std::string make_run_dir(const std::string& out_root, const std::string& slug);

std::string iso_utc_now();
int env_worker_count();  // GASLAB_WORKERS, default 1

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace gaslab
