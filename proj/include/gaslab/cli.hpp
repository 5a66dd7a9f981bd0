#pragma once

#include <string>
#include <vector>

namespace gaslab {

// Exit codes: 0 success, 2 config error, 3 numerical failure, 4 non-convergence.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitNonConvergence = 4;

struct MomentsVerifyOptions {
    int nodes = 24;
    std::string scheme = "gauss_hermite";
    double radius = 10.0;
    double tol = 1e-10;
    std::string alpha = "one";  // one | r2 | exp-r
    std::string beta = "one";
    std::string out_root = "out";
};

int cli_moments_verify(const MomentsVerifyOptions& opt);
int cli_bgk_run(const std::string& config_path, const std::string& out_root,
                const std::string& resume_path);
int cli_dsmc_run(const std::string& config_path, const std::string& out_root);
int cli_cns_run(const std::string& config_path, const std::string& out_root);
int cli_steady_ns_solve(const std::string& config_path, const std::string& out_root);
int cli_fit_slope(const std::string& input_csv, const std::string& field, double window,
                  double avg_window, const std::string& out_path);
int cli_emit_plots(const std::string& run_dir);

}  // namespace gaslab
