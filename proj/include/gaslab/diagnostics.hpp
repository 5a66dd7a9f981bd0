#pragma once

#include <string>
#include <vector>

namespace gaslab {

/// alpha = d ln theta_av / d ln t, beta = d ln|u2|_av / d ln t, and the
/// trailing-window average beta_bar.
struct SlopeSeries {
    std::vector<double> times;
    std::vector<double> alpha, beta, beta_bar;
    double window = 0.25;  // decades
};

/// Local least-squares slope of ln(value) vs ln(t) over a sliding window of
/// the given width in decades (clipped one-sided at the ends). Samples with
/// t <= 0 are excluded; a nonpositive value throws, naming the first offender.
std::vector<double> loglog_slope(const std::vector<double>& times,
                                 const std::vector<double>& values,
                                 double window_decades,
                                 std::vector<double>* out_times = nullptr);

/// Trailing time average over [t - window, t] (trapezoid), truncated at the
/// series start.
std::vector<double> trailing_average(const std::vector<double>& times,
                                     const std::vector<double>& values,
                                     double window);

/// Slope at one time (log-log least squares around t, window in decades).
double slope_at(const std::vector<double>& times, const std::vector<double>& values,
                double t, double window_decades);

/// Pearson correlation of two equal-length series.
double correlation(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace gaslab
