#include "gaslab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gaslab {

namespace {

/// Least-squares slope of (lx, ly) over index range [lo, hi].
double ls_slope(const std::vector<double>& lx, const std::vector<double>& ly, size_t lo,
                size_t hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t n = hi - lo + 1;
    for (size_t i = lo; i <= hi; ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    double den = n * sxx - sx * sx;
    if (den == 0.0) return 0.0;
    return (n * sxy - sx * sy) / den;
}

void to_logs(const std::vector<double>& times, const std::vector<double>& values,
             std::vector<double>& lt, std::vector<double>& lv) {
    if (times.size() != values.size())
        throw std::invalid_argument("slope fit: times and values differ in length");
    lt.clear();
    lv.clear();
    for (size_t i = 0; i < times.size(); ++i) {
        if (times[i] <= 0.0) continue;
        if (values[i] <= 0.0) {
            std::ostringstream os;
            os << "slope fit: nonpositive value " << values[i] << " at t=" << times[i];
            throw std::invalid_argument(os.str());
        }
        lt.push_back(std::log10(times[i]));
        lv.push_back(std::log(values[i]));
    }
}

}  // namespace

std::vector<double> loglog_slope(const std::vector<double>& times,
                                 const std::vector<double>& values, double window_decades,
                                 std::vector<double>* out_times) {
    if (window_decades <= 0) throw std::invalid_argument("slope fit: window must be > 0");
    std::vector<double> lt, lv;
    to_logs(times, values, lt, lv);
    // slope of ln(v) vs ln(t) = slope of ln(v) vs log10(t) / ln(10)
    const double kLn10 = 2.302585092994046;
    std::vector<double> out(lt.size());
    double half = 0.5 * window_decades;
    size_t lo = 0, hi = 0;
    for (size_t i = 0; i < lt.size(); ++i) {
        while (lo < i && lt[lo] < lt[i] - half) ++lo;
        while (hi + 1 < lt.size() && lt[hi + 1] <= lt[i] + half) ++hi;
        size_t l = lo, h = std::max(hi, i);
        if (h == l) {  // widen a degenerate window to the nearest pair
            if (h + 1 < lt.size())
                ++h;
            else if (l > 0)
                --l;
        }
        out[i] = ls_slope(lt, lv, l, h) / kLn10;
    }
    if (out_times) {
        out_times->clear();
        for (double l : lt) out_times->push_back(std::pow(10.0, l));
    }
    return out;
}

std::vector<double> trailing_average(const std::vector<double>& times,
                                     const std::vector<double>& values, double window) {
    if (times.size() != values.size())
        throw std::invalid_argument("trailing average: length mismatch");
    std::vector<double> out(times.size());
    size_t lo = 0;
    double area = 0.0;  // running trapezoid integral over [times[lo], times[i]]
    for (size_t i = 0; i < times.size(); ++i) {
        if (i > 0) area += 0.5 * (values[i] + values[i - 1]) * (times[i] - times[i - 1]);
        double left = times[i] - window;
        while (lo + 1 <= i && times[lo + 1] <= left) {
            area -= 0.5 * (values[lo + 1] + values[lo]) * (times[lo + 1] - times[lo]);
            ++lo;
        }
        // clip the straddling segment so the window is exactly [t - window, t]
        double clipped = area;
        double start = times[lo];
        if (lo < i && times[lo] < left) {
            double h = times[lo + 1] - times[lo];
            double frac = (left - times[lo]) / h;
            double v_edge = values[lo] + (values[lo + 1] - values[lo]) * frac;
            clipped -= 0.5 * (values[lo] + v_edge) * (left - times[lo]);
            start = left;
        }
        double span = times[i] - start;
        out[i] = span > 0 ? clipped / span : values[i];
    }
    return out;
}

double slope_at(const std::vector<double>& times, const std::vector<double>& values,
                double t, double window_decades) {
    std::vector<double> fit_t;
    std::vector<double> slopes = loglog_slope(times, values, window_decades, &fit_t);
    if (slopes.empty()) throw std::invalid_argument("slope fit: no positive-time samples");
    size_t best = 0;
    for (size_t i = 1; i < fit_t.size(); ++i)
        if (std::fabs(fit_t[i] - t) < std::fabs(fit_t[best] - t)) best = i;
    return slopes[best];
}

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2)
        throw std::invalid_argument("correlation: need two equal-length series");
    double ma = 0, mb = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= a.size();
    mb /= b.size();
    double saa = 0, sbb = 0, sab = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
        sab += (a[i] - ma) * (b[i] - mb);
    }
    if (saa == 0 || sbb == 0) throw std::invalid_argument("correlation: constant series");
    return sab / std::sqrt(saa * sbb);
}

}  // namespace gaslab
