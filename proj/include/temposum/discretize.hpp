#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "temposum/core.hpp"
#include "temposum/error.hpp"

namespace temposum {

/// Quantile function of the standard normal. Acklam's rational approximation
/// polished with one Halley step against std::erf; good to ~1e-15 over (0, 1).
inline double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) fail(ErrorCode::OutOfRange, "quantile p must be in (0, 1)");

    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};

    const double plow = 0.02425;
    double x;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // One Halley refinement: e = Phi(x) - p, u = e / phi(x).
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    return x - u / (1.0 + x * u / 2.0);
}

/// Breakpoints splitting the standard normal into `n` equal-probability bins:
/// the i/n quantiles for i = 1..n-1, strictly increasing and symmetric.
inline std::vector<double> gaussian_breakpoints(int n) {
    if (n < 2 || n > 26) fail(ErrorCode::OutOfRange, "alphabet size must be in [2, 26]");
    std::vector<double> bp;
    bp.reserve(n - 1);
    for (int i = 1; i < n; ++i) bp.push_back(inverse_normal_cdf(static_cast<double>(i) / n));
    return bp;
}

struct NormalizedSeries {
    std::vector<double> values;  // (x - mean) / sd
    double mean = 0.0;
    double sd = 1.0;  // sample standard deviation (n - 1)
};

/// Z-normalization with sample (n-1) standard deviation. Throws
/// DegenerateSeries when fewer than two points or zero spread.
inline NormalizedSeries z_normalize(const std::vector<double>& xs) {
    if (xs.size() < 2) fail(ErrorCode::DegenerateSeries, "need at least 2 points");
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    if (sd == 0.0) fail(ErrorCode::DegenerateSeries, "zero standard deviation");
    NormalizedSeries out;
    out.mean = mean;
    out.sd = sd;
    out.values.reserve(xs.size());
    for (double x : xs) out.values.push_back((x - mean) / sd);
    return out;
}

/// Piecewise aggregate approximation: mean of each consecutive run of
/// `segment_len` values. A trailing partial segment is dropped unless
/// `keep_partial` is set.
inline std::vector<double> paa(const std::vector<double>& xs, int segment_len,
                               bool keep_partial = false) {
    if (segment_len < 1) fail(ErrorCode::OutOfRange, "segment length must be positive");
    std::vector<double> out;
    std::size_t i = 0;
    while (i < xs.size()) {
        const std::size_t end = std::min(xs.size(), i + static_cast<std::size_t>(segment_len));
        if (end - i < static_cast<std::size_t>(segment_len) && !keep_partial) break;
        double m = 0.0;
        for (std::size_t j = i; j < end; ++j) m += xs[j];
        out.push_back(m / static_cast<double>(end - i));
        i = end;
    }
    return out;
}

/// How raw values map onto letters. Two modes:
///  - SaxGaussian: z-normalize, then cut at equiprobable Gaussian breakpoints.
///  - RawRanges: cut the raw values directly at caller-provided boundaries
///    (e.g. clinical heart-rate ranges); no normalization.
/// Boundaries are half-open: a value equal to a breakpoint belongs to the
/// upper bin.
struct BinningScheme {
    enum class Mode { SaxGaussian, RawRanges };

    Mode mode = Mode::SaxGaussian;
    std::vector<double> breakpoints;  // size = labels.size() - 1, ascending
    std::vector<std::string> labels;  // bin labels, low to high

    int bins() const { return static_cast<int>(labels.size()); }

    void validate() const {
        if (labels.size() < 2) fail(ErrorCode::BadConfig, "scheme needs at least 2 bins");
        if (breakpoints.size() + 1 != labels.size())
            fail(ErrorCode::BadConfig, "breakpoints/labels size mismatch");
        for (std::size_t i = 1; i < breakpoints.size(); ++i)
            if (!(breakpoints[i - 1] < breakpoints[i]))
                fail(ErrorCode::BadConfig, "breakpoints must be strictly increasing");
    }

    /// Letter index for one value: the number of breakpoints <= v, so a value
    /// sitting exactly on a boundary lands in the upper bin.
    int bin_of(double v) const {
        return static_cast<int>(std::upper_bound(breakpoints.begin(), breakpoints.end(), v) -
                                breakpoints.begin());
    }

    const std::string& label_of(int bin) const {
        if (bin < 0 || bin >= bins()) fail(ErrorCode::OutOfRange, "bin " + std::to_string(bin));
        return labels[bin];
    }
};

/// One discretized entry: the position in the source series, its letter, and
/// (for day-level symbols) the ISO weekday of the underlying date.
struct Symbol {
    std::size_t index = 0;  // day ordinal or window ordinal, 0-based
    int letter = 0;         // 0 = 'a'
    int weekday = 0;        // 1..7 at day level, 0 at window level
};

/// A series after discretization, at one granularity level.
struct SymbolicSeries {
    std::string attribute;
    std::vector<Symbol> symbols;
    BinningScheme scheme;
    /// Bin boundaries mapped back to raw units (mean + sd * breakpoint for
    /// SAX; the breakpoints themselves for raw ranges). Used by chart output.
    std::vector<double> raw_band_edges;

    std::string letters() const {
        std::string s;
        s.reserve(symbols.size());
        for (const auto& sym : symbols) s.push_back(static_cast<char>('a' + sym.letter));
        return s;
    }
};

/// Default SAX scheme for an alphabet size, letters only (labels filled by
/// the vocabulary layer when a summarizer set of matching size exists).
inline BinningScheme sax_scheme(int alphabet_size, std::vector<std::string> labels = {}) {
    BinningScheme s;
    s.mode = BinningScheme::Mode::SaxGaussian;
    s.breakpoints = gaussian_breakpoints(alphabet_size);
    if (labels.empty()) {
        for (int i = 0; i < alphabet_size; ++i)
            labels.push_back(std::string(1, static_cast<char>('a' + i)));
    }
    if (static_cast<int>(labels.size()) != alphabet_size)
        fail(ErrorCode::BadConfig, "label count must match alphabet size");
    s.labels = std::move(labels);
    return s;
}

/// Discretization of one series at both levels. Day symbols come from the
/// normalized (or raw) daily values; window symbols apply the same breakpoints
/// to the PAA means of complete windows of the same normalized series.
struct Discretized {
    SymbolicSeries days;
    SymbolicSeries windows;  // empty when granularity has no windows
    bool degenerate = false;  // constant SAX input collapsed to the middle letter
};

inline Discretized symbolize(const TimeSeries& ts, const Granularity& g,
                             const BinningScheme& scheme) {
    scheme.validate();
    ts.validate();

    std::vector<double> raw;
    raw.reserve(ts.points.size());
    for (const auto& p : ts.points) raw.push_back(p.value);

    Discretized out;
    out.days.attribute = ts.attribute;
    out.days.scheme = scheme;
    out.windows.attribute = ts.attribute;
    out.windows.scheme = scheme;

    std::vector<double> level;  // values the breakpoints apply to, day level
    if (scheme.mode == BinningScheme::Mode::SaxGaussian) {
        if (raw.size() >= 2) {
            bool constant = true;
            for (double v : raw)
                if (v != raw.front()) { constant = false; break; }
            if (constant) {
                out.degenerate = true;
            } else {
                const NormalizedSeries z = z_normalize(raw);
                level = z.values;
                out.days.raw_band_edges.reserve(scheme.breakpoints.size());
                for (double bp : scheme.breakpoints)
                    out.days.raw_band_edges.push_back(z.mean + z.sd * bp);
            }
        } else {
            out.degenerate = true;
        }
        if (out.degenerate) {
            // No spread to normalize against; everything is "typical".
            level.assign(raw.size(), 0.0);
            out.days.raw_band_edges.clear();
        }
    } else {
        level = raw;
        out.days.raw_band_edges = scheme.breakpoints;
    }
    out.windows.raw_band_edges = out.days.raw_band_edges;

    const int middle = scheme.bins() / 2;
    out.days.symbols.reserve(level.size());
    for (std::size_t i = 0; i < level.size(); ++i) {
        Symbol s;
        s.index = i;
        s.letter = out.degenerate ? middle : scheme.bin_of(level[i]);
        s.weekday = iso_weekday(ts.points[i].date);
        out.days.symbols.push_back(s);
    }

    if (g.windowed()) {
        const std::vector<double> means = paa(level, g.tw_len, /*keep_partial=*/false);
        out.windows.symbols.reserve(means.size());
        for (std::size_t w = 0; w < means.size(); ++w) {
            Symbol s;
            s.index = w;
            s.letter = out.degenerate ? middle : scheme.bin_of(means[w]);
            out.windows.symbols.push_back(s);
        }
    }
    return out;
}

}  // namespace temposum
