#ifndef POPDYN_ENTROPY_HPP
#define POPDYN_ENTROPY_HPP

#include <string>
#include <vector>

#include "popdyn/fit.hpp"

namespace popdyn {

/// Normalized view-count entropy of one video over a T-day window:
/// H(T) = -(1/ln T) * sum_i p_i ln p_i with p_i the day-i share of the
/// window's views. 1 for a uniform trace, 0 for a single-day spike.
struct EntropyReport {
    std::string video_id;
    int window_days;
    double entropy;      ///< in [0, 1]
    double total_views;  ///< sum of counts inside the window
};

/// Entropy over the first window_days days of the trace (0 * ln 0 := 0).
/// Shorter traces are an error, not padded; an all-zero window is an error
/// because the day distribution is undefined.
EntropyReport entropy(const ViewTrace& trace, int window_days = 30);

/// Corpus-level view: entropy values sorted ascending (ready for a CDF) and
/// per-video (entropy, total_views) points sorted by video_id (ready for a
/// scatter plot).
struct CorpusSummary {
    struct Point {
        std::string video_id;
        double entropy;
        double total_views;
    };
    std::vector<double> sorted_entropies;
    std::vector<Point> points;
};

CorpusSummary corpus_summary(const std::vector<EntropyReport>& reports);

}  // namespace popdyn

#endif  // POPDYN_ENTROPY_HPP
