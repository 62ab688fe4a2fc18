#include "popdyn/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "popdyn/errors.hpp"

namespace popdyn {

EntropyReport entropy(const ViewTrace& trace, int window_days) {
    if (window_days < 2) {
        throw std::invalid_argument("entropy window must cover at least 2 days");
    }
    if (trace.counts.size() < static_cast<std::size_t>(window_days)) {
        throw WindowTooLongError("trace '" + trace.video_id + "' has " +
                                 std::to_string(trace.counts.size()) + " days, window needs " +
                                 std::to_string(window_days));
    }

    double total = 0.0;
    for (int i = 0; i < window_days; ++i) {
        const double v = trace.counts[static_cast<std::size_t>(i)];
        if (v < 0.0 || !std::isfinite(v)) {
            throw std::invalid_argument("view counts must be finite and nonnegative");
        }
        total += v;
    }
    if (!(total > 0.0)) {
        throw AllZeroWindowError("trace '" + trace.video_id +
                                 "' has no views inside the window; entropy undefined");
    }

    double h = 0.0;
    for (int i = 0; i < window_days; ++i) {
        const double v = trace.counts[static_cast<std::size_t>(i)];
        if (v > 0.0) {
            const double p = v / total;
            h -= p * std::log(p);
        }
    }
    return EntropyReport{trace.video_id, window_days,
                         h / std::log(static_cast<double>(window_days)), total};
}

CorpusSummary corpus_summary(const std::vector<EntropyReport>& reports) {
    if (reports.empty()) {
        throw std::invalid_argument("corpus_summary needs at least one report");
    }
    CorpusSummary out;
    out.sorted_entropies.reserve(reports.size());
    out.points.reserve(reports.size());
    for (const EntropyReport& r : reports) {
        out.sorted_entropies.push_back(r.entropy);
        out.points.push_back({r.video_id, r.entropy, r.total_views});
    }
    std::sort(out.sorted_entropies.begin(), out.sorted_entropies.end());
    std::sort(out.points.begin(), out.points.end(),
              [](const CorpusSummary::Point& a, const CorpusSummary::Point& b) {
                  return a.video_id < b.video_id;
              });
    return out;
}

}  // namespace popdyn
