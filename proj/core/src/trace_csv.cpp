#include "popdyn/trace_csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <set>

#include "popdyn/errors.hpp"

namespace popdyn {

namespace {

// Splits one CSV record; supports double-quoted fields with "" escapes,
// which is all the trace schema needs.
std::vector<std::string> split_csv(const std::string& line, const std::string& source,
                                   long line_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) throw CsvParseError(source, line_no, "unterminated quoted field");
    fields.push_back(std::move(cur));
    return fields;
}

double parse_views(const std::string& s, const std::string& source, long line_no) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
        throw CsvParseError(source, line_no, "cannot parse views '" + s + "'");
    }
    if (!(v >= 0.0)) {
        throw CsvParseError(source, line_no, "views must be nonnegative, got '" + s + "'");
    }
    return v;
}

long parse_day(const std::string& s, const std::string& source, long line_no) {
    long d = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), d);
    if (ec != std::errc() || p != s.data() + s.size()) {
        throw CsvParseError(source, line_no, "cannot parse day '" + s + "'");
    }
    if (d < 0) {
        throw CsvParseError(source, line_no, "day must be >= 0, got " + s);
    }
    return d;
}

}  // namespace

std::vector<ViewTrace> read_view_traces(std::istream& in, const std::string& source) {
    std::string line;
    long line_no = 0;

    if (!std::getline(in, line)) {
        throw CsvParseError(source, 1, "empty input, expected header video_id,day,views");
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "video_id,day,views") {
        throw CsvParseError(source, 1, "expected header 'video_id,day,views', got '" + line + "'");
    }

    std::map<std::string, std::map<long, double>> days_by_video;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> f = split_csv(line, source, line_no);
        if (f.size() != 3) {
            throw CsvParseError(source, line_no,
                                "expected 3 fields, got " + std::to_string(f.size()));
        }
        if (f[0].empty()) throw CsvParseError(source, line_no, "empty video_id");
        const long day = parse_day(f[1], source, line_no);
        const double views = parse_views(f[2], source, line_no);
        auto [it, inserted] = days_by_video[f[0]].emplace(day, views);
        if (!inserted) {
            throw CsvParseError(source, line_no,
                                "duplicate day " + f[1] + " for video '" + f[0] + "'");
        }
    }

    std::vector<ViewTrace> traces;
    traces.reserve(days_by_video.size());
    for (auto& [id, days] : days_by_video) {
        ViewTrace t;
        t.video_id = id;
        t.counts.assign(static_cast<std::size_t>(days.rbegin()->first) + 1, 0.0);
        for (const auto& [day, views] : days) {
            t.counts[static_cast<std::size_t>(day)] = views;
        }
        traces.push_back(std::move(t));
    }
    return traces;  // std::map iteration already sorts by video_id
}

std::vector<ViewTrace> read_view_traces_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("io", "cannot open trace file '" + path + "'");
    }
    return read_view_traces(in, path);
}

}  // namespace popdyn
