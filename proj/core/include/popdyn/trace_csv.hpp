#ifndef POPDYN_TRACE_CSV_HPP
#define POPDYN_TRACE_CSV_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "popdyn/fit.hpp"

namespace popdyn {

/// Reads view traces from CSV with the mandatory header
/// `video_id,day,views`. Multiple videos per file are allowed; rows may
/// arrive in any order; missing days are filled with zero views. Malformed
/// input raises CsvParseError carrying the 1-based line number. The result
/// is sorted by video_id.
std::vector<ViewTrace> read_view_traces(std::istream& in, const std::string& source_name);
std::vector<ViewTrace> read_view_traces_file(const std::string& path);

}  // namespace popdyn

#endif  // POPDYN_TRACE_CSV_HPP
