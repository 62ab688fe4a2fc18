#ifndef POPDYN_IOUTIL_HPP
#define POPDYN_IOUTIL_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace popdyn {

/// FNV-1a 64-bit content digest, reported as "fnv1a64:<16 hex digits>".
/// Used by run manifests to pin input files; not cryptographic.
std::uint64_t fnv1a64(std::string_view bytes);
std::string digest_string(std::string_view bytes);
std::string digest_file(const std::string& path);

/// Shortest decimal form that round-trips a double (17 significant digits),
/// always with '.' as the separator regardless of locale.
std::string format_double(double v);

}  // namespace popdyn

#endif  // POPDYN_IOUTIL_HPP
