#pragma once

// JSON encodings: matrices as [[re,im],[re,im],[re,im],[re,im]] (m11, m12,
// m21, m22) and forms as
//   { "version": 1, "topology": "block"|"sphere", "sizes": [N1,N2,N3,N4],
//     "degree": p, "copy": "base"|"tilde", "data": [matrix, ...] }
// with data in storage order (chart, k lexicographic, P ascending bitmask).

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "dym/cochain.hpp"

namespace dym {

inline constexpr int kFormFileVersion = 1;

class MalformedInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class VersionMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json matrix_to_json(const Matrix2d& m);
Matrix2d matrix_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Cochain& f);
/// Throws MalformedInput, VersionMismatch or ShapeMismatch.
Cochain cochain_from_json(const nlohmann::json& j);

std::string serialize(const Cochain& f);
Cochain deserialize(std::string_view bytes);

void write_cochain(const std::filesystem::path& path, const Cochain& f);
Cochain read_cochain(const std::filesystem::path& path);

Topology topology_from_string(const std::string& s);

}  // namespace dym
