#include "dym/io.hpp"

#include <fstream>
#include <sstream>

namespace dym {

using nlohmann::json;

Topology topology_from_string(const std::string& s) {
  if (s == "block") return Topology::Block;
  if (s == "sphere") return Topology::Sphere;
  throw MalformedInput("unknown topology '" + s + "'");
}

json matrix_to_json(const Matrix2d& m) {
  json out = json::array();
  for (int i = 0; i < 4; ++i) {
    const auto& z = m(i / 2, i % 2);
    out.push_back(json::array({z.real(), z.imag()}));
  }
  return out;
}

Matrix2d matrix_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) throw MalformedInput("matrix must be an array of 4 [re, im] pairs");
  Matrix2d m;
  for (int i = 0; i < 4; ++i) {
    const json& z = j[static_cast<std::size_t>(i)];
    if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
      throw MalformedInput("matrix entry must be a [re, im] pair of numbers");
    }
    m(i / 2, i % 2) = {z[0].get<double>(), z[1].get<double>()};
  }
  return m;
}

json to_json(const Cochain& f) {
  json data = json::array();
  for (const auto& v : f.values()) data.push_back(matrix_to_json(v));
  const auto& n = f.domain().sizes();
  return json{{"version", kFormFileVersion},
              {"topology", to_string(f.domain().topology())},
              {"sizes", json::array({n[0], n[1], n[2], n[3]})},
              {"degree", f.degree()},
              {"copy", to_string(f.copy())},
              {"data", std::move(data)}};
}

namespace {

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw MalformedInput(std::string("missing field '") + key + "'");
  return *it;
}

}  // namespace

Cochain cochain_from_json(const json& j) {
  if (!j.is_object()) throw MalformedInput("form file must be a JSON object");
  const json& version = field(j, "version");
  if (!version.is_number_integer()) throw MalformedInput("'version' must be an integer");
  if (version.get<int>() != kFormFileVersion) {
    throw VersionMismatch("form file version " + version.dump() + ", expected " + std::to_string(kFormFileVersion));
  }
  const json& topology = field(j, "topology");
  const json& sizes = field(j, "sizes");
  const json& degree = field(j, "degree");
  const json& copy = field(j, "copy");
  const json& data = field(j, "data");
  if (!topology.is_string()) throw MalformedInput("'topology' must be a string");
  if (!sizes.is_array() || sizes.size() != kDim) throw MalformedInput("'sizes' must hold 4 integers");
  std::array<int, kDim> n{};
  for (int i = 0; i < kDim; ++i) {
    if (!sizes[static_cast<std::size_t>(i)].is_number_integer()) throw MalformedInput("'sizes' must hold 4 integers");
    n[static_cast<std::size_t>(i)] = sizes[static_cast<std::size_t>(i)].get<int>();
    if (n[static_cast<std::size_t>(i)] < 2) throw MalformedInput("'sizes' entries must be >= 2");
  }
  if (!degree.is_number_integer() || degree.get<int>() < 0 || degree.get<int>() > kDim) {
    throw MalformedInput("'degree' must be an integer in 0..4");
  }
  if (!copy.is_string() || (copy != "base" && copy != "tilde")) throw MalformedInput("'copy' must be \"base\" or \"tilde\"");
  if (!data.is_array()) throw MalformedInput("'data' must be an array");

  Cochain f(Domain(n, topology_from_string(topology.get<std::string>())), degree.get<int>(),
            copy == "tilde" ? Copy::Tilde : Copy::Base);
  if (data.size() != f.values().size()) {
    throw ShapeMismatch("'data' holds " + std::to_string(data.size()) + " matrices, the domain needs " +
                        std::to_string(f.values().size()));
  }
  for (std::size_t i = 0; i < data.size(); ++i) f.values()[i] = matrix_from_json(data[i]);
  return f;
}

std::string serialize(const Cochain& f) { return to_json(f).dump(); }

Cochain deserialize(std::string_view bytes) {
  json j = json::parse(bytes.begin(), bytes.end(), nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw MalformedInput("form file is not valid JSON");
  return cochain_from_json(j);
}

void write_cochain(const std::filesystem::path& path, const Cochain& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << serialize(f) << '\n';
}

Cochain read_cochain(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return deserialize(ss.str());
}

}  // namespace dym
