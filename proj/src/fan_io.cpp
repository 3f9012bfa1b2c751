#include "toric_mirror/fan_io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>

#include <toml.hpp>

namespace toric {

namespace {

std::string where(const std::string& source, const toml::node& node) {
  const auto& b = node.source().begin;
  return source + ":" + std::to_string(b.line) + ":" + std::to_string(b.column) + ": ";
}

std::int64_t integer_at(const std::string& source, const toml::node& node, const std::string& what) {
  const auto* v = node.as_integer();
  if (!v) throw FanParseError(where(source, node) + what + " must be an integer");
  return v->get();
}

IntMatrix integer_matrix(const std::string& source, const toml::node& node, const std::string& what) {
  const auto* rows = node.as_array();
  if (!rows) throw FanParseError(where(source, node) + what + " must be an array of arrays");
  IntMatrix out;
  for (std::size_t r = 0; r < rows->size(); ++r) {
    const auto& row_node = *rows->get(r);
    const auto* row = row_node.as_array();
    if (!row)
      throw FanParseError(where(source, row_node) + what + " entry " + std::to_string(r + 1) +
                          " must be an array");
    IntVector v;
    for (const auto& x : *row) v.push_back(integer_at(source, x, what + " entry"));
    out.push_back(std::move(v));
  }
  return out;
}

const toml::table& table_at(const std::string& source, const toml::table& root, const char* key,
                            bool required) {
  static const toml::table empty;
  const toml::node* node = root.get(key);
  if (!node) {
    if (required) throw FanParseError(source + ": missing [" + std::string(key) + "] table");
    return empty;
  }
  if (!node->is_table()) throw FanParseError(where(source, *node) + key + " must be a table");
  return *node->as_table();
}

const toml::node& field(const std::string& source, const toml::table& t, const char* table,
                        const char* key) {
  const toml::node* node = t.get(key);
  if (!node) throw FanParseError(source + ": missing " + table + "." + key);
  return *node;
}

std::string matrix_toml(const IntMatrix& m) {
  std::string s = "[";
  for (std::size_t r = 0; r < m.size(); ++r) {
    s += r ? ", [" : "[";
    for (std::size_t c = 0; c < m[r].size(); ++c) s += (c ? ", " : "") + std::to_string(m[r][c]);
    s += "]";
  }
  return s + "]";
}

Fan make_fan(std::size_t dim, IntMatrix rays, std::vector<std::vector<std::size_t>> cones_1based) {
  Fan f{dim, std::move(rays), {}};
  for (auto c : cones_1based) {
    for (auto& i : c) --i;
    f.max_cones.push_back(std::move(c));
  }
  return f;
}

std::vector<FanSpec> make_builtins() {
  std::vector<FanSpec> out;
  out.push_back({"p1", make_fan(1, {{1}, {-1}}, {{1}, {2}}), std::nullopt, std::nullopt});
  out.push_back({"p2", make_fan(2, {{1, 0}, {0, 1}, {-1, -1}}, {{1, 2}, {2, 3}, {3, 1}}),
                 std::nullopt, std::nullopt});
  out.push_back({"f0", make_fan(2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {{1, 3}, {3, 2}, {2, 4}, {4, 1}}),
                 std::nullopt, std::nullopt});
  out.push_back({"f1", make_fan(2, {{1, 0}, {0, 1}, {-1, 1}, {0, -1}}, {{1, 2}, {2, 3}, {3, 4}, {4, 1}}),
                 std::nullopt, std::nullopt});
  out.push_back({"f2", make_fan(2, {{0, 1}, {0, -1}, {1, 0}, {-1, -2}}, {{1, 3}, {3, 2}, {2, 4}, {4, 1}}),
                 IntMatrix{{0, -2, 1, 1}, {1, 1, 0, 0}}, std::nullopt});
  out.push_back({"p1xp2",
                 make_fan(3, {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, -1, -1}},
                          {{1, 3, 4}, {1, 4, 5}, {1, 5, 3}, {2, 3, 4}, {2, 4, 5}, {2, 5, 3}}),
                 std::nullopt, std::nullopt});
  out.push_back({"p1xf2",
                 make_fan(3,
                          {{0, 1, 0}, {0, -1, 0}, {1, 0, 0}, {-1, -2, 0}, {0, 0, 1}, {0, 0, -1}},
                          {{1, 3, 5}, {3, 2, 5}, {2, 4, 5}, {4, 1, 5},
                           {1, 3, 6}, {3, 2, 6}, {2, 4, 6}, {4, 1, 6}}),
                 IntMatrix{{0, -2, 1, 1, 0, 0}, {1, 1, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 1}}, std::nullopt});
  return out;
}

const std::vector<FanSpec>& builtins() {
  static const std::vector<FanSpec> all = make_builtins();
  return all;
}

}  // namespace

FanSpec parse_fan_toml(std::string_view text, const std::string& source) {
  toml::table root;
  try {
    root = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    const auto& b = e.source().begin;
    throw FanParseError(source + ":" + std::to_string(b.line) + ":" + std::to_string(b.column) +
                        ": " + std::string(e.description()));
  }
  FanSpec spec;
  spec.name = source;

  const auto& fan = table_at(source, root, "fan", true);
  const auto& dim_node = field(source, fan, "fan", "dim");
  const auto dim = integer_at(source, dim_node, "fan.dim");
  if (dim < 1) throw FanParseError(where(source, dim_node) + "fan.dim must be positive");
  spec.fan.dim = static_cast<std::size_t>(dim);
  spec.fan.rays = integer_matrix(source, field(source, fan, "fan", "rays"), "fan.rays");

  const auto& cones_node = field(source, fan, "fan", "max_cones");
  for (const auto& cone : integer_matrix(source, cones_node, "fan.max_cones")) {
    std::vector<std::size_t> c;
    for (auto i : cone) {
      if (i < 1 || static_cast<std::size_t>(i) > spec.fan.rays.size())
        throw FanParseError(where(source, cones_node) + "max_cones refers to ray " +
                            std::to_string(i) + ", but there are " +
                            std::to_string(spec.fan.rays.size()) + " rays");
      c.push_back(static_cast<std::size_t>(i - 1));
    }
    spec.fan.max_cones.push_back(std::move(c));
  }

  const auto& basis = table_at(source, root, "basis", false);
  if (const auto* node = basis.get("divisor_matrix")) {
    IntMatrix m = integer_matrix(source, *node, "basis.divisor_matrix");
    const std::size_t r = spec.fan.rays.size() > spec.fan.dim ? spec.fan.rays.size() - spec.fan.dim : 0;
    if (m.size() != r)
      throw FanParseError(where(source, *node) + "divisor_matrix needs " + std::to_string(r) +
                          " rows, found " + std::to_string(m.size()));
    for (std::size_t a = 0; a < m.size(); ++a)
      if (m[a].size() != spec.fan.rays.size())
        throw FanParseError(where(source, *node) + "divisor_matrix row " + std::to_string(a + 1) +
                            " needs " + std::to_string(spec.fan.rays.size()) + " entries");
    spec.divisor_matrix = std::move(m);
  }

  const auto& options = table_at(source, root, "options", false);
  if (const auto* node = options.get("order")) {
    const auto order = integer_at(source, *node, "options.order");
    if (order < 1) throw FanParseError(where(source, *node) + "options.order must be at least 1");
    spec.order = static_cast<int>(order);
  }

  try {
    check_structure(spec.fan);
  } catch (const FanStructureError& e) {
    throw FanParseError(source + ": " + e.what());
  }
  return spec;
}

FanSpec load_fan_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FanParseError(path + ": cannot open file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_fan_toml(text.str(), path);
}

std::string to_toml(const FanSpec& spec) {
  std::ostringstream out;
  out << "[fan]\n";
  out << "dim = " << spec.fan.dim << "\n";
  out << "rays = " << matrix_toml(spec.fan.rays) << "\n";
  IntMatrix cones;
  for (const auto& c : spec.fan.max_cones) {
    IntVector v;
    for (auto i : c) v.push_back(static_cast<std::int64_t>(i) + 1);
    cones.push_back(std::move(v));
  }
  out << "max_cones = " << matrix_toml(cones) << "\n";
  if (spec.divisor_matrix) out << "\n[basis]\ndivisor_matrix = " << matrix_toml(*spec.divisor_matrix) << "\n";
  if (spec.order) out << "\n[options]\norder = " << *spec.order << "\n";
  return out.str();
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& b : builtins()) n.push_back(b.name);
    return n;
  }();
  return names;
}

std::optional<FanSpec> builtin_fan(const std::string& name) {
  for (const auto& b : builtins())
    if (b.name == name) return b;
  return std::nullopt;
}

FanSpec resolve_fan(const std::string& source) {
  if (auto b = builtin_fan(source)) return *b;
  return load_fan_file(source);
}

std::string fan_hash(const ToricManifold& x) {
  std::ostringstream canon;
  canon << "dim " << x.dim() << "\nrays " << matrix_toml(x.fan().rays) << "\ncones ";
  IntMatrix cones;
  for (const auto& c : x.fan().max_cones) cones.emplace_back(c.begin(), c.end());
  canon << matrix_toml(cones) << "\nbasis " << matrix_toml(x.basis().entries()) << "\n";
  const std::string text = canon.str();

  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i)
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return hex.str();
}

}  // namespace toric
