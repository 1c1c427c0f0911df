#include "metalg/io.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "metalg/error.hpp"

namespace metalg::io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

std::size_t element_index(const std::vector<std::string>& names, const json& j,
                          const std::string& where) {
  if (!j.is_string()) throw InputError(where + ": expected an element name");
  const auto& name = j.get_ref<const std::string&>();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  throw InputError(where + ": unknown element '" + name + "'");
}

void read_table(const json& j, std::size_t depth, const std::vector<std::string>& names,
                const std::string& where, std::vector<std::size_t>& out) {
  if (depth == 0) {
    out.push_back(element_index(names, j, where));
    return;
  }
  if (!j.is_array() || j.size() != names.size()) {
    throw InputError(where + ": expected an array of " + std::to_string(names.size()) + " entries");
  }
  for (std::size_t i = 0; i < j.size(); ++i) {
    read_table(j[i], depth - 1, names, where + "[" + names[i] + "]", out);
  }
}

json write_table(const MetricAlgebra& a, const OpTable& t, std::size_t depth, std::size_t& cell) {
  if (depth == 0) return a.name(t.values[cell++]);
  json arr = json::array();
  for (std::size_t i = 0; i < a.size(); ++i) arr.push_back(write_table(a, t, depth - 1, cell));
  return arr;
}

}  // namespace

ExtDistance distance_from_json(const json& j) {
  if (j.is_string()) return parse_distance(j.get<std::string>());
  if (j.is_number_unsigned() || j.is_number_integer()) {
    const auto v = j.get<std::int64_t>();
    if (v < 0) throw InputError("negative distance " + std::to_string(v));
    return ExtDistance(v);
  }
  throw InputError("distance must be an integer or a string literal (\"1.5\", \"3/2\", \"inf\")");
}

json distance_to_json(const ExtDistance& d) { return d.to_string(); }

MetricAlgebra algebra_from_json(const json& j) {
  std::vector<Symbol> symbols;
  const json& sig = field(j, "signature");
  if (!sig.is_array()) throw InputError("signature: expected an array");
  for (std::size_t i = 0; i < sig.size(); ++i) {
    const std::string where = "signature[" + std::to_string(i) + "]";
    const json& name = field(sig[i], "name");
    const json& arity = field(sig[i], "arity");
    if (!name.is_string()) throw InputError(where + ".name: expected a string");
    if (!arity.is_number_unsigned()) throw InputError(where + ".arity: expected a natural number");
    symbols.push_back({name.get<std::string>(), arity.get<std::size_t>()});
  }
  Signature signature(std::move(symbols));

  std::vector<std::string> names;
  const json& carrier = field(j, "carrier");
  if (!carrier.is_array() || carrier.empty()) throw InputError("carrier: expected a nonempty array");
  for (const auto& c : carrier) {
    if (!c.is_string()) throw InputError("carrier: element names must be strings");
    names.push_back(c.get<std::string>());
  }

  const json& dist = field(j, "dist");
  if (!dist.is_array()) throw InputError("dist: expected an array of rows");
  std::vector<std::vector<ExtDistance>> rows;
  for (std::size_t r = 0; r < dist.size(); ++r) {
    if (!dist[r].is_array()) throw InputError("dist[" + std::to_string(r) + "]: expected an array");
    rows.emplace_back();
    for (std::size_t c = 0; c < dist[r].size(); ++c) {
      try {
        rows.back().push_back(distance_from_json(dist[r][c]));
      } catch (const InputError& e) {
        throw InputError("dist[" + std::to_string(r) + "][" + std::to_string(c) + "]: " + e.what());
      }
    }
  }
  if (rows.size() != names.size()) {
    throw InputError("dist: " + std::to_string(rows.size()) + " rows for " +
                     std::to_string(names.size()) + " elements");
  }
  DistMatrix matrix = DistMatrix::from_rows(rows);

  const json& ops = field(j, "ops");
  if (!ops.is_object()) throw InputError("ops: expected an object");
  std::vector<OpTable> tables;
  for (const auto& s : signature.symbols()) {
    if (!ops.contains(s.name)) throw InputError("ops: missing table for '" + s.name + "'");
    OpTable t{s.arity, {}};
    read_table(ops.at(s.name), s.arity, names, "ops." + s.name, t.values);
    tables.push_back(std::move(t));
  }
  for (const auto& [key, value] : ops.items()) {
    if (!signature.index_of(key)) throw InputError("ops: table for undeclared symbol '" + key + "'");
  }
  return MetricAlgebra(std::move(signature), std::move(names), std::move(matrix), std::move(tables));
}

json algebra_to_json(const MetricAlgebra& a) {
  json j;
  j["signature"] = json::array();
  for (const auto& s : a.signature().symbols()) {
    j["signature"].push_back({{"name", s.name}, {"arity", s.arity}});
  }
  j["carrier"] = a.names();
  j["dist"] = json::array();
  for (std::size_t r = 0; r < a.size(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < a.size(); ++c) row.push_back(distance_to_json(a.dist(r, c)));
    j["dist"].push_back(std::move(row));
  }
  j["ops"] = json::object();
  for (std::size_t s = 0; s < a.signature().size(); ++s) {
    std::size_t cell = 0;
    j["ops"][a.signature()[s].name] = write_table(a, a.table(s), a.signature()[s].arity, cell);
  }
  return j;
}

Homomorphism homomorphism_from_json(const json& j) {
  auto source = std::make_shared<const MetricAlgebra>(algebra_from_json(field(j, "source")));
  auto target = std::make_shared<const MetricAlgebra>(algebra_from_json(field(j, "target")));
  const json& map = field(j, "map");
  if (!map.is_object()) throw InputError("map: expected an object");
  std::vector<std::size_t> values(source->size(), target->size());
  for (const auto& [key, value] : map.items()) {
    auto from = source->element(key);
    if (!from) throw InputError("map: unknown source element '" + key + "'");
    values[*from] = element_index(target->names(), value, "map." + key);
  }
  for (std::size_t e = 0; e < values.size(); ++e) {
    if (values[e] == target->size()) throw InputError("map: no image for '" + source->name(e) + "'");
  }
  return make_homomorphism(std::move(values), source, target);
}

json homomorphism_to_json(const Homomorphism& h) {
  json map = json::object();
  for (std::size_t e = 0; e < h.map.size(); ++e) map[h.source->name(e)] = h.target->name(h.map[e]);
  return {{"source", algebra_to_json(*h.source)},
          {"target", algebra_to_json(*h.target)},
          {"map", map}};
}

std::string read_text(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) {
  const std::string text = read_text(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

AlgebraPtr load_algebra(const std::string& path) {
  try {
    return std::make_shared<const MetricAlgebra>(algebra_from_json(read_json(path)));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::vector<MEquation> load_equations(const Signature& sig, const std::string& path) {
  try {
    return parse_equations(sig, read_text(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

}  // namespace metalg::io
