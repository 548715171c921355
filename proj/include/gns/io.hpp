#pragma once

// JSON and CSV serialization for the domain types, plus the persistent
// count-cache format (JSON lines, append-only, last write wins on load).

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gns/analysis.hpp"
#include "gns/counting.hpp"
#include "gns/labeling.hpp"
#include "gns/partition.hpp"
#include "gns/semigroup.hpp"

namespace gns {

using Json = nlohmann::ordered_json;  // emits keys in insertion order

namespace detail {

inline Json point_to_json(const Point& p) {
  Json a = Json::array();
  for (int i = 0; i < p.dim(); ++i) a.push_back(p[i]);
  return a;
}

inline Point point_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("point: expected an array of integers");
  std::vector<int> c;
  c.reserve(j.size());
  for (const auto& v : j) c.push_back(v.template get<int>());
  return Point{std::move(c)};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Partitions: {"dim": e, "entries": [[[i1,...,ie], value], ...]} with entries
// in colex order; dim-1 partitions are also accepted as a bare parts array.

inline Json partition_to_json(const MultiPartition& p) {
  Json j;
  j["dim"] = p.dim();
  Json entries = Json::array();
  for (const auto& [idx, v] : p.entries())
    entries.push_back(Json::array({detail::point_to_json(idx), v}));
  j["entries"] = std::move(entries);
  return j;
}

inline MultiPartition partition_from_json(const Json& j) {
  if (j.is_array()) {  // dim-1 shorthand [4,2,1]
    std::vector<int> parts;
    parts.reserve(j.size());
    for (const auto& v : j) parts.push_back(v.template get<int>());
    return MultiPartition::from_parts(parts);
  }
  const int dim = j.at("dim").template get<int>();
  std::vector<MultiPartition::Entry> entries;
  for (const auto& e : j.at("entries")) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("partition: each entry must be [index, value]");
    entries.emplace_back(detail::point_from_json(e.at(0)), e.at(1).template get<int>());
  }
  return MultiPartition::make(dim, std::move(entries));
}

// ---------------------------------------------------------------------------
// Monoids and multsets: {"dim": d, "gaps": [...]}/{"dim": d, "points": [...]}
// in graded-lex order.  Reading canonicalizes; additive closure of a gap set
// is a semantic property checked separately via validate_gns.

inline Json gns_to_json(const Gns& s) {
  Json j;
  j["dim"] = s.dim();
  Json gaps = Json::array();
  for (const Point& g : s.gaps()) gaps.push_back(detail::point_to_json(g));
  j["gaps"] = std::move(gaps);
  return j;
}

inline Gns gns_from_json(const Json& j) {
  const int dim = j.at("dim").template get<int>();
  std::vector<Point> gaps;
  for (const auto& g : j.at("gaps")) gaps.push_back(detail::point_from_json(g));
  return Gns::make(dim, std::move(gaps));
}

inline Json multset_to_json(const Multset& m) {
  Json j;
  j["dim"] = m.dim();
  Json pts = Json::array();
  for (const Point& p : m.points()) pts.push_back(detail::point_to_json(p));
  j["points"] = std::move(pts);
  return j;
}

inline Multset multset_from_json(const Json& j) {
  const int dim = j.at("dim").template get<int>();
  std::vector<Point> pts;
  for (const auto& p : j.at("points")) pts.push_back(detail::point_from_json(p));
  return Multset::make(dim, std::move(pts));
}

// ---------------------------------------------------------------------------
// Labelings: {"dims": [m1,...,md], "labels": [{"at": [...], "partition":
// ...}, ...]} with grid points in graded-lex order and empty partitions
// included explicitly.

inline Json labeling_to_json(const PartitionLabeling& L) {
  Json j;
  j["dims"] = L.dims();
  Json labels = Json::array();
  for (const Point& x : L.grid_points()) {
    Json cell;
    cell["at"] = detail::point_to_json(x);
    cell["partition"] = partition_to_json(L.label(x));
    labels.push_back(std::move(cell));
  }
  j["labels"] = std::move(labels);
  return j;
}

inline PartitionLabeling labeling_from_json(const Json& j) {
  std::vector<int> dims = j.at("dims").template get<std::vector<int>>();
  std::vector<std::pair<Point, MultiPartition>> labels;
  for (const auto& cell : j.at("labels"))
    labels.emplace_back(detail::point_from_json(cell.at("at")),
                        partition_from_json(cell.at("partition")));
  return PartitionLabeling::make(std::move(dims), std::move(labels));
}

// ---------------------------------------------------------------------------
// Count cache: one JSON object per line, decimal-string values, optional "q"
// and "shape" key parts.  Append-only on disk; on load the last line wins
// for a repeated key.

inline Json count_cell_to_json(const CountKey& key, const BigCount& value) {
  Json j;
  j["stat"] = key.stat;
  j["d"] = key.d;
  j["g"] = key.g;
  if (key.q >= 0) j["q"] = key.q;
  if (!key.shape.empty()) j["shape"] = key.shape;
  j["value"] = value.str();
  return j;
}

inline std::pair<CountKey, BigCount> count_cell_from_json(const Json& j) {
  CountKey key;
  key.stat = j.at("stat").template get<std::string>();
  key.d = j.at("d").template get<int>();
  key.g = j.at("g").template get<long long>();
  if (j.contains("q")) key.q = j.at("q").template get<long long>();
  if (j.contains("shape")) key.shape = j.at("shape").template get<std::string>();
  const auto& v = j.at("value");
  BigCount value = v.is_string() ? BigCount(v.template get<std::string>())
                                 : BigCount(v.template get<long long>());
  return {std::move(key), std::move(value)};
}

inline void write_count_table(std::ostream& os, const CountTable& table) {
  for (const auto& [key, value] : table.cells())
    os << count_cell_to_json(key, value).dump() << '\n';
}

inline CountTable read_count_table(std::istream& is) {
  CountTable table;
  std::string line;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto [key, value] = count_cell_from_json(Json::parse(line));
    table.set(key, value);
  }
  return table;
}

// Missing file reads as an empty table; anything unparsable still throws.
inline CountTable load_count_cache(const std::string& path) {
  std::ifstream in(path);
  if (!in) return {};
  return read_count_table(in);
}

inline void append_count_cache(const std::string& path, const CountTable& delta) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot open cache file for append: " + path);
  write_count_table(out, delta);
}

// ---------------------------------------------------------------------------
// CSV emitters.  Fixed headers so table diffs stay mechanical; floats carry
// 12 significant digits.

inline std::string format_sig12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline void write_counts_csv(std::ostream& os,
                             const std::vector<std::pair<long long, BigCount>>& rows) {
  os << "g,value\n";
  for (const auto& [g, v] : rows) os << g << ',' << v.str() << '\n';
}

inline void write_shape3_csv(
    std::ostream& os,
    const std::vector<std::tuple<long long, BigCount, BigCount>>& rows) {
  os << "g,n3,n21\n";
  for (const auto& [g, n3, n21] : rows)
    os << g << ',' << n3.str() << ',' << n21.str() << '\n';
}

inline void write_depth_csv(
    std::ostream& os,
    const std::vector<std::tuple<long long, long long, BigCount>>& rows) {
  os << "g,q,value\n";
  for (const auto& [g, q, v] : rows) os << g << ',' << q << ',' << v.str() << '\n';
}

inline void write_fig5_csv(std::ostream& os, const std::vector<Fig5Row>& rows) {
  os << "g,inv_g,scaled\n";
  for (const auto& r : rows)
    os << r.g << ',' << format_sig12(r.inv_g) << ',' << format_sig12(r.scaled) << '\n';
}

}  // namespace gns
