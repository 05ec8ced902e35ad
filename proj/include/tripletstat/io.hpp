#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "tripletstat/errors.hpp"
#include "tripletstat/rng.hpp"
#include "tripletstat/types.hpp"

namespace tripletstat {

/// Outcomes grouped by cluster id; iteration order is lexicographic in id.
struct ClusterTable {
  std::map<std::string, std::vector<std::uint8_t>> clusters;

  std::size_t cluster_count() const { return clusters.size(); }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

/// Parses "0"/"1"; returns -1 for anything else.
inline int parse_binary(const std::string& token) {
  if (token == "0") return 0;
  if (token == "1") return 1;
  return -1;
}

inline bool looks_numeric(const std::string& token) {
  if (token.empty()) return false;
  char* end = nullptr;
  std::strtod(token.c_str(), &end);
  return end == token.c_str() + token.size();
}

inline std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

}  // namespace detail

/// Read an n x 3 binary outcome table: one triplet per row, three 0/1
/// fields, optional header (detected by a non-numeric first row).
inline TripletData read_triplet_csv(const std::string& path) {
  auto lines = detail::read_lines(path);

  std::size_t start = 0;
  if (!lines.empty()) {
    bool header = false;
    for (const auto& f : detail::split_csv_line(lines[0]))
      if (!detail::looks_numeric(f)) header = true;
    if (header) start = 1;
  }
  if (lines.size() <= start) throw empty_file_error(path);

  TripletData data;
  for (std::size_t i = start; i < lines.size(); ++i) {
    const std::size_t row_number = i + 1;  // 1-based, counting the header
    auto fields = detail::split_csv_line(lines[i]);
    if (fields.size() != 3) throw parse_error(row_number, lines[i]);
    TripletRow row{};
    for (int k = 0; k < 3; ++k) {
      const int v = detail::parse_binary(fields[k]);
      if (v < 0) throw parse_error(row_number, fields[k]);
      row[k] = static_cast<std::uint8_t>(v);
    }
    data.rows.push_back(row);
  }
  return data;
}

/// Read a two-column table of (cluster_id, outcome) rows.
inline ClusterTable read_cluster_csv(const std::string& path) {
  auto lines = detail::read_lines(path);

  std::size_t start = 0;
  if (!lines.empty()) {
    auto fields = detail::split_csv_line(lines[0]);
    if (fields.size() == 2 && detail::parse_binary(fields[1]) < 0) start = 1;
  }
  if (lines.size() <= start) throw empty_file_error(path);

  ClusterTable table;
  for (std::size_t i = start; i < lines.size(); ++i) {
    const std::size_t row_number = i + 1;
    auto fields = detail::split_csv_line(lines[i]);
    if (fields.size() != 2 || fields[0].empty()) throw parse_error(row_number, lines[i]);
    const int v = detail::parse_binary(fields[1]);
    if (v < 0) throw parse_error(row_number, fields[1]);
    table.clusters[fields[0]].push_back(static_cast<std::uint8_t>(v));
  }
  return table;
}

/// Draw 3 outcomes without replacement from every cluster.
///
/// Each cluster gets its own substream keyed by (seed, hash of id), so the
/// selection within one cluster does not depend on which other clusters are
/// present. Output rows follow lexicographic cluster-id order.
inline TripletData subsample_clusters(const ClusterTable& table, std::uint64_t seed) {
  std::vector<std::string> too_small;
  for (const auto& [id, outcomes] : table.clusters)
    if (outcomes.size() < 3) too_small.push_back(id);
  if (!too_small.empty()) throw cluster_too_small_error(std::move(too_small));
  if (table.clusters.empty()) throw data_error("cluster table is empty");

  TripletData data;
  for (const auto& [id, outcomes] : table.clusters) {
    Splitmix64 rng(substream_seed(seed, fnv1a64(id)));
    std::vector<std::uint8_t> pool = outcomes;
    TripletRow row{};
    for (int k = 0; k < 3; ++k) {
      const std::size_t pick =
          static_cast<std::size_t>(k) + rng.below(static_cast<std::uint64_t>(pool.size() - k));
      std::swap(pool[k], pool[pick]);
      row[k] = pool[k];
    }
    data.rows.push_back(row);
  }
  return data;
}

}  // namespace tripletstat
