// Copyright 2026 The gapart Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gapart/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace gapart {
namespace {

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  return out;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

// Parses all whitespace-separated integers of a line; false on junk.
bool parse_ints(const std::string& line, std::vector<long long>& out) {
  out.clear();
  const char* p = line.data();
  const char* end = p + line.size();
  while (p < end) {
    while (p < end && std::isspace(static_cast<unsigned char>(*p))) ++p;
    if (p == end) break;
    long long v = 0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc() || (next < end && !std::isspace(static_cast<unsigned char>(*next)))) return false;
    out.push_back(v);
    p = next;
  }
  return true;
}

}  // namespace

CsrGraph parse_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("matrix market: empty file");
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || lower(object) != "matrix") {
    throw FormatError("matrix market: malformed header");
  }
  if (lower(format) != "coordinate") throw FormatError("matrix market: only coordinate format is supported");
  field = lower(field);
  if (field != "real" && field != "pattern" && field != "integer") {
    throw FormatError("matrix market: unsupported field '" + field + "'");
  }
  symmetry = lower(symmetry);
  if (symmetry != "general" && symmetry != "symmetric" && symmetry != "skew-symmetric" &&
      symmetry != "hermitian") {
    throw FormatError("matrix market: malformed header");
  }

  do {
    if (!std::getline(in, line)) throw FormatError("matrix market: missing size line");
  } while (line.empty() || line[0] == '%' || blank(line));
  long long rows = 0, cols = 0, nnz = 0;
  {
    std::istringstream size_line(line);
    if (!(size_line >> rows >> cols >> nnz) || rows <= 0 || cols <= 0 || nnz < 0) {
      throw FormatError("matrix market: malformed size line");
    }
  }
  const auto n = static_cast<NodeId>(std::max(rows, cols));
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(static_cast<std::size_t>(nnz));
  long long seen = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '%' || blank(line)) continue;
    std::istringstream entry(line);
    long long i = 0, j = 0;
    if (!(entry >> i >> j)) throw FormatError("matrix market: malformed entry '" + line + "'");
    if (field != "pattern") {
      double value = 0.0;
      if (!(entry >> value)) throw FormatError("matrix market: entry missing value");
    }
    if (i < 1 || i > rows || j < 1 || j > cols) throw FormatError("matrix market: entry outside declared size");
    ++seen;
    if (i != j) edges.emplace_back(static_cast<NodeId>(i - 1), static_cast<NodeId>(j - 1));
  }
  if (seen != nnz) {
    throw FormatError("matrix market: declared " + std::to_string(nnz) + " entries, found " +
                      std::to_string(seen));
  }
  return from_edge_list(std::span<const std::pair<NodeId, NodeId>>(edges), n);
}

CsrGraph read_matrix_market(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_matrix_market(in);
}

CsrGraph parse_metis_graph(std::istream& in) {
  std::string line;
  std::vector<long long> ints;
  do {
    if (!std::getline(in, line)) throw FormatError("metis: missing header");
  } while (!line.empty() && line[0] == '%');
  if (!parse_ints(line, ints) || ints.size() < 2 || ints.size() > 4) throw FormatError("metis: malformed header");
  const long long n = ints[0], m = ints[1];
  if (n <= 0 || m < 0) throw FormatError("metis: malformed header");
  const long long fmt = ints.size() >= 3 ? ints[2] : 0;
  const bool edge_weights = fmt % 10 == 1;
  const bool vertex_weights = (fmt / 10) % 10 == 1;
  const long long ncon = vertex_weights ? (ints.size() == 4 ? ints[3] : 1) : 0;
  if (fmt != 0 && fmt != 1 && fmt != 10 && fmt != 11 && fmt != 100 && fmt != 101 && fmt != 110 && fmt != 111) {
    throw FormatError("metis: unsupported fmt " + std::to_string(fmt));
  }
  const bool vertex_sizes = fmt >= 100;

  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(static_cast<std::size_t>(2 * m));
  long long entries = 0;
  long long vertex = 0;
  while (vertex < n && std::getline(in, line)) {
    if (!line.empty() && line[0] == '%') continue;
    if (!parse_ints(line, ints)) throw FormatError("metis: malformed adjacency line " + std::to_string(vertex + 1));
    std::size_t k = static_cast<std::size_t>(ncon) + (vertex_sizes ? 1 : 0);
    if (ints.size() < k) throw FormatError("metis: missing vertex weights");
    const std::size_t stride = edge_weights ? 2 : 1;
    if ((ints.size() - k) % stride != 0) throw FormatError("metis: dangling edge weight");
    for (; k < ints.size(); k += stride) {
      const long long j = ints[k];
      if (j == 0) throw FormatError("metis: node index 0 in adjacency list (indices are 1-based)");
      if (j < 0 || j > n) throw FormatError("metis: node index out of range");
      edges.emplace_back(static_cast<NodeId>(vertex), static_cast<NodeId>(j - 1));
      ++entries;
    }
    ++vertex;
  }
  if (vertex < n) throw FormatError("metis: expected " + std::to_string(n) + " adjacency lines");
  while (std::getline(in, line)) {
    if (!(line.empty() || line[0] == '%' || blank(line))) throw FormatError("metis: trailing data after adjacency lists");
  }
  if (entries != 2 * m) {
    throw FormatError("metis: header declares " + std::to_string(m) + " edges but lists hold " +
                      std::to_string(entries) + " entries");
  }
  auto g = from_edge_list(std::span<const std::pair<NodeId, NodeId>>(edges), static_cast<NodeId>(n));
  if (g.num_edges() != m) throw FormatError("metis: adjacency lists are not symmetric");
  return g;
}

CsrGraph read_metis_graph(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_metis_graph(in);
}

void write_metis_graph(const CsrGraph& g, std::ostream& out) {
  out << g.num_nodes() << ' ' << g.num_edges() << '\n';
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    bool first = true;
    for (NodeId j : g.neighbors(i)) {
      if (!first) out << ' ';
      out << (j + 1);
      first = false;
    }
    out << '\n';
  }
}

void write_metis_graph(const CsrGraph& g, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_metis_graph(g, out);
  if (!out) throw FormatError("failed writing " + path.string());
}

CsrGraph read_graph(const std::filesystem::path& path) {
  if (lower(path.extension().string()) == ".mtx") return read_matrix_market(path);
  return read_metis_graph(path);
}

ComponentExtraction read_graph_for_partitioning(const std::filesystem::path& path) {
  return largest_connected_component(read_graph(path));
}

void write_partition(const PartitionLabels& labels, std::ostream& out) {
  for (auto l : labels.labels) out << l << '\n';
}

void write_partition(const PartitionLabels& labels, const std::filesystem::path& path) {
  labels.validate();
  auto out = open_out(path);
  write_partition(labels, out);
  if (!out) throw FormatError("failed writing " + path.string());
}

PartitionLabels parse_partition(std::istream& in, std::int32_t num_parts, std::optional<NodeId> expected_nodes) {
  if (num_parts < 1) throw std::invalid_argument("read_partition: num_parts must be >= 1");
  PartitionLabels out;
  out.num_parts = num_parts;
  std::string line;
  std::vector<long long> ints;
  while (std::getline(in, line)) {
    if (blank(line)) continue;
    if (!parse_ints(line, ints) || ints.size() != 1) {
      throw FormatError("partition: line " + std::to_string(out.labels.size() + 1) + " is not a single integer");
    }
    if (ints[0] < 0 || ints[0] >= num_parts) {
      throw FormatError("partition: label " + std::to_string(ints[0]) + " outside [0," + std::to_string(num_parts) +
                        ")");
    }
    out.labels.push_back(static_cast<std::int32_t>(ints[0]));
  }
  if (expected_nodes && static_cast<NodeId>(out.labels.size()) != *expected_nodes) {
    throw FormatError("partition: expected " + std::to_string(*expected_nodes) + " labels, found " +
                      std::to_string(out.labels.size()));
  }
  return out;
}

PartitionLabels read_partition(const std::filesystem::path& path, std::int32_t num_parts,
                               std::optional<NodeId> expected_nodes) {
  auto in = open_in(path);
  return parse_partition(in, num_parts, expected_nodes);
}

}  // namespace gapart
