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

#include "gapart/dataset.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "gapart/io.hpp"
#include "gapart/mesh.hpp"
#include "gapart/random.hpp"

namespace gapart {
namespace {

using nlohmann::json;

double param(const GraphSpec& spec, const std::string& key) {
  const auto it = spec.params.find(key);
  if (it == spec.params.end()) {
    throw std::invalid_argument("graph spec '" + spec.family + "': missing parameter '" + key + "'");
  }
  return it->second;
}

double param_or(const GraphSpec& spec, const std::string& key, double fallback) {
  const auto it = spec.params.find(key);
  return it == spec.params.end() ? fallback : it->second;
}

NodeId int_param(const GraphSpec& spec, const std::string& key) {
  const double v = param(spec, key);
  if (v != std::floor(v) || v < 1 || v > 1e8) {
    throw std::invalid_argument("graph spec '" + spec.family + "': parameter '" + key + "' must be a positive integer");
  }
  return static_cast<NodeId>(v);
}

// Smallest-error integer unit u >= 1 with nodes(u) inside [lo, hi] when
// possible, otherwise the one closest to the target.
NodeId snap_unit(double target, NodeId lo, NodeId hi, double per_unit_sq) {
  NodeId best = 1;
  double best_err = std::abs(per_unit_sq - target);
  bool best_in = per_unit_sq >= lo && per_unit_sq <= hi;
  for (NodeId u = 2; per_unit_sq * u * u <= 4.0 * hi; ++u) {
    const double nodes = per_unit_sq * u * u;
    const bool in = nodes >= lo && nodes <= hi;
    const double err = std::abs(nodes - target);
    if ((in && !best_in) || (in == best_in && err < best_err)) {
      best = u;
      best_err = err;
      best_in = in;
    }
  }
  return best;
}

}  // namespace

CsrGraph make_graph(const GraphSpec& spec) {
  if (spec.family == "grid") return grid_graph(int_param(spec, "rows"), int_param(spec, "cols"));
  if (spec.family == "delaunay") {
    return delaunay_square(int_param(spec, "points"), param_or(spec, "width", 1.0), param_or(spec, "height", 1.0),
                           spec.seed);
  }
  if (spec.family == "graded_l") return l_shape(int_param(spec, "k"));
  if (spec.family == "hole3") return hole3(int_param(spec, "unit"));
  if (spec.family == "hole6") return hole6(int_param(spec, "unit"));
  throw std::invalid_argument("unknown graph family '" + spec.family + "'");
}

CsrGraph load_graph(const GraphSpec& spec, const std::filesystem::path& base_dir) {
  if (!spec.path.empty()) {
    std::filesystem::path p(spec.path);
    if (p.is_relative()) p = base_dir / p;
    return read_graph_for_partitioning(p).graph;
  }
  return make_graph(spec);
}

std::vector<GraphSpec> sample_specs(const SampleOptions& options) {
  if (options.families.empty()) throw std::invalid_argument("sample_specs: no families");
  if (options.count < 0) throw std::invalid_argument("sample_specs: negative count");
  if (options.min_nodes < 3 || options.max_nodes < options.min_nodes) {
    throw std::invalid_argument("sample_specs: need 3 <= min_nodes <= max_nodes");
  }
  std::vector<GraphSpec> out;
  out.reserve(static_cast<std::size_t>(options.count));
  const NodeId lo = options.min_nodes, hi = options.max_nodes;
  for (std::int32_t i = 0; i < options.count; ++i) {
    Rng rng(derive_seed(options.seed, static_cast<std::uint64_t>(i)));
    GraphSpec s;
    s.family = options.families[static_cast<std::size_t>(i) % options.families.size()];
    s.seed = rng.next();
    const double target = lo + static_cast<double>(rng.below(static_cast<std::uint64_t>(hi - lo) + 1));
    if (s.family == "grid") {
      const double aspect = rng.uniform(0.5, 2.0);
      auto rows = static_cast<NodeId>(std::max(2.0, std::round(std::sqrt(target * aspect))));
      auto cols = static_cast<NodeId>(std::max(2.0, std::round(target / rows)));
      const NodeId cmin = (lo + rows - 1) / rows, cmax = hi / rows;
      if (cmin <= cmax) cols = std::clamp(cols, cmin, cmax);
      s.params = {{"rows", rows}, {"cols", cols}};
    } else if (s.family == "delaunay") {
      // Unit square or the 2 x 1 rectangle, alternating by draw.
      const bool rect = rng.below(2) == 1;
      s.params = {{"points", target}, {"width", rect ? 2.0 : 1.0}, {"height", 1.0}};
    } else if (s.family == "graded_l") {
      s.params = {{"k", snap_unit(target, lo, hi, 3.0)}};
    } else if (s.family == "hole3") {
      s.params = {{"unit", snap_unit(target, lo, hi, 18.0)}};
    } else if (s.family == "hole6") {
      s.params = {{"unit", snap_unit(target, lo, hi, 29.0)}};
    } else {
      throw std::invalid_argument("unknown graph family '" + s.family + "'");
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<GraphSpec> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError("manifest " + path.string() + ": " + e.what());
  }
  const json& entries = doc.is_array() ? doc : doc.value("graphs", json::array());
  if (!entries.is_array()) throw FormatError("manifest " + path.string() + ": 'graphs' is not an array");
  std::vector<GraphSpec> out;
  try {
    for (const auto& e : entries) {
      GraphSpec s;
      s.path = e.value("path", "");
      s.family = e.value("family", "");
      if (e.contains("params")) {
        for (const auto& [k, v] : e.at("params").items()) s.params[k] = v.get<double>();
      }
      s.seed = e.value("seed", std::uint64_t{0});
      if (s.path.empty() && s.family.empty()) throw FormatError("manifest entry needs a path or a family");
      out.push_back(std::move(s));
    }
  } catch (const json::exception& e) {
    throw FormatError("manifest " + path.string() + ": " + e.what());
  }
  return out;
}

void write_manifest(const std::vector<GraphSpec>& specs, const std::filesystem::path& path) {
  json graphs = json::array();
  for (const auto& s : specs) {
    json params = json::object();
    for (const auto& [k, v] : s.params) params[k] = v;
    graphs.push_back({{"path", s.path}, {"family", s.family}, {"params", params}, {"seed", s.seed}});
  }
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << json{{"graphs", graphs}}.dump(2) << '\n';
  if (!out) throw FormatError("failed writing " + path.string());
}

std::vector<CsrGraph> load_dataset(const std::filesystem::path& manifest) {
  const auto specs = read_manifest(manifest);
  const auto base = manifest.parent_path();
  std::vector<CsrGraph> graphs;
  graphs.reserve(specs.size());
  for (const auto& s : specs) graphs.push_back(load_graph(s, base));
  return graphs;
}

std::string spec_name(const GraphSpec& spec) {
  if (!spec.path.empty()) return std::filesystem::path(spec.path).stem().string();
  std::ostringstream name;
  name << spec.family;
  for (const auto& [k, v] : spec.params) name << '_' << k << v;
  if (spec.family == "delaunay") name << "_s" << (spec.seed % 100000);
  return name.str();
}

}  // namespace gapart
