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

#include "gapart/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace gapart {
namespace {

void check_labels(const CsrGraph& g, const PartitionLabels& labels) {
  if (static_cast<NodeId>(labels.size()) != g.num_nodes()) {
    throw std::invalid_argument("labels: " + std::to_string(labels.size()) + " labels for " +
                                std::to_string(g.num_nodes()) + " nodes");
  }
  labels.validate();
}

// Outgoing cut and volume per part.
void part_stats(const CsrGraph& g, const PartitionLabels& labels, std::vector<EdgeId>& out_cut,
                std::vector<EdgeId>& vol) {
  out_cut.assign(static_cast<std::size_t>(labels.num_parts), 0);
  vol.assign(static_cast<std::size_t>(labels.num_parts), 0);
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    const auto li = labels.labels[i];
    vol[li] += g.degree(i);
    for (NodeId j : g.neighbors(i)) out_cut[li] += (labels.labels[j] != li);
  }
}

}  // namespace

EdgeId cut(const CsrGraph& g, const PartitionLabels& labels) {
  check_labels(g, labels);
  EdgeId c = 0;
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    for (NodeId j : g.neighbors(i)) c += (j > i && labels.labels[j] != labels.labels[i]);
  }
  return c;
}

EdgeId volume(const CsrGraph& g, const PartitionLabels& labels, std::int32_t k) {
  check_labels(g, labels);
  if (k < 0 || k >= labels.num_parts) throw std::invalid_argument("volume: part index out of range");
  EdgeId v = 0;
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    if (labels.labels[i] == k) v += g.degree(i);
  }
  return v;
}

double ncut(const CsrGraph& g, const PartitionLabels& labels) {
  check_labels(g, labels);
  std::vector<EdgeId> out_cut, vol;
  part_stats(g, labels, out_cut, vol);
  double total = 0.0;
  for (std::size_t k = 0; k < vol.size(); ++k) {
    if (vol[k] == 0) throw std::domain_error("ncut: part " + std::to_string(k) + " has zero volume");
    total += static_cast<double>(out_cut[k]) / static_cast<double>(vol[k]);
  }
  return total;
}

double rcut(const CsrGraph& g, const PartitionLabels& labels) {
  check_labels(g, labels);
  std::vector<EdgeId> out_cut, vol;
  part_stats(g, labels, out_cut, vol);
  const auto sizes = labels.part_sizes();
  double total = 0.0;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    if (sizes[k] == 0) throw std::domain_error("rcut: part " + std::to_string(k) + " is empty");
    total += static_cast<double>(out_cut[k]) / static_cast<double>(sizes[k]);
  }
  return total;
}

double balance(const CsrGraph& g, const PartitionLabels& labels, BalanceKind kind) {
  check_labels(g, labels);
  if (g.num_nodes() == 0) throw std::invalid_argument("balance: empty graph");
  const double parts = labels.num_parts;
  if (kind == BalanceKind::kCardinality) {
    const auto sizes = labels.part_sizes();
    return parts * static_cast<double>(*std::max_element(sizes.begin(), sizes.end())) / g.num_nodes();
  }
  if (g.num_edges() == 0) throw std::domain_error("balance: graph has no edges");
  std::vector<EdgeId> out_cut, vol;
  part_stats(g, labels, out_cut, vol);
  return parts * static_cast<double>(*std::max_element(vol.begin(), vol.end())) /
         static_cast<double>(g.num_entries());
}

PartitionResult evaluate_partition(const CsrGraph& g, PartitionLabels labels, BalanceKind kind) {
  PartitionResult r;
  r.cut = cut(g, labels);
  r.ncut = ncut(g, labels);
  r.rcut = rcut(g, labels);
  r.balance = balance(g, labels, kind);
  r.labels = std::move(labels);
  return r;
}

BruteForceResult brute_force_min_ncut(const CsrGraph& g) {
  const NodeId n = g.num_nodes();
  if (n < 2 || n > 16) throw std::invalid_argument("brute_force_min_ncut: need 2 <= n <= 16");
  const double total_vol = static_cast<double>(g.num_entries());
  BruteForceResult best;
  best.ncut = std::numeric_limits<double>::infinity();
  std::uint32_t best_mask = 0;
  // Bit i-1 of mask puts node i in part 1.
  for (std::uint32_t mask = 1; mask < (1u << (n - 1)); ++mask) {
    auto in1 = [mask](NodeId i) { return i > 0 && ((mask >> (i - 1)) & 1u); };
    EdgeId c = 0, vol1 = 0;
    for (NodeId i = 0; i < n; ++i) {
      if (!in1(i)) continue;
      vol1 += g.degree(i);
      for (NodeId j : g.neighbors(i)) c += !in1(j);
    }
    const double v1 = static_cast<double>(vol1), v0 = total_vol - v1;
    if (v1 == 0 || v0 == 0) continue;
    const double value = c / v0 + c / v1;
    if (value < best.ncut) {
      best.ncut = value;
      best_mask = mask;
    }
  }
  if (best_mask == 0) throw std::domain_error("brute_force_min_ncut: no bipartition with positive volumes");
  best.labels.num_parts = 2;
  best.labels.labels.assign(static_cast<std::size_t>(n), 0);
  for (NodeId i = 1; i < n; ++i) best.labels.labels[i] = (best_mask >> (i - 1)) & 1u;
  return best;
}

std::vector<std::vector<double>> performance_ratios(const std::vector<std::vector<double>>& values) {
  if (values.empty()) throw std::invalid_argument("performance_profile: no methods");
  const std::size_t instances = values.front().size();
  for (const auto& row : values) {
    if (row.size() != instances) throw std::invalid_argument("performance_profile: ragged table");
    for (double v : row) {
      if (!(v > 0) || !std::isfinite(v)) throw std::invalid_argument("performance_profile: values must be positive");
    }
  }
  std::vector<std::vector<double>> ratios(values.size(), std::vector<double>(instances));
  for (std::size_t i = 0; i < instances; ++i) {
    double best = values[0][i];
    for (const auto& row : values) best = std::min(best, row[i]);
    for (std::size_t m = 0; m < values.size(); ++m) ratios[m][i] = values[m][i] / best;
  }
  return ratios;
}

std::vector<double> default_ratio_grid(const std::vector<std::vector<double>>& values, int points) {
  if (points < 2) throw std::invalid_argument("default_ratio_grid: need at least 2 points");
  double top = 1.0;
  for (const auto& row : performance_ratios(values)) {
    for (double r : row) top = std::max(top, r);
  }
  if (top == 1.0) top = 2.0;
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) grid[k] = 1.0 + (top - 1.0) * k / (points - 1);
  grid.back() = top;
  return grid;
}

PerformanceProfile performance_profile(const std::vector<std::string>& methods,
                                       const std::vector<std::vector<double>>& values,
                                       const std::vector<double>& ratio_grid) {
  if (methods.size() != values.size()) throw std::invalid_argument("performance_profile: method names do not match");
  const auto ratios = performance_ratios(values);
  PerformanceProfile p;
  p.methods = methods;
  p.ratio_grid = ratio_grid;
  const auto instances = static_cast<double>(values.front().size());
  for (const auto& row : ratios) {
    std::vector<double> curve;
    curve.reserve(ratio_grid.size());
    for (double r : ratio_grid) {
      // Relative slack so that a ratio computed as exactly R is counted at R.
      const auto hits = std::count_if(row.begin(), row.end(), [r](double x) { return x <= r * (1 + 1e-12); });
      curve.push_back(instances > 0 ? static_cast<double>(hits) / instances : 0.0);
    }
    p.fraction.push_back(std::move(curve));
  }
  return p;
}

void write_profile_csv(const PerformanceProfile& profile, std::ostream& out) {
  out << "R";
  for (const auto& m : profile.methods) out << ',' << m;
  out << '\n';
  out << std::setprecision(17);
  for (std::size_t r = 0; r < profile.ratio_grid.size(); ++r) {
    out << profile.ratio_grid[r];
    for (const auto& curve : profile.fraction) out << ',' << curve[r];
    out << '\n';
  }
}

void write_profile_svg(const PerformanceProfile& profile, std::ostream& out) {
  constexpr double kW = 640, kH = 400, kL = 60, kR = 150, kT = 20, kB = 50;
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
  const double rmin = profile.ratio_grid.empty() ? 1.0 : profile.ratio_grid.front();
  double rmax = profile.ratio_grid.empty() ? 2.0 : profile.ratio_grid.back();
  if (rmax <= rmin) rmax = rmin + 1.0;
  auto sx = [&](double r) { return kL + (r - rmin) / (rmax - rmin) * (kW - kL - kR); };
  auto sy = [&](double f) { return kH - kB - f * (kH - kT - kB); };

  std::ostringstream s;
  s << std::fixed << std::setprecision(2);
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<line x1=\"" << kL << "\" y1=\"" << sy(0) << "\" x2=\"" << kW - kR << "\" y2=\"" << sy(0)
    << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << kL << "\" y1=\"" << sy(0) << "\" x2=\"" << kL << "\" y2=\"" << sy(1)
    << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double f = k / 4.0;
    s << "<text x=\"" << kL - 8 << "\" y=\"" << sy(f) + 4 << "\" font-size=\"11\" text-anchor=\"end\">" << f
      << "</text>\n";
    const double r = rmin + (rmax - rmin) * f;
    s << "<text x=\"" << sx(r) << "\" y=\"" << sy(0) + 16 << "\" font-size=\"11\" text-anchor=\"middle\">" << r
      << "</text>\n";
  }
  s << "<text x=\"" << (kL + kW - kR) / 2 << "\" y=\"" << kH - 10 << "\" font-size=\"12\" text-anchor=\"middle\">"
    << "ratio to best (R)</text>\n";
  for (std::size_t m = 0; m < profile.fraction.size(); ++m) {
    const char* color = kColors[m % (sizeof(kColors) / sizeof(kColors[0]))];
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    const auto& curve = profile.fraction[m];
    for (std::size_t r = 0; r < curve.size(); ++r) {
      if (r > 0) s << sx(profile.ratio_grid[r]) << ',' << sy(curve[r - 1]) << ' ';
      s << sx(profile.ratio_grid[r]) << ',' << sy(curve[r]) << ' ';
    }
    s << "\"/>\n";
    const double ly = kT + 20.0 * static_cast<double>(m + 1);
    s << "<line x1=\"" << kW - kR + 10 << "\" y1=\"" << ly << "\" x2=\"" << kW - kR + 30 << "\" y2=\"" << ly
      << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    s << "<text x=\"" << kW - kR + 36 << "\" y=\"" << ly + 4 << "\" font-size=\"12\">" << profile.methods[m]
      << "</text>\n";
  }
  s << "</svg>\n";
  out << s.str();
}

}  // namespace gapart
