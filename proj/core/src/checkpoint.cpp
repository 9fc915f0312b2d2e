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

#include "gapart/checkpoint.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "gapart/io.hpp"

namespace gapart {
namespace {

using nlohmann::json;

constexpr std::array<char, 8> kMagic = {'G', 'A', 'P', 'C', 'K', 'P', 'T', '\0'};
constexpr std::uint64_t kMaxHeader = 1u << 24;

template <typename U>
void put_le(std::ostream& out, U v) {
  std::array<char, sizeof(U)> b{};
  for (std::size_t k = 0; k < sizeof(U); ++k) b[k] = static_cast<char>((v >> (8 * k)) & 0xff);
  out.write(b.data(), b.size());
}

template <typename U>
U get_le(std::istream& in) {
  std::array<unsigned char, sizeof(U)> b{};
  if (!in.read(reinterpret_cast<char*>(b.data()), b.size())) throw FormatError("checkpoint: truncated file");
  U v = 0;
  for (std::size_t k = 0; k < sizeof(U); ++k) v |= static_cast<U>(b[k]) << (8 * k);
  return v;
}

json plan_json(const EmbeddingPlan& p) {
  return {{"input", p.input}, {"hidden", p.hidden}, {"smoothing", p.smoothing}, {"linear", p.linear}};
}

json plan_json(const PartitionPlan& p) {
  return {{"input", p.input}, {"hidden", p.hidden}, {"pre", p.pre},
          {"coarse", p.coarse}, {"post", p.post},  {"linear", p.linear}};
}

void write(std::ostream& out, const std::string& kind, const json& plan, const ParameterSet& params) {
  json header;
  header["kind"] = kind;
  header["plan"] = plan;
  header["arrays"] = json::array();
  for (std::size_t k = 0; k < params.size(); ++k) {
    header["arrays"].push_back({{"name", params.names[k]}, {"shape", {params.values[k].rows(), params.values[k].cols()}}});
  }
  const std::string text = header.dump();
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, kCheckpointVersion);
  put_le<std::uint64_t>(out, text.size());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  for (const auto& m : params.values) {
    for (double v : m.values()) put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
  }
  if (!out) throw FormatError("checkpoint: write failed");
}

json read_header(std::istream& in, const std::string& kind) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) throw FormatError("checkpoint: bad magic");
  const auto version = get_le<std::uint32_t>(in);
  if (version != kCheckpointVersion) throw FormatError("checkpoint: unsupported version " + std::to_string(version));
  const auto length = get_le<std::uint64_t>(in);
  if (length > kMaxHeader) throw FormatError("checkpoint: header too large");
  std::string text(length, '\0');
  if (!in.read(text.data(), static_cast<std::streamsize>(length))) throw FormatError("checkpoint: truncated header");
  json header;
  try {
    header = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("checkpoint: malformed header: ") + e.what());
  }
  if (!header.contains("kind") || header["kind"] != kind) {
    throw FormatError("checkpoint: expected a '" + kind + "' checkpoint");
  }
  return header;
}

// Fills `params` (already laid out from the stored plan) after checking that
// the listed arrays match that layout exactly.
void read_arrays(std::istream& in, const json& header, ParameterSet& params) {
  const auto& arrays = header.at("arrays");
  if (!arrays.is_array() || arrays.size() != params.size()) {
    throw FormatError("checkpoint: array list does not match the plan");
  }
  for (std::size_t k = 0; k < params.size(); ++k) {
    const auto& a = arrays[k];
    const auto shape = a.at("shape").get<std::vector<std::size_t>>();
    if (a.at("name").get<std::string>() != params.names[k] || shape.size() != 2 ||
        shape[0] != params.values[k].rows() || shape[1] != params.values[k].cols()) {
      throw FormatError("checkpoint: array '" + a.at("name").get<std::string>() + "' does not match the plan");
    }
  }
  for (auto& m : params.values) {
    for (double& v : m.values()) v = std::bit_cast<double>(get_le<std::uint64_t>(in));
  }
  if (in.peek() != std::char_traits<char>::eof()) throw FormatError("checkpoint: trailing bytes");
}

template <typename Net, typename Plan>
Net load(std::istream& in, const std::string& kind, const Plan* expected, Plan (*parse)(const json&)) {
  const json header = read_header(in, kind);
  Plan plan;
  try {
    plan = parse(header.at("plan"));
  } catch (const json::exception& e) {
    throw FormatError(std::string("checkpoint: malformed plan: ") + e.what());
  }
  if (expected && !(*expected == plan)) throw std::invalid_argument("checkpoint: network plan does not match");
  Net net(plan);
  try {
    read_arrays(in, header, net.params);
  } catch (const json::exception& e) {
    throw FormatError(std::string("checkpoint: malformed array list: ") + e.what());
  }
  return net;
}

EmbeddingPlan parse_embedding_plan(const json& j) {
  EmbeddingPlan p;
  p.input = j.at("input");
  p.hidden = j.at("hidden");
  p.smoothing = j.at("smoothing");
  p.linear = j.at("linear").get<std::vector<std::int32_t>>();
  return p;
}

PartitionPlan parse_partition_plan(const json& j) {
  PartitionPlan p;
  p.input = j.at("input");
  p.hidden = j.at("hidden");
  p.pre = j.at("pre");
  p.coarse = j.at("coarse");
  p.post = j.at("post");
  p.linear = j.at("linear").get<std::vector<std::int32_t>>();
  return p;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return in;
}

}  // namespace

void save_checkpoint(const EmbeddingNet& net, std::ostream& out) {
  write(out, "embedding", plan_json(net.plan), net.params);
}

void save_checkpoint(const PartitionNet& net, std::ostream& out) {
  write(out, "partitioner", plan_json(net.plan), net.params);
}

void save_checkpoint(const EmbeddingNet& net, const std::filesystem::path& path) {
  auto out = open_out(path);
  save_checkpoint(net, out);
}

void save_checkpoint(const PartitionNet& net, const std::filesystem::path& path) {
  auto out = open_out(path);
  save_checkpoint(net, out);
}

EmbeddingNet load_embedding(std::istream& in, const EmbeddingPlan* expected) {
  return load<EmbeddingNet>(in, "embedding", expected, &parse_embedding_plan);
}

EmbeddingNet load_embedding(const std::filesystem::path& path, const EmbeddingPlan* expected) {
  auto in = open_in(path);
  return load_embedding(in, expected);
}

PartitionNet load_partitioner(std::istream& in, const PartitionPlan* expected) {
  return load<PartitionNet>(in, "partitioner", expected, &parse_partition_plan);
}

PartitionNet load_partitioner(const std::filesystem::path& path, const PartitionPlan* expected) {
  auto in = open_in(path);
  return load_partitioner(in, expected);
}

}  // namespace gapart
