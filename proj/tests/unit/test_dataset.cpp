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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "gapart/dataset.hpp"
#include "gapart/io.hpp"
#include "gapart/mesh.hpp"

namespace gapart {
namespace {

class TempDir {
 public:
  explicit TempDir(const std::string& name) : path_(std::filesystem::temp_directory_path() / name) {
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

TEST(MakeGraph, Families) {
  EXPECT_EQ(make_graph({"", "grid", {{"rows", 3}, {"cols", 4}}, 0}), grid_graph(3, 4));
  EXPECT_EQ(make_graph({"", "graded_l", {{"k", 3}}, 0}), l_shape(3));
  EXPECT_EQ(make_graph({"", "hole3", {{"unit", 2}}, 0}), hole3(2));
  EXPECT_EQ(make_graph({"", "hole6", {{"unit", 1}}, 0}), hole6(1));
  EXPECT_EQ(make_graph({"", "delaunay", {{"points", 50}}, 4}), delaunay_square(50, 1.0, 1.0, 4));
  EXPECT_THROW(make_graph({"", "torus", {}, 0}), std::invalid_argument);
  EXPECT_THROW(make_graph({"", "grid", {{"rows", 3}}, 0}), std::invalid_argument);
  EXPECT_THROW(make_graph({"", "grid", {{"rows", 2.5}, {"cols", 3}}, 0}), std::invalid_argument);
}

TEST(Sample, SizesFamiliesAndDeterminism) {
  SampleOptions opts;
  opts.count = 40;
  opts.seed = 3;
  const auto specs = sample_specs(opts);
  ASSERT_EQ(specs.size(), 40u);
  EXPECT_EQ(specs, sample_specs(opts));
  for (std::size_t i = 0; i < specs.size(); ++i) {
    EXPECT_EQ(specs[i].family, opts.families[i % opts.families.size()]);
    const auto g = make_graph(specs[i]);
    EXPECT_GE(g.num_nodes(), opts.min_nodes) << spec_name(specs[i]);
    EXPECT_LE(g.num_nodes(), opts.max_nodes) << spec_name(specs[i]);
    EXPECT_TRUE(is_connected(g));
  }
  opts.seed = 4;
  EXPECT_NE(specs, sample_specs(opts));
}

TEST(Sample, InvalidOptions) {
  SampleOptions opts;
  opts.families.clear();
  EXPECT_THROW(sample_specs(opts), std::invalid_argument);
  opts = {};
  opts.min_nodes = 500;
  opts.max_nodes = 100;
  EXPECT_THROW(sample_specs(opts), std::invalid_argument);
}

TEST(Manifest, RoundTripAndFileEntries) {
  TempDir dir("gapart_manifest_test");
  write_metis_graph(path_graph(5), dir.path() / "p5.graph");
  std::vector<GraphSpec> specs = {{"p5.graph", "", {}, 0}, {"", "grid", {{"rows", 2}, {"cols", 3}}, 7}};
  write_manifest(specs, dir.path() / "m.json");
  EXPECT_EQ(read_manifest(dir.path() / "m.json"), specs);
  const auto graphs = load_dataset(dir.path() / "m.json");
  ASSERT_EQ(graphs.size(), 2u);
  EXPECT_EQ(graphs[0], path_graph(5));
  EXPECT_EQ(graphs[1], grid_graph(2, 3));
  EXPECT_EQ(spec_name(specs[0]), "p5");
}

TEST(Manifest, BareArrayAndErrors) {
  TempDir dir("gapart_manifest_errors");
  {
    std::ofstream(dir.path() / "a.json") << R"([{"family": "grid", "params": {"rows": 2, "cols": 2}}])";
    std::ofstream(dir.path() / "bad.json") << "{not json";
    std::ofstream(dir.path() / "empty_entry.json") << R"({"graphs": [{}]})";
  }
  EXPECT_EQ(read_manifest(dir.path() / "a.json").size(), 1u);
  EXPECT_THROW(read_manifest(dir.path() / "bad.json"), FormatError);
  EXPECT_THROW(read_manifest(dir.path() / "empty_entry.json"), FormatError);
  EXPECT_THROW(read_manifest(dir.path() / "missing.json"), FormatError);
}

}  // namespace
}  // namespace gapart
