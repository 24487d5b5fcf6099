// Copyright 2026 The lopt Authors
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

#include "lopt/io.hpp"
#include "lopt/linalg.hpp"

using namespace lopt;

namespace {

std::filesystem::path scratch(const std::string &name) {
    auto dir = std::filesystem::temp_directory_path() / "lopt_io_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST(MatrixJson, RoundTrip) {
    const auto u = haar_random_unitary(3, 1);
    EXPECT_EQ(matrix_from_json(matrix_to_json(u)), u);
    EXPECT_EQ(matrix_from_json(json::parse("[[1, 0], [0, 1]]")), ComplexMatrix::identity(2));
}

TEST(MatrixJson, RejectsMalformed) {
    EXPECT_THROW(matrix_from_json(json::parse("[]")), InvalidInput);
    EXPECT_THROW(matrix_from_json(json::parse("[[1, 2], [3]]")), InvalidInput);
    EXPECT_THROW(matrix_from_json(json::parse("[[\"a\"]]")), InvalidInput);
    EXPECT_THROW(matrix_from_json(json::parse("[[[1, 2, 3]]]")), InvalidInput);
}

TEST(MatrixCsv, DotDecimalPairs) {
    const ComplexMatrix m{{cplx(0.5, -1.0), 2.0}};
    EXPECT_EQ(matrix_to_csv(m), "0.5,-1.0,2.0,0.0\n");
}

TEST(NetlistJson, RoundTripPreservesUnitary) {
    const ModeUnitary u(haar_random_unitary(4, 2));
    const auto net = reck_decompose(u);
    const auto back = netlist_from_json(json::parse(netlist_to_json(net).dump()));
    EXPECT_EQ(back.modes, 4u);
    EXPECT_EQ(back.elements, net.elements);
    EXPECT_LT(distance(recompose(back).matrix(), u.matrix()), 1e-9);
}

TEST(NetlistJson, RejectsBadElements) {
    EXPECT_THROW(netlist_from_json(json::parse(R"({"modes":2,"elements":[{"kind":"mirror","modes":[0],"angle":1}]})")),
                 InvalidInput);
    EXPECT_THROW(netlist_from_json(json::parse(R"({"modes":2,"elements":[{"kind":"phase_shifter","modes":[3],"angle":1}]})")),
                 InvalidInput);
    EXPECT_THROW(netlist_from_json(json::parse(R"({"modes":2,"elements":[{"kind":"beam_splitter","modes":[0],"angle":1}]})")),
                 InvalidInput);
}

TEST(ConfigJson, DefaultsUnknownKeysAndTypes) {
    const auto c = config_from_json(json::parse(R"({"modes": 3, "restarts": 7, "comment": "x"})"));
    EXPECT_EQ(c.modes, 3u);
    EXPECT_EQ(c.restarts, 7u);
    EXPECT_EQ(c.penalty_weight, SearchConfig{}.penalty_weight);
    EXPECT_THROW(config_from_json(json::parse(R"({"mode": 3})")), InvalidInput);
    EXPECT_THROW(config_from_json(json::parse(R"({"modes": "3"})")), InvalidInput);
    EXPECT_THROW(config_from_json(json::parse(R"({"modes": 1})")), InvalidInput);
    EXPECT_THROW(config_from_json(json::parse(R"({"restarts": -2})")), InvalidInput);
    EXPECT_THROW(config_from_json(json::parse(R"([1, 2])")), InvalidInput);
    const auto back = config_from_json(config_to_json(c));
    EXPECT_EQ(config_to_json(back), config_to_json(c));
}

TEST(SearchResultJson, SchemaAndOptionalTiming) {
    SearchConfig cfg;
    SearchResult r;
    r.constrained = true;
    r.feasible_found = false;
    r.wall_time = 1.5;
    const auto j = search_result_to_json(r, cfg, false);
    EXPECT_EQ(j["schema"], 1);
    EXPECT_TRUE(j["best_entangling_measure"].is_null());
    EXPECT_FALSE(j.contains("wall_time"));
    EXPECT_EQ(search_result_to_json(r, cfg, true)["wall_time"], 1.5);
}

TEST(Files, AtomicWriteAndRead) {
    const auto p = scratch("a.txt");
    write_file_atomic(p, "hello\n");
    EXPECT_EQ(read_file(p), "hello\n");
    EXPECT_FALSE(std::filesystem::exists(p.string() + ".tmp"));
    EXPECT_THROW(write_file_atomic("/nonexistent-dir/x/y.json", "z"), IoError);
    EXPECT_THROW(read_file("/nonexistent-dir/x/y.json"), IoError);
}

TEST(Files, LiftedJsonCarriesBasis) {
    const auto l = lift_unitary(ModeUnitary(haar_random_unitary(2, 3)), 2);
    const auto j = lifted_to_json(l);
    EXPECT_EQ(j["basis"].size(), 3u);
    EXPECT_EQ(j["basis"][0], json::array({2, 0}));
    EXPECT_EQ(matrix_from_json(j["matrix"]), l.matrix);
}
