// Copyright 2026 The robust_fluid Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "robust_fluid/network.h"

#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "robust_fluid/errors.h"

namespace robust_fluid {
namespace {

TEST(CrissCrossTest, StructureMatchesRoutingOfFlowOne) {
  const FluidNetwork net = BuildCrissCross({});
  EXPECT_EQ(net.num_servers, 2);
  EXPECT_EQ(net.num_flows, 3);
  EXPECT_EQ(net.num_buffers, 3);
  EXPECT_EQ(net.server_of_flow, (std::vector<int>{0, 0, 1}));
  EXPECT_EQ(net.routing(2, 0), -1.0);
  EXPECT_EQ(net.routing(2, 2), 1.0);
  EXPECT_EQ(net.routing(0, 0), 1.0);
  EXPECT_EQ(net.routing(1, 1), 1.0);
  EXPECT_EQ(net.routing(0, 1), 0.0);
  EXPECT_EQ(net.arrival_nominal[2], 0.0);
  for (int j = 0; j < 3; ++j) {
    EXPECT_EQ(net.service_rate_dev[j], 0.0);
    EXPECT_EQ(net.service_time_dev[j], 0.0);
    EXPECT_DOUBLE_EQ(net.service_time_nominal[j], 0.5);
  }
  EXPECT_TRUE(ValidateNetwork(net).empty());
}

TEST(CrissCrossTest, RejectsNonPositiveRate) {
  CrissCrossParams p;
  p.mu1 = 0.0;
  EXPECT_THROW(BuildCrissCross(p), ValidationError);
  p = {};
  p.lambda2 = -1.0;
  EXPECT_THROW(BuildCrissCross(p), ValidationError);
}

TEST(RandomNetworkTest, DefaultParameterRanges) {
  const double eps = 0.05;
  const FluidNetwork net = RandomNetwork(10, 10, eps, 7);
  ASSERT_EQ(net.num_flows, 100);
  ASSERT_EQ(net.num_buffers, 100);
  EXPECT_TRUE(ValidateNetwork(net).empty());
  for (int j = 0; j < 100; ++j) {
    const double rate = 1.0 / net.service_time_nominal[j];
    EXPECT_GE(rate, 5.0);
    EXPECT_LE(rate, 25.0);
    EXPECT_NEAR(net.service_time_dev[j], eps * net.service_time_nominal[j], 1e-15);
    EXPECT_NEAR(net.service_rate_nominal[j],
                1.0 / (net.service_time_nominal[j] * (1.0 - eps * eps)), 1e-12);
    EXPECT_EQ(net.server_of_flow[j], j / 10);
  }
  for (int k = 0; k < 100; ++k) {
    EXPECT_GE(net.arrival_nominal[k], 2.0);
    EXPECT_LE(net.arrival_nominal[k], 5.0);
    EXPECT_GE(net.initial_buffer[k], 10.0);
    EXPECT_LE(net.initial_buffer[k], 20.0);
    EXPECT_GE(net.holding_cost[k], 1.0);
    EXPECT_LE(net.holding_cost[k], 2.0);
    for (int j = 0; j < 100; ++j) EXPECT_EQ(net.routing(k, j), k == j ? 1.0 : 0.0);
  }
}

TEST(RandomNetworkTest, ZeroUncertaintySingleFlow) {
  const FluidNetwork net = RandomNetwork(1, 1, 0.0, 0);
  EXPECT_EQ(net.num_flows, 1);
  EXPECT_EQ(net.service_time_dev[0], 0.0);
  EXPECT_EQ(net.service_rate_dev[0], 0.0);
  EXPECT_EQ(net.arrival_dev[0], 0.0);
}

TEST(RandomNetworkTest, DeterministicGivenSeed) {
  EXPECT_EQ(RandomNetwork(3, 4, 0.1, 42), RandomNetwork(3, 4, 0.1, 42));
  EXPECT_FALSE(RandomNetwork(3, 4, 0.1, 42) == RandomNetwork(3, 4, 0.1, 43));
  EXPECT_EQ(NetworkToJson(RandomNetwork(3, 4, 0.1, 42)),
            NetworkToJson(RandomNetwork(3, 4, 0.1, 42)));
}

TEST(ValidateNetworkTest, RoutingSumAboveOneNamesColumn) {
  FluidNetwork net = BuildCrissCross({});
  net.routing(1, 0) = -0.2;  // column 1 now routes 1.2 in total
  const auto issues = ValidateNetwork(net);
  ASSERT_FALSE(issues.empty());
  bool found = false;
  for (const auto& s : issues) found = found || s.find("G column 1") != std::string::npos;
  EXPECT_TRUE(found) << issues.front();
}

TEST(ValidateNetworkTest, DeviationEqualToNominal) {
  FluidNetwork net = RandomNetwork(1, 2, 0.1, 3);
  net.service_time_dev[1] = net.service_time_nominal[1];
  DeriveRatesFromTimes(net);
  const auto issues = ValidateNetwork(net);
  ASSERT_FALSE(issues.empty());
  bool found = false;
  for (const auto& s : issues) {
    found = found || s.find("rate may vanish under perturbation") != std::string::npos;
  }
  EXPECT_TRUE(found);
}

TEST(ValidateNetworkTest, InconsistentParameterizations) {
  FluidNetwork net = RandomNetwork(1, 2, 0.1, 3);
  net.service_rate_nominal[0] *= 1.5;
  EXPECT_FALSE(ValidateNetwork(net).empty());
  EXPECT_THROW(RequireValidNetwork(net), ValidationError);
}

TEST(NetworkJsonTest, RoundTrip) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const FluidNetwork net = RandomNetwork(2, 3, 0.07, seed);
    EXPECT_EQ(NetworkFromJson(NetworkToJson(net)), net);
  }
  const FluidNetwork cc = BuildCrissCross({});
  EXPECT_EQ(NetworkFromJson(NetworkToJson(cc)), cc);
}

TEST(NetworkJsonTest, IndicesAreOneBased) {
  const std::string text = NetworkToJson(BuildCrissCross({}));
  EXPECT_NE(text.find("\"server_of_flow\""), std::string::npos);
  const FluidNetwork back = NetworkFromJson(text);
  EXPECT_EQ(back.server_of_flow, (std::vector<int>{0, 0, 1}));
}

TEST(NetworkJsonTest, MissingFieldIsNamed) {
  std::string text = NetworkToJson(BuildCrissCross({}));
  const auto pos = text.find("\"horizon\"");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 9, "\"horizox\"");
  try {
    NetworkFromJson(text);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("horizon"), std::string::npos) << e.what();
  }
}

TEST(NetworkJsonTest, MalformedJson) {
  EXPECT_THROW(NetworkFromJson("{\"servers\": "), ValidationError);
}

}  // namespace
}  // namespace robust_fluid
