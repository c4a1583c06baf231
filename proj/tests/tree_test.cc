// Copyright 2026 The BPSDM Authors.
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

#include <functional>
#include <string>

#include "bpsdm/errors.h"
#include "bpsdm/generators.h"
#include "bpsdm/io.h"
#include "bpsdm/tree.h"
#include "doctest.h"
#include "fixtures.h"

using namespace bpsdm;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const BpsdmError& e) {
    return e.code();
  }
  FAIL("expected a BpsdmError");
  return ErrorCode::kParseError;
}

}  // namespace

TEST_CASE("single terminal root is valid") {
  TreeInstance t;
  t.root = "z";
  t.nodes.push_back({"z", NodeKind::kTerminal, {}, "", {}});
  TreeInstance v = validate_instance(t);
  CHECK(v.us("z") == 0.0);
  CHECK(v.ur("z") == 0.0);
}

TEST_CASE("infoset action mismatch is rejected") {
  std::string doc = R"({
    "root": "h0",
    "nodes": [
      {"id": "h0", "kind": "chance",
       "children": [{"label": "a", "child": "h1"},
                    {"label": "b", "child": "h2"}],
       "chance": [0.5, 0.5]},
      {"id": "h1", "kind": "decision", "infoset": "I",
       "children": [{"label": "d", "child": "z1"},
                    {"label": "e", "child": "z2"}]},
      {"id": "h2", "kind": "decision", "infoset": "I",
       "children": [{"label": "d", "child": "z3"}]},
      {"id": "z1", "kind": "terminal"},
      {"id": "z2", "kind": "terminal"},
      {"id": "z3", "kind": "terminal"}
    ]
  })";
  CHECK(code_of([&] { load_instance(doc); }) ==
        ErrorCode::kInfosetActionMismatch);
}

TEST_CASE("perfect recall violation is rejected") {
  // Both members share an infoset but only one sits below (J,x).
  std::string doc = R"({
    "root": "j0",
    "nodes": [
      {"id": "j0", "kind": "decision", "infoset": "J",
       "children": [{"label": "x", "child": "h1"},
                    {"label": "y", "child": "h2"}]},
      {"id": "h1", "kind": "decision", "infoset": "I",
       "children": [{"label": "d", "child": "z1"},
                    {"label": "e", "child": "z2"}]},
      {"id": "h2", "kind": "chance", "chance": [1.0],
       "children": [{"label": "o", "child": "h3"}]},
      {"id": "h3", "kind": "decision", "infoset": "I",
       "children": [{"label": "d", "child": "z3"},
                    {"label": "e", "child": "z4"}]},
      {"id": "z1", "kind": "terminal"},
      {"id": "z2", "kind": "terminal"},
      {"id": "z3", "kind": "terminal"},
      {"id": "z4", "kind": "terminal"}
    ]
  })";
  CHECK(code_of([&] { load_instance(doc); }) ==
        ErrorCode::kPerfectRecallViolation);
}

TEST_CASE("node with two parents is a cycle error") {
  TreeInstance t;
  t.root = "a";
  t.nodes.push_back({"a", NodeKind::kDecision,
                     {{"l", "b"}, {"r", "c"}}, "", {}});
  t.nodes.push_back({"b", NodeKind::kDecision, {{"l", "c"}, {"r", "d"}}, "", {}});
  t.nodes.push_back({"c", NodeKind::kTerminal, {}, "", {}});
  t.nodes.push_back({"d", NodeKind::kTerminal, {}, "", {}});
  CHECK(code_of([&] { validate_instance(t); }) == ErrorCode::kCycleDetected);
}

TEST_CASE("chance weights must normalize") {
  std::string doc = R"({
    "root": "h0",
    "nodes": [
      {"id": "h0", "kind": "chance", "chance": [0.5, 0.4],
       "children": [{"label": "a", "child": "z1"},
                    {"label": "b", "child": "z2"}]},
      {"id": "z1", "kind": "terminal"},
      {"id": "z2", "kind": "terminal"}
    ]
  })";
  CHECK(code_of([&] { load_instance(doc); }) ==
        ErrorCode::kChanceNotNormalized);
}

TEST_CASE("utilities outside the unit interval are rejected") {
  TreeInstance t;
  t.root = "h";
  t.nodes.push_back({"h", NodeKind::kDecision, {{"a", "z"}, {"b", "w"}}, "", {}});
  t.nodes.push_back({"z", NodeKind::kTerminal, {}, "", {}});
  t.nodes.push_back({"w", NodeKind::kTerminal, {}, "", {}});
  t.sender_utility["z"] = 1.5;
  CHECK(code_of([&] { validate_instance(t); }) ==
        ErrorCode::kUtilityOutOfRange);
}

TEST_CASE("empty document fails to parse") {
  CHECK(code_of([&] { load_instance(""); }) == ErrorCode::kParseError);
}

TEST_CASE("example tree loads and round-trips") {
  TreeInstance t = bpsdm_tests::fig4_tree();
  CHECK(t.infosets.size() == 2);
  CHECK(t.infosets.at("J").size() == 2);
  std::string once = serialize_instance(t);
  std::string twice = serialize_instance(load_instance(once));
  CHECK(once == twice);
}

TEST_CASE("hard instance priors match the stated variants") {
  TreeInstance a = gen_hard_instance(5, 'i', 0.1);
  CHECK(a.at("h1").chance[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(a.at("h2").chance[0] == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(a.us("z3") == 0.0);

  TreeInstance b = gen_hard_instance(8, 'j', 0.1);
  CHECK(b.at("h1").chance[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(b.at("h2").chance[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(b.us("z3") == 1.0);
  CHECK(b.us("z4") == 1.0);

  CHECK(code_of([&] { gen_hard_instance(5, 'i', 0.0); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(code_of([&] { gen_hard_instance(5, 'i', 0.5); }) ==
        ErrorCode::kInvalidArgument);

  // The two variants differ only in the four chance entries.
  TreeInstance c = gen_hard_instance(5, 'j', 0.1);
  CHECK(c.at("h1").chance[0] == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(c.at("h2").chance[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(serialize_instance(a).size() == serialize_instance(c).size());
}

TEST_CASE("one-shot mapping produces the expected shape") {
  ClassicBp tiny{{"t"}, {"a"}, {1.0}, {{0.5}}, {{0.5}}};
  TreeInstance chain = gen_from_classic_bp(tiny);
  CHECK(chain.nodes.size() == 3);

  ClassicBp bp{{"t0", "t1"},
               {"a0", "a1"},
               {0.4, 0.6},
               {{0.1, 0.9}, {0.3, 0.7}},
               {{1.0, 0.0}, {0.0, 1.0}}};
  TreeInstance t = gen_from_classic_bp(bp);
  int terminals = 0, chance = 0, decisions = 0;
  for (const Node& n : t.nodes) {
    if (n.kind == NodeKind::kTerminal) ++terminals;
    if (n.kind == NodeKind::kChance) ++chance;
    if (n.kind == NodeKind::kDecision) ++decisions;
  }
  CHECK(terminals == 4);
  CHECK(chance == 1);
  CHECK(decisions == 2);
  CHECK(t.infosets.size() == 1);
}

TEST_CASE("random generator is deterministic and always valid") {
  TreeInstance a = gen_random_instance(3, 2, 0.5, 0.5, 42);
  TreeInstance b = gen_random_instance(3, 2, 0.5, 0.5, 42);
  CHECK(serialize_instance(a) == serialize_instance(b));

  TreeInstance small = gen_random_instance(1, 2, 0.0, 0.0, 7);
  CHECK(small.nodes.size() == 3);

  for (uint64_t seed = 0; seed < 20; ++seed) {
    // Constructor already validates; revalidate the serialized form too.
    TreeInstance t = gen_random_instance(4, 3, 0.5, 0.3, seed);
    CHECK_NOTHROW(load_instance(serialize_instance(t)));
  }
}
