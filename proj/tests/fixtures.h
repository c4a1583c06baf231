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

#ifndef BPSDM_TESTS_FIXTURES_H_
#define BPSDM_TESTS_FIXTURES_H_

#include <string>

#include "bpsdm/io.h"
#include "bpsdm/tree.h"

namespace bpsdm_tests {

// Two-infoset example tree: chance root with three outcomes; one decision
// node in infoset I under the first, two decision nodes sharing infoset J
// under the other two.
inline std::string fig4_json() {
  return R"({
    "root": "h0",
    "nodes": [
      {"id": "h0", "kind": "chance",
       "children": [{"label": "a", "child": "h1"},
                    {"label": "b", "child": "h2"},
                    {"label": "c", "child": "h3"}],
       "chance": [0.5, 0.25, 0.25]},
      {"id": "h1", "kind": "decision", "infoset": "I",
       "children": [{"label": "d", "child": "z1"},
                    {"label": "e", "child": "z2"}]},
      {"id": "h2", "kind": "decision", "infoset": "J",
       "children": [{"label": "f", "child": "z3"},
                    {"label": "g", "child": "z4"}]},
      {"id": "h3", "kind": "decision", "infoset": "J",
       "children": [{"label": "f", "child": "z5"},
                    {"label": "g", "child": "z6"}]},
      {"id": "z1", "kind": "terminal", "us": 1.0, "ur": 0.2},
      {"id": "z2", "kind": "terminal", "us": 0.0, "ur": 0.8},
      {"id": "z3", "kind": "terminal", "us": 0.5, "ur": 1.0},
      {"id": "z4", "kind": "terminal", "us": 0.75, "ur": 0.0},
      {"id": "z5", "kind": "terminal", "us": 0.25, "ur": 0.4},
      {"id": "z6", "kind": "terminal", "us": 1.0, "ur": 0.6}
    ]
  })";
}

inline bpsdm::TreeInstance fig4_tree() {
  return bpsdm::load_instance(fig4_json());
}

}  // namespace bpsdm_tests

#endif  // BPSDM_TESTS_FIXTURES_H_
