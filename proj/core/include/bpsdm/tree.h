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

#ifndef BPSDM_TREE_H_
#define BPSDM_TREE_H_

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace bpsdm {

enum class NodeKind { kDecision, kChance, kTerminal };

struct Arc {
  std::string label;
  std::string child;
};

struct Node {
  std::string id;
  NodeKind kind = NodeKind::kTerminal;
  std::vector<Arc> children;          // ordered; empty for terminals
  std::string infoset;                // decision nodes only
  std::vector<double> chance;         // chance nodes only, aligned with children
};

// A sequential decision-making instance: a rooted tree of decision, chance
// and terminal nodes, an infoset partition of the decision nodes, per-chance
// outcome distributions, and terminal utilities for sender and receiver.
//
// Immutable after validation; safe to share across threads.
struct TreeInstance {
  std::vector<Node> nodes;            // document order
  std::string root;
  // infoset id -> ordered list of member decision node ids.
  std::map<std::string, std::vector<std::string>> infosets;
  std::unordered_map<std::string, double> sender_utility;    // terminal -> [0,1]
  std::unordered_map<std::string, double> receiver_utility;  // terminal -> [0,1]

  const Node* find(const std::string& id) const;
  const Node& at(const std::string& id) const;  // throws kParseError if absent
  double us(const std::string& terminal) const;
  double ur(const std::string& terminal) const;

  void rebuild_lookup() const;

 private:
  mutable std::unordered_map<std::string, size_t> lookup_;
};

// Checks every structural invariant: rooted-tree shape, infoset action-list
// agreement, perfect recall, normalized chance distributions, utilities in
// [0,1]. Returns the instance unchanged on success; throws BpsdmError with
// the offending node/infoset otherwise. Decision nodes without an explicit
// infoset are placed in a singleton infoset named after the node.
TreeInstance validate_instance(TreeInstance raw);

}  // namespace bpsdm

#endif  // BPSDM_TREE_H_
