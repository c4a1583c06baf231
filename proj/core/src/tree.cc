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

#include "bpsdm/tree.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "bpsdm/errors.h"

namespace bpsdm {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kCycleDetected: return "CycleDetected";
    case ErrorCode::kInfosetActionMismatch: return "InfosetActionMismatch";
    case ErrorCode::kPerfectRecallViolation: return "PerfectRecallViolation";
    case ErrorCode::kChanceNotNormalized: return "ChanceNotNormalized";
    case ErrorCode::kUtilityOutOfRange: return "UtilityOutOfRange";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIndexMismatch: return "IndexMismatch";
    case ErrorCode::kZeroMassAtNode: return "ZeroMassAtNode";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kLpInfeasible: return "LpInfeasible";
    case ErrorCode::kLpUnbounded: return "LpUnbounded";
    case ErrorCode::kNumericalFailure: return "NumericalFailure";
    case ErrorCode::kInconsistentSample: return "InconsistentSample";
  }
  return "UnknownError";
}

void TreeInstance::rebuild_lookup() const {
  lookup_.clear();
  for (size_t i = 0; i < nodes.size(); ++i) lookup_[nodes[i].id] = i;
}

const Node* TreeInstance::find(const std::string& id) const {
  if (lookup_.size() != nodes.size()) rebuild_lookup();
  auto it = lookup_.find(id);
  return it == lookup_.end() ? nullptr : &nodes[it->second];
}

const Node& TreeInstance::at(const std::string& id) const {
  const Node* n = find(id);
  if (n == nullptr) {
    throw BpsdmError(ErrorCode::kParseError, "unknown node id", id);
  }
  return *n;
}

double TreeInstance::us(const std::string& terminal) const {
  auto it = sender_utility.find(terminal);
  return it == sender_utility.end() ? 0.0 : it->second;
}

double TreeInstance::ur(const std::string& terminal) const {
  auto it = receiver_utility.find(terminal);
  return it == receiver_utility.end() ? 0.0 : it->second;
}

namespace {

constexpr double kChanceTol = 1e-12;

// Ordered (infoset, action) pairs of receiver ancestors of `id`.
std::vector<std::pair<std::string, std::string>> receiver_ancestor_path(
    const TreeInstance& tree,
    const std::unordered_map<std::string, std::pair<std::string, std::string>>&
        parent_of,
    const std::string& id) {
  std::vector<std::pair<std::string, std::string>> path;
  std::string cur = id;
  while (true) {
    auto it = parent_of.find(cur);
    if (it == parent_of.end()) break;
    const auto& [pid, label] = it->second;
    const Node& parent = tree.at(pid);
    if (parent.kind == NodeKind::kDecision) {
      path.emplace_back(parent.infoset, label);
    }
    cur = pid;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

TreeInstance validate_instance(TreeInstance raw) {
  raw.rebuild_lookup();
  if (raw.nodes.empty() || raw.find(raw.root) == nullptr) {
    throw BpsdmError(ErrorCode::kParseError, "missing root node", raw.root);
  }
  {
    std::set<std::string> ids;
    for (const Node& n : raw.nodes) {
      if (!ids.insert(n.id).second) {
        throw BpsdmError(ErrorCode::kParseError, "duplicate node id", n.id);
      }
    }
  }

  // Assign implicit singleton infosets before structural checks.
  for (Node& n : raw.nodes) {
    if (n.kind == NodeKind::kDecision && n.infoset.empty()) {
      n.infoset = "__singleton_" + n.id;
    }
  }
  // Rebuild the infoset partition from node annotations, preserving any
  // declared member order, and check consistency with declarations.
  std::map<std::string, std::vector<std::string>> declared = raw.infosets;
  raw.infosets.clear();
  for (const Node& n : raw.nodes) {
    if (n.kind == NodeKind::kDecision) {
      raw.infosets[n.infoset].push_back(n.id);
    } else if (!n.infoset.empty()) {
      throw BpsdmError(ErrorCode::kParseError,
                       "infoset annotation on non-decision node", n.id);
    }
  }
  for (const auto& [iid, members] : declared) {
    auto it = raw.infosets.find(iid);
    if (it == raw.infosets.end() || it->second != members) {
      throw BpsdmError(ErrorCode::kParseError,
                       "declared infoset disagrees with node annotations", iid);
    }
  }

  // Rooted tree: every non-root has exactly one parent, everything is
  // reachable from the root, no node repeats on any root path.
  std::unordered_map<std::string, std::pair<std::string, std::string>> parent_of;
  for (const Node& n : raw.nodes) {
    if (n.kind == NodeKind::kTerminal && !n.children.empty()) {
      throw BpsdmError(ErrorCode::kParseError, "terminal node has children",
                       n.id);
    }
    if (n.kind != NodeKind::kTerminal && n.children.empty()) {
      throw BpsdmError(ErrorCode::kParseError,
                       "internal node without children", n.id);
    }
    std::set<std::string> labels;
    for (const Arc& arc : n.children) {
      if (raw.find(arc.child) == nullptr) {
        throw BpsdmError(ErrorCode::kParseError, "unknown child id", arc.child);
      }
      if (!labels.insert(arc.label).second) {
        throw BpsdmError(ErrorCode::kParseError, "duplicate arc label", n.id);
      }
      if (arc.child == raw.root) {
        throw BpsdmError(ErrorCode::kCycleDetected, "root appears as a child",
                         n.id);
      }
      if (!parent_of.emplace(arc.child, std::make_pair(n.id, arc.label)).second) {
        throw BpsdmError(ErrorCode::kCycleDetected, "node has two parents",
                         arc.child);
      }
    }
  }
  {
    std::set<std::string> visited;
    std::vector<std::string> stack = {raw.root};
    while (!stack.empty()) {
      std::string id = stack.back();
      stack.pop_back();
      if (!visited.insert(id).second) {
        throw BpsdmError(ErrorCode::kCycleDetected, "cycle through node", id);
      }
      for (const Arc& arc : raw.at(id).children) stack.push_back(arc.child);
    }
    if (visited.size() != raw.nodes.size()) {
      for (const Node& n : raw.nodes) {
        if (!visited.count(n.id)) {
          throw BpsdmError(ErrorCode::kCycleDetected,
                           "node unreachable from root", n.id);
        }
      }
    }
  }

  // Infosets: identical ordered action lists, perfect recall.
  for (const auto& [iid, members] : raw.infosets) {
    const Node& first = raw.at(members.front());
    auto labels_of = [](const Node& n) {
      std::vector<std::string> ls;
      for (const Arc& a : n.children) ls.push_back(a.label);
      return ls;
    };
    const auto ref_labels = labels_of(first);
    const auto ref_path = receiver_ancestor_path(raw, parent_of, first.id);
    for (const std::string& mid : members) {
      const Node& m = raw.at(mid);
      if (labels_of(m) != ref_labels) {
        throw BpsdmError(ErrorCode::kInfosetActionMismatch,
                         "action lists differ within infoset " + iid, mid);
      }
      if (receiver_ancestor_path(raw, parent_of, mid) != ref_path) {
        throw BpsdmError(ErrorCode::kPerfectRecallViolation,
                         "ancestor action sequences differ within infoset " +
                             iid,
                         mid);
      }
    }
  }

  // Chance distributions and utilities.
  for (const Node& n : raw.nodes) {
    if (n.kind == NodeKind::kChance) {
      if (n.chance.size() != n.children.size()) {
        throw BpsdmError(ErrorCode::kChanceNotNormalized,
                         "chance weights do not match arc count", n.id);
      }
      double total = 0.0;
      for (double w : n.chance) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
          throw BpsdmError(ErrorCode::kChanceNotNormalized,
                           "negative or non-finite chance weight", n.id);
        }
        total += w;
      }
      if (std::abs(total - 1.0) > kChanceTol) {
        throw BpsdmError(ErrorCode::kChanceNotNormalized,
                         "chance weights sum to " + std::to_string(total),
                         n.id);
      }
    } else if (!n.chance.empty()) {
      throw BpsdmError(ErrorCode::kParseError,
                       "chance weights on non-chance node", n.id);
    }
    if (n.kind == NodeKind::kTerminal) {
      for (const auto* util : {&raw.sender_utility, &raw.receiver_utility}) {
        auto it = util->find(n.id);
        if (it != util->end() &&
            (!(it->second >= 0.0 && it->second <= 1.0) ||
             !std::isfinite(it->second))) {
          throw BpsdmError(ErrorCode::kUtilityOutOfRange,
                           "utility outside [0,1]", n.id);
        }
      }
    }
  }
  for (const auto* util : {&raw.sender_utility, &raw.receiver_utility}) {
    for (const auto& [id, value] : *util) {
      const Node* n = raw.find(id);
      if (n == nullptr || n->kind != NodeKind::kTerminal) {
        throw BpsdmError(ErrorCode::kParseError,
                         "utility assigned to non-terminal", id);
      }
    }
  }

  raw.rebuild_lookup();
  return raw;
}

}  // namespace bpsdm
