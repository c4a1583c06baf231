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

#include "bpsdm/generators.h"

#include <cmath>
#include <map>
#include <utility>

#include "bpsdm/errors.h"
#include "bpsdm/rng.h"

namespace bpsdm {

TreeInstance gen_hard_instance(int theorem, char variant, double eps) {
  if (theorem != 5 && theorem != 8) {
    throw BpsdmError(ErrorCode::kInvalidArgument, "theorem must be 5 or 8");
  }
  if (variant != 'i' && variant != 'j') {
    throw BpsdmError(ErrorCode::kInvalidArgument, "variant must be 'i' or 'j'");
  }
  if (!(eps > 0.0 && eps < 0.5)) {
    throw BpsdmError(ErrorCode::kInvalidArgument, "eps must lie in (0, 1/2)");
  }

  double h1_c, h2_e;
  if (theorem == 5) {
    h1_c = variant == 'i' ? 0.5 + eps : 0.5 - eps;
    h2_e = variant == 'i' ? 0.5 - eps : 0.5 + eps;
  } else {
    h1_c = 0.5;
    h2_e = variant == 'i' ? 0.5 - eps : 0.5 + eps;
  }

  TreeInstance tree;
  tree.root = "h0";
  tree.nodes.push_back(
      {"h0", NodeKind::kDecision, {{"a", "h1"}, {"b", "h2"}}, "I0", {}});
  tree.nodes.push_back({"h1",
                        NodeKind::kChance,
                        {{"c", "z1"}, {"d", "z2"}},
                        "",
                        {h1_c, 1.0 - h1_c}});
  tree.nodes.push_back({"h2",
                        NodeKind::kChance,
                        {{"e", "z3"}, {"f", "z4"}},
                        "",
                        {h2_e, 1.0 - h2_e}});
  for (const char* z : {"z1", "z2", "z3", "z4"}) {
    tree.nodes.push_back({z, NodeKind::kTerminal, {}, "", {}});
  }
  tree.receiver_utility = {{"z1", 1.0}, {"z2", 0.0}, {"z3", 1.0}, {"z4", 0.0}};
  if (theorem == 8) {
    tree.sender_utility = {{"z1", 0.0}, {"z2", 0.0}, {"z3", 1.0}, {"z4", 1.0}};
  } else {
    // The lower-bound argument never uses sender utilities; zero keeps the
    // sender LP well posed.
    tree.sender_utility = {{"z1", 0.0}, {"z2", 0.0}, {"z3", 0.0}, {"z4", 0.0}};
  }
  return validate_instance(std::move(tree));
}

TreeInstance gen_from_classic_bp(const ClassicBp& bp) {
  const size_t d = bp.states.size();
  const size_t m = bp.actions.size();
  if (d == 0 || m == 0 || bp.prior.size() != d || bp.us.size() != d ||
      bp.ur.size() != d) {
    throw BpsdmError(ErrorCode::kInvalidArgument, "shape mismatch");
  }
  for (size_t i = 0; i < d; ++i) {
    if (bp.us[i].size() != m || bp.ur[i].size() != m) {
      throw BpsdmError(ErrorCode::kInvalidArgument, "utility matrix shape",
                       bp.states[i]);
    }
  }
  double total = 0.0;
  for (double p : bp.prior) total += p;
  if (std::abs(total - 1.0) > 1e-12) {
    throw BpsdmError(ErrorCode::kInvalidArgument, "prior not normalized");
  }

  TreeInstance tree;
  tree.root = "h0";
  Node root{"h0", NodeKind::kChance, {}, "", bp.prior};
  for (const std::string& s : bp.states) root.children.push_back({s, "d_" + s});
  tree.nodes.push_back(std::move(root));
  for (size_t i = 0; i < d; ++i) {
    Node dn{"d_" + bp.states[i], NodeKind::kDecision, {}, "I", {}};
    for (size_t j = 0; j < m; ++j) {
      std::string zid = "z_" + bp.states[i] + "_" + bp.actions[j];
      dn.children.push_back({bp.actions[j], zid});
      tree.sender_utility[zid] = bp.us[i][j];
      tree.receiver_utility[zid] = bp.ur[i][j];
    }
    tree.nodes.push_back(std::move(dn));
  }
  for (size_t i = 0; i < d; ++i) {
    for (size_t j = 0; j < m; ++j) {
      tree.nodes.push_back({"z_" + bp.states[i] + "_" + bp.actions[j],
                            NodeKind::kTerminal,
                            {},
                            "",
                            {}});
    }
  }
  return validate_instance(std::move(tree));
}

namespace {

struct RandomGenCtx {
  int depth;
  int branching;
  double chance_fraction;
  double infoset_merge_prob;
  Rng* rng;
  TreeInstance* tree;
  int node_counter = 0;
  int infoset_counter = 0;
  // Ancestor (infoset, action) key -> infoset currently accepting merges.
  std::map<std::vector<std::pair<std::string, std::string>>, std::string>
      open_infoset;
};

std::string gen_subtree(RandomGenCtx& ctx, int level,
                        std::vector<std::pair<std::string, std::string>> key) {
  std::string id = "n" + std::to_string(ctx.node_counter++);
  Node n;
  n.id = id;
  if (level == ctx.depth) {
    n.kind = NodeKind::kTerminal;
    ctx.tree->sender_utility[id] = ctx.rng->uniform();
    ctx.tree->receiver_utility[id] = ctx.rng->uniform();
    ctx.tree->nodes.push_back(std::move(n));
    return id;
  }
  bool is_chance = ctx.rng->uniform() < ctx.chance_fraction;
  n.kind = is_chance ? NodeKind::kChance : NodeKind::kDecision;
  if (is_chance) {
    double sum = 0.0;
    for (int i = 0; i < ctx.branching; ++i) {
      n.chance.push_back(ctx.rng->exponential());
      sum += n.chance.back();
    }
    for (double& w : n.chance) w /= sum;
    // Renormalize exactly so validation's 1e-12 check cannot trip.
    double s2 = 0.0;
    for (double w : n.chance) s2 += w;
    n.chance.back() += 1.0 - s2;
  } else {
    auto it = ctx.open_infoset.find(key);
    if (it != ctx.open_infoset.end() &&
        ctx.rng->uniform() < ctx.infoset_merge_prob) {
      n.infoset = it->second;
    } else {
      n.infoset = "I" + std::to_string(ctx.infoset_counter++);
      ctx.open_infoset[key] = n.infoset;
    }
  }
  size_t slot = ctx.tree->nodes.size();
  ctx.tree->nodes.push_back(n);
  for (int i = 0; i < ctx.branching; ++i) {
    std::string label = (is_chance ? "o" : "a") + std::to_string(i);
    auto child_key = key;
    if (!is_chance) child_key.emplace_back(n.infoset, label);
    std::string child = gen_subtree(ctx, level + 1, std::move(child_key));
    ctx.tree->nodes[slot].children.push_back({label, child});
  }
  return id;
}

}  // namespace

TreeInstance gen_random_instance(int depth, int branching,
                                 double chance_fraction,
                                 double infoset_merge_prob, uint64_t seed) {
  if (depth < 1 || branching < 2 || chance_fraction < 0.0 ||
      chance_fraction > 1.0 || infoset_merge_prob < 0.0 ||
      infoset_merge_prob > 1.0) {
    throw BpsdmError(ErrorCode::kInvalidArgument,
                     "depth >= 1, branching >= 2, probabilities in [0,1]");
  }
  Rng rng(seed);
  TreeInstance tree;
  RandomGenCtx ctx{depth, branching, chance_fraction, infoset_merge_prob, &rng,
                   &tree};
  tree.root = gen_subtree(ctx, 0, {});
  return validate_instance(std::move(tree));
}

}  // namespace bpsdm
