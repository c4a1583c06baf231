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

#include "bpsdm/io.h"

#include <fstream>
#include <sstream>

#include "bpsdm/errors.h"
#include "json.hpp"

namespace bpsdm {

namespace {

using json = nlohmann::ordered_json;

NodeKind parse_kind(const std::string& s, const std::string& id) {
  if (s == "decision") return NodeKind::kDecision;
  if (s == "chance") return NodeKind::kChance;
  if (s == "terminal") return NodeKind::kTerminal;
  throw BpsdmError(ErrorCode::kParseError, "unknown node kind '" + s + "'", id);
}

const char* kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::kDecision: return "decision";
    case NodeKind::kChance: return "chance";
    case NodeKind::kTerminal: return "terminal";
  }
  return "terminal";
}

}  // namespace

TreeInstance load_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw BpsdmError(ErrorCode::kParseError, e.what());
  }
  if (!doc.is_object() || !doc.contains("root") || !doc.contains("nodes")) {
    throw BpsdmError(ErrorCode::kParseError,
                     "document must be an object with 'root' and 'nodes'");
  }
  TreeInstance tree;
  try {
    tree.root = doc.at("root").get<std::string>();
    for (const json& jn : doc.at("nodes")) {
      Node n;
      n.id = jn.at("id").get<std::string>();
      n.kind = parse_kind(jn.at("kind").get<std::string>(), n.id);
      if (jn.contains("infoset")) n.infoset = jn.at("infoset").get<std::string>();
      if (jn.contains("children")) {
        for (const json& jc : jn.at("children")) {
          n.children.push_back({jc.at("label").get<std::string>(),
                                jc.at("child").get<std::string>()});
        }
      }
      if (jn.contains("chance")) {
        n.chance = jn.at("chance").get<std::vector<double>>();
      }
      if (jn.contains("us")) tree.sender_utility[n.id] = jn.at("us").get<double>();
      if (jn.contains("ur")) tree.receiver_utility[n.id] = jn.at("ur").get<double>();
      tree.nodes.push_back(std::move(n));
    }
  } catch (const json::exception& e) {
    throw BpsdmError(ErrorCode::kParseError, e.what());
  }
  return validate_instance(std::move(tree));
}

TreeInstance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw BpsdmError(ErrorCode::kParseError, "cannot open instance file", path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_instance(buf.str());
}

std::string serialize_instance(const TreeInstance& tree) {
  json doc;
  doc["root"] = tree.root;
  json nodes = json::array();
  for (const Node& n : tree.nodes) {
    json jn;
    jn["id"] = n.id;
    jn["kind"] = kind_name(n.kind);
    if (n.kind == NodeKind::kDecision) jn["infoset"] = n.infoset;
    if (!n.children.empty()) {
      json arr = json::array();
      for (const Arc& a : n.children) {
        arr.push_back(json{{"label", a.label}, {"child", a.child}});
      }
      jn["children"] = std::move(arr);
    }
    if (n.kind == NodeKind::kChance) jn["chance"] = n.chance;
    if (n.kind == NodeKind::kTerminal) {
      auto su = tree.sender_utility.find(n.id);
      if (su != tree.sender_utility.end()) jn["us"] = su->second;
      auto ru = tree.receiver_utility.find(n.id);
      if (ru != tree.receiver_utility.end()) jn["ur"] = ru->second;
    }
    nodes.push_back(std::move(jn));
  }
  doc["nodes"] = std::move(nodes);
  return doc.dump(2) + "\n";
}

}  // namespace bpsdm
