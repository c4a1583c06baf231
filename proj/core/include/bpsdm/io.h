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

#ifndef BPSDM_IO_H_
#define BPSDM_IO_H_

#include <string>

#include "bpsdm/tree.h"

namespace bpsdm {

// Parses an instance document (JSON, keys `root` and `nodes`; each node has
// `id`, `kind`, optional `infoset`, `children` as [{label, child}], `chance`
// weights aligned with children, and terminal `us`/`ur`). The result is
// validated. Throws BpsdmError(kParseError) naming the offending field, or
// any validate_instance error.
TreeInstance load_instance(const std::string& text);

TreeInstance load_instance_file(const std::string& path);

// Emits the schema with keys in the fixed order (root, nodes; per node: id,
// kind, infoset, children, chance, us, ur) and weights at 17 significant
// digits, so serialize(load(text)) round-trips and diffs are stable.
std::string serialize_instance(const TreeInstance& tree);

}  // namespace bpsdm

#endif  // BPSDM_IO_H_
