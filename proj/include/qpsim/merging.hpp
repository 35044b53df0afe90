// Copyright 2026 The qpsim Authors
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

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "qpsim/circuit.hpp"

namespace qpsim {

struct MergeConfig {
    /// Spatial parameter: maximum number of qubits a merged gate may act on.
    size_t n = 3;
};

/// True iff the two gates share a wire.
bool connected(const Gate &a, const Gate &b);

/// Sorted union of two supports.
WireSupport union_support(const Gate &a, const Gate &b);

/// Product target · v on the sorted union support (v acts first). Returns nullopt when the union
/// exceeds `max_wires`.
std::optional<Gate> merge_two(const Gate &target, const Gate &v, size_t max_wires);

/// Observes each merge as it happens: (earlier gate, later gate, merged gate).
using MergeObserver = std::function<void(const Gate &, const Gate &, const Gate &)>;

/// Greedy frontier-based gate merging. Every output gate acts on at most cfg.n wires and the
/// product of the output sequence equals the product of the input sequence.
std::vector<Gate> merge_pass(const std::vector<Gate> &gates, const MergeConfig &cfg, const MergeObserver &observer = {});

/// Circuit with its gate list replaced by merge_pass output.
Circuit merge_circuit(const Circuit &c, const MergeConfig &cfg);

}  // namespace qpsim
