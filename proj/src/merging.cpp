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

#include "qpsim/merging.hpp"

#include <algorithm>

namespace qpsim {

namespace {

WireSupport local_positions(const WireSupport &support, const WireSupport &merged) {
    WireSupport local;
    for (uint32_t w : support) {
        auto it = std::lower_bound(merged.begin(), merged.end(), w);
        local.push_back(static_cast<uint32_t>(it - merged.begin()));
    }
    return local;
}

}  // namespace

bool connected(const Gate &a, const Gate &b) {
    for (uint32_t w : a.support) {
        if (std::find(b.support.begin(), b.support.end(), w) != b.support.end()) {
            return true;
        }
    }
    return false;
}

WireSupport union_support(const Gate &a, const Gate &b) {
    WireSupport u = a.support;
    u.insert(u.end(), b.support.begin(), b.support.end());
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    return u;
}

std::optional<Gate> merge_two(const Gate &target, const Gate &v, size_t max_wires) {
    WireSupport merged = union_support(target, v);
    if (merged.size() > max_wires) {
        return std::nullopt;
    }
    size_t k = merged.size();
    CMatrix t = embed_gate(target.matrix, local_positions(target.support, merged), k);
    CMatrix first = embed_gate(v.matrix, local_positions(v.support, merged), k);
    return Gate{t * first, std::move(merged), target.label + "*" + v.label, "", 0.0};
}

std::vector<Gate> merge_pass(const std::vector<Gate> &gates, const MergeConfig &cfg, const MergeObserver &observer) {
    for (const auto &g : gates) {
        if (g.arity() > cfg.n) {
            throw ValidationError("merge_pass: spatial parameter n is smaller than a gate's arity");
        }
    }
    std::vector<Gate> completed;
    std::vector<Gate> frontier;
    for (const auto &incoming : gates) {
        Gate target = incoming;
        std::vector<Gate> kept;
        kept.reserve(frontier.size() + 1);
        for (auto &v : frontier) {
            if (!connected(target, v)) {
                kept.push_back(std::move(v));
                continue;
            }
            if (auto merged = merge_two(target, v, cfg.n)) {
                if (observer) {
                    observer(v, target, *merged);
                }
                target = std::move(*merged);
            } else {
                completed.push_back(std::move(v));
            }
        }
        kept.push_back(std::move(target));
        frontier = std::move(kept);
    }
    for (auto &g : frontier) {
        completed.push_back(std::move(g));
    }
    return completed;
}

Circuit merge_circuit(const Circuit &c, const MergeConfig &cfg) {
    Circuit out = c;
    out.gates = merge_pass(c.gates, cfg);
    return out;
}

}  // namespace qpsim
