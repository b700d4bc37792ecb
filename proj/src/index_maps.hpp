// Copyright 2026 The qcomb Authors
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

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qcomb::kernels::detail {

using Index = Eigen::Index;

inline std::vector<Index> strides_of(std::span<const int> dims) {
    std::vector<Index> strides(dims.size(), 1);
    for (std::size_t i = dims.size(); i-- > 1;) {
        strides[i - 1] = strides[i] * dims[i];
    }
    return strides;
}

/// Full-space offsets of every multi-index over the selected factors, listed
/// in lexicographic order of the selected factors.
inline std::vector<Index> offsets(std::span<const int> dims, std::span<const Index> strides,
                                  const std::vector<int> &selected) {
    std::vector<Index> out{0};
    for (int f : selected) {
        std::vector<Index> next;
        next.reserve(out.size() * dims[f]);
        for (Index base : out) {
            for (int k = 0; k < dims[f]; ++k) {
                next.push_back(base + k * strides[f]);
            }
        }
        out = std::move(next);
    }
    return out;
}

struct TraceMaps {
    std::vector<Index> kept;
    std::vector<Index> traced;
};

inline TraceMaps trace_maps(std::span<const int> dims, std::span<const char> traced) {
    auto strides = strides_of(dims);
    std::vector<int> keep_list, trace_list;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        (traced[i] ? trace_list : keep_list).push_back(static_cast<int>(i));
    }
    return {offsets(dims, strides, keep_list), offsets(dims, strides, trace_list)};
}

/// map[old_index] = new_index when new factor k is old factor perm[k].
inline std::vector<Index> permutation_map(std::span<const int> dims, std::span<const int> perm) {
    const std::size_t n = dims.size();
    std::vector<int> new_dims(n);
    for (std::size_t k = 0; k < n; ++k) new_dims[k] = dims[perm[k]];
    auto new_strides = strides_of(new_dims);
    std::vector<Index> stride_for_old(n);
    for (std::size_t k = 0; k < n; ++k) stride_for_old[perm[k]] = new_strides[k];
    std::vector<int> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<int>(i);
    return offsets(dims, stride_for_old, all);
}

}  // namespace qcomb::kernels::detail
