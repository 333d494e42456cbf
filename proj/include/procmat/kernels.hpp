// Copyright 2026 The procmat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <vector>

#include "procmat/factor.hpp"

// Dense kernels on row-major complex matrices. Every kernel exists twice:
// a plain serial reference in kernels::serial and an OpenMP version in
// kernels::par. The unqualified wrappers dispatch to the parallel path for
// large inputs when the library is built with OpenMP, and to the serial
// reference otherwise. Tests compare the two; kernels_bench times them.
//
// kron2, gather and partial_trace assign each output element to exactly one
// iteration, so their parallel results are bit-identical to the serial ones.
// The reductions (dot products, norms) reassociate sums under OpenMP and are
// compared with a tolerance instead.

namespace procmat::kernels {

// Sizes at or above this many output elements take the parallel path.
inline constexpr std::size_t kParThreshold = 1u << 12;

namespace serial {

// out = a (x) b, with a of size da x da, b of size db x db.
void kron2(const cx* a, std::size_t da, const cx* b, std::size_t db, cx* out);

// out[r*D+c] = in[map[r]*D + map[c]]; map is a bijection on [0, D).
void gather(const cx* in, cx* out, std::size_t D,
            const std::vector<std::size_t>& map);

// out[rk*Dk+ck] = sum_t in[(kmap[rk]+tmap[t]) * D + (kmap[ck]+tmap[t])].
// kmap/tmap embed kept and traced mixed-radix indices into the full index.
void partial_trace(const cx* in, std::size_t D, cx* out,
                   const std::vector<std::size_t>& kmap,
                   const std::vector<std::size_t>& tmap);

// sum_i conj(a[i]) * b[i]
cx dot_conj(const cx* a, const cx* b, std::size_t n);

// sum_i a[i] * b[i]  (no conjugation; the Born-rule pairing Tr[A B^T])
cx dot_plain(const cx* a, const cx* b, std::size_t n);

// max_i |a[i] - b[i]|; pass b = nullptr for max_i |a[i]|
double max_abs_diff(const cx* a, const cx* b, std::size_t n);

}  // namespace serial

namespace par {

void kron2(const cx* a, std::size_t da, const cx* b, std::size_t db, cx* out);
void gather(const cx* in, cx* out, std::size_t D,
            const std::vector<std::size_t>& map);
void partial_trace(const cx* in, std::size_t D, cx* out,
                   const std::vector<std::size_t>& kmap,
                   const std::vector<std::size_t>& tmap);
cx dot_conj(const cx* a, const cx* b, std::size_t n);
cx dot_plain(const cx* a, const cx* b, std::size_t n);
double max_abs_diff(const cx* a, const cx* b, std::size_t n);

}  // namespace par

//--------------------------------------------------------------------------
// Dispatching wrappers
//--------------------------------------------------------------------------

void kron2(const cx* a, std::size_t da, const cx* b, std::size_t db, cx* out);
void gather(const cx* in, cx* out, std::size_t D,
            const std::vector<std::size_t>& map);
void partial_trace(const cx* in, std::size_t D, cx* out,
                   const std::vector<std::size_t>& kmap,
                   const std::vector<std::size_t>& tmap);
cx dot_conj(const cx* a, const cx* b, std::size_t n);
cx dot_plain(const cx* a, const cx* b, std::size_t n);
double max_abs_diff(const cx* a, const cx* b, std::size_t n);

}  // namespace procmat::kernels
