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

#include "procmat/kernels.hpp"

#include <algorithm>
#include <cmath>

#ifdef PROCMAT_OPENMP
#include <omp.h>
#endif

namespace procmat::kernels {

//==========================================================================
// Serial reference implementations
//==========================================================================

namespace serial {

void kron2(const cx* a, std::size_t da, const cx* b, std::size_t db, cx* out) {
  const std::size_t D = da * db;
  for (std::size_t ra = 0; ra < da; ++ra)
    for (std::size_t ca = 0; ca < da; ++ca) {
      const cx av = a[ra * da + ca];
      cx* blk = out + (ra * db) * D + (ca * db);
      for (std::size_t rb = 0; rb < db; ++rb)
        for (std::size_t cb = 0; cb < db; ++cb)
          blk[rb * D + cb] = av * b[rb * db + cb];
    }
}

void gather(const cx* in, cx* out, std::size_t D,
            const std::vector<std::size_t>& map) {
  for (std::size_t r = 0; r < D; ++r) {
    const cx* src_row = in + map[r] * D;
    cx* dst_row = out + r * D;
    for (std::size_t c = 0; c < D; ++c) dst_row[c] = src_row[map[c]];
  }
}

void partial_trace(const cx* in, std::size_t D, cx* out,
                   const std::vector<std::size_t>& kmap,
                   const std::vector<std::size_t>& tmap) {
  const std::size_t Dk = kmap.size();
  for (std::size_t rk = 0; rk < Dk; ++rk)
    for (std::size_t ck = 0; ck < Dk; ++ck) {
      cx acc = 0.0;
      for (std::size_t t : tmap) acc += in[(kmap[rk] + t) * D + (kmap[ck] + t)];
      out[rk * Dk + ck] = acc;
    }
}

cx dot_conj(const cx* a, const cx* b, std::size_t n) {
  cx acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

cx dot_plain(const cx* a, const cx* b, std::size_t n) {
  cx acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double max_abs_diff(const cx* a, const cx* b, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    m = std::max(m, std::abs(b ? a[i] - b[i] : a[i]));
  return m;
}

}  // namespace serial

//==========================================================================
// OpenMP implementations
//==========================================================================

namespace par {

void kron2(const cx* a, std::size_t da, const cx* b, std::size_t db, cx* out) {
#ifdef PROCMAT_OPENMP
  const std::size_t D = da * db;
  const long n = static_cast<long>(da * da);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    const std::size_t ra = static_cast<std::size_t>(i) / da;
    const std::size_t ca = static_cast<std::size_t>(i) % da;
    const cx av = a[ra * da + ca];
    cx* blk = out + (ra * db) * D + (ca * db);
    for (std::size_t rb = 0; rb < db; ++rb)
      for (std::size_t cb = 0; cb < db; ++cb)
        blk[rb * D + cb] = av * b[rb * db + cb];
  }
#else
  serial::kron2(a, da, b, db, out);
#endif
}

void gather(const cx* in, cx* out, std::size_t D,
            const std::vector<std::size_t>& map) {
#ifdef PROCMAT_OPENMP
#pragma omp parallel for schedule(static)
  for (long r = 0; r < static_cast<long>(D); ++r) {
    const cx* src_row = in + map[static_cast<std::size_t>(r)] * D;
    cx* dst_row = out + static_cast<std::size_t>(r) * D;
    for (std::size_t c = 0; c < D; ++c) dst_row[c] = src_row[map[c]];
  }
#else
  serial::gather(in, out, D, map);
#endif
}

void partial_trace(const cx* in, std::size_t D, cx* out,
                   const std::vector<std::size_t>& kmap,
                   const std::vector<std::size_t>& tmap) {
#ifdef PROCMAT_OPENMP
  const std::size_t Dk = kmap.size();
#pragma omp parallel for schedule(static)
  for (long rk = 0; rk < static_cast<long>(Dk); ++rk)
    for (std::size_t ck = 0; ck < Dk; ++ck) {
      cx acc = 0.0;
      for (std::size_t t : tmap)
        acc += in[(kmap[static_cast<std::size_t>(rk)] + t) * D +
                  (kmap[ck] + t)];
      out[static_cast<std::size_t>(rk) * Dk + ck] = acc;
    }
#else
  serial::partial_trace(in, D, out, kmap, tmap);
#endif
}

cx dot_conj(const cx* a, const cx* b, std::size_t n) {
#ifdef PROCMAT_OPENMP
  double re = 0.0, im = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : re, im)
  for (long i = 0; i < static_cast<long>(n); ++i) {
    const cx v = std::conj(a[i]) * b[i];
    re += v.real();
    im += v.imag();
  }
  return {re, im};
#else
  return serial::dot_conj(a, b, n);
#endif
}

cx dot_plain(const cx* a, const cx* b, std::size_t n) {
#ifdef PROCMAT_OPENMP
  double re = 0.0, im = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : re, im)
  for (long i = 0; i < static_cast<long>(n); ++i) {
    const cx v = a[i] * b[i];
    re += v.real();
    im += v.imag();
  }
  return {re, im};
#else
  return serial::dot_plain(a, b, n);
#endif
}

double max_abs_diff(const cx* a, const cx* b, std::size_t n) {
#ifdef PROCMAT_OPENMP
  double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
  for (long i = 0; i < static_cast<long>(n); ++i)
    m = std::max(m, std::abs(b ? a[i] - b[i] : a[i]));
  return m;
#else
  return serial::max_abs_diff(a, b, n);
#endif
}

}  // namespace par

//==========================================================================
// Dispatch
//==========================================================================

namespace {

inline bool use_par(std::size_t out_elems) {
#ifdef PROCMAT_OPENMP
  return out_elems >= kParThreshold;
#else
  (void)out_elems;
  return false;
#endif
}

}  // namespace

void kron2(const cx* a, std::size_t da, const cx* b, std::size_t db, cx* out) {
  const std::size_t D = da * db;
  if (use_par(D * D))
    par::kron2(a, da, b, db, out);
  else
    serial::kron2(a, da, b, db, out);
}

void gather(const cx* in, cx* out, std::size_t D,
            const std::vector<std::size_t>& map) {
  if (use_par(D * D))
    par::gather(in, out, D, map);
  else
    serial::gather(in, out, D, map);
}

void partial_trace(const cx* in, std::size_t D, cx* out,
                   const std::vector<std::size_t>& kmap,
                   const std::vector<std::size_t>& tmap) {
  if (use_par(kmap.size() * kmap.size() * tmap.size()))
    par::partial_trace(in, D, out, kmap, tmap);
  else
    serial::partial_trace(in, D, out, kmap, tmap);
}

cx dot_conj(const cx* a, const cx* b, std::size_t n) {
  return use_par(n) ? par::dot_conj(a, b, n) : serial::dot_conj(a, b, n);
}

cx dot_plain(const cx* a, const cx* b, std::size_t n) {
  return use_par(n) ? par::dot_plain(a, b, n) : serial::dot_plain(a, b, n);
}

double max_abs_diff(const cx* a, const cx* b, std::size_t n) {
  return use_par(n) ? par::max_abs_diff(a, b, n)
                    : serial::max_abs_diff(a, b, n);
}

}  // namespace procmat::kernels
