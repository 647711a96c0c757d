// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include "knnpe/kernels.hpp"

namespace knnpe::kernels::avx2 {

void squared_distances(const PackedPoints& points, std::span<const double> query,
                       std::span<double> out) {
  const std::size_t n = points.rows();
  const std::size_t dims = points.dims();
  std::size_t i = 0;

  for (; i + 16 <= n; i += 16) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    __m256d acc2 = _mm256_setzero_pd();
    __m256d acc3 = _mm256_setzero_pd();
    for (std::size_t d = 0; d < dims; ++d) {
      const double* col = points.column(d) + i;
      const __m256d q = _mm256_set1_pd(query[d]);
      const __m256d e0 = _mm256_sub_pd(_mm256_loadu_pd(col), q);
      const __m256d e1 = _mm256_sub_pd(_mm256_loadu_pd(col + 4), q);
      const __m256d e2 = _mm256_sub_pd(_mm256_loadu_pd(col + 8), q);
      const __m256d e3 = _mm256_sub_pd(_mm256_loadu_pd(col + 12), q);
      acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(e0, e0));
      acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(e1, e1));
      acc2 = _mm256_add_pd(acc2, _mm256_mul_pd(e2, e2));
      acc3 = _mm256_add_pd(acc3, _mm256_mul_pd(e3, e3));
    }
    _mm256_storeu_pd(out.data() + i, acc0);
    _mm256_storeu_pd(out.data() + i + 4, acc1);
    _mm256_storeu_pd(out.data() + i + 8, acc2);
    _mm256_storeu_pd(out.data() + i + 12, acc3);
  }

  // Columns are padded to a multiple of 4, so whole blocks are always loadable;
  // only the final store may need trimming.
  for (; i < n; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t d = 0; d < dims; ++d) {
      const __m256d e = _mm256_sub_pd(_mm256_loadu_pd(points.column(d) + i),
                                      _mm256_set1_pd(query[d]));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(e, e));
    }
    if (i + 4 <= n) {
      _mm256_storeu_pd(out.data() + i, acc);
    } else {
      alignas(32) double tail[4];
      _mm256_store_pd(tail, acc);
      for (std::size_t j = 0; i + j < n; ++j) out[i + j] = tail[j];
    }
  }
}

void snap_pixels(std::span<const std::uint8_t> rgb, Rgb a, Rgb b, std::span<std::uint8_t> out) {
  const std::size_t pixels = rgb.size() / 3;
  const __m256i offsets = _mm256_setr_epi32(0, 3, 6, 9, 12, 15, 18, 21);
  const __m256i byte = _mm256_set1_epi32(0xFF);
  const __m256i ar = _mm256_set1_epi32(a[0]), ag = _mm256_set1_epi32(a[1]),
                ab = _mm256_set1_epi32(a[2]);
  const __m256i br = _mm256_set1_epi32(b[0]), bg = _mm256_set1_epi32(b[1]),
                bb = _mm256_set1_epi32(b[2]);
  const auto sq = [](__m256i v) { return _mm256_mullo_epi32(v, v); };

  std::size_t p = 0;
  // Each gather reads 4 bytes per pixel; stop while the 4th byte of the last
  // pixel in the block is still inside the buffer.
  for (; p + 8 < pixels; p += 8) {
    const auto* base = reinterpret_cast<const int*>(rgb.data() + 3 * p);
    const __m256i word = _mm256_i32gather_epi32(base, offsets, 1);
    const __m256i r = _mm256_and_si256(word, byte);
    const __m256i g = _mm256_and_si256(_mm256_srli_epi32(word, 8), byte);
    const __m256i bl = _mm256_and_si256(_mm256_srli_epi32(word, 16), byte);
    const __m256i da = _mm256_add_epi32(
        _mm256_add_epi32(sq(_mm256_sub_epi32(r, ar)), sq(_mm256_sub_epi32(g, ag))),
        sq(_mm256_sub_epi32(bl, ab)));
    const __m256i db = _mm256_add_epi32(
        _mm256_add_epi32(sq(_mm256_sub_epi32(r, br)), sq(_mm256_sub_epi32(g, bg))),
        sq(_mm256_sub_epi32(bl, bb)));
    const int pick_b = _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpgt_epi32(da, db)));
    for (std::size_t j = 0; j < 8; ++j) {
      const Rgb& c = (pick_b >> j) & 1 ? b : a;
      std::uint8_t* o = out.data() + 3 * (p + j);
      o[0] = c[0];
      o[1] = c[1];
      o[2] = c[2];
    }
  }
  if (p < pixels) {
    scalar::snap_pixels(rgb.subspan(3 * p, 3 * (pixels - p)), a, b,
                        out.subspan(3 * p, 3 * (pixels - p)));
  }
}

}  // namespace knnpe::kernels::avx2
