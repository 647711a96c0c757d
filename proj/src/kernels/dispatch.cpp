#include <atomic>
#include <cstdlib>
#include <string>

#include "knnpe/core.hpp"
#include "knnpe/kernels.hpp"

namespace knnpe::kernels {

namespace {

Isa detect() noexcept {
  if (const char* env = std::getenv("KNNPE_ISA")) {
    const std::string want(env);
    if (want == "scalar") return Isa::Scalar;
    if (want == "avx2" && isa_supported(Isa::Avx2)) return Isa::Avx2;
  }
  return isa_supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  return isa == Isa::Avx2 ? "avx2" : "scalar";
}

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(KNNPE_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw Error(ErrorKind::Config, std::string("instruction set not available: ") +
                                       std::string(isa_name(isa)));
  }
  current().store(isa, std::memory_order_relaxed);
}

void squared_distances(const PackedPoints& points, std::span<const double> query,
                       std::span<double> out) {
#if defined(KNNPE_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return avx2::squared_distances(points, query, out);
#endif
  scalar::squared_distances(points, query, out);
}

void snap_pixels(std::span<const std::uint8_t> rgb, Rgb a, Rgb b, std::span<std::uint8_t> out) {
#if defined(KNNPE_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return avx2::snap_pixels(rgb, a, b, out);
#endif
  scalar::snap_pixels(rgb, a, b, out);
}

}  // namespace knnpe::kernels
