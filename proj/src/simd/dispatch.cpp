#include <cstdlib>
#include <string>

#include "spectree/error.hpp"
#include "spectree/simd/kernels.hpp"

namespace spectree::simd {

namespace {

const KernelTable kScalar{Isa::Scalar, scalar::accumulate_scaled, scalar::accumulate_scaled2,
                          scalar::axpy};
#if defined(SPECTREE_HAVE_AVX2)
const KernelTable kAvx2{Isa::Avx2, avx2::accumulate_scaled, avx2::accumulate_scaled2,
                        avx2::axpy};
#endif
#if defined(SPECTREE_HAVE_NEON)
const KernelTable kNeon{Isa::Neon, neon::accumulate_scaled, neon::accumulate_scaled2,
                        neon::axpy};
#endif

const KernelTable& select() {
  if (const char* env = std::getenv("SPECTREE_SIMD")) {
    Isa isa;
    if (parse_isa(env, isa) && isa_available(isa)) return kernels_for(isa);
  }
  if (isa_available(Isa::Avx2)) return kernels_for(Isa::Avx2);
  if (isa_available(Isa::Neon)) return kernels_for(Isa::Neon);
  return kScalar;
}

}  // namespace

const char* to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

bool parse_isa(std::string_view name, Isa& out) {
  if (name == "scalar") out = Isa::Scalar;
  else if (name == "avx2") out = Isa::Avx2;
  else if (name == "neon") out = Isa::Neon;
  else return false;
  return true;
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(SPECTREE_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(SPECTREE_HAVE_NEON)
      return true;  // mandatory on aarch64
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& kernels_for(Isa isa) {
  if (!isa_available(isa))
    throw Error(ErrorCode::InvalidParameter,
                std::string("SIMD variant ") + to_string(isa) + " is not available on this host");
  switch (isa) {
#if defined(SPECTREE_HAVE_AVX2)
    case Isa::Avx2: return kAvx2;
#endif
#if defined(SPECTREE_HAVE_NEON)
    case Isa::Neon: return kNeon;
#endif
    default: return kScalar;
  }
}

const KernelTable& kernels() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace spectree::simd
