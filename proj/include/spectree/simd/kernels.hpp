#pragma once

#include <cstddef>
#include <string_view>

#include "spectree/types.hpp"

// Inner loops of kernel assembly. Kernel blocks are real; the spectral
// coefficients multiplying them are complex, so every loop here is some
// flavour of "complex scalar times real stream, accumulated".

namespace spectree::simd {

enum class Isa { Scalar, Avx2, Neon };

struct KernelTable {
  Isa isa;
  // out[i] += c * p[i]
  void (*accumulate_scaled)(Complex* out, const double* p, std::size_t n, Complex c);
  // out[i] += c * p[i]; dout[i] += dc * p[i]
  void (*accumulate_scaled2)(Complex* out, Complex* dout, const double* p, std::size_t n,
                             Complex c, Complex dc);
  // y[i] += a * x[i]
  void (*axpy)(Complex* y, const Complex* x, std::size_t n, Complex a);
};

const char* to_string(Isa isa);
bool parse_isa(std::string_view name, Isa& out);

bool isa_available(Isa isa);

/// Table for a specific ISA; throws InvalidParameter if it is not usable here.
const KernelTable& kernels_for(Isa isa);

/// Best available table. SPECTREE_SIMD=scalar|avx2|neon overrides the choice.
const KernelTable& kernels();

namespace scalar {
void accumulate_scaled(Complex* out, const double* p, std::size_t n, Complex c);
void accumulate_scaled2(Complex* out, Complex* dout, const double* p, std::size_t n, Complex c,
                        Complex dc);
void axpy(Complex* y, const Complex* x, std::size_t n, Complex a);
}  // namespace scalar

#if defined(SPECTREE_HAVE_AVX2)
namespace avx2 {
void accumulate_scaled(Complex* out, const double* p, std::size_t n, Complex c);
void accumulate_scaled2(Complex* out, Complex* dout, const double* p, std::size_t n, Complex c,
                        Complex dc);
void axpy(Complex* y, const Complex* x, std::size_t n, Complex a);
}  // namespace avx2
#endif

#if defined(SPECTREE_HAVE_NEON)
namespace neon {
void accumulate_scaled(Complex* out, const double* p, std::size_t n, Complex c);
void accumulate_scaled2(Complex* out, Complex* dout, const double* p, std::size_t n, Complex c,
                        Complex dc);
void axpy(Complex* y, const Complex* x, std::size_t n, Complex a);
}  // namespace neon
#endif

}  // namespace spectree::simd
