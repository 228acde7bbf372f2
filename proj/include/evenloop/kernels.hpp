#pragma once

// Word-parallel GF(2) kernels. Every kernel has a portable scalar reference
// and, where the compiler supports it, an AVX2 variant. The active table is
// chosen once at runtime from CPUID; EVENLOOP_KERNELS=scalar|avx2 overrides.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace evenloop::kernels {

using Word = std::uint64_t;

struct KernelTable {
  std::string_view name;
  void (*xor_into)(Word* dst, const Word* src, std::size_t n);
  void (*or_into)(Word* dst, const Word* src, std::size_t n);
  void (*and_into)(Word* dst, const Word* src, std::size_t n);
  std::size_t (*popcount)(const Word* a, std::size_t n);
  // popcount(a & b); its low bit is the GF(2) dot product.
  std::size_t (*and_popcount)(const Word* a, const Word* b, std::size_t n);
  bool (*any)(const Word* a, std::size_t n);
  // true iff a & ~b == 0
  bool (*is_subset)(const Word* a, const Word* b, std::size_t n);
};

const KernelTable& scalar_table();

// nullptr when the AVX2 translation unit was not built for this target.
const KernelTable* avx2_table();

bool cpu_supports_avx2();

// The table used by BitVector and everything above it.
const KernelTable& active();

// Test hook: force a specific table (must outlive all callers).
void set_active(const KernelTable& table);

}  // namespace evenloop::kernels
