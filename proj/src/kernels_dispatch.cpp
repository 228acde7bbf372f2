#include <atomic>
#include <cstdlib>
#include <string_view>

#include "evenloop/kernels.hpp"

namespace evenloop::kernels {

#if !defined(EVENLOOP_HAVE_AVX2)
const KernelTable* avx2_table() { return nullptr; }
#endif

bool cpu_supports_avx2() {
#if defined(EVENLOOP_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

namespace {

const KernelTable* pick_default() {
  const char* env = std::getenv("EVENLOOP_KERNELS");
  const std::string_view forced = env != nullptr ? env : "";
  if (forced == "scalar") return &scalar_table();
  if (avx2_table() != nullptr && cpu_supports_avx2()) return avx2_table();
  return &scalar_table();
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> table{pick_default()};
  return table;
}

}  // namespace

const KernelTable& active() { return *slot().load(std::memory_order_relaxed); }

void set_active(const KernelTable& table) { slot().store(&table, std::memory_order_relaxed); }

}  // namespace evenloop::kernels
