#include <atomic>
#include <cstdlib>
#include <string>

#include "kernels_impl.hpp"

namespace yigmag::kernels {
namespace {

const KernelTable scalar_kernels{
    "scalar",
    scalar::scale_complex,
    scalar::scale_complex_const,
    scalar::multiply,
    scalar::accumulate_norm,
    scalar::multiply_conj,
    scalar::central_difference,
};

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable* pick_default() {
  if (const char* forced = std::getenv("YIGMAG_KERNELS")) {
    const std::string name(forced);
    if (name == "scalar") return &scalar_kernels;
    if (name == "avx2" && avx2_table()) return avx2_table();
    if (name == "neon" && neon_table()) return neon_table();
  }
  if (const KernelTable* t = avx2_table()) return t;
  if (const KernelTable* t = neon_table()) return t;
  return &scalar_kernels;
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{pick_default()};
  return table;
}

}  // namespace

const KernelTable& scalar_table() { return scalar_kernels; }

const KernelTable* avx2_table() {
  static const KernelTable* t = cpu_has_avx2() ? avx2_table_if_built() : nullptr;
  return t;
}

const KernelTable* neon_table() { return neon_table_if_built(); }

std::vector<const KernelTable*> available_tables() {
  std::vector<const KernelTable*> out{&scalar_kernels};
  if (avx2_table()) out.push_back(avx2_table());
  if (neon_table()) out.push_back(neon_table());
  return out;
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

bool select(std::string_view name) {
  for (const KernelTable* t : available_tables()) {
    if (name == t->name) {
      current().store(t, std::memory_order_release);
      return true;
    }
  }
  return false;
}

}  // namespace yigmag::kernels
