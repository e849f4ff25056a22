#include <cstdlib>
#include <cstring>
#include <string>

#include "semnet/kernels/kernels.hpp"
#include "semnet/log.hpp"

namespace semnet::kernels {

namespace {

const KernelTable& pick() {
  const char* env = std::getenv("SEMNET_KERNELS");
  if (env != nullptr) {
    if (std::strcmp(env, "scalar") == 0) return scalar();
    if (std::strcmp(env, "avx2") == 0) {
      if (const KernelTable* t = avx2()) return *t;
      log::warn("SEMNET_KERNELS=avx2 requested but AVX2+FMA is unavailable, using scalar kernels");
      return scalar();
    }
    log::warn(std::string("SEMNET_KERNELS=") + env + " not recognised (scalar|avx2), auto-selecting");
  }
  if (const KernelTable* t = avx2()) return *t;
  return scalar();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& chosen = []() -> const KernelTable& {
    const KernelTable& t = pick();
    log::debug(std::string("kernels: ") + t.name);
    return t;
  }();
  return chosen;
}

}  // namespace semnet::kernels
