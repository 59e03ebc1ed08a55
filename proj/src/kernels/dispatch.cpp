#include <cstdlib>
#include <cstring>

#include "kernels_internal.hpp"

namespace wlab::kernels {

const KernelTable* avx2() {
#if defined(WLAB_HAVE_AVX2_KERNELS)
    static const bool supported = [] {
        __builtin_cpu_init();
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    }();
    return supported ? &detail::avx2_table() : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active() {
    static const KernelTable* table = [] {
        const char* force = std::getenv("WLAB_KERNELS");
        if (force != nullptr && std::strcmp(force, "scalar") == 0) return &scalar();
        const KernelTable* fast = avx2();
        return fast != nullptr ? fast : &scalar();
    }();
    return *table;
}

}  // namespace wlab::kernels
