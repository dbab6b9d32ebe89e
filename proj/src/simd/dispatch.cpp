#include "maxwalk/simd/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace maxwalk::simd {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable& active() {
    static const KernelTable& chosen = [] () -> const KernelTable& {
        const char* env = std::getenv("MAXWALK_SIMD");
        if (env && std::string_view(env) == "scalar") return scalar_kernels();
        if (cpu_has_avx2()) {
            if (const KernelTable* t = avx2_kernels()) return *t;
        }
        return scalar_kernels();
    }();
    return chosen;
}

} // namespace maxwalk::simd
