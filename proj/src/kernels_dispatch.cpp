#include "dnacloud/kernels.hpp"

#include <atomic>

namespace dnacloud::kernels {

#if defined(DNACLOUD_HAVE_AVX2_TU)
namespace detail {
const Ops* avx2_ops();
}
#endif

const Ops* avx2() {
#if defined(DNACLOUD_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
    if (__builtin_cpu_supports("avx2")) return detail::avx2_ops();
#endif
    return nullptr;
}

namespace {
std::atomic<const Ops*> g_active{nullptr};
}

const Ops& active() {
    const Ops* ops = g_active.load(std::memory_order_acquire);
    if (!ops) {
        ops = avx2();
        if (!ops) ops = &scalar();
        g_active.store(ops, std::memory_order_release);
    }
    return *ops;
}

void select(const Ops& ops) {
    g_active.store(&ops, std::memory_order_release);
}

}  // namespace dnacloud::kernels
