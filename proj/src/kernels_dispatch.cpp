#include <atomic>
#include <cstdlib>
#include <stdexcept>

#include "qsm/kernels.hpp"

namespace qsm::kernels {

const Ops* avx2_ops_impl();  // defined in kernels_avx2.cpp

namespace {

bool cpu_has_avx2_fma() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

std::atomic<const Ops*> g_active{nullptr};

const Ops* pick_default() {
    if (const char* env = std::getenv("QSM_KERNEL_LANE")) {
        std::string lane(env);
        if (lane == "scalar") return &scalar_ops();
        if (lane == "avx2" && avx2_ops()) return avx2_ops();
    }
    if (const Ops* v = avx2_ops()) return v;
    return &scalar_ops();
}

}  // namespace

const Ops* avx2_ops() {
    return cpu_has_avx2_fma() ? avx2_ops_impl() : nullptr;
}

const Ops& active() {
    const Ops* ops = g_active.load(std::memory_order_acquire);
    if (!ops) {
        ops = pick_default();
        g_active.store(ops, std::memory_order_release);
    }
    return *ops;
}

void select_lane(const std::string& name) {
    if (name == "auto") {
        g_active.store(pick_default(), std::memory_order_release);
    } else if (name == "scalar") {
        g_active.store(&scalar_ops(), std::memory_order_release);
    } else if (name == "avx2") {
        const Ops* v = avx2_ops();
        if (!v) throw std::runtime_error("avx2 kernel lane unavailable on this CPU");
        g_active.store(v, std::memory_order_release);
    } else {
        throw std::runtime_error("unknown kernel lane: " + name);
    }
}

}  // namespace qsm::kernels
