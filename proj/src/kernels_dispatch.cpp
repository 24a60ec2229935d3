#include <cstdlib>
#include <thread>
#include <vector>

#include "bsos/kernels.hpp"

namespace bsos::kernels {

namespace {

const Ops* select_backend(std::string& name) {
    const char* req = std::getenv("BSOS_KERNEL");
    const std::string want = req ? req : "auto";
    if (want == "scalar") { name = "scalar"; return &scalar_ops; }
#if defined(__x86_64__) || defined(_M_X64)
    if ((want == "avx2" || want == "auto") && avx2_supported()) { name = "avx2"; return &avx2_ops; }
#endif
#if defined(__aarch64__)
    if (want == "neon" || want == "auto") { name = "neon"; return &neon_ops; }
#endif
    name = "scalar";
    return &scalar_ops;
}

struct Backend {
    std::string name;
    const Ops* ops;
    Backend() { ops = select_backend(name); }
};

const Backend& backend() {
    static const Backend b;
    return b;
}

}  // namespace

const Ops& ops() { return *backend().ops; }

std::string backend_name() { return backend().name; }

int num_threads() {
    const char* v = std::getenv("BSOS_NUM_THREADS");
    if (!v) return 0;
    const int t = std::atoi(v);
    return t > 0 ? t : 0;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
    const int nt = num_threads();
    if (nt <= 1 || n < 64) {
        fn(0, n);
        return;
    }
    const std::size_t chunks = std::min<std::size_t>(nt, n);
    const std::size_t step = (n + chunks - 1) / chunks;
    std::vector<std::thread> workers;
    workers.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t lo = c * step;
        const std::size_t hi = std::min(n, lo + step);
        if (lo >= hi) break;
        workers.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    }
    for (auto& w : workers) w.join();
}

}  // namespace bsos::kernels
