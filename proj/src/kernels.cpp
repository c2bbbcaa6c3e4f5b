#include "framelab/kernels.hpp"

#include <cstdlib>

namespace framelab::kernels {

#if defined(FRAMELAB_HAVE_AVX2)
const Backend* avx2_backend_impl();

namespace {
bool cpu_has_avx2() {
#if defined(__GNUC__) || defined(__clang__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}
}  // namespace
#endif

std::vector<const Backend*> available_backends() {
    std::vector<const Backend*> out{&scalar_backend()};
#if defined(FRAMELAB_HAVE_AVX2)
    if (cpu_has_avx2()) out.push_back(avx2_backend_impl());
#endif
    return out;
}

namespace {

const Backend* pick_default() {
    const auto backends = available_backends();
    if (const char* env = std::getenv("FRAMELAB_KERNELS")) {
        for (const Backend* b : backends)
            if (std::string_view(b->name) == env) return b;
    }
    return backends.back();  // widest available
}

const Backend*& active_slot() {
    static const Backend* active = pick_default();
    return active;
}

}  // namespace

const Backend& active_backend() { return *active_slot(); }

bool set_active_backend(std::string_view name) {
    for (const Backend* b : available_backends()) {
        if (std::string_view(b->name) == name) {
            active_slot() = b;
            return true;
        }
    }
    return false;
}

}  // namespace framelab::kernels
