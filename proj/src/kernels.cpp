#include "hgf/kernels.hpp"

namespace hgf::kernels {

namespace {
const Backend* g_active = nullptr;

const Backend* best() {
    if (const Backend* v = avx2()) return v;
    return &scalar();
}
} // namespace

const Backend& active() {
    if (!g_active) g_active = best();
    return *g_active;
}

bool set_active(std::string_view name) {
    if (name == "auto") {
        g_active = best();
        return true;
    }
    if (name == "scalar") {
        g_active = &scalar();
        return true;
    }
    if (name == "avx2") {
        if (const Backend* v = avx2()) {
            g_active = v;
            return true;
        }
        return false;
    }
    return false;
}

} // namespace hgf::kernels
