#include "kernels_impl.hpp"

#include <cstdlib>
#include <string_view>

namespace gapfill::kernels {
namespace {

constexpr KernelTable kScalar{
    Isa::scalar,          "scalar",
    &scalar::multiply,    &scalar::ramp_multiply,
    &scalar::butterfly,   &scalar::dot_reversed,
    &scalar::scale,
};

#if defined(GAPFILL_HAVE_AVX2)
constexpr KernelTable kAvx2{
    Isa::avx2,          "avx2",
    &avx2::multiply,    &avx2::ramp_multiply,
    &avx2::butterfly,   &avx2::dot_reversed,
    &avx2::scale,
};

bool cpu_has_avx2() {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable& select() {
    if (const char* forced = std::getenv("GAPFILL_KERNELS");
        forced != nullptr && std::string_view(forced) == "scalar") {
        return kScalar;
    }
    if (const KernelTable* t = table_for(Isa::avx2)) {
        return *t;
    }
    return kScalar;
}

} // namespace

const KernelTable& scalar_table() {
    return kScalar;
}

const KernelTable* table_for(Isa isa) {
    switch (isa) {
    case Isa::scalar:
        return &kScalar;
    case Isa::avx2:
#if defined(GAPFILL_HAVE_AVX2)
        if (cpu_has_avx2()) {
            return &kAvx2;
        }
#endif
        return nullptr;
    }
    return nullptr;
}

const KernelTable& active() {
    static const KernelTable& table = select();
    return table;
}

} // namespace gapfill::kernels
