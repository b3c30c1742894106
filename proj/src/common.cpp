#include "normforge/common.hpp"

#include <cstdlib>

namespace normforge {

int max_group_order() {
    static const int bound = [] {
        const char* env = std::getenv("NORMFORGE_MAX_ORDER");
        if (!env || !*env) return 64;
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (!end || *end != '\0' || v < 1 || v > 4096)
            throw SpecError("NORMFORGE_MAX_ORDER must be an integer in [1,4096]");
        return static_cast<int>(v);
    }();
    return bound;
}

}  // namespace normforge
