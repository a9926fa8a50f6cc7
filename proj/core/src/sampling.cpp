#include "hypb/sampling.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace hypb {

Point sample_region_d(const SquareTable& table, Rng& rng) {
    for (;;) {
        const Point p{uniform01(rng), uniform01(rng)};
        if (table.region_of(p) == Region::D) return p;
    }
}

std::size_t worker_count() {
    std::size_t n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("HYPB_THREADS")) {
        try {
            const long cap = std::stol(env);
            if (cap >= 1) n = std::min(n, static_cast<std::size_t>(cap));
        } catch (const std::exception&) {
            // Unparsable values leave the default in place.
        }
    }
    return n;
}

}  // namespace hypb
