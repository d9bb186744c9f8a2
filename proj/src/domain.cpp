#include "mtmb/domain.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace mtmb::detail {

CellGrid::CellGrid(double lo_, double extent, double h_) : lo(lo_), h(h_) {
    if (!(h > 0.0) || !(extent > 0.0))
        throw std::invalid_argument("CellGrid: extent and cell size must be positive");
    // ceil(extent / h) cells cover [lo, lo + extent), except that a pitch
    // dividing the extent evenly must not gain a sliver cell just because
    // the quotient rounds across the integer (1.0 / (1.0/3.0) == 3.0 exactly,
    // yet 3 * (1.0/3.0) < 1.0).
    const double raw = extent / h;
    const double snapped = std::round(raw);
    if (snapped >= 1.0 && std::abs(raw - snapped) <= 1e-9 * snapped)
        n_cells = static_cast<int>(snapped);
    else
        n_cells = std::max(1, static_cast<int>(std::ceil(raw)));
}

int CellGrid::index(double x) const {
    int i = static_cast<int>(std::floor((x - lo) / h));
    if (i < 0)
        i = 0;
    if (i >= n_cells)
        i = n_cells - 1;
    return i;
}

std::uint64_t hash_mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

std::uint64_t hash_mix(std::uint64_t h, double v) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(v));
    std::memcpy(&bits, &v, sizeof(bits));
    return hash_mix(h, bits);
}

} // namespace mtmb::detail
