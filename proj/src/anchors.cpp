#include "fibarc/anchors.hpp"

#include <algorithm>

namespace fibarc {

std::vector<Anchor> compute_anchors(std::span<const Grade> points) {
    std::vector<Rational> xs, ys;
    for (const Grade& p : points) {
        xs.push_back(p.x);
        ys.push_back(p.y);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

    const std::size_t kx = xs.size();
    const std::size_t ky = ys.size();
    std::vector<char> occupied(kx * ky, 0);
    for (const Grade& p : points) {
        auto ix = static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), p.x) - xs.begin());
        auto iy = static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), p.y) - ys.begin());
        occupied[ix * ky + iy] = 1;
    }

    // below[ix][iy]: some point of S in column ix strictly below row iy.
    std::vector<char> below(kx * ky, 0);
    for (std::size_t ix = 0; ix < kx; ++ix) {
        char seen = 0;
        for (std::size_t iy = 0; iy < ky; ++iy) {
            below[ix * ky + iy] = seen;
            seen |= occupied[ix * ky + iy];
        }
    }

    std::vector<Anchor> out;
    std::vector<char> left_seen(ky, 0);
    for (std::size_t ix = 0; ix < kx; ++ix) {
        for (std::size_t iy = 0; iy < ky; ++iy) {
            const bool at = occupied[ix * ky + iy] != 0;
            const bool b = below[ix * ky + iy] != 0;
            const bool l = left_seen[iy] != 0;
            if ((b && l) || (at && (b || l))) out.push_back({{xs[ix], ys[iy]}, b && l});
        }
        for (std::size_t iy = 0; iy < ky; ++iy) left_seen[iy] |= occupied[ix * ky + iy];
    }
    return out;
}

}  // namespace fibarc
