#pragma once

#include <p123/error.hpp>

#include <string>
#include <vector>

namespace p123 {

/// Forbidden values n_1..n_r: find z in {0,1}^r with sum_{j != i} z_j != n_i for every i.
struct NullstellensatzInstance {
    std::vector<int> n;
    int r() const noexcept { return static_cast<int>(n.size()); }
};

inline bool avoids_all(const NullstellensatzInstance& inst, const std::vector<int>& z) {
    if (z.size() != inst.n.size()) return false;
    int total = 0;
    for (int v : z) total += v;
    for (std::size_t i = 0; i < z.size(); ++i)
        if (total - z[i] == inst.n[i]) return false;
    return true;
}

/// Scans the total s = sum z. At a fixed s, constraint i reads s - z_i != n_i, which forces
/// z_i = 1 when s == n_i and z_i = 0 when s == n_i + 1 and leaves z_i free otherwise. The first
/// s whose forced ones and zeros leave room for exactly s ones wins; free slots fill by index.
inline std::vector<int> nullstellensatz_assign(const NullstellensatzInstance& inst) {
    const int r = inst.r();
    if (r < 2) throw precondition_error("nullstellensatz_assign needs r >= 2");
    for (int s = 0; s <= r; ++s) {
        std::vector<int> z(static_cast<std::size_t>(r), -1);
        int ones = 0, zeros = 0;
        for (int i = 0; i < r; ++i) {
            int d = s - inst.n[i];
            if (d == 0) z[i] = 1, ++ones;
            else if (d == 1) z[i] = 0, ++zeros;
        }
        if (ones > s || s > r - zeros) continue;
        int fill = s - ones;
        for (int i = 0; i < r; ++i) {
            if (z[i] != -1) continue;
            z[i] = fill > 0 ? 1 : 0;
            if (fill > 0) --fill;
        }
        if (!avoids_all(inst, z)) throw unreachable_case("s-scan produced an assignment that hits a forbidden sum");
        return z;
    }
    throw unreachable_case("no {0,1} assignment avoids every forbidden sum (r=" + std::to_string(r) + ")");
}

}  // namespace p123
