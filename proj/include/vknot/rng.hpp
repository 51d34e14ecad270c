#pragma once

#include <cstdint>
#include <vector>

namespace vknot {

// splitmix64; hand-rolled so walks and fuzz trials replay identically
// across standard libraries
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, n); n = 0 returns 0
    std::size_t below(std::size_t n) { return n ? static_cast<std::size_t>(next() % n) : 0; }

    int range(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(below(static_cast<std::size_t>(hi - lo + 1)));
    }

    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[below(v.size())];
    }
};

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    Rng r(master ^ (0x632be59bd9b4e019ull * (stream + 1)));
    r.next();
    return r.next();
}

}  // namespace vknot
