#include "srslab/numkit/rng.hpp"

#include <cmath>

#include "srslab/errors.hpp"

namespace srslab::numkit {

namespace {

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ull;

uint64_t splitmix64(uint64_t& x) {
    uint64_t z = (x += kGolden);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

uint64_t mix_seed(uint64_t root, uint64_t a, uint64_t b) {
    uint64_t x = root ^ (a * kGolden) ^ rotl(b * 0xD2B74407B1CE6E93ull, 17);
    x ^= root >> 32;
    return splitmix64(x);
}

SeededRng::SeededRng(uint64_t seed) : seed_(seed) {
    uint64_t x = seed;
    for (auto& s : state_) s = splitmix64(x);
}

uint64_t SeededRng::next_u64() {
    const uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    ++counter_;
    return result;
}

double SeededRng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SeededRng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

int SeededRng::uniform_int(int n) {
    if (n <= 0) throw UsageError("uniform_int: n must be positive");
    return static_cast<int>((static_cast<__uint128_t>(next_u64()) * static_cast<uint64_t>(n)) >> 64);
}

bool SeededRng::bernoulli(double p) { return uniform() < p; }

double SeededRng::normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Eigen::VectorXd SeededRng::normal_vector(int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = normal();
    return v;
}

SeededRng SeededRng::derive(uint64_t stream) const {
    return SeededRng(mix_seed(seed_, stream));
}

}  // namespace srslab::numkit
