#pragma once

#include <cstdint>
#include <string_view>

#include <Eigen/Core>

namespace srslab::numkit {

// Mixes a root seed with up to two stream tags into a fresh seed.
// Used everywhere substreams are derived so that independent components
// (episodes, replay sampling, evaluation, ...) never share a stream.
uint64_t mix_seed(uint64_t root, uint64_t a, uint64_t b = 0);

// Deterministic counter-tracking generator (xoshiro256**, seeded via
// splitmix64). The stream is a pure function of the seed, bit-exact
// across runs and platforms. One instance must never be shared between
// threads; copy or derive instead.
class SeededRng {
  public:
    explicit SeededRng(uint64_t seed);

    uint64_t next_u64();

    // [0, 1)
    double uniform();
    double uniform(double lo, double hi);
    // [0, n)
    int uniform_int(int n);
    bool bernoulli(double p);
    // Box-Muller; consumes two draws per call.
    double normal();
    Eigen::VectorXd normal_vector(int n);

    // New generator on an independent stream, derived from the original
    // seed (not the current position).
    SeededRng derive(uint64_t stream) const;

    uint64_t seed() const { return seed_; }
    uint64_t draws() const { return counter_; }
    static constexpr std::string_view algorithm() { return "xoshiro256**"; }

  private:
    uint64_t seed_;
    uint64_t counter_ = 0;
    uint64_t state_[4];
};

}  // namespace srslab::numkit
