#pragma once

#include <cmath>
#include <cstdint>

namespace iatpcs {

// splitmix64 step (Vigna). Used for seed expansion and substream derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derives the seed of an independent substream as a pure function of
// (root, a, b). Replicate engines are spawned this way so that serial and
// parallel execution consume identical streams.
inline std::uint64_t substream_seed(std::uint64_t root, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t s = root;
    std::uint64_t h = splitmix64(s);
    s = h ^ (a + 0xd1b54a32d192ed03ULL);
    h = splitmix64(s);
    s = h ^ (b + 0x8bb84b93962eacc9ULL);
    return splitmix64(s);
}

// xoshiro256++ (Blackman & Vigna 2019), seeded through splitmix64.
// Output sequence is platform-independent for a given seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& w : state_) w = splitmix64(s);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on the open interval (0,1); both endpoints excluded so the
    // value is always safe under log().
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double exponential(double rate) { return -std::log(uniform()) / rate; }

    // Standard normal via the Marsaglia polar method.
    double normal() {
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        return u * std::sqrt(-2.0 * std::log(s) / s);
    }

    // Gamma variate with given shape and rate.
    // Marsaglia, G. & Tsang, W. W. (2000), "A simple method for generating
    // gamma variables", ACM TOMS 26(3). For shape < 1 the usual boost is
    // applied: draw at shape+1 and scale by U^(1/shape).
    double gamma(double shape, double rate) {
        if (shape < 1.0) {
            const double g = gamma(shape + 1.0, rate);
            return g * std::pow(uniform(), 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform();
            if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v / rate;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    std::uint64_t state_[4];
};

}  // namespace iatpcs
