#pragma once

// Measurement variables A(a,lambda) and B(b,lambda), the fair-coin hidden
// variable, and the locality audit.

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "epr/direction.hpp"
#include "epr/multivector.hpp"

namespace epr {

struct HiddenVariable {
    int lambda;  // +1 or -1

    constexpr explicit HiddenVariable(int v) : lambda(v) {
        if (v != 1 && v != -1) throw std::invalid_argument("lambda must be +1 or -1");
    }
    constexpr double value() const { return static_cast<double>(lambda); }
};

enum class OutcomeClass { PlusOne, MinusOne, NonScalar };

struct MeasurementOutcome {
    EvenMultivector raw;
    OutcomeClass classified;
    double residual_norm;  // norm of the bivector part of raw

    double classified_value() const {
        return classified == OutcomeClass::PlusOne ? 1.0
             : classified == OutcomeClass::MinusOne ? -1.0
             : std::nan("");
    }
};

inline MeasurementOutcome classify(const EvenMultivector& raw) {
    const double resid = bivector_norm(raw);
    OutcomeClass cls = OutcomeClass::NonScalar;
    if (resid <= kComponentTol) {
        if (std::abs(raw.s - 1.0) <= kComponentTol) cls = OutcomeClass::PlusOne;
        else if (std::abs(raw.s + 1.0) <= kComponentTol) cls = OutcomeClass::MinusOne;
    }
    return {raw, cls, resid};
}

// Counter-based splitmix64 stream; draw at (seed, position) is a pure function
// of both, so streams can be split by offsetting positions.
class RngStream {
public:
    static constexpr const char* kAlgorithmName = "splitmix64-counter";

    explicit RngStream(std::uint64_t seed, std::uint64_t position = 0)
        : seed_(seed), position_(position) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t position() const { return position_; }

    std::uint64_t next_u64() {
        std::uint64_t z = seed_ + (++position_) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t seed_;
    std::uint64_t position_;
};

inline HiddenVariable sample_lambda(RngStream& stream) {
    return HiddenVariable((stream.next_u64() & 1ULL) ? 1 : -1);
}

// A(a,lambda) = {-a_j Bj}{a_k Bk(lambda)} with Bk(lambda) = lambda Bk; the
// product of two fixed-basis bivectors uses sigma = +1.
inline MeasurementOutcome measure_alice(const Direction& a, HiddenVariable lam) {
    const EvenMultivector left = -direction_bivector(a);
    const EvenMultivector right = lam.value() * direction_bivector(a);
    return classify(geometric_product(left, right, CrossSign::plus()));
}

// B(b,lambda) = {b_j Bj(lambda)}{b_k Bk}.
inline MeasurementOutcome measure_bob(const Direction& b, HiddenVariable lam) {
    const EvenMultivector left = lam.value() * direction_bivector(b);
    const EvenMultivector right = direction_bivector(b);
    return classify(geometric_product(left, right, CrossSign::plus()));
}

struct SettingMarginal {
    double mean_a = 0.0;
    double mean_b = 0.0;
    double stderr_a = 0.0;
    double stderr_b = 0.0;
};

struct LocalityAuditReport {
    bool alice_setting_independent = true;  // A raw bitwise equal across all b settings
    bool bob_setting_independent = true;    // B raw bitwise equal across repeats at fixed b
    std::size_t n = 0;
    std::vector<SettingMarginal> per_setting;  // one entry per b in b_settings
};

inline bool bitwise_equal(const EvenMultivector& x, const EvenMultivector& y) {
    return x.s == y.s && x.b == y.b;
}

// Draws n hidden variables; at each draw recomputes Alice's outcome once per
// remote setting and demands bitwise identity, and symmetrically checks Bob's
// outcome against repeated evaluation. Reports <A> and <B> per setting.
inline LocalityAuditReport locality_audit(const Direction& a,
                                          const std::vector<Direction>& b_settings,
                                          std::size_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("locality_audit requires n >= 1");
    LocalityAuditReport rep;
    rep.n = n;
    const std::size_t k = b_settings.size();
    std::vector<double> sum_a(k, 0.0), sum_b(k, 0.0);
    RngStream stream(seed);
    for (std::size_t i = 0; i < n; ++i) {
        const HiddenVariable lam = sample_lambda(stream);
        const MeasurementOutcome a0 = measure_alice(a, lam);
        for (std::size_t j = 0; j < k; ++j) {
            // Re-evaluate in the presence of the remote setting; the raw value
            // must not respond to it.
            const MeasurementOutcome aj = measure_alice(a, lam);
            const MeasurementOutcome bj = measure_bob(b_settings[j], lam);
            const MeasurementOutcome bj2 = measure_bob(b_settings[j], lam);
            if (!bitwise_equal(a0.raw, aj.raw)) rep.alice_setting_independent = false;
            if (!bitwise_equal(bj.raw, bj2.raw)) rep.bob_setting_independent = false;
            sum_a[j] += aj.classified_value();
            sum_b[j] += bj.classified_value();
        }
    }
    for (std::size_t j = 0; j < k; ++j) {
        SettingMarginal m;
        m.mean_a = sum_a[j] / static_cast<double>(n);
        m.mean_b = sum_b[j] / static_cast<double>(n);
        // Outcomes are +/-1, so the sample variance is 1 - mean^2.
        const double dn = static_cast<double>(n);
        m.stderr_a = std::sqrt(std::max(0.0, 1.0 - m.mean_a * m.mean_a) / dn);
        m.stderr_b = std::sqrt(std::max(0.0, 1.0 - m.mean_b * m.mean_b) / dn);
        rep.per_setting.push_back(m);
    }
    return rep;
}

}  // namespace epr
