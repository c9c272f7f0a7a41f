#pragma once

// Correlation of the A/B outcome pair: per-trial sandwich-normalized products,
// the exact two-point average over lambda, and seeded Monte Carlo. Each result
// is grade-decomposed; nothing is projected away.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "epr/direction.hpp"
#include "epr/model.hpp"
#include "epr/multivector.hpp"

namespace epr {

// Which product rule governs the bivector-bivector cross term in the
// normalization sandwich: the fixed-sign table throughout, or the
// lambda-signed cross term.
enum class ProductConvention { FixedBasis, LambdaStructure };

inline const char* convention_name(ProductConvention c) {
    return c == ProductConvention::FixedBasis ? "fixed" : "lambda";
}

struct CorrelationReport {
    double scalar_estimate = 0.0;
    std::array<double, 3> bivector_residual{0.0, 0.0, 0.0};
    double residual_norm = 0.0;
    std::size_t n = 0;
    double standard_error = 0.0;  // 0 when exact
    ProductConvention convention = ProductConvention::FixedBasis;
    bool exact = false;
    double target = 0.0;  // -a.b reference
};

// A(a,lambda) B(b,lambda); equals the scalar -1 for every input.
inline EvenMultivector pair_product(const Direction& a, const Direction& b, HiddenVariable lam) {
    return geometric_product(measure_alice(a, lam).raw, measure_bob(b, lam).raw,
                             CrossSign::plus());
}

// Two-sided sandwich {a_j Bj}{AB}{-b_k Bk}, realizing the division by the
// displayed denominators: (-a_j Bj)^-1 = a_j Bj and (b_k Bk)^-1 = -b_k Bk.
// Under LambdaStructure the final bivector-bivector cross term carries
// sigma = lambda instead of +1.
inline EvenMultivector normalized_pair_value(const Direction& a, const Direction& b,
                                             HiddenVariable lam, ProductConvention c) {
    const EvenMultivector left = inverse(-direction_bivector(a));
    const EvenMultivector right = inverse(direction_bivector(b));
    const EvenMultivector mid = geometric_product(left, pair_product(a, b, lam),
                                                  CrossSign::plus());
    const CrossSign sigma = (c == ProductConvention::LambdaStructure)
                                ? CrossSign(lam.lambda)
                                : CrossSign::plus();
    return geometric_product(mid, right, sigma);
}

// Exact ensemble average: lambda takes two equiprobable values, so the
// two-point mean is the n -> infinity limit with zero sampling error.
inline CorrelationReport correlation_exact(const Direction& a, const Direction& b,
                                           ProductConvention c) {
    const EvenMultivector plus = normalized_pair_value(a, b, HiddenVariable(1), c);
    const EvenMultivector minus = normalized_pair_value(a, b, HiddenVariable(-1), c);
    const EvenMultivector avg = 0.5 * (plus + minus);
    CorrelationReport rep;
    rep.scalar_estimate = avg.s;
    rep.bivector_residual = avg.b;
    rep.residual_norm = bivector_norm(avg);
    rep.n = 2;
    rep.standard_error = 0.0;
    rep.convention = c;
    rep.exact = true;
    rep.target = -dot(a, b);
    return rep;
}

inline CorrelationReport correlation_mc(const Direction& a, const Direction& b, std::size_t n,
                                        std::uint64_t seed, ProductConvention c) {
    if (n < 1) throw std::invalid_argument("correlation_mc requires n >= 1");
    RngStream stream(seed);
    EvenMultivector sum;
    double sum_s = 0.0, sum_s2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const HiddenVariable lam = sample_lambda(stream);
        const EvenMultivector v = normalized_pair_value(a, b, lam, c);
        sum = sum + v;
        sum_s += v.s;
        sum_s2 += v.s * v.s;
    }
    const double dn = static_cast<double>(n);
    const EvenMultivector avg = (1.0 / dn) * sum;
    CorrelationReport rep;
    rep.scalar_estimate = avg.s;
    rep.bivector_residual = avg.b;
    rep.residual_norm = bivector_norm(avg);
    rep.n = n;
    const double var = std::max(0.0, sum_s2 / dn - (sum_s / dn) * (sum_s / dn));
    rep.standard_error = std::sqrt(var / dn);
    rep.convention = c;
    rep.exact = false;
    rep.target = -dot(a, b);
    return rep;
}

// Diagnostic: average of the classified +/-1 outcome products, i.e. the
// numerator alone. Constant -1 for every setting pair.
inline CorrelationReport naive_correlation(const Direction& a, const Direction& b, std::size_t n,
                                           std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("naive_correlation requires n >= 1");
    RngStream stream(seed);
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const HiddenVariable lam = sample_lambda(stream);
        const double p = measure_alice(a, lam).classified_value() *
                         measure_bob(b, lam).classified_value();
        sum += p;
        sum2 += p * p;
    }
    const double dn = static_cast<double>(n);
    CorrelationReport rep;
    rep.scalar_estimate = sum / dn;
    rep.n = n;
    const double var = std::max(0.0, sum2 / dn - (sum / dn) * (sum / dn));
    rep.standard_error = std::sqrt(var / dn);
    rep.convention = ProductConvention::FixedBasis;
    rep.exact = false;
    rep.target = -dot(a, b);
    return rep;
}

}  // namespace epr
