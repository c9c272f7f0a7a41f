#pragma once

// CHSH string evaluation, the closed-form bound expression, and a
// deterministic maximizer over coplanar settings.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "epr/direction.hpp"

namespace epr {

inline constexpr double kTsirelson = 2.0 * std::numbers::sqrt2;

using CorrelationFn = std::function<double(const Direction&, const Direction&)>;

struct ChshConfig {
    Direction a, a_prime, b, b_prime;
};

struct ChshReport {
    double S = 0.0;
    double paper_bound = 0.0;          // 2 sqrt(1 - (a x a') . (b' x b))
    double paper_bound_flipped = 0.0;  // 2 sqrt(1 - (a x a') . (b x b'))
    double tsirelson = kTsirelson;
    bool within_paper_bound = false;
    bool within_tsirelson = false;
};

// |E(a,b) + E(a,b') + E(a',b) - E(a',b')|
inline double chsh_S(const CorrelationFn& E, const ChshConfig& cfg) {
    return std::abs(E(cfg.a, cfg.b) + E(cfg.a, cfg.b_prime) + E(cfg.a_prime, cfg.b) -
                    E(cfg.a_prime, cfg.b_prime));
}

// Both orientations of the bound expression; the inner triple product is
// clamped to [-1, 1] against rounding.
inline std::pair<double, double> paper_bound(const ChshConfig& cfg) {
    const auto axa = cross(cfg.a, cfg.a_prime);
    const auto bpxb = cross(cfg.b_prime, cfg.b);
    double t = axa[0] * bpxb[0] + axa[1] * bpxb[1] + axa[2] * bpxb[2];
    t = std::clamp(t, -1.0, 1.0);
    return {2.0 * std::sqrt(1.0 - t), 2.0 * std::sqrt(1.0 + t)};
}

inline ChshReport chsh_report(const CorrelationFn& E, const ChshConfig& cfg) {
    ChshReport rep;
    rep.S = chsh_S(E, cfg);
    const auto [fwd, flipped] = paper_bound(cfg);
    rep.paper_bound = fwd;
    rep.paper_bound_flipped = flipped;
    rep.within_paper_bound = rep.S <= rep.paper_bound + 1e-9;
    rep.within_tsirelson = rep.S <= kTsirelson + 1e-9;
    return rep;
}

namespace detail {

inline double chsh_S_angles(const CorrelationFn& E, const std::array<double, 4>& deg) {
    const ChshConfig cfg{Direction::from_angle_deg(deg[0]), Direction::from_angle_deg(deg[1]),
                         Direction::from_angle_deg(deg[2]), Direction::from_angle_deg(deg[3])};
    return chsh_S(E, cfg);
}

}  // namespace detail

// Coarse grid over x-y-plane configurations (four angles at `resolution_deg`
// steps) followed by coordinate descent with a halving step. Deterministic:
// fixed grid order, fixed refinement schedule.
inline std::pair<ChshConfig, double> maximize_S(const CorrelationFn& E, double resolution_deg,
                                                std::size_t refine_iters) {
    if (resolution_deg <= 0.0) throw std::invalid_argument("resolution must be positive");
    const int steps = static_cast<int>(std::lround(360.0 / resolution_deg));
    std::array<double, 4> best{0.0, 0.0, 0.0, 0.0};
    double best_S = detail::chsh_S_angles(E, best);
    std::array<double, 4> deg;
    for (int i = 0; i < steps; ++i) {
        deg[0] = i * resolution_deg;
        for (int j = 0; j < steps; ++j) {
            deg[1] = j * resolution_deg;
            for (int k = 0; k < steps; ++k) {
                deg[2] = k * resolution_deg;
                for (int l = 0; l < steps; ++l) {
                    deg[3] = l * resolution_deg;
                    const double S = detail::chsh_S_angles(E, deg);
                    if (S > best_S) {
                        best_S = S;
                        best = deg;
                    }
                }
            }
        }
    }
    double step = resolution_deg / 2.0;
    for (std::size_t it = 0; it < refine_iters; ++it) {
        bool improved = false;
        for (int c = 0; c < 4; ++c) {
            for (double delta : {step, -step}) {
                std::array<double, 4> cand = best;
                cand[c] += delta;
                const double S = detail::chsh_S_angles(E, cand);
                if (S > best_S) {
                    best_S = S;
                    best = cand;
                    improved = true;
                }
            }
        }
        if (!improved) step /= 2.0;
    }
    const ChshConfig cfg{Direction::from_angle_deg(best[0]), Direction::from_angle_deg(best[1]),
                         Direction::from_angle_deg(best[2]), Direction::from_angle_deg(best[3])};
    return {cfg, best_S};
}

struct SweepPoint {
    double theta_deg;
    double value;
    double reference;  // -cos(theta)
};

// a fixed in the plane orthogonal to `normal`; b rotated from a by each angle
// in [0, 180] at `step_deg` increments.
inline std::vector<SweepPoint> sweep_curve(const Direction& normal, double step_deg,
                                           const CorrelationFn& E) {
    if (step_deg <= 0.0 || step_deg > 90.0)
        throw std::invalid_argument("sweep step must be in (0, 90]");
    // Any unit vector orthogonal to `normal`.
    std::array<double, 3> seed{1.0, 0.0, 0.0};
    if (std::abs(normal.x()) > 0.9) seed = {0.0, 1.0, 0.0};
    const double proj = seed[0] * normal.x() + seed[1] * normal.y() + seed[2] * normal.z();
    const Direction u = Direction::normalized(seed[0] - proj * normal.x(),
                                              seed[1] - proj * normal.y(),
                                              seed[2] - proj * normal.z());
    const auto v = cross(normal, u);
    std::vector<SweepPoint> out;
    for (double theta = 0.0; theta <= 180.0 + 1e-9; theta += step_deg) {
        const double rad = std::min(theta, 180.0) * std::numbers::pi / 180.0;
        const Direction b = Direction::normalized(
            std::cos(rad) * u.x() + std::sin(rad) * v[0],
            std::cos(rad) * u.y() + std::sin(rad) * v[1],
            std::cos(rad) * u.z() + std::sin(rad) * v[2]);
        out.push_back({std::min(theta, 180.0), E(u, b), -std::cos(rad)});
    }
    return out;
}

}  // namespace epr
