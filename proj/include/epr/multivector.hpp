#pragma once

// Arithmetic in the even subalgebra of Cl(3,0): values of the form
// s + bx*Bx + by*By + bz*Bz, where the bivector generators obey
//   Bj * Bk = -delta_jk - sigma * eps_jkl * Bl
// with the cross-term sign sigma supplied by the caller (+1 or -1).

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace epr {

inline constexpr double kComponentTol = 1e-12;
inline constexpr double kInverseEps = 1e-9;

// Sign multiplying the eps_jkl cross term of the bivector product.
class CrossSign {
public:
    constexpr explicit CrossSign(int v) : value_(v) {
        if (v != 1 && v != -1) throw std::invalid_argument("CrossSign must be +1 or -1");
    }
    static constexpr CrossSign plus() { return CrossSign(1); }
    static constexpr CrossSign minus() { return CrossSign(-1); }
    constexpr int value() const { return value_; }

private:
    int value_;
};

struct EvenMultivector {
    double s = 0.0;
    std::array<double, 3> b{0.0, 0.0, 0.0};

    constexpr EvenMultivector() = default;
    constexpr EvenMultivector(double scalar, std::array<double, 3> biv) : s(scalar), b(biv) {}
    static constexpr EvenMultivector scalar(double v) { return {v, {0.0, 0.0, 0.0}}; }
    static constexpr EvenMultivector bivector(double x, double y, double z) {
        return {0.0, {x, y, z}};
    }

    bool finite() const {
        return std::isfinite(s) && std::isfinite(b[0]) && std::isfinite(b[1]) &&
               std::isfinite(b[2]);
    }
};

inline EvenMultivector operator+(const EvenMultivector& x, const EvenMultivector& y) {
    return {x.s + y.s, {x.b[0] + y.b[0], x.b[1] + y.b[1], x.b[2] + y.b[2]}};
}

inline EvenMultivector operator-(const EvenMultivector& x, const EvenMultivector& y) {
    return {x.s - y.s, {x.b[0] - y.b[0], x.b[1] - y.b[1], x.b[2] - y.b[2]}};
}

inline EvenMultivector operator-(const EvenMultivector& x) {
    return {-x.s, {-x.b[0], -x.b[1], -x.b[2]}};
}

inline EvenMultivector operator*(double c, const EvenMultivector& x) {
    return {c * x.s, {c * x.b[0], c * x.b[1], c * x.b[2]}};
}

inline double scalar_part(const EvenMultivector& x) { return x.s; }

inline std::array<double, 3> bivector_part(const EvenMultivector& x) { return x.b; }

inline double norm(const EvenMultivector& x) {
    return std::sqrt(x.s * x.s + x.b[0] * x.b[0] + x.b[1] * x.b[1] + x.b[2] * x.b[2]);
}

inline double bivector_norm(const EvenMultivector& x) {
    return std::sqrt(x.b[0] * x.b[0] + x.b[1] * x.b[1] + x.b[2] * x.b[2]);
}

// (s_x + bx.B)(s_y + by.B) = (s_x s_y - bx.by) + (s_x by + s_y bx - sigma bx x by).B
inline EvenMultivector geometric_product(const EvenMultivector& x, const EvenMultivector& y,
                                         CrossSign sigma) {
    const double sg = static_cast<double>(sigma.value());
    const double dot = x.b[0] * y.b[0] + x.b[1] * y.b[1] + x.b[2] * y.b[2];
    const std::array<double, 3> cross{x.b[1] * y.b[2] - x.b[2] * y.b[1],
                                      x.b[2] * y.b[0] - x.b[0] * y.b[2],
                                      x.b[0] * y.b[1] - x.b[1] * y.b[0]};
    return {x.s * y.s - dot,
            {x.s * y.b[0] + y.s * x.b[0] - sg * cross[0],
             x.s * y.b[1] + y.s * x.b[1] - sg * cross[1],
             x.s * y.b[2] + y.s * x.b[2] - sg * cross[2]}};
}

// Reversal anti-automorphism: s + b.B -> s - b.B.
inline EvenMultivector reverse(const EvenMultivector& x) {
    return {x.s, {-x.b[0], -x.b[1], -x.b[2]}};
}

struct SingularElementError : std::domain_error {
    explicit SingularElementError(double n)
        : std::domain_error("cannot invert element with norm " + std::to_string(n)) {}
};

// reverse(x)/norm(x)^2; satisfies x * inverse(x) = 1 under either cross sign.
inline EvenMultivector inverse(const EvenMultivector& x, CrossSign /*sigma*/ = CrossSign::plus()) {
    const double n = norm(x);
    if (n <= kInverseEps) throw SingularElementError(n);
    const double inv_n2 = 1.0 / (n * n);
    return inv_n2 * reverse(x);
}

}  // namespace epr
