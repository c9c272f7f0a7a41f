#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "epr/multivector.hpp"

namespace epr {

// Unit 3-vector measurement setting.
class Direction {
public:
    Direction(double x, double y, double z) : c_{x, y, z} {
        const double n2 = x * x + y * y + z * z;
        if (std::abs(n2 - 1.0) > 2.0 * kComponentTol)
            throw std::invalid_argument("Direction must be unit length");
    }

    // Angle in the x-y plane, measured from e_x.
    static Direction from_angle_deg(double deg) {
        const double rad = deg * std::numbers::pi / 180.0;
        return Direction(std::cos(rad), std::sin(rad), 0.0);
    }

    static Direction normalized(double x, double y, double z) {
        const double n = std::sqrt(x * x + y * y + z * z);
        if (n == 0.0) throw std::invalid_argument("cannot normalize zero vector");
        return Direction(x / n, y / n, z / n);
    }

    double x() const { return c_[0]; }
    double y() const { return c_[1]; }
    double z() const { return c_[2]; }
    const std::array<double, 3>& components() const { return c_; }

private:
    std::array<double, 3> c_;
};

inline double dot(const Direction& a, const Direction& b) {
    return a.x() * b.x() + a.y() * b.y() + a.z() * b.z();
}

inline std::array<double, 3> cross(const Direction& a, const Direction& b) {
    return {a.y() * b.z() - a.z() * b.y(), a.z() * b.x() - a.x() * b.z(),
            a.x() * b.y() - a.y() * b.x()};
}

// a -> a_x Bx + a_y By + a_z Bz; squares to -1 under either cross sign.
inline EvenMultivector direction_bivector(const Direction& a) {
    return EvenMultivector::bivector(a.x(), a.y(), a.z());
}

}  // namespace epr
