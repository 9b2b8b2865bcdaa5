// Basic plane/complex helpers shared by all qcharmlab modules.

#ifndef QCHARMLAB_TYPES_HPP
#define QCHARMLAB_TYPES_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace qcharmlab {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// <a, b> for plane vectors stored as complex numbers.
inline double dot(Complex a, Complex b) {
    return a.real() * b.real() + a.imag() * b.imag();
}

// z-component of a x b; positive when b is counterclockwise from a.
inline double cross(Complex a, Complex b) {
    return a.real() * b.imag() - a.imag() * b.real();
}

inline double wrap_angle(double t) {
    t = std::fmod(t, kTwoPi);
    return t < 0 ? t + kTwoPi : t;
}

// Wrap into [0, period).
inline double wrap_periodic(double s, double period) {
    s = std::fmod(s, period);
    return s < 0 ? s + period : s;
}

// Shortest circular distance between two parameters on [0, period).
inline double circular_distance(double a, double b, double period) {
    double d = std::fabs(wrap_periodic(a, period) - wrap_periodic(b, period));
    return std::min(d, period - d);
}

// Real 2x2 matrix, row-major. Used for Jacobians and distance Hessians.
struct Mat2 {
    double a{0}, b{0}, c{0}, d{0};  // [[a, b], [c, d]]

    static Mat2 rotation(double angle) {
        const double co = std::cos(angle), si = std::sin(angle);
        return {co, -si, si, co};
    }

    Mat2 transposed() const { return {a, c, b, d}; }

    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }

    // Matrix times plane vector.
    Complex apply(Complex v) const {
        return {a * v.real() + b * v.imag(), c * v.real() + d * v.imag()};
    }
};

// Grid of sample points in the unit disk: n_radial radii (clustered toward
// |z| = 1) times n_angular equispaced angles.
struct GridSpec {
    int n_radial{64};
    int n_angular{1024};

    GridSpec doubled() const { return {2 * n_radial, 2 * n_angular}; }
};

// Radii for a GridSpec, strictly inside the disk and denser near |z| = 1.
// max_r caps the outermost radius (finite-difference stencils need room).
std::vector<double> clustered_radii(int n, double max_r = 1.0 - 1e-3);

// Deterministic, platform-independent RNG (splitmix64). std:: distributions
// are implementation-defined, so reports built on this stay byte-stable.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in the open disk |z| < max_r.
    Complex next_in_disk(double max_r = 1.0) {
        for (;;) {
            double x = 2.0 * next_double() - 1.0;
            double y = 2.0 * next_double() - 1.0;
            if (x * x + y * y < 1.0) return Complex(max_r * x, max_r * y);
        }
    }

  private:
    std::uint64_t state_;
};

}  // namespace qcharmlab

#endif
