#pragma once

#include <complex>
#include <string>
#include <string_view>

namespace sphyp {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// A point of the Riemann sphere: a finite complex number or the point at infinity.
///
/// Infinity is a separate state, never an IEEE infinity stored in the coordinates.
class SpherePoint {
public:
    SpherePoint() = default;

    static SpherePoint finite(double re, double im);
    static SpherePoint finite(Complex z) { return finite(z.real(), z.imag()); }
    static SpherePoint infinity() {
        SpherePoint p;
        p.inf_ = true;
        return p;
    }

    bool is_infinity() const { return inf_; }
    bool is_finite() const { return !inf_; }

    /// Coordinates of a finite point. Calling this on infinity is a logic error.
    Complex value() const { return z_; }

    /// |z|, or +inf for the point at infinity.
    double modulus() const;

    friend bool operator==(const SpherePoint& a, const SpherePoint& b) {
        if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
        return a.z_ == b.z_;
    }

private:
    Complex z_{};
    bool inf_ = false;
};

/// Chordal distance |z-w| / sqrt((1+|z|^2)(1+|w|^2)), valued in [0, 1].
double chordal(const SpherePoint& z, const SpherePoint& w);

/// |z-w| / |1 + z conj(w)|, an extended real; +inf exactly at antipodal pairs.
double tau(const SpherePoint& z, const SpherePoint& w);

/// z* = -1/conj(z); 0 and infinity are exchanged.
SpherePoint antipode(const SpherePoint& z);

double sigma_from_tau(double t);
double tau_from_sigma(double s);

/// Orientation-preserving isometry of the chordal metric,
///   T(z) = e^{i theta} (z - a) / (1 + conj(a) z)   for finite a,
///   T(z) = -e^{i theta} / z                        for a = infinity.
///
/// Internally every isometry also carries its SU(2) matrix [[p, q], [-conj(q), conj(p)]],
/// which is what composition and inversion work on; the (theta, a) pair is recovered
/// from the matrix afterwards.
class SphericalIsometry {
public:
    SphericalIsometry() : SphericalIsometry(0.0, SpherePoint::finite(0.0, 0.0)) {}
    SphericalIsometry(double theta, const SpherePoint& center);

    static SphericalIsometry identity() { return {}; }

    /// Angle in [0, 2pi).
    double theta() const { return theta_; }
    /// The point sent to 0.
    const SpherePoint& center() const { return center_; }

    SpherePoint apply(const SpherePoint& z) const;

    /// |T'(z)| from the closed form; z and T(z) must both be finite.
    double derivative_modulus(Complex z) const;

    SphericalIsometry inverse() const;

    /// (this o other)(z) = this(other(z)).
    SphericalIsometry after(const SphericalIsometry& other) const;

    /// Entries p, q of the unit-determinant unitary matrix.
    Complex su2_p() const { return p_; }
    Complex su2_q() const { return q_; }

    static SphericalIsometry from_su2(Complex p, Complex q);

private:
    double theta_ = 0.0;
    SpherePoint center_;
    Complex p_{1.0, 0.0};
    Complex q_{0.0, 0.0};
};

SphericalIsometry isometry_sending_to_zero(const SpherePoint& a, double theta);
SpherePoint apply_isometry(const SphericalIsometry& t, const SpherePoint& z);
SphericalIsometry invert(const SphericalIsometry& t);
/// compose(t1, t2)(z) = t1(t2(z)).
SphericalIsometry compose(const SphericalIsometry& t1, const SphericalIsometry& t2);

/// Text form: "re+imi", "re-imi" or "inf".
SpherePoint parse_point(std::string_view text);
std::string format_point(const SpherePoint& z);

/// Shortest decimal text that parses back to the same double.
std::string format_real(double x);

}  // namespace sphyp
