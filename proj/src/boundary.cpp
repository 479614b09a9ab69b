#include "sphyp/boundary.hpp"

#include <cmath>
#include <limits>

namespace sphyp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

GenCircle renormalized(double a, Complex b, double c) {
    const double det = std::norm(b) - a * c;
    const double s = 1.0 / std::sqrt(det);
    return {a * s, b * s, c * s};
}

}  // namespace

GenCircle GenCircle::circle(Complex center, double radius) {
    const double m = std::abs(center);
    // |z - m|^2 - r^2, divided by r
    return {1.0 / radius, -center / radius, (m - radius) * (m + radius) / radius};
}

GenCircle GenCircle::line(Complex normal, double offset) {
    const Complex n = normal / std::abs(normal);
    return {0.0, n, -2.0 * offset};
}

double GenCircle::value(Complex z) const {
    return a * std::norm(z) + 2.0 * (b.real() * z.real() + b.imag() * z.imag()) + c;
}

double GenCircle::euclid_distance(Complex z) const {
    // ||z - m| - r| = |F(z)| / (|a z + b| + |a| r)  and  |a| r = sqrt(|b|^2 - a c) = 1.
    return std::abs(value(z)) / (std::abs(a * z + b) + 1.0);
}

double GenCircle::distance_from_origin() const { return std::abs(c) / (std::abs(b) + 1.0); }

GenCircle GenCircle::mapped(const SphericalIsometry& t) const {
    // H' = M H M^*, M = [[p, q], [-conj(q), conj(p)]], H = [[a, b], [conj(b), c]].
    const Complex p = t.su2_p();
    const Complex q = t.su2_q();
    const Complex r = -std::conj(q);
    const Complex s = std::conj(p);
    const double na = a * std::norm(p) + 2.0 * (p * b * std::conj(q)).real() + c * std::norm(q);
    const double nc = a * std::norm(r) + 2.0 * (r * b * std::conj(s)).real() + c * std::norm(s);
    const Complex nb = (p * a + q * std::conj(b)) * std::conj(r) + (p * b + q * c) * std::conj(s);
    return renormalized(na, nb, nc);
}

double GenCircle::cap_height() const {
    const double nx = 2.0 * b.real();
    const double ny = 2.0 * b.imag();
    const double nz = a - c;
    const double len = std::sqrt(nx * nx + ny * ny + nz * nz);
    return -(a + c) / len;
}

SpherePoint GenCircle::cap_center() const {
    double nx = 2.0 * b.real();
    double ny = 2.0 * b.imag();
    double nz = a - c;
    const double len = std::sqrt(nx * nx + ny * ny + nz * nz);
    nx /= len;
    ny /= len;
    nz /= len;
    const double planar = nx * nx + ny * ny;
    if (planar == 0.0 && nz > 0.0) return SpherePoint::infinity();
    // 1 - nz without cancellation near the north pole
    const double one_minus = nz > 0.0 ? planar / (1.0 + nz) : 1.0 - nz;
    return SpherePoint::finite(nx / one_minus, ny / one_minus);
}

double GenCircle::closed_cap_chordal_diameter() const {
    const double h = cap_height();
    if (h <= 0.0) return 1.0;
    return std::sqrt((1.0 - h) * (1.0 + h));
}

BoundaryComponent BoundaryComponent::point(const SpherePoint& p) {
    BoundaryComponent bc;
    bc.kind_ = Kind::Point;
    bc.point_ = p;
    return bc;
}

BoundaryComponent BoundaryComponent::circle(Complex center, double radius) {
    BoundaryComponent bc;
    bc.kind_ = Kind::Circle;
    bc.param_c_ = center;
    bc.param_r_ = radius;
    bc.shape_ = GenCircle::circle(center, radius);
    return bc;
}

BoundaryComponent BoundaryComponent::line(Complex normal, double offset) {
    BoundaryComponent bc;
    bc.kind_ = Kind::Line;
    bc.param_c_ = normal / std::abs(normal);
    bc.param_r_ = offset;
    bc.shape_ = GenCircle::line(normal, offset);
    return bc;
}

BoundaryComponent BoundaryComponent::mapped(const SphericalIsometry& t) const {
    BoundaryComponent bc = *this;
    if (kind_ == Kind::Point) {
        bc.point_ = t.apply(point_);
        return bc;
    }
    bc.shape_ = shape_.mapped(t);
    bc.chart_ = charted_ ? t.after(chart_) : t;
    bc.charted_ = true;
    return bc;
}

SpherePoint BoundaryComponent::at(double phi) const {
    if (kind_ == Kind::Point) return point_;
    SpherePoint base;
    if (kind_ == Kind::Circle) {
        base = SpherePoint::finite(param_c_ + std::polar(param_r_, phi));
    } else {
        const double wrapped = std::remainder(phi, kTwoPi);
        if (std::abs(std::abs(wrapped) - kPi) <= 1e-12) {
            base = SpherePoint::infinity();
        } else {
            const Complex foot = param_r_ * param_c_;
            const Complex dir = Complex(0.0, 1.0) * param_c_;
            const double scale = std::hypot(1.0, param_r_);
            base = SpherePoint::finite(foot + dir * (scale * std::tan(0.5 * wrapped)));
        }
    }
    return charted_ ? chart_.apply(base) : base;
}

double BoundaryComponent::euclid_distance(Complex z) const {
    if (kind_ == Kind::Point) {
        return point_.is_infinity() ? kInf : std::abs(z - point_.value());
    }
    return shape_.euclid_distance(z);
}

double BoundaryComponent::tau_distance(const SpherePoint& z) const {
    if (kind_ == Kind::Point) return tau(z, point_);
    // tau(z, a) = |S(a)| for the isometry S taking z to 0.
    return shape_.mapped(SphericalIsometry(0.0, z)).distance_from_origin();
}

}  // namespace sphyp
