#include "sphyp/sphere.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>

#include "sphyp/fault.hpp"

namespace sphyp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Below this |1 + z conj(w)| the pair is treated as antipodal.
constexpr double kAntipodalFloor = 1e-300;

double normalize_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t = 0.0;
    return t;
}

SpherePoint finite_or_infinity(Complex w) {
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return SpherePoint::infinity();
    return SpherePoint::finite(w);
}

}  // namespace

SpherePoint SpherePoint::finite(double re, double im) {
    if (!std::isfinite(re) || !std::isfinite(im)) {
        throw Fault(FaultKind::NonFiniteCoordinate, "finite point with non-finite coordinate");
    }
    SpherePoint p;
    p.z_ = Complex(re, im);
    return p;
}

double SpherePoint::modulus() const { return inf_ ? kInf : std::abs(z_); }

double chordal(const SpherePoint& z, const SpherePoint& w) {
    if (z.is_infinity() && w.is_infinity()) return 0.0;
    if (z.is_infinity()) return 1.0 / std::hypot(1.0, w.modulus());
    if (w.is_infinity()) return 1.0 / std::hypot(1.0, z.modulus());
    if (z.value() == w.value()) return 0.0;
    const double num = std::abs(z.value() - w.value());
    const double den = std::hypot(1.0, std::abs(z.value())) * std::hypot(1.0, std::abs(w.value()));
    return std::min(1.0, num / den);
}

double tau(const SpherePoint& z, const SpherePoint& w) {
    if (z.is_infinity() && w.is_infinity()) return 0.0;
    if (z.is_infinity() || w.is_infinity()) {
        const double m = z.is_infinity() ? w.modulus() : z.modulus();
        return m == 0.0 ? kInf : 1.0 / m;
    }
    if (z.value() == w.value()) return 0.0;
    const double den = std::abs(1.0 + z.value() * std::conj(w.value()));
    if (den < kAntipodalFloor) return kInf;
    return std::abs(z.value() - w.value()) / den;
}

SpherePoint antipode(const SpherePoint& z) {
    if (z.is_infinity()) return SpherePoint::finite(0.0, 0.0);
    if (z.value() == Complex(0.0, 0.0)) return SpherePoint::infinity();
    return finite_or_infinity(-1.0 / std::conj(z.value()));
}

double sigma_from_tau(double t) {
    if (std::isinf(t)) return 1.0;
    return t / std::hypot(1.0, t);
}

double tau_from_sigma(double s) {
    if (s >= 1.0) return kInf;
    return s / std::sqrt((1.0 - s) * (1.0 + s));
}

SphericalIsometry::SphericalIsometry(double theta, const SpherePoint& center)
    : theta_(normalize_angle(theta)), center_(center) {
    const Complex half = std::polar(1.0, 0.5 * theta_);
    if (center_.is_infinity()) {
        p_ = Complex(0.0, 0.0);
        q_ = -half;
    } else {
        const double s = std::hypot(1.0, std::abs(center_.value()));
        p_ = half / s;
        q_ = -half * center_.value() / s;
    }
    // Representative with Re(p) >= 0 (the matrix is defined up to sign).
    if (p_.real() < 0.0 || (p_.real() == 0.0 && p_.imag() < 0.0) ||
        (p_ == Complex(0.0, 0.0) && q_.real() < 0.0)) {
        p_ = -p_;
        q_ = -q_;
    }
}

SphericalIsometry SphericalIsometry::from_su2(Complex p, Complex q) {
    const double n = std::hypot(std::abs(p), std::abs(q));
    p /= n;
    q /= n;
    if (p != Complex(0.0, 0.0)) {
        const Complex a = -q / p;
        if (std::isfinite(a.real()) && std::isfinite(a.imag())) {
            return SphericalIsometry(2.0 * std::arg(p), SpherePoint::finite(a));
        }
    }
    return SphericalIsometry(2.0 * std::arg(-q), SpherePoint::infinity());
}

SpherePoint SphericalIsometry::apply(const SpherePoint& z) const {
    const Complex rot = std::polar(1.0, theta_);
    if (center_.is_infinity()) {
        if (z.is_infinity()) return SpherePoint::finite(0.0, 0.0);
        if (z.value() == Complex(0.0, 0.0)) return SpherePoint::infinity();
        return finite_or_infinity(-rot / z.value());
    }
    const Complex a = center_.value();
    if (z.is_infinity()) {
        if (a == Complex(0.0, 0.0)) return SpherePoint::infinity();
        return finite_or_infinity(rot / std::conj(a));
    }
    const Complex den = 1.0 + std::conj(a) * z.value();
    if (den == Complex(0.0, 0.0)) return SpherePoint::infinity();
    return finite_or_infinity(rot * (z.value() - a) / den);
}

double SphericalIsometry::derivative_modulus(Complex z) const {
    if (center_.is_infinity()) {
        const double m = std::abs(z);
        return 1.0 / (m * m);
    }
    const Complex a = center_.value();
    const double ratio = std::hypot(1.0, std::abs(a)) / std::abs(1.0 + std::conj(a) * z);
    return ratio * ratio;
}

SphericalIsometry SphericalIsometry::inverse() const { return from_su2(std::conj(p_), -q_); }

SphericalIsometry SphericalIsometry::after(const SphericalIsometry& other) const {
    const Complex p = p_ * other.p_ - q_ * std::conj(other.q_);
    const Complex q = p_ * other.q_ + q_ * std::conj(other.p_);
    return from_su2(p, q);
}

SphericalIsometry isometry_sending_to_zero(const SpherePoint& a, double theta) {
    return SphericalIsometry(theta, a);
}

SpherePoint apply_isometry(const SphericalIsometry& t, const SpherePoint& z) { return t.apply(z); }

SphericalIsometry invert(const SphericalIsometry& t) { return t.inverse(); }

SphericalIsometry compose(const SphericalIsometry& t1, const SphericalIsometry& t2) {
    return t1.after(t2);
}

std::string format_real(double x) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    (void)ec;
    return std::string(buf.data(), end);
}

std::string format_point(const SpherePoint& z) {
    if (z.is_infinity()) return "inf";
    const Complex v = z.value();
    std::string out = format_real(v.real());
    if (std::signbit(v.imag())) {
        out += '-';
        out += format_real(-v.imag());
    } else {
        out += '+';
        out += format_real(v.imag());
    }
    out += 'i';
    return out;
}

namespace {

[[noreturn]] void point_parse_error(std::string_view text, std::size_t pos, const char* why) {
    throw Fault(FaultKind::ParseError, "point '" + std::string(text) + "' at position " +
                                           std::to_string(pos) + ": " + why);
}

double parse_real_exact(std::string_view text, std::string_view part, std::size_t offset) {
    if (part.empty()) point_parse_error(text, offset, "expected a number");
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc()) point_parse_error(text, offset, "expected a number");
    if (ptr != part.data() + part.size()) {
        point_parse_error(text, offset + static_cast<std::size_t>(ptr - part.data()),
                          "unexpected character");
    }
    if (!std::isfinite(v)) point_parse_error(text, offset, "coordinate is not finite");
    return v;
}

}  // namespace

SpherePoint parse_point(std::string_view text) {
    if (text == "inf") return SpherePoint::infinity();
    if (text.empty()) point_parse_error(text, 0, "empty point");
    if (text.back() != 'i') point_parse_error(text, text.size() - 1, "expected trailing 'i'");
    // The imaginary part starts at the last sign that is not a leading sign or an exponent sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = text.size() - 1; k > 0; --k) {
        const char c = text[k];
        if ((c == '+' || c == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string_view::npos) point_parse_error(text, 0, "expected 're+imi' or 're-imi'");
    const double re = parse_real_exact(text, text.substr(0, split), 0);
    const std::string_view im_part = text.substr(split + 1, text.size() - split - 2);
    if (!im_part.empty() && (im_part.front() == '+' || im_part.front() == '-')) {
        point_parse_error(text, split + 1, "doubled sign");
    }
    double im = parse_real_exact(text, im_part, split + 1);
    if (text[split] == '-') im = -im;
    return SpherePoint::finite(re, im);
}

}  // namespace sphyp
