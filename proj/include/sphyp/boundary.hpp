#pragma once

#include "sphyp/sphere.hpp"

namespace sphyp {

/// Circle or line in the plane (a line is a circle through infinity), stored as the
/// Hermitian form
///     F(z) = a |z|^2 + 2 Re(conj(b) z) + c,      |b|^2 - a c = 1.
/// Spherical isometries map such forms to forms of the same kind, which keeps the
/// boundary of every isometry image exact.
struct GenCircle {
    double a = 0.0;
    Complex b{1.0, 0.0};
    double c = 0.0;

    static GenCircle circle(Complex center, double radius);
    /// The line Re(conj(normal) z) = offset, with F > 0 on the side the normal points to.
    static GenCircle line(Complex normal, double offset);

    double value(Complex z) const;
    /// Euclidean distance from z to the curve (no cancellation for huge radii).
    double euclid_distance(Complex z) const;
    /// Euclidean distance from 0 to the curve.
    double distance_from_origin() const;

    /// Image form: F'(T z) has the sign of F(z).
    GenCircle mapped(const SphericalIsometry& t) const;
    GenCircle negated() const { return {-a, -b, -c}; }

    /// Height h of the cap {F > 0} written as {x . n > h} on the unit sphere,
    /// and the unit normal n (stereographic projection from the north pole).
    double cap_height() const;
    /// Spherical center of the cap {F > 0}.
    SpherePoint cap_center() const;
    /// Chordal diameter of the closed cap {F >= 0}.
    double closed_cap_chordal_diameter() const;
};

/// One connected piece of a domain boundary: an isolated point or a generalized circle,
/// together with a parameterization on [0, 2pi) used for sampling.
class BoundaryComponent {
public:
    static BoundaryComponent point(const SpherePoint& p);
    static BoundaryComponent circle(Complex center, double radius);
    static BoundaryComponent line(Complex normal, double offset);

    BoundaryComponent mapped(const SphericalIsometry& t) const;

    bool is_point() const { return kind_ == Kind::Point; }
    const SpherePoint& point() const { return point_; }
    const GenCircle& shape() const { return shape_; }

    SpherePoint at(double phi) const;

    double euclid_distance(Complex z) const;
    double tau_distance(const SpherePoint& z) const;

private:
    enum class Kind { Point, Circle, Line };

    Kind kind_ = Kind::Point;
    SpherePoint point_;
    // Base parameterization: circle (center, radius) or line (normal, offset).
    Complex param_c_{};
    double param_r_ = 0.0;
    GenCircle shape_;
    SphericalIsometry chart_;
    bool charted_ = false;
};

}  // namespace sphyp
