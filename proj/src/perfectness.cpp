#include "sphyp/perfectness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "sphyp/fault.hpp"

namespace sphyp {

std::vector<Complex> merged_points(const std::vector<Complex>& points) {
    for (const Complex& p : points) {
        if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) {
            throw Fault(FaultKind::NonFiniteCoordinate, "sample point is not finite");
        }
    }
    // Scan in real-part order; a duplicate lies within kMergeDistance in real part.
    std::vector<std::size_t> order(points.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return points[a].real() < points[b].real(); });
    std::vector<bool> keep(points.size(), true);
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (!keep[order[i]]) continue;
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            const Complex& p = points[order[i]];
            const Complex& q = points[order[j]];
            if (q.real() - p.real() > kMergeDistance) break;
            if (std::abs(p - q) <= kMergeDistance) keep[std::max(order[i], order[j])] = false;
        }
    }
    std::vector<Complex> out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (keep[i]) out.push_back(points[i]);
    }
    return out;
}

namespace {

double max_pairwise(const std::vector<Complex>& pts) {
    double d = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, std::abs(pts[i] - pts[j]));
    }
    return d;
}

}  // namespace

double euclid_diameter(const CompactSetSample& e) {
    if (e.contains_infinity) return std::numeric_limits<double>::infinity();
    return max_pairwise(merged_points(e.points));
}

PerfectnessReport up_constant_estimate(const CompactSetSample& e) {
    const std::vector<Complex> pts = merged_points(e.points);
    const std::size_t total = pts.size() + (e.contains_infinity ? 1 : 0);
    if (total < 2 || pts.empty()) {
        throw Fault(FaultKind::DegenerateSet, "need at least two distinct points, got " + std::to_string(total));
    }
    PerfectnessReport r;
    r.n_points = total;
    r.diam = e.contains_infinity ? std::numeric_limits<double>::infinity() : max_pairwise(pts);
    r.witness_center = pts.front();

    double best = 1.0;  // smallest inner/outer ratio seen
    std::vector<double> dist;
    for (const Complex& a : pts) {
        dist.clear();
        for (const Complex& z : pts) {
            if (z != a) dist.push_back(std::abs(z - a));
        }
        if (std::isfinite(r.diam)) dist.push_back(r.diam);
        std::sort(dist.begin(), dist.end());
        for (std::size_t i = 0; i + 1 < dist.size(); ++i) {
            if (dist[i] <= 0.0) continue;
            const double ratio = dist[i] / dist[i + 1];
            if (ratio < best) {
                best = ratio;
                r.witness_center = a;
                r.witness_inner = dist[i];
                r.witness_outer = dist[i + 1];
            }
        }
    }
    if (best == 1.0) {
        // No empty annulus at all: report the degenerate annulus at the first center.
        const double d0 = std::isfinite(r.diam) ? r.diam : 1.0;
        r.witness_inner = d0;
        r.witness_outer = d0;
    }
    r.k_hat = r.witness_inner / r.witness_outer;
    return r;
}

CompactSetSample cantor_iterate(int level) {
    if (level < 1 || level > 20) {
        throw Fault(FaultKind::LevelOutOfRange, "level " + std::to_string(level) + " is outside 1..20");
    }
    // Left endpoints of the 2^level intervals are sums of 2*3^-k over chosen digits.
    std::vector<double> left{0.0};
    double len = 1.0;
    for (int k = 0; k < level; ++k) {
        len /= 3.0;
        std::vector<double> next;
        next.reserve(left.size() * 2);
        for (const double x : left) {
            next.push_back(x);
            next.push_back(x + 2.0 * len);
        }
        left.swap(next);
    }
    std::vector<double> ends;
    ends.reserve(left.size() * 2);
    for (const double x : left) {
        ends.push_back(x);
        ends.push_back(x + len);
    }
    std::sort(ends.begin(), ends.end());
    CompactSetSample s;
    s.label = "cantor:" + std::to_string(level);
    for (const double x : ends) {
        if (s.points.empty() || std::abs(x - s.points.back().real()) > kMergeDistance) s.points.emplace_back(x, 0.0);
    }
    return s;
}

CompactSetSample geometric_gap_set(double base, ExponentRule rule, int n) {
    if (!(base > 1.0) || !std::isfinite(base) || n < 3) {
        throw Fault(FaultKind::BadParameters, "need base > 1 and n >= 3");
    }
    CompactSetSample s;
    s.label = "gap:" + format_real(base) + (rule == ExponentRule::Linear ? ",linear," : ",quadratic,") +
              std::to_string(n);
    s.points.emplace_back(0.0, 0.0);
    for (int j = 0; j <= n; ++j) {
        const double e = rule == ExponentRule::Linear ? j : static_cast<double>(j) * j;
        const double x = std::pow(base, -e);
        if (x == 0.0) throw Fault(FaultKind::BadParameters, "gap point underflows to 0");
        s.points.emplace_back(x, 0.0);
    }
    return s;
}

namespace {

double parse_field(std::string_view f, std::size_t line) {
    while (!f.empty() && f.front() == ' ') f.remove_prefix(1);
    while (!f.empty() && (f.back() == ' ' || f.back() == '\r')) f.remove_suffix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (ec != std::errc() || ptr != f.data() + f.size() || f.empty()) {
        throw Fault(FaultKind::ParseError, "line " + std::to_string(line) + ": bad number '" + std::string(f) + "'");
    }
    if (!std::isfinite(v)) throw Fault(FaultKind::NonFiniteCoordinate, "line " + std::to_string(line));
    return v;
}

}  // namespace

CompactSetSample parse_points_csv(std::string_view text, std::string label) {
    CompactSetSample s;
    s.label = std::move(label);
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
        while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
        if (line.empty() || line == "re,im") continue;
        if (line == "inf") {
            if (s.contains_infinity) throw Fault(FaultKind::ParseError, "duplicate inf row");
            s.contains_infinity = true;
            continue;
        }
        const std::size_t comma = line.find(',');
        if (comma == std::string_view::npos) {
            throw Fault(FaultKind::ParseError, "line " + std::to_string(line_no) + ": expected re,im");
        }
        s.points.emplace_back(parse_field(line.substr(0, comma), line_no),
                              parse_field(line.substr(comma + 1), line_no));
        if (end == text.size()) break;
    }
    return s;
}

}  // namespace sphyp
