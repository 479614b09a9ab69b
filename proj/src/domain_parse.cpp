#include <charconv>
#include <cmath>
#include <string>

#include "sphyp/domains.hpp"
#include "sphyp/fault.hpp"

namespace sphyp {

namespace {

class SpecParser {
public:
    explicit SpecParser(std::string_view text) : text_(text) {}

    Domain parse() {
        Domain d = parse_domain_at();
        if (pos_ != text_.size()) fail("trailing characters");
        return d;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw Fault(FaultKind::ParseError, "domain '" + std::string(text_) + "' at position " +
                                               std::to_string(pos_) + ": " + why);
    }

    std::string_view tag() {
        const std::size_t colon = text_.find(':', pos_);
        if (colon == std::string_view::npos) fail("expected '<kind>:'");
        const std::string_view t = text_.substr(pos_, colon - pos_);
        pos_ = colon + 1;
        return t;
    }

    double number() {
        double v = 0.0;
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc() || ptr == begin) fail("expected a number");
        if (!std::isfinite(v)) fail("number is not finite");
        pos_ += static_cast<std::size_t>(ptr - begin);
        return v;
    }

    void expect(char c) {
        if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    bool at_token(std::string_view token) const { return text_.substr(pos_, token.size()) == token; }

    template <class Make>
    Domain build(std::size_t at, Make&& make) {
        try {
            return make();
        } catch (const Fault& f) {
            pos_ = at;
            fail(f.what());
        }
    }

    Domain parse_domain_at() {
        const std::size_t start = pos_;
        const std::string_view kind = tag();
        if (kind == "disk") {
            const double cx = number();
            expect(',');
            const double cy = number();
            expect(',');
            const double r = number();
            return build(start, [&] { return Domain::disk({cx, cy}, r); });
        }
        if (kind == "half") {
            const double nx = number();
            expect(',');
            const double ny = number();
            expect(',');
            const double c = number();
            return build(start, [&] { return Domain::half_plane({nx, ny}, c); });
        }
        if (kind == "ext") {
            const double r = number();
            return build(start, [&] { return Domain::exterior_disk(r); });
        }
        if (kind == "punct") {
            const double r = number();
            return build(start, [&] { return Domain::punctured_disk(r); });
        }
        if (kind == "ann") {
            const double r = number();
            return build(start, [&] { return Domain::annulus(r); });
        }
        if (kind == "isom") {
            const double theta = number();
            expect(',');
            SpherePoint a;
            if (at_token("inf")) {
                pos_ += 3;
                a = SpherePoint::infinity();
            } else {
                const double ax = number();
                expect(',');
                const double ay = number();
                a = SpherePoint::finite(ax, ay);
            }
            expect('|');
            const Domain base = parse_domain_at();
            return Domain::image(SphericalIsometry(theta, a), base);
        }
        pos_ = start;
        fail("unknown domain kind '" + std::string(kind) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Domain parse_domain(std::string_view text) { return SpecParser(text).parse(); }

std::string format_domain(const Domain& domain) {
    return std::visit(
        Overloaded{
            [](const EuclideanDisk& d) {
                return "disk:" + format_real(d.center.real()) + "," + format_real(d.center.imag()) + "," +
                       format_real(d.radius);
            },
            [](const HalfPlane& h) {
                return "half:" + format_real(h.normal.real()) + "," + format_real(h.normal.imag()) + "," +
                       format_real(h.offset);
            },
            [](const ExteriorDisk& e) { return "ext:" + format_real(e.radius); },
            [](const PuncturedDisk& p) { return "punct:" + format_real(p.radius); },
            [](const Annulus& a) { return "ann:" + format_real(a.inner); },
            [](const IsometryImage& im) {
                const SpherePoint& a = im.map.center();
                std::string center = a.is_infinity()
                                         ? std::string("inf")
                                         : format_real(a.value().real()) + "," + format_real(a.value().imag());
                return "isom:" + format_real(im.map.theta()) + "," + center + "|" + format_domain(*im.base);
            },
        },
        domain.variant());
}

std::string_view domain_grammar() {
    return "domain grammar:\n"
           "  disk:<cx>,<cy>,<R>      |z - (cx+i cy)| < R\n"
           "  half:<nx>,<ny>,<c>      Re(conj(n) z) > c\n"
           "  ext:<R>                 |z| > R, infinity included\n"
           "  punct:<R>               0 < |z| < R\n"
           "  ann:<r>                 r < |z| < 1, 0 < r < 1\n"
           "  isom:<theta>,<ax>,<ay>|<domain>   image under z -> e^{i theta}(z-a)/(1+conj(a) z)\n"
           "  isom:<theta>,inf|<domain>         image under z -> -e^{i theta}/z\n";
}

}  // namespace sphyp
