#include "hypb/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace hypb {

namespace {

void write_comment_block(std::ostream& os, const Json& meta, const char* prefix) {
    for (const auto& [key, value] : meta.items()) {
        os << prefix << ' ' << key << '=' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    }
}

}  // namespace

Json make_metadata(double a, std::uint64_t seed, const std::string& command) {
    Json meta = Json::object();
    meta["a"] = a;
    meta["seed"] = seed;
    meta["version"] = HYPB_VERSION;
    meta["command"] = command;
    return meta;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string dump_json(const Json& doc) { return doc.dump(2) + "\n"; }

std::string step_kind(const MapStep& st) {
    const std::string idx = std::to_string(st.tangency.index);
    if (st.singular()) return "singular:" + idx;
    return (st.tangency.is_arc() ? "arc:" : "corner:") + idx;
}

void write_orbit_csv(std::ostream& os, const Orbit& orbit, const Json& meta) {
    write_comment_block(os, meta, "#");
    os << "# x0=" << format_double(orbit.initial.x) << " y0=" << format_double(orbit.initial.y) << '\n';
    if (orbit.singular_hit) os << "# stopped at singular step " << (*orbit.singular_hit + 1) << '\n';
    os << "step,X,Y,kind,tangency_X,tangency_Y\n";
    for (std::size_t k = 0; k < orbit.steps.size(); ++k) {
        const MapStep& st = orbit.steps[k];
        os << (k + 1) << ',' << format_double(st.post.x) << ',' << format_double(st.post.y) << ',' << step_kind(st)
           << ',' << format_double(st.tangency.point.x) << ',' << format_double(st.tangency.point.y) << '\n';
    }
}

Json lyapunov_record(double a, Point start, const LyapunovEstimate& est) {
    return Json{{"a", a},
                {"x0", start.x},
                {"y0", start.y},
                {"n", est.n},
                {"lambda_plus", est.lambda_plus},
                {"truncated", est.truncated}};
}

Json audit_record(double a, Point start, RegionLabel label, const StrictnessResult& result) {
    Json verdicts = Json::array();
    for (const StepVerdict& v : result.verdicts) {
        verdicts.push_back({{"step", v.step},
                            {"configuration", to_string(v.configuration)},
                            {"verdict", to_string(v.verdict)}});
    }
    Json hist = Json::array();
    for (std::size_t c : result.order_histogram) hist.push_back(c);
    return Json{{"a", a},
                {"x0", start.x},
                {"y0", start.y},
                {"label", to_string(label)},
                {"status", to_string(result.status)},
                {"n_strict", result.status == StrictnessStatus::strict ? Json(*result.n) : Json(nullptr)},
                {"order_histogram", hist},
                {"verdicts", verdicts}};
}

void write_envelope_csv(std::ostream& os, const PiecewiseConicTable& env, const Json& meta) {
    write_comment_block(os, meta, "#");
    os << "piece_id,s,X,Y,is_cusp\n";
    for (std::size_t id = 0; id < env.pieces.size(); ++id) {
        const EnvelopePiece& piece = env.pieces[id];
        for (std::size_t j = 0; j < piece.points.size(); ++j) {
            os << id << ',' << format_double(piece.s[j]) << ',' << format_double(piece.points[j].x) << ','
               << format_double(piece.points[j].y) << ',' << (piece.is_cusp[j] ? 1 : 0) << '\n';
        }
    }
}

void write_envelope_svg(std::ostream& os, const PiecewiseConicTable& env, const ConvexPolygon& polygon,
                        const Json& meta) {
    double minx = 1e300, miny = 1e300, maxx = -1e300, maxy = -1e300;
    for (const Point& v : polygon.vertices()) {
        minx = std::min(minx, v.x);
        miny = std::min(miny, v.y);
        maxx = std::max(maxx, v.x);
        maxy = std::max(maxy, v.y);
    }
    const double size = 512.0;
    const double span = std::max(maxx - minx, maxy - miny);
    const double margin = 0.05 * span;
    const auto sx = [&](double x) { return format_double(std::round((x - minx + margin) / (span + 2 * margin) * size * 100) / 100); };
    const auto sy = [&](double y) { return format_double(std::round((maxy - y + margin) / (span + 2 * margin) * size * 100) / 100); };

    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<!--\n";
    write_comment_block(os, meta, " ");
    os << "-->\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"512\" height=\"512\" viewBox=\"0 0 512 512\">\n";
    os << "  <path fill=\"none\" stroke=\"#444\" stroke-width=\"1\" d=\"";
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        const Point v = polygon.vertex(i);
        os << (i == 0 ? "M" : " L") << sx(v.x) << ' ' << sy(v.y);
    }
    os << " Z\"/>\n";
    os << "  <path fill=\"none\" stroke=\"#c03\" stroke-width=\"1.5\" d=\"";
    bool first = true;
    for (const Point& p : env.polyline()) {
        os << (first ? "M" : " L") << sx(p.x) << ' ' << sy(p.y);
        first = false;
    }
    os << " Z\"/>\n";
    for (const auto& piece : env.pieces) {
        for (std::size_t j = 0; j < piece.points.size(); ++j) {
            if (piece.is_cusp[j]) {
                os << "  <circle cx=\"" << sx(piece.points[j].x) << "\" cy=\"" << sy(piece.points[j].y)
                   << "\" r=\"3\" fill=\"#06c\"/>\n";
            }
        }
    }
    os << "</svg>\n";
}

Raster::Raster(int width, int height, Rgb fill) : width_(width), height_(height) {
    if (width <= 0 || height <= 0) throw ParameterError("raster dimensions must be positive");
    rgb_.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3);
    for (std::size_t k = 0; k < rgb_.size(); k += 3) {
        rgb_[k] = fill.r;
        rgb_[k + 1] = fill.g;
        rgb_[k + 2] = fill.b;
    }
}

Rgb Raster::at(int i, int j) const {
    const std::size_t k = (static_cast<std::size_t>(j) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(i)) * 3;
    return {rgb_[k], rgb_[k + 1], rgb_[k + 2]};
}

void Raster::set(int i, int j, Rgb c) {
    const std::size_t k = (static_cast<std::size_t>(j) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(i)) * 3;
    rgb_[k] = c.r;
    rgb_[k + 1] = c.g;
    rgb_[k + 2] = c.b;
}

Point Raster::pixel_center(int i, int j) const {
    return {(i + 0.5) / width_, 1.0 - (j + 0.5) / height_};
}

std::pair<int, int> Raster::pixel_of(Point p) const {
    const int i = std::clamp(static_cast<int>(std::floor(p.x * width_)), 0, width_ - 1);
    const int j = std::clamp(static_cast<int>(std::floor((1.0 - p.y) * height_)), 0, height_ - 1);
    return {i, j};
}

void write_ppm(std::ostream& os, const Raster& raster, const Json& meta) {
    os << "P6\n";
    write_comment_block(os, meta, "#");
    os << raster.width() << ' ' << raster.height() << "\n255\n";
    os.write(reinterpret_cast<const char*>(raster.bytes().data()), static_cast<std::streamsize>(raster.bytes().size()));
}

Raster read_ppm(std::istream& is) {
    const auto next_token = [&]() {
        std::string tok;
        for (;;) {
            const int c = is.peek();
            if (c == EOF) break;
            if (c == '#') {
                std::string skip;
                std::getline(is, skip);
                continue;
            }
            if (std::isspace(c)) {
                is.get();
                if (!tok.empty()) break;
                continue;
            }
            tok.push_back(static_cast<char>(is.get()));
        }
        return tok;
    };
    if (next_token() != "P6") throw DomainError("not a binary PPM");
    const int w = std::stoi(next_token());
    const int h = std::stoi(next_token());
    if (std::stoi(next_token()) != 255) throw DomainError("unsupported PPM depth");
    Raster raster(w, h);
    std::vector<char> buf(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3);
    is.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (is.gcount() != static_cast<std::streamsize>(buf.size())) throw DomainError("truncated PPM");
    for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; ++i) {
            const std::size_t k = (static_cast<std::size_t>(j) * static_cast<std::size_t>(w) + static_cast<std::size_t>(i)) * 3;
            raster.set(i, j, {static_cast<std::uint8_t>(buf[k]), static_cast<std::uint8_t>(buf[k + 1]),
                              static_cast<std::uint8_t>(buf[k + 2])});
        }
    }
    return raster;
}

}  // namespace hypb
