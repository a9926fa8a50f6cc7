#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hypb/conefield.hpp"
#include "hypb/dynamics.hpp"
#include "hypb/envelope.hpp"
#include "hypb/errors.hpp"
#include "hypb/io.hpp"
#include "hypb/sampling.hpp"
#include "hypb/table.hpp"

namespace hypb::cli {

namespace {

struct Options {
    double a = std::nan("");
    std::optional<double> x0;
    std::optional<double> y0;
    std::size_t n = 0;
    int grid = 256;
    std::size_t samples = 0;
    int max_iter = 0;
    std::uint64_t seed = 1;
    std::string out;
    std::string format;
    std::string polygon = "unit-square";
    std::optional<double> area;
};

// Everything a command needs besides its options.
struct Context {
    std::ostream& out;
    std::ostream& err;
    std::string command_line;
};

// More than half of the samples singular is reported as saturation.
bool saturated(std::size_t singular, std::size_t total) { return total > 0 && 2 * singular > total; }

const Rgb kColorB{96, 96, 96};
const Rgb kColorOrder[4] = {{255, 255, 255}, {190, 210, 255}, {120, 160, 240}, {40, 80, 200}};
const Rgb kColorBlack{0, 0, 0};
const Rgb kColorSingular{255, 0, 0};
const Rgb kColorUndecided{255, 160, 0};

std::string join_command(const std::vector<std::string>& args) {
    std::string s = "hypb";
    for (const auto& a : args) s += " " + a;
    return s;
}

SquareTable make_table(const Options& o) {
    if (std::isnan(o.a)) throw ParameterError("--a is required");
    return SquareTable(o.a);
}

// Writes through `fn` to --out, or to the context stream when no path is given.
void emit(const Context& ctx, const Options& o, bool binary, const std::function<void(std::ostream&)>& fn) {
    if (o.out.empty()) {
        fn(ctx.out);
        return;
    }
    std::ofstream file(o.out, binary ? std::ios::binary : std::ios::out);
    if (!file) throw ParameterError("cannot open output file " + o.out);
    fn(file);
    if (!file) throw ParameterError("failed writing " + o.out);
}

void emit_json(const Context& ctx, const Options& o, const Json& doc) {
    emit(ctx, o, false, [&](std::ostream& os) { os << dump_json(doc); });
}

std::string sibling_json(const std::string& path) {
    const auto dot = path.find_last_of('.');
    const auto slash = path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + ".json";
    return path.substr(0, dot) + ".json";
}

Point start_point(const Options& o) {
    if (!o.x0 || !o.y0) throw ParameterError("--x0 and --y0 are required");
    return {*o.x0, *o.y0};
}

int cmd_orbit(const Context& ctx, const Options& o) {
    const SquareTable table = make_table(o);
    const Point p = start_point(o);
    const Region r = table.region_of(p);
    if (r == Region::B || r == Region::outside) {
        throw DomainError(std::string("start point is in region ") + to_string(r));
    }
    const Orbit orbit = iterate(table, p, o.n == 0 ? 100 : o.n);
    const Json meta = make_metadata(o.a, o.seed, ctx.command_line);
    if (o.format == "json") {
        Json steps = Json::array();
        for (std::size_t k = 0; k < orbit.steps.size(); ++k) {
            const MapStep& st = orbit.steps[k];
            steps.push_back({{"step", k + 1},
                             {"X", st.post.x},
                             {"Y", st.post.y},
                             {"kind", step_kind(st)},
                             {"tangency_X", st.tangency.point.x},
                             {"tangency_Y", st.tangency.point.y}});
        }
        Json doc{{"metadata", meta}, {"x0", p.x}, {"y0", p.y}, {"steps", steps}};
        doc["singular_step"] = orbit.singular_hit ? Json(*orbit.singular_hit + 1) : Json(nullptr);
        emit_json(ctx, o, doc);
    } else {
        emit(ctx, o, false, [&](std::ostream& os) { write_orbit_csv(os, orbit, meta); });
    }
    return kOk;
}

enum class PixelClass { B, order0, order1, order2, order3, black, singular, undecided, count };

const char* class_name(PixelClass c) {
    switch (c) {
        case PixelClass::B: return "B";
        case PixelClass::order0: return "Dh_order_0";
        case PixelClass::order1: return "Dh_order_1";
        case PixelClass::order2: return "Dh_order_2";
        case PixelClass::order3: return "Dh_order_3";
        case PixelClass::black: return "black";
        case PixelClass::singular: return "singular";
        case PixelClass::undecided: return "undecided";
        case PixelClass::count: break;
    }
    return "?";
}

Rgb class_color(PixelClass c) {
    switch (c) {
        case PixelClass::B: return kColorB;
        case PixelClass::order0: return kColorOrder[0];
        case PixelClass::order1: return kColorOrder[1];
        case PixelClass::order2: return kColorOrder[2];
        case PixelClass::order3: return kColorOrder[3];
        case PixelClass::black: return kColorBlack;
        case PixelClass::singular: return kColorSingular;
        case PixelClass::undecided:
        case PixelClass::count: break;
    }
    return kColorUndecided;
}

PixelClass classify_pixel(const SquareTable& table, Point c, int max_iter) {
    if (table.region_of(c) != Region::D) return PixelClass::B;
    switch (classify_point(table, c, max_iter)) {
        case RegionLabel::black: return PixelClass::black;
        case RegionLabel::singular: return PixelClass::singular;
        case RegionLabel::undecided: return PixelClass::undecided;
        case RegionLabel::Dh: break;
    }
    const std::optional<int> order = corner_run_order(table, c, max_iter);
    if (!order) return PixelClass::undecided;
    return static_cast<PixelClass>(static_cast<int>(PixelClass::order0) + std::min(*order, 3));
}

int cmd_classify(const Context& ctx, const Options& o) {
    const SquareTable table = make_table(o);
    if (o.grid < 16) throw ParameterError("--grid must be at least 16");
    if (o.out.empty()) throw ParameterError("--out is required for raster output");
    const int max_iter = o.max_iter > 0 ? o.max_iter : kDefaultMaxIter;

    Raster raster(o.grid, o.grid);
    const std::size_t pixels = static_cast<std::size_t>(o.grid) * static_cast<std::size_t>(o.grid);
    std::vector<PixelClass> classes(pixels);
    parallel_for(pixels, [&](std::size_t k) {
        const int i = static_cast<int>(k % static_cast<std::size_t>(o.grid));
        const int j = static_cast<int>(k / static_cast<std::size_t>(o.grid));
        classes[k] = classify_pixel(table, raster.pixel_center(i, j), max_iter);
    });

    std::array<std::size_t, static_cast<std::size_t>(PixelClass::count)> counts{};
    for (std::size_t k = 0; k < pixels; ++k) {
        ++counts[static_cast<std::size_t>(classes[k])];
        raster.set(static_cast<int>(k % static_cast<std::size_t>(o.grid)),
                   static_cast<int>(k / static_cast<std::size_t>(o.grid)), class_color(classes[k]));
    }

    const Json meta = make_metadata(o.a, o.seed, ctx.command_line);
    emit(ctx, o, true, [&](std::ostream& os) { write_ppm(os, raster, meta); });

    const std::size_t d_pixels = pixels - counts[static_cast<std::size_t>(PixelClass::B)];
    Json fractions = Json::object();
    Json fractions_d = Json::object();
    Json tallies = Json::object();
    for (std::size_t c = 0; c < counts.size(); ++c) {
        const char* name = class_name(static_cast<PixelClass>(c));
        tallies[name] = counts[c];
        fractions[name] = static_cast<double>(counts[c]) / static_cast<double>(pixels);
        if (c != static_cast<std::size_t>(PixelClass::B) && d_pixels > 0) {
            fractions_d[name] = static_cast<double>(counts[c]) / static_cast<double>(d_pixels);
        }
    }
    Json colors = Json::object();
    for (std::size_t c = 0; c < counts.size(); ++c) {
        const Rgb rgb = class_color(static_cast<PixelClass>(c));
        colors[class_name(static_cast<PixelClass>(c))] = {rgb.r, rgb.g, rgb.b};
    }
    const Json summary{{"metadata", meta},
                       {"grid", o.grid},
                       {"max_iter", max_iter},
                       {"counts", tallies},
                       {"area_fraction", fractions},
                       {"fraction_of_D", fractions_d},
                       {"color_key", colors}};
    Options json_opts = o;
    json_opts.out = sibling_json(o.out);
    emit_json(ctx, json_opts, summary);

    return saturated(counts[static_cast<std::size_t>(PixelClass::singular)], d_pixels) ? kSingularSaturation : kOk;
}

int cmd_audit(const Context& ctx, const Options& o) {
    const SquareTable table = make_table(o);
    const std::size_t samples = o.samples == 0 ? 1000 : o.samples;
    const std::size_t max_iter = o.max_iter > 0 ? static_cast<std::size_t>(o.max_iter) : 10000;

    Rng rng(o.seed);
    std::vector<Point> points(samples);
    for (auto& p : points) p = sample_region_d(table, rng);

    std::vector<RegionLabel> labels(samples);
    std::vector<StrictnessResult> results(samples);
    parallel_for(samples, [&](std::size_t k) {
        labels[k] = classify_point(table, points[k]);
        results[k] = eventual_strictness(table, points[k], max_iter);
    });

    Json records = Json::array();
    std::map<std::string, std::size_t> status_counts;
    std::map<std::string, std::size_t> config_counts;
    std::map<std::size_t, std::size_t> n_hist;
    std::array<std::size_t, 4> orders{};
    std::vector<std::size_t> ns;
    for (std::size_t k = 0; k < samples; ++k) {
        const StrictnessResult& r = results[k];
        records.push_back(audit_record(o.a, points[k], labels[k], r));
        ++status_counts[to_string(r.status)];
        for (const StepVerdict& v : r.verdicts) {
            ++config_counts[std::string(to_string(v.configuration)) + "/" + to_string(v.verdict)];
        }
        for (std::size_t c = 0; c < 4; ++c) orders[c] += r.order_histogram[c];
        if (r.status == StrictnessStatus::strict) {
            ns.push_back(*r.n);
            ++n_hist[*r.n];
        }
    }
    const auto count_of = [&](StrictnessStatus s) {
        const auto it = status_counts.find(to_string(s));
        return it == status_counts.end() ? std::size_t{0} : it->second;
    };
    const std::size_t strict = count_of(StrictnessStatus::strict);
    const std::size_t decided = strict + count_of(StrictnessStatus::violated) + count_of(StrictnessStatus::exhausted);

    Json n_stats = Json::object();
    if (!ns.empty()) {
        std::sort(ns.begin(), ns.end());
        double sum = 0.0;
        for (std::size_t n : ns) sum += static_cast<double>(n);
        n_stats = {{"min", ns.front()},
                   {"max", ns.back()},
                   {"mean", sum / static_cast<double>(ns.size())},
                   {"median", ns[ns.size() / 2]}};
    }
    Json hist = Json::array();
    for (const auto& [n, c] : n_hist) hist.push_back({n, c});

    const Json summary{{"samples", samples},
                       {"max_iter", max_iter},
                       {"status_counts", status_counts},
                       {"success_rate", decided > 0 ? Json(static_cast<double>(strict) / static_cast<double>(decided))
                                                    : Json(nullptr)},
                       {"n_strict", n_stats},
                       {"n_strict_histogram", hist},
                       {"order_histogram", orders},
                       {"configuration_verdicts", config_counts},
                       {"hyperbolic_regime", table.hyperbolic_regime()}};
    const Json doc{{"metadata", make_metadata(o.a, o.seed, ctx.command_line)},
                   {"summary", summary},
                   {"records", records}};
    emit_json(ctx, o, doc);
    return saturated(count_of(StrictnessStatus::singular), samples) ? kSingularSaturation : kOk;
}

int cmd_lyapunov(const Context& ctx, const Options& o) {
    const SquareTable table = make_table(o);
    const std::size_t n = o.n == 0 ? 1000000 : o.n;
    if (n < 1000) throw ParameterError("--n must be at least 1000");

    std::vector<Point> points;
    if (o.x0 || o.y0) {
        const Point p = start_point(o);
        if (table.region_of(p) != Region::D) throw DomainError("start point is not in D");
        points.push_back(p);
    } else {
        // Sequential rejection keeps the sample set independent of the thread count.
        const std::size_t samples = o.samples == 0 ? 32 : o.samples;
        Rng rng(o.seed);
        std::size_t attempts = 0;
        while (points.size() < samples) {
            if (++attempts > 1000 * samples) throw DomainError("could not sample D_h points");
            const Point p = sample_region_d(table, rng);
            if (classify_point(table, p) == RegionLabel::Dh) points.push_back(p);
        }
    }

    std::vector<LyapunovEstimate> estimates(points.size());
    parallel_for(points.size(), [&](std::size_t k) { estimates[k] = lyapunov(table, points[k], n); });

    Json records = Json::array();
    std::size_t truncated = 0;
    double lo = 0.0, hi = 0.0, sum = 0.0;
    for (std::size_t k = 0; k < points.size(); ++k) {
        const LyapunovEstimate& e = estimates[k];
        records.push_back(lyapunov_record(o.a, points[k], e));
        truncated += e.truncated ? 1 : 0;
        lo = k == 0 ? e.lambda_plus : std::min(lo, e.lambda_plus);
        hi = k == 0 ? e.lambda_plus : std::max(hi, e.lambda_plus);
        sum += e.lambda_plus;
    }
    const Json summary{{"count", points.size()},
                       {"min", lo},
                       {"max", hi},
                       {"mean", sum / static_cast<double>(points.size())},
                       {"truncated", truncated}};
    const Json doc{{"metadata", make_metadata(o.a, o.seed, ctx.command_line)},
                   {"summary", summary},
                   {"records", records}};
    emit_json(ctx, o, doc);
    return saturated(truncated, points.size()) ? kSingularSaturation : kOk;
}

ConvexPolygon polygon_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot read polygon file " + path);
    std::vector<Point> vertices;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        Point p;
        if (!(row >> p.x)) continue;
        if (!(row >> p.y)) throw ParameterError("polygon file: expected two coordinates per line");
        vertices.push_back(p);
    }
    try {
        return ConvexPolygon(std::move(vertices));
    } catch (const std::invalid_argument& e) {
        throw ParameterError(std::string("polygon file: ") + e.what());
    }
}

ConvexPolygon parse_polygon(const std::string& spec) {
    if (spec == "unit-square") return ConvexPolygon::unit_square();
    if (spec.rfind("regular:", 0) == 0) {
        int k = 0;
        try {
            k = std::stoi(spec.substr(8));
        } catch (const std::exception&) {
            throw ParameterError("bad polygon spec " + spec);
        }
        if (k < 3) throw ParameterError("regular polygon needs at least 3 sides");
        return ConvexPolygon::regular(k);
    }
    if (spec.rfind("file:", 0) == 0) return polygon_from_file(spec.substr(5));
    throw ParameterError("unknown polygon " + spec);
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int cmd_envelope(const Context& ctx, const Options& o) {
    const ConvexPolygon polygon = parse_polygon(o.polygon);
    double area = 0.0;
    if (o.area) {
        area = *o.area;
    } else if (!std::isnan(o.a)) {
        area = 2.0 * o.a;
    } else {
        throw ParameterError("--area (or --a) is required");
    }
    const int samples = o.samples == 0 ? 64 : static_cast<int>(o.samples);
    PiecewiseConicTable env;
    try {
        env = secant_envelope(polygon, area, samples);
    } catch (const std::invalid_argument& e) {
        throw ParameterError(e.what());
    }
    Json meta = make_metadata(o.a, o.seed, ctx.command_line);
    if (std::isnan(o.a)) meta["a"] = nullptr;
    meta["area"] = area;
    meta["polygon"] = o.polygon;
    const bool svg = o.format == "svg" || (o.format.empty() && ends_with(o.out, ".svg"));
    emit(ctx, o, false, [&](std::ostream& os) {
        if (svg) {
            write_envelope_svg(os, env, polygon, meta);
        } else {
            write_envelope_csv(os, env, meta);
        }
    });
    return kOk;
}

int cmd_portrait(const Context& ctx, const Options& o) {
    const SquareTable table = make_table(o);
    if (o.out.empty()) throw ParameterError("--out is required for raster output");
    const int grid = o.grid;
    if (grid < 16) throw ParameterError("--grid must be at least 16");
    const std::size_t n = o.n == 0 ? 100000 : o.n;
    const std::size_t orbits = o.samples == 0 ? 16 : o.samples;

    Rng rng(o.seed);
    std::vector<Point> starts(orbits);
    for (auto& p : starts) p = sample_region_d(table, rng);

    Raster raster(grid, grid);
    const std::size_t pixels = static_cast<std::size_t>(grid) * static_cast<std::size_t>(grid);
    std::vector<std::vector<std::uint32_t>> visits(orbits);
    std::vector<std::uint8_t> hit_singular(orbits, 0);
    parallel_for(orbits, [&](std::size_t k) {
        auto& counts = visits[k];
        counts.assign(pixels, 0);
        Point q = starts[k];
        for (std::size_t s = 0; s < n; ++s) {
            const MapStep st = step(table, q);
            if (st.singular()) {
                hit_singular[k] = 1;
                break;
            }
            q = st.post;
            const auto [i, j] = raster.pixel_of(q);
            ++counts[static_cast<std::size_t>(j) * static_cast<std::size_t>(grid) + static_cast<std::size_t>(i)];
        }
    });

    std::vector<std::uint64_t> total(pixels, 0);
    for (const auto& counts : visits) {
        for (std::size_t k = 0; k < pixels; ++k) total[k] += counts[k];
    }
    const std::uint64_t peak = *std::max_element(total.begin(), total.end());
    const double scale = peak > 0 ? std::log1p(static_cast<double>(peak)) : 1.0;
    for (int j = 0; j < grid; ++j) {
        for (int i = 0; i < grid; ++i) {
            const std::size_t k = static_cast<std::size_t>(j) * static_cast<std::size_t>(grid) + static_cast<std::size_t>(i);
            if (table.region_of(raster.pixel_center(i, j)) == Region::B) {
                raster.set(i, j, kColorB);
            } else if (total[k] > 0) {
                const double level = std::log1p(static_cast<double>(total[k])) / scale;
                const auto v = static_cast<std::uint8_t>(std::lround(220.0 * (1.0 - level)));
                raster.set(i, j, {v, v, v});
            }
        }
    }
    Json meta = make_metadata(o.a, o.seed, ctx.command_line);
    meta["orbits"] = orbits;
    meta["n"] = n;
    emit(ctx, o, true, [&](std::ostream& os) { write_ppm(os, raster, meta); });

    std::size_t singular = 0;
    for (auto h : hit_singular) singular += h;
    return saturated(singular, orbits) ? kSingularSaturation : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Outer billiards about hyperbolic tables in the unit square", "hypb"};
    app.require_subcommand(1);
    app.set_version_flag("--version", HYPB_VERSION);

    Options o;
    const auto add_a = [&](CLI::App* sub) { sub->add_option("--a", o.a, "Table parameter, 0 < a < 1/4"); };
    const auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", o.seed, "Seed of the sampler"); };
    const auto add_out = [&](CLI::App* sub) { sub->add_option("--out", o.out, "Output path (default: stdout)"); };

    CLI::App* orbit = app.add_subcommand("orbit", "Iterate the map from one point");
    add_a(orbit);
    orbit->add_option("--x0", o.x0, "Start X");
    orbit->add_option("--y0", o.y0, "Start Y");
    orbit->add_option("--n", o.n, "Number of steps (default 100)");
    orbit->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    add_seed(orbit);
    add_out(orbit);

    CLI::App* classify = app.add_subcommand("classify", "Label a pixel grid by orbit type");
    classify->alias("classify-grid");
    add_a(classify);
    classify->add_option("--grid", o.grid, "Raster side length (>= 16)");
    classify->add_option("--max-iter", o.max_iter, "Iteration cap per pixel (default 1000)");
    classify->add_option("--format", o.format, "ppm")->check(CLI::IsMember({"ppm"}));
    add_seed(classify);
    add_out(classify);

    CLI::App* audit = app.add_subcommand("audit", "Eventual strict cone preservation on random samples");
    add_a(audit);
    audit->add_option("--samples", o.samples, "Number of samples (default 1000)");
    audit->add_option("--max-iter", o.max_iter, "Iteration cap per sample (default 10000)");
    audit->add_option("--format", o.format, "json")->check(CLI::IsMember({"json"}));
    add_seed(audit);
    add_out(audit);

    CLI::App* lyap = app.add_subcommand("lyapunov", "Largest Lyapunov exponent");
    add_a(lyap);
    lyap->add_option("--x0", o.x0, "Start X (single-point mode)");
    lyap->add_option("--y0", o.y0, "Start Y (single-point mode)");
    lyap->add_option("--n", o.n, "Iterations per orbit (default 1000000)");
    lyap->add_option("--samples", o.samples, "Number of sampled D_h points (default 32)");
    lyap->add_option("--format", o.format, "json")->check(CLI::IsMember({"json"}));
    add_seed(lyap);
    add_out(lyap);

    CLI::App* envelope = app.add_subcommand("envelope", "Envelope of constant-area chords of a convex polygon");
    envelope->add_option("--polygon", o.polygon, "unit-square, regular:<k> or file:<path>");
    envelope->add_option("--area", o.area, "Area cut off by each chord");
    add_a(envelope);
    envelope->add_option("--samples", o.samples, "Points per smooth piece (default 64)");
    envelope->add_option("--format", o.format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));
    add_seed(envelope);
    add_out(envelope);

    CLI::App* portrait = app.add_subcommand("portrait", "Orbit-density phase portrait");
    add_a(portrait);
    portrait->add_option("--n", o.n, "Steps per orbit (default 100000)");
    portrait->add_option("--samples", o.samples, "Number of orbits (default 16)");
    portrait->add_option("--grid", o.grid, "Raster side length (default 256)");
    portrait->add_option("--format", o.format, "ppm")->check(CLI::IsMember({"ppm"}));
    add_seed(portrait);
    add_out(portrait);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kConfigError;
    }

    const Context ctx{out, err, join_command(args)};
    try {
        if (orbit->parsed()) return cmd_orbit(ctx, o);
        if (classify->parsed()) return cmd_classify(ctx, o);
        if (audit->parsed()) return cmd_audit(ctx, o);
        if (lyap->parsed()) return cmd_lyapunov(ctx, o);
        if (envelope->parsed()) return cmd_envelope(ctx, o);
        if (portrait->parsed()) return cmd_portrait(ctx, o);
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kDomainError;
    } catch (const SingularError& e) {
        err << "error: " << e.what() << '\n';
        return kSingularSaturation;
    }
    return kConfigError;
}

}  // namespace hypb::cli
