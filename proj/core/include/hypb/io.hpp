// File formats: orbit CSV, Lyapunov and audit JSON records, envelope
// CSV/SVG and binary PPM rasters. Every writer emits a metadata block
// (a, seed, version, command line) ahead of the payload.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypb/conefield.hpp"
#include "hypb/dynamics.hpp"
#include "hypb/envelope.hpp"

namespace hypb {

using Json = nlohmann::json;

/// Metadata block; keys are emitted in lexicographic order.
Json make_metadata(double a, std::uint64_t seed, const std::string& command);

/// Shortest round-trip decimal representation.
std::string format_double(double v);

/// Pretty-printed JSON with sorted keys and a trailing newline.
std::string dump_json(const Json& doc);

/// "arc:k", "corner:j" or "singular:j".
std::string step_kind(const MapStep& st);

/// Columns: step, X, Y, kind, tangency_X, tangency_Y. Row k holds the k-th
/// image of the initial point and the tangency that produced it.
void write_orbit_csv(std::ostream& os, const Orbit& orbit, const Json& meta);

/// {a, x0, y0, n, lambda_plus, truncated}
Json lyapunov_record(double a, Point start, const LyapunovEstimate& est);

/// {a, x0, y0, label, n_strict, order_histogram, verdicts[]}
Json audit_record(double a, Point start, RegionLabel label, const StrictnessResult& result);

/// Columns: piece_id, s, X, Y, is_cusp.
void write_envelope_csv(std::ostream& os, const PiecewiseConicTable& env, const Json& meta);
void write_envelope_svg(std::ostream& os, const PiecewiseConicTable& env, const ConvexPolygon& polygon,
                        const Json& meta);

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Pixel (i, j) covers column i from the left and row j from the top of
/// the unit square; its center is ((i + 1/2)/w, 1 - (j + 1/2)/h).
class Raster {
public:
    Raster(int width, int height, Rgb fill = {255, 255, 255});

    int width() const { return width_; }
    int height() const { return height_; }
    Rgb at(int i, int j) const;
    void set(int i, int j, Rgb c);
    Point pixel_center(int i, int j) const;
    /// Pixel containing p, clamped to the raster.
    std::pair<int, int> pixel_of(Point p) const;
    const std::vector<std::uint8_t>& bytes() const { return rgb_; }

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> rgb_;
};

/// Binary P6 with the metadata as header comments.
void write_ppm(std::ostream& os, const Raster& raster, const Json& meta);
/// Reads a P6 file written by write_ppm (comments skipped).
Raster read_ppm(std::istream& is);

}  // namespace hypb
