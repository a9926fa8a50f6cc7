#include <gtest/gtest.h>

#include <cstdlib>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hypb/io.hpp"
#include "hypb/sampling.hpp"

using namespace hypb;

TEST(FormatDouble, RoundTrips) {
    Rng rng(71);
    for (int i = 0; i < 1000; ++i) {
        const double v = uniform01(rng) * 1e3 - 500;
        EXPECT_EQ(std::stod(format_double(v)), v);
    }
    EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(Metadata, SortedKeys) {
    const Json meta = make_metadata(0.09, 7, "hypb orbit");
    const std::string s = dump_json(meta);
    EXPECT_LT(s.find("\"a\""), s.find("\"command\""));
    EXPECT_LT(s.find("\"command\""), s.find("\"seed\""));
    EXPECT_LT(s.find("\"seed\""), s.find("\"version\""));
    EXPECT_EQ(s.back(), '\n');
    EXPECT_EQ(meta["version"], HYPB_VERSION);
}

TEST(OrbitCsv, HeaderAndRows) {
    const SquareTable t(0.09);
    const Orbit o = iterate(t, {0.5, 0.02}, 3);
    std::ostringstream os;
    write_orbit_csv(os, o, make_metadata(0.09, 1, "test"));
    std::istringstream is(os.str());
    std::string line;
    std::vector<std::string> rows;
    while (std::getline(is, line)) {
        if (!line.empty() && line[0] != '#') rows.push_back(line);
    }
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0], "step,X,Y,kind,tangency_X,tangency_Y");
    EXPECT_EQ(rows[1].rfind("1,0.98528137423857", 0), 0u);
    EXPECT_NE(rows[1].find(",arc:1,"), std::string::npos);
    EXPECT_NE(rows[2].find(",corner:2,"), std::string::npos);
}

TEST(Records, LyapunovAndAudit) {
    LyapunovEstimate e;
    e.lambda_plus = 0.5;
    e.n = 10;
    const Json l = lyapunov_record(0.05, {0.1, 0.2}, e);
    EXPECT_EQ(l["n"], 10);
    EXPECT_EQ(l["truncated"], false);
    for (const char* k : {"a", "x0", "y0", "n", "lambda_plus", "truncated"}) EXPECT_TRUE(l.contains(k)) << k;

    StrictnessResult r;
    r.status = StrictnessStatus::strict;
    r.n = 2;
    r.verdicts = {{1, Configuration::same_arc, Verdict::non_strict}, {2, Configuration::adjacent_arcs, Verdict::strict}};
    const Json a = audit_record(0.05, {0.1, 0.2}, RegionLabel::Dh, r);
    EXPECT_EQ(a["n_strict"], 2);
    EXPECT_EQ(a["label"], "Dh");
    EXPECT_EQ(a["verdicts"].size(), 2u);
    EXPECT_EQ(a["verdicts"][0]["configuration"], "same_arc");
    EXPECT_EQ(a["order_histogram"].size(), 4u);
}

TEST(Raster, PixelGeometry) {
    const Raster r(512, 512);
    EXPECT_EQ(r.pixel_center(0, 0), (Point{0.5 / 512, 1 - 0.5 / 512}));
    for (int i : {0, 17, 511}) {
        for (int j : {0, 300, 511}) {
            const auto [pi, pj] = r.pixel_of(r.pixel_center(i, j));
            EXPECT_EQ(pi, i);
            EXPECT_EQ(pj, j);
            // A quarter turn of a pixel center is exactly another pixel center.
            const Point c = rotate_quarter(r.pixel_center(i, j));
            const auto [qi, qj] = r.pixel_of(c);
            EXPECT_EQ(r.pixel_center(qi, qj), c);
        }
    }
    EXPECT_THROW(Raster(0, 4), ParameterError);
}

TEST(Ppm, RoundTrip) {
    Raster r(3, 2, {1, 2, 3});
    r.set(2, 1, {200, 100, 0});
    std::stringstream ss;
    write_ppm(ss, r, make_metadata(0.09, 3, "hypb classify"));
    EXPECT_EQ(ss.str().rfind("P6\n# a=0.09\n", 0), 0u);
    const Raster back = read_ppm(ss);
    EXPECT_EQ(back.width(), 3);
    EXPECT_EQ(back.height(), 2);
    EXPECT_EQ(back.bytes(), r.bytes());
    std::istringstream bad("P3\n1 1\n255\n");
    EXPECT_THROW(read_ppm(bad), DomainError);
}

TEST(Sampling, DeterministicAndInD) {
    const SquareTable t(0.09);
    Rng r1(5), r2(5);
    for (int i = 0; i < 1000; ++i) {
        const Point p = sample_region_d(t, r1);
        EXPECT_EQ(p, sample_region_d(t, r2));
        EXPECT_EQ(t.region_of(p), Region::D);
    }
    Rng r3(6);
    for (int i = 0; i < 10000; ++i) {
        const double u = uniform01(r3);
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
}

TEST(Sampling, Mt19937Reference) {
    // The standard fixes the 10000th output of a default-constructed mt19937_64.
    Rng rng;
    rng.discard(9999);
    EXPECT_EQ(rng(), 9981545732273789042ull);
}

TEST(ParallelFor, CoversEveryIndexOnce) {
    std::vector<int> hits(10000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { ++hits[i]; });
    for (int h : hits) EXPECT_EQ(h, 1);
}

TEST(ParallelFor, RethrowsWorkerException) {
    EXPECT_THROW(parallel_for(100, [](std::size_t i) {
                     if (i == 57) throw std::runtime_error("boom");
                 }),
                 std::runtime_error);
}

TEST(ParallelFor, WorkerCapFromEnvironment) {
    setenv("HYPB_THREADS", "1", 1);
    EXPECT_EQ(worker_count(), 1u);
    setenv("HYPB_THREADS", "junk", 1);
    EXPECT_GE(worker_count(), 1u);
    unsetenv("HYPB_THREADS");
}
