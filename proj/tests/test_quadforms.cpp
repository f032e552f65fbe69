#include "isoparam/quadforms.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace isoparam;

namespace {

struct Fixture {
    CliffordSystem sys;
    DarbouxFrame frame;
    FrameTensors t;
    BilinearSystem b;
};

Fixture make(int m, int k, std::uint64_t seed) {
    Fixture s;
    s.sys = fkm_system(m, k);
    s.frame = build_frame(s.sys, sample_focal_point(s.sys, seed), seed);
    s.t = extract_frame_tensors(s.sys, s.frame);
    s.b = bilinear_from_tensors(s.t);
    return s;
}

}  // namespace

TEST(Forms, ThreeWayAgreement) {
    Fixture s = make(3, 2, 2);
    const int N = s.b.m2;
    std::vector<ShapeBlocks> blocks = shape_blocks(s.frame);
    Rng rng(8);
    for (int j = 0; j < 20; ++j) {
        Vec x = rng.gaussian(N), y = rng.gaussian(N);
        Vec u = Vec::Zero(blocks[0].S.rows());
        u.head(N) = x;
        u.segment(N, N) = y;
        for (int a = 1; a <= s.b.m1; ++a) {
            double via_m = eval_form(s.b, a, x, y);
            double via_s = 0.25 * u.dot(blocks[a - 1].S * u);
            double via_sum = 0.0;
            for (int al = 0; al < N; ++al)
                for (int mu = 0; mu < N; ++mu) via_sum += s.t.Fmaa(mu, al, a - 1) * x(al) * y(mu);
            EXPECT_NEAR(via_m, via_s, 1e-12);
            EXPECT_NEAR(via_m, via_sum, 1e-12);
        }
        EXPECT_NEAR(eval_signature(x, y), u.dot(shape_operator(s.frame, s.frame.normals.col(0)) * u), 1e-12);
    }
    for (int a = 0; a < s.b.m1; ++a) EXPECT_LT(max_abs(blocks[a].A - 2.0 * s.b.M[a]), 1e-13);
}

TEST(Forms, SymmetricRankIsTwiceRank) {
    for (auto [m, k] : std::vector<std::pair<int, int>>{{1, 3}, {2, 2}, {3, 2}, {4, 2}}) {
        Fixture s = make(m, k, 0);
        const int N = s.b.m2;
        for (const auto& M : s.b.M) {
            Mat sym = Mat::Zero(2 * N, 2 * N);
            sym.topRightCorner(N, N) = M;
            sym.bottomLeftCorner(N, N) = M.transpose();
            EXPECT_EQ(numerical_rank(sym), 2 * numerical_rank(M));
        }
    }
}

TEST(RankSpan, FkmSystems) {
    Fixture s = make(3, 2, 0);
    RankSpanReport r = rank_and_spanning_check(s.b, 10, 1);
    EXPECT_TRUE(r.rank_bound);
    EXPECT_TRUE(r.spanning);
    EXPECT_LE(r.x_trials, 10);
    EXPECT_TRUE(r.failures.empty());
    for (int rk : r.ranks) EXPECT_EQ(rk, 4);
    // m1 > m2 makes spanning impossible
    Fixture t = make(4, 2, 0);
    RankSpanReport q = rank_and_spanning_check(t.b, 10, 1);
    EXPECT_TRUE(q.rank_bound);
    EXPECT_FALSE(q.spanning);
    EXPECT_EQ(q.failures.size(), 2u);
}

TEST(RankSpan, ZeroFormFails) {
    BilinearSystem b{1, 4, {Mat::Zero(4, 4)}};
    RankSpanReport r = rank_and_spanning_check(b, 5, 0);
    EXPECT_FALSE(r.rank_bound);
    EXPECT_FALSE(r.spanning);
    EXPECT_EQ(r.x_trials, 5);
}

TEST(RankSpan, OzekiTakeuchiRanks) {
    for (int h = 1; h <= 4; ++h) {
        OzekiTakeuchiReport ot = ozeki_takeuchi_example(h);
        RankSpanReport r = rank_and_spanning_check(ot.system, 10, 0);
        for (int rk : r.ranks) EXPECT_EQ(rk, ot.system.m2 - 1);
        EXPECT_TRUE(r.rank_bound);
    }
}

TEST(NormalForm, CanonicalInputIsFixed) {
    CanonicalTriple c = canonical_triple(6, 5, {{1 / std::sqrt(2.0), 1}, {0.5, 2}, {0.3, 2}});
    NormalFormResult nf = bilinear_normal_form(c.A, c.B, c.C, 1e-9);
    ASSERT_TRUE(nf.pass);
    EXPECT_LT(max_abs(nf.plus_rotation - Mat::Identity(6, 6)), 1e-14);
    EXPECT_LT(max_abs(nf.minus_rotation - Mat::Identity(6, 6)), 1e-14);
    EXPECT_LT(max_abs(nf.zero_rotation - Mat::Identity(5, 5)), 1e-14);
    EXPECT_LT(max_abs(nf.A - c.A), 1e-14);
}

TEST(NormalForm, ScrambleRoundTrip) {
    const std::vector<std::pair<double, int>> clusters = {{1 / std::sqrt(2.0), 1}, {0.6, 2}, {0.25, 2}};
    CanonicalTriple c = canonical_triple(7, 6, clusters);
    for (std::uint64_t s = 0; s < 20; ++s) {
        Rng rng(s);
        Mat Op = rng.rotation(7), Om = rng.rotation(7), O0 = rng.rotation(6);
        Mat A = Op * c.A * Om.transpose(), B = Op * c.B * O0.transpose(), C = Om * c.C * O0.transpose();
        NormalFormResult nf = bilinear_normal_form(A, B, C, 1e-9);
        EXPECT_TRUE(nf.pass) << s;
        EXPECT_EQ(nf.rank, 5);
        ASSERT_EQ(nf.blocks.size(), 3u);
        EXPECT_EQ(nf.blocks[0].dim, 1);
        EXPECT_NEAR(nf.blocks[1].sigma, 0.6, 1e-12);
        EXPECT_NEAR(nf.blocks[1].f, std::sqrt(1 - 2 * 0.36), 1e-12);
        EXPECT_NEAR(nf.blocks[2].f, std::sqrt(1 - 2 * 0.0625), 1e-12);
        Mat back = nf.plus_rotation.transpose() * A * nf.minus_rotation;
        EXPECT_LT(max_abs(back - c.A), 1e-9);
    }
}

TEST(NormalForm, FkmBlocks) {
    Fixture s = make(3, 2, 4);
    for (const auto& b : shape_blocks(s.frame)) {
        NormalFormResult nf = bilinear_normal_form(b.A, b.B, b.C, 1e-9);
        EXPECT_TRUE(nf.pass);
        EXPECT_LE(nf.rank, s.b.m1);
        EXPECT_LE(nf.square_residual, 1e-9);
    }
}

TEST(NormalForm, Errors) {
    CanonicalTriple c = canonical_triple(4, 3, {{0.5, 2}});
    Mat C = c.C;
    C(3, 2) = 0.9;
    try {
        bilinear_normal_form(c.A, c.B, C, 1e-9);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::IncompatibleBC);
    }
    CanonicalTriple d = canonical_triple(6, 5, {{0.5, 2}, {0.5 + 1e-5, 2}});
    try {
        bilinear_normal_form(d.A, d.B, d.C, 1e-9);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ClusterAmbiguity);
    }
    EXPECT_THROW(bilinear_normal_form(Mat::Zero(3, 3), Mat::Zero(4, 2), Mat::Zero(4, 2), 1e-9), Error);
}

TEST(Probe, FkmSystems) {
    Fixture s = make(3, 2, 0);
    ProbeReport p = incidence_dimension_probe(s.b, 3, 200, 100, 5);
    EXPECT_EQ(p.generic_kernel_dim, 0);
    EXPECT_EQ(p.max_fiber_dim, 0);
    EXPECT_TRUE(p.fiber_bound_holds);
    EXPECT_EQ(p.fiber_bound, 6);
    EXPECT_DOUBLE_EQ(p.smooth_fraction, 1.0);
    for (int r : p.jacobian_ranks) EXPECT_EQ(r, 3);
    EXPECT_THROW(incidence_dimension_probe(s.b, 4, 1, 1, 0), Error);
}

TEST(Exact, GaussianRank) {
    using Row = std::vector<std::pair<long long, long long>>;
    EXPECT_EQ(exact_gaussian_rank({Row{{1, 0}, {0, 1}}, Row{{0, 1}, {-1, 0}}}), 1);
    EXPECT_EQ(exact_gaussian_rank({Row{{1, 0}, {0, 1}}, Row{{0, 1}, {1, 0}}}), 2);
    EXPECT_EQ(exact_gaussian_rank({Row{{0, 0}, {0, 0}}}), 0);
    // agrees with the floating-point rank on random small integer matrices
    Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 5;
        std::vector<Row> rows(n, Row(n));
        CMat M(n, n);
        int low = trial % 3;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                long long re = std::lround(rng.uniform(-2.5, 2.5)), im = std::lround(rng.uniform(-2.5, 2.5));
                if (i >= n - low) {
                    re = rows[0][j].first + rows[1][j].first;
                    im = rows[0][j].second + rows[1][j].second;
                }
                rows[i][j] = {re, im};
                M(i, j) = {static_cast<double>(re), static_cast<double>(im)};
            }
        EXPECT_EQ(exact_gaussian_rank(rows), numerical_rank(M));
    }
}

TEST(OzekiTakeuchi, ExactKernels) {
    for (int h = 1; h <= 4; ++h) {
        OzekiTakeuchiReport r = ozeki_takeuchi_example(h);
        EXPECT_EQ(r.system.m2, 2 * h + 1);
        EXPECT_EQ(r.kernel_plus_i, h + 1);
        EXPECT_EQ(r.kernel_minus_i, h + 1);
        EXPECT_EQ(r.transpose_kernel_plus_i, h + 1);
        EXPECT_EQ(r.transpose_kernel_minus_i, h + 1);
        EXPECT_EQ(r.z2_dim_lower, r.system.m2 + 1);
        EXPECT_TRUE(r.z2_certified);
        // the last coordinate is annihilated by both forms
        EXPECT_EQ(r.common_kernel_dim, 1);
        EXPECT_EQ(r.generic_kernel_dim, 1);
        EXPECT_LE(*std::max_element(r.generic_kernel_dims.begin(), r.generic_kernel_dims.end()), r.kernel_plus_i);
    }
}
