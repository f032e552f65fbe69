#include "isoparam/quadforms.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>

namespace isoparam {

BilinearSystem bilinear_from_tensors(const FrameTensors& t) {
    BilinearSystem b;
    b.m1 = t.m;
    b.m2 = t.N;
    b.M.assign(t.m, Mat(t.N, t.N));
    for (int a = 0; a < t.m; ++a)
        for (int al = 0; al < t.N; ++al)
            for (int mu = 0; mu < t.N; ++mu) b.M[a](al, mu) = t.Fmaa(mu, al, a);
    return b;
}

double eval_form(const BilinearSystem& sys, int a, const Vec& x, const Vec& y) {
    if (a < 1 || a > sys.m1) throw Error(ErrorCode::InvalidArgument, "form index out of range");
    if (x.size() != sys.m2 || y.size() != sys.m2) throw Error(ErrorCode::DimensionMismatch, "form arguments");
    return x.dot(sys.M[a - 1] * y);
}

double eval_signature(const Vec& x, const Vec& y) { return x.squaredNorm() - y.squaredNorm(); }

RankSpanReport rank_and_spanning_check(const BilinearSystem& sys, int trials, std::uint64_t seed) {
    if (sys.m1 < 1) throw Error(ErrorCode::InvalidArgument, "m1 must be positive");
    RankSpanReport rep;
    rep.seed = seed;
    rep.rank_bound = true;
    for (const auto& M : sys.M) {
        double thr = 0.0;
        int r = numerical_rank(M, &thr);
        rep.ranks.push_back(r);
        rep.thresholds.push_back(thr);
        if (r < sys.m2 - sys.m1) rep.rank_bound = false;
    }
    auto stacked = [&](const Vec& v, bool transpose) {
        Mat R(sys.m1, sys.m2);
        for (int a = 0; a < sys.m1; ++a) {
            Vec r = transpose ? Vec(sys.M[a].transpose() * v) : Vec(sys.M[a] * v);
            R.row(a) = r.transpose();
        }
        return R;
    };
    for (int t = 0; t < trials && !rep.x_certificate; ++t) {
        Vec x = Rng(seed, 2 * static_cast<std::uint64_t>(t)).gaussian(sys.m2);
        rep.x_trials = t + 1;
        if (numerical_rank(stacked(x, true)) == sys.m1) rep.x_certificate = x;
    }
    for (int t = 0; t < trials && !rep.y_certificate; ++t) {
        Vec y = Rng(seed, 2 * static_cast<std::uint64_t>(t) + 1).gaussian(sys.m2);
        rep.y_trials = t + 1;
        if (numerical_rank(stacked(y, false)) == sys.m1) rep.y_certificate = y;
    }
    if (!rep.x_certificate) rep.failures.push_back("FailureAfterTrials: x");
    if (!rep.y_certificate) rep.failures.push_back("FailureAfterTrials: y");
    rep.spanning = rep.x_certificate && rep.y_certificate;
    return rep;
}

CanonicalTriple canonical_triple(int N, int m, const std::vector<std::pair<double, int>>& clusters) {
    int r = 0;
    for (const auto& c : clusters) r += c.second;
    if (r > N || r > m) throw Error(ErrorCode::ShapeMismatch, "cluster sizes exceed the block dimensions");
    CanonicalTriple out;
    out.A = Mat::Zero(N, N);
    out.B = Mat::Zero(N, m);
    out.A.topLeftCorner(N - r, N - r).setIdentity();
    int off = 0;
    for (const auto& [sigma, dim] : clusters) {
        double f2 = 1.0 - 2.0 * sigma * sigma;
        if (std::abs(f2) > 1e-14) {
            if (dim % 2 != 0) throw Error(ErrorCode::InvalidArgument, "nonzero skew block needs even size");
            double f = std::sqrt(f2);
            for (int i = 0; i < dim; i += 2) {
                out.A(N - r + off + i, N - r + off + i + 1) = f;
                out.A(N - r + off + i + 1, N - r + off + i) = -f;
            }
        }
        for (int i = 0; i < dim; ++i) out.B(N - r + off + i, m - r + off + i) = sigma;
        off += dim;
    }
    out.C = out.B;
    return out;
}

namespace {

void fix_signs(Mat& K) {
    for (int j = 0; j < K.cols(); ++j) {
        Eigen::Index i;
        K.col(j).cwiseAbs().maxCoeff(&i);
        if (K(i, j) < 0) K.col(j) *= -1.0;
    }
}

struct Cluster {
    std::vector<int> idx;
    double sigma{0.0};
    bool zero{false};
};

}  // namespace

NormalFormResult bilinear_normal_form(const Mat& A, const Mat& B, const Mat& C, double tol, double cluster_tol) {
    const int N = static_cast<int>(A.rows());
    const int m = static_cast<int>(B.cols());
    if (A.cols() != N || B.rows() != N || C.rows() != N || C.cols() != m)
        throw Error(ErrorCode::ShapeMismatch, "A must be NxN and B, C must be Nxm");
    double bc = max_abs(C.transpose() * C - B.transpose() * B);
    if (bc > tol) throw Error(ErrorCode::IncompatibleBC, "C^T C - B^T B = " + std::to_string(bc));

    Eigen::JacobiSVD<Mat> svd(B, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Vec s = svd.singularValues();
    int r = 0;
    while (r < s.size() && s(r) > cluster_tol) ++r;
    Mat U = svd.matrixU(), V = svd.matrixV();
    Mat X = U.rightCols(N - r), Y = U.leftCols(r);
    Mat Z = V.rightCols(m - r), W = V.leftCols(r);
    Vec sig = s.head(r);
    fix_signs(X);
    fix_signs(Z);

    Mat Ys = C * W * sig.cwiseInverse().asDiagonal();
    Mat Xs = orthonormalize(Mat::Identity(N, N), 1e-8, &Ys);
    if (Xs.cols() != N - r) throw Error(ErrorCode::IncompatibleBC, "aligned minus basis is degenerate");
    Mat alpha = X.transpose() * A * Xs;
    if (alpha.size() > 0) {
        Eigen::JacobiSVD<Mat> pol(alpha, Eigen::ComputeFullU | Eigen::ComputeFullV);
        Mat O = pol.matrixU() * pol.matrixV().transpose();
        Xs = Xs * O.transpose();
    }

    std::vector<Cluster> clusters;
    for (int i = 0; i < r; ++i) {
        if (!clusters.empty()) {
            double gap = std::abs(clusters.back().sigma - sig(i));
            if (gap <= cluster_tol) {
                clusters.back().idx.push_back(i);
                continue;
            }
            if (gap < 1e3 * cluster_tol)
                throw Error(ErrorCode::ClusterAmbiguity, "singular value gap " + std::to_string(gap));
        }
        clusters.push_back({{i}, sig(i), false});
    }
    for (auto& c : clusters) {
        double sum = 0.0;
        for (int i : c.idx) sum += sig(i);
        c.sigma = sum / static_cast<double>(c.idx.size());
        c.zero = std::abs(1.0 - 2.0 * c.sigma * c.sigma) <= 10.0 * cluster_tol;
    }
    std::stable_sort(clusters.begin(), clusters.end(), [](const Cluster& a, const Cluster& b) {
        if (a.zero != b.zero) return a.zero;
        return a.sigma > b.sigma;
    });

    NormalFormResult out;
    out.rank = r;
    Mat Yn(N, r), Ysn(N, r), Wn(m, r);
    std::vector<double> sig_order;
    int off = 0;
    if (clusters.empty() || !clusters.front().zero) out.blocks.push_back({1.0 / std::sqrt(2.0), 0, 0.0, Mat(), 0.0});
    for (const auto& c : clusters) {
        const int d = static_cast<int>(c.idx.size());
        Mat Yc(N, d), Ysc(N, d), Wc(m, d);
        for (int j = 0; j < d; ++j) {
            Yc.col(j) = Y.col(c.idx[j]);
            Ysc.col(j) = Ys.col(c.idx[j]);
            Wc.col(j) = W.col(c.idx[j]);
        }
        if (!c.zero) {
            Mat mu = Yc.transpose() * A * Ysc;
            Mat skew = 0.5 * (mu - mu.transpose());
            Eigen::RealSchur<Mat> schur(skew);
            Mat R = schur.matrixU();
            Mat T = schur.matrixT();
            for (int i = 0; i + 1 < d; i += 2)
                if (T(i, i + 1) < 0) R.col(i).swap(R.col(i + 1));
            Yc = Yc * R;
            Ysc = Ysc * R;
            Wc = Wc * R;
        }
        Yn.middleCols(off, d) = Yc;
        Ysn.middleCols(off, d) = Ysc;
        Wn.middleCols(off, d) = Wc;
        for (int j = 0; j < d; ++j) sig_order.push_back(c.sigma);
        DeltaBlock blk;
        blk.sigma = c.sigma;
        blk.dim = d;
        out.blocks.push_back(blk);
        off += d;
    }

    out.plus_rotation.resize(N, N);
    out.plus_rotation << X, Yn;
    out.minus_rotation.resize(N, N);
    out.minus_rotation << Xs, Ysn;
    out.zero_rotation.resize(m, m);
    out.zero_rotation << Z, Wn;
    out.sigma = sig_order;
    out.A = out.plus_rotation.transpose() * A * out.minus_rotation;
    out.B = out.plus_rotation.transpose() * B * out.zero_rotation;
    out.C = out.minus_rotation.transpose() * C * out.zero_rotation;

    Mat target = Mat::Zero(N, N);
    target.topLeftCorner(N - r, N - r).setIdentity();
    Mat canon = target;
    Mat Bt = Mat::Zero(N, m);
    for (int i = 0; i < r; ++i) Bt(N - r + i, m - r + i) = sig_order[i];
    off = 0;
    double canon_res = 0.0;
    for (auto& blk : out.blocks) {
        const int d = blk.dim;
        if (d == 0) continue;
        const int o = N - r + off;
        blk.block = out.A.block(o, o, d, d);
        target.block(o, o, d, d) = blk.block;
        double f2 = 1.0 - 2.0 * blk.sigma * blk.sigma;
        blk.square_residual = max_abs(blk.block * blk.block + f2 * Mat::Identity(d, d));
        double fsum = 0.0;
        int count = 0;
        for (int i = 0; i + 1 < d; i += 2) {
            fsum += blk.block(i, i + 1);
            ++count;
        }
        blk.f = count ? fsum / count : 0.0;
        double fc = f2 > 0 ? std::sqrt(f2) : 0.0;
        if (std::abs(f2) <= 10.0 * cluster_tol) fc = 0.0;
        for (int i = 0; i + 1 < d; i += 2) {
            canon(o + i, o + i + 1) = fc;
            canon(o + i + 1, o + i) = -fc;
        }
        canon_res = std::max(canon_res, max_abs(blk.block - canon.block(o, o, d, d)));
        out.square_residual = std::max(out.square_residual, blk.square_residual);
        off += d;
    }
    out.structure_residual = std::max({max_abs(out.A - target), max_abs(out.B - out.C), max_abs(out.B - Bt), canon_res});
    out.pass = out.structure_residual <= tol && out.square_residual <= tol;
    return out;
}

int kernel_dimension(const BilinearSystem& sys, const CVec& c) {
    const int n = static_cast<int>(c.size());
    if (n > sys.m1) throw Error(ErrorCode::InvalidArgument, "more coefficients than forms");
    CMat K = CMat::Zero(sys.m2, sys.m2);
    for (int a = 0; a < n; ++a) K += c(a) * sys.M[a].cast<std::complex<double>>();
    return sys.m2 - numerical_rank(K);
}

ProbeReport incidence_dimension_probe(const BilinearSystem& sys, int n, std::size_t c_samples,
                                      std::size_t point_samples, std::uint64_t seed) {
    if (n < 1 || n > sys.m1) throw Error(ErrorCode::InvalidArgument, "n must lie in [1, m1]");
    ProbeReport rep;
    rep.n = n;
    rep.c_samples = c_samples;
    rep.point_samples = point_samples;
    rep.seed = seed;
    rep.rank_threshold_factor = static_cast<double>(sys.m2) * std::numeric_limits<double>::epsilon();
    std::vector<int> dims(c_samples);
    parallel_for(c_samples, [&](std::size_t i) {
        Rng rng(seed, i);
        dims[i] = kernel_dimension(sys, rng.complex_unit(n));
    });
    rep.kernel_histogram.assign(sys.m2 + 1, 0);
    for (int d : dims) ++rep.kernel_histogram[d];
    for (int d = 0; d <= sys.m2; ++d)
        if (rep.kernel_histogram[d] > 0) rep.max_kernel_dim = d;
    rep.generic_kernel_dim = static_cast<int>(
        std::max_element(rep.kernel_histogram.begin(), rep.kernel_histogram.end()) - rep.kernel_histogram.begin());
    rep.max_fiber_dim = 2 * rep.max_kernel_dim;
    rep.base_dim = n - 1;
    rep.z_dim_upper_estimate = rep.base_dim + rep.max_fiber_dim;
    rep.fiber_bound = sys.m1 + sys.m2 - 1;
    rep.fiber_bound_holds = rep.max_fiber_dim <= rep.fiber_bound;

    rep.jacobian_ranks.assign(point_samples, 0);
    parallel_for(point_samples, [&](std::size_t i) {
        Rng rng(seed ^ 0x6A09E667F3BCC909ULL, i);
        Vec x = rng.gaussian(sys.m2);
        Mat S(n, sys.m2);
        for (int a = 0; a < n; ++a) S.row(a) = (sys.M[a].transpose() * x).transpose();
        int rk = numerical_rank(S);
        Vec y = Vec::Zero(sys.m2);
        if (rk < sys.m2) {
            Eigen::JacobiSVD<Mat> svd(S, Eigen::ComputeFullV);
            y = svd.matrixV().rightCols(sys.m2 - rk) * rng.gaussian(sys.m2 - rk);
        }
        Mat J(n, 2 * sys.m2);
        for (int a = 0; a < n; ++a) {
            J.block(a, 0, 1, sys.m2) = (sys.M[a] * y).transpose();
            J.block(a, sys.m2, 1, sys.m2) = (sys.M[a].transpose() * x).transpose();
        }
        rep.jacobian_ranks[i] = numerical_rank(J);
    });
    std::size_t smooth = 0;
    for (int r : rep.jacobian_ranks)
        if (r == n) ++smooth;
    rep.smooth_fraction = point_samples ? static_cast<double>(smooth) / static_cast<double>(point_samples) : 0.0;
    return rep;
}

namespace {

using GInt = std::complex<long long>;

GInt gmul(GInt a, GInt b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

GInt gdiv_exact(GInt a, GInt b) {
    long long nrm = b.real() * b.real() + b.imag() * b.imag();
    GInt num = gmul(a, {b.real(), -b.imag()});
    if (num.real() % nrm != 0 || num.imag() % nrm != 0)
        throw Error(ErrorCode::InvalidArgument, "inexact Gaussian integer division");
    return {num.real() / nrm, num.imag() / nrm};
}

bool gzero(GInt a) { return a.real() == 0 && a.imag() == 0; }

}  // namespace

int exact_gaussian_rank(const std::vector<std::vector<std::pair<long long, long long>>>& rows) {
    std::vector<std::vector<GInt>> M;
    for (const auto& r : rows) {
        std::vector<GInt> row;
        for (const auto& [re, im] : r) row.emplace_back(re, im);
        M.push_back(row);
    }
    const int nr = static_cast<int>(M.size());
    const int nc = nr ? static_cast<int>(M[0].size()) : 0;
    GInt prev{1, 0};
    int rank = 0;
    for (int col = 0; col < nc && rank < nr; ++col) {
        int piv = -1;
        for (int i = rank; i < nr; ++i)
            if (!gzero(M[i][col])) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(M[rank], M[piv]);
        for (int i = rank + 1; i < nr; ++i) {
            for (int j = col + 1; j < nc; ++j)
                M[i][j] = gdiv_exact(gmul(M[i][j], M[rank][col]) - gmul(M[i][col], M[rank][j]), prev);
            M[i][col] = {0, 0};
        }
        prev = M[rank][col];
        ++rank;
    }
    return rank;
}

namespace {

int exact_kernel(const BilinearSystem& sys, GInt c1, GInt c2, bool transpose) {
    std::vector<std::vector<std::pair<long long, long long>>> rows(sys.m2, std::vector<std::pair<long long, long long>>(sys.m2));
    for (int i = 0; i < sys.m2; ++i)
        for (int j = 0; j < sys.m2; ++j) {
            int r = transpose ? j : i, c = transpose ? i : j;
            auto v1 = static_cast<long long>(std::llround(sys.M[0](r, c)));
            auto v2 = static_cast<long long>(std::llround(sys.M[1](r, c)));
            GInt v = gmul(c1, {v1, 0}) + gmul(c2, {v2, 0});
            rows[i][j] = {v.real(), v.imag()};
        }
    return sys.m2 - exact_gaussian_rank(rows);
}

}  // namespace

OzekiTakeuchiReport ozeki_takeuchi_example(int h, std::size_t generic_samples, std::uint64_t seed) {
    if (h < 1) throw Error(ErrorCode::InvalidArgument, "h must be positive");
    OzekiTakeuchiReport rep;
    rep.h = h;
    const int m2 = 2 * h + 1;
    BilinearSystem& b = rep.system;
    b.m1 = 2;
    b.m2 = m2;
    Mat M1 = Mat::Zero(m2, m2), M2 = Mat::Zero(m2, m2);
    for (int j = 0; j < 2 * h; ++j) M1(j, j) = -2.0;
    for (int j = 0; j < h; ++j) {
        M2(j, h + j) = 2.0;
        M2(h + j, j) = -2.0;
    }
    b.M = {M1, M2};

    rep.kernel_plus_i = exact_kernel(b, {0, 1}, {1, 0}, false);
    rep.kernel_minus_i = exact_kernel(b, {0, -1}, {1, 0}, false);
    rep.transpose_kernel_plus_i = exact_kernel(b, {0, 1}, {1, 0}, true);
    rep.transpose_kernel_minus_i = exact_kernel(b, {0, -1}, {1, 0}, true);

    std::vector<std::vector<std::pair<long long, long long>>> stacked;
    for (const auto& M : b.M)
        for (int i = 0; i < m2; ++i) {
            std::vector<std::pair<long long, long long>> row;
            for (int j = 0; j < m2; ++j) row.push_back({std::llround(M(i, j)), 0});
            stacked.push_back(row);
        }
    rep.common_kernel_dim = m2 - exact_gaussian_rank(stacked);

    std::map<int, int> counts;
    for (std::size_t i = 0; i < generic_samples; ++i) {
        int d = kernel_dimension(b, Rng(seed, i).complex_unit(2));
        rep.generic_kernel_dims.push_back(d);
        ++counts[d];
    }
    int best = -1;
    for (const auto& [d, cnt] : counts)
        if (cnt > best) {
            best = cnt;
            rep.generic_kernel_dim = d;
        }

    rep.z2_dim_lower = std::max(rep.kernel_plus_i + rep.transpose_kernel_plus_i,
                                rep.kernel_minus_i + rep.transpose_kernel_minus_i);
    rep.z2_dim_upper = std::max(rep.z2_dim_lower, 2 * rep.generic_kernel_dim + 1);
    rep.z2_certified = rep.z2_dim_lower == rep.z2_dim_upper && rep.z2_dim_lower == m2 + 1;
    return rep;
}

}  // namespace isoparam
