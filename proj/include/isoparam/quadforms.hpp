#pragma once

#include "isoparam/focal.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace isoparam {

/// Forms p_a(x, y) = x^T M_a y on V_+ x V_-, plus p_0 = |x|^2 - |y|^2.
struct BilinearSystem {
    int m1{0};
    int m2{0};
    std::vector<Mat> M;  // m1 matrices, m2 x m2, indexed (alpha, mu)
};

BilinearSystem bilinear_from_tensors(const FrameTensors& t);

double eval_form(const BilinearSystem& sys, int a, const Vec& x, const Vec& y);
double eval_signature(const Vec& x, const Vec& y);

struct RankSpanReport {
    std::vector<int> ranks;
    std::vector<double> thresholds;
    bool rank_bound{false};
    std::optional<Vec> x_certificate;
    std::optional<Vec> y_certificate;
    int x_trials{0};
    int y_trials{0};
    bool spanning{false};
    std::uint64_t seed{0};
    /// "FailureAfterTrials" when a certificate search is exhausted.
    std::vector<std::string> failures;
};

RankSpanReport rank_and_spanning_check(const BilinearSystem& sys, int trials, std::uint64_t seed);

struct DeltaBlock {
    double sigma{0.0};
    int dim{0};
    double f{0.0};       // off-diagonal entry of the canonical 2x2 blocks
    Mat block;           // the block of A in the recovered bases
    double square_residual{0.0};  // |Delta^2 + (1 - 2 sigma^2) I|
};

struct NormalFormResult {
    int rank{0};
    std::vector<double> sigma;  // in block order
    Mat plus_rotation;          // columns: new V_+ basis in old coordinates
    Mat minus_rotation;
    Mat zero_rotation;
    Mat A;
    Mat B;
    Mat C;
    std::vector<DeltaBlock> blocks;  // blocks[0] is the zero block (possibly empty)
    double structure_residual{0.0};  // |A - diag(I, Delta)| and |B - C| in the new bases
    double square_residual{0.0};
    bool pass{false};
};

NormalFormResult bilinear_normal_form(const Mat& A, const Mat& B, const Mat& C, double tol,
                                  double cluster_tol = 1e-6);

/// Builds diag(I, Delta) and matching B = C from a list of (sigma, dim) clusters.
struct CanonicalTriple {
    Mat A, B, C;
};
CanonicalTriple canonical_triple(int N, int m, const std::vector<std::pair<double, int>>& clusters);

struct ProbeReport {
    int n{0};
    std::size_t c_samples{0};
    std::size_t point_samples{0};
    std::uint64_t seed{0};
    double rank_threshold_factor{0.0};
    std::vector<int> kernel_histogram;  // index = kernel dimension
    int max_kernel_dim{0};
    int generic_kernel_dim{0};
    int max_fiber_dim{0};
    int base_dim{0};
    int z_dim_upper_estimate{0};
    int fiber_bound{0};
    bool fiber_bound_holds{false};
    std::vector<int> jacobian_ranks;
    double smooth_fraction{0.0};
};

ProbeReport incidence_dimension_probe(const BilinearSystem& sys, int n, std::size_t c_samples,
                                      std::size_t point_samples, std::uint64_t seed);

/// Kernel dimension of sum c_a M_a for a complex coefficient vector.
int kernel_dimension(const BilinearSystem& sys, const CVec& c);

/// Exact rank over Q(i) of an integer-valued complex matrix, by fraction-free elimination.
int exact_gaussian_rank(const std::vector<std::vector<std::pair<long long, long long>>>& rows);

struct OzekiTakeuchiReport {
    BilinearSystem system;
    int h{0};
    int kernel_plus_i{0};
    int kernel_minus_i{0};
    int transpose_kernel_plus_i{0};
    int transpose_kernel_minus_i{0};
    int common_kernel_dim{0};
    std::vector<int> generic_kernel_dims;
    int generic_kernel_dim{0};
    int z2_dim_lower{0};
    int z2_dim_upper{0};
    bool z2_certified{false};
};

OzekiTakeuchiReport ozeki_takeuchi_example(int h, std::size_t generic_samples = 50, std::uint64_t seed = 0);

}  // namespace isoparam
