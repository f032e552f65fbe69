#pragma once

#include "isoparam/focal.hpp"

namespace isoparam {

/// Q_0..Q_m in ambient coordinates, assembled from the frame expansion tables.
struct ReconstructedOperators {
    std::vector<Mat> Q;
    int half_dim{0};

    CliffordSystem as_system() const;
};

/// Frame vector order used by the assembly: x, e_0..e_m, e_{m+1}..e_{2m}, e_alpha, e_mu.
ReconstructedOperators build_Q_operators(const DarbouxFrame& frame, const FrameTensors& tensors);

/// Clifford residuals of recon plus the distance between span{Q_i} and span{P_i}.
VerificationReport verify_reconstruction(const ReconstructedOperators& recon, const CliffordSystem& original,
                                         double tol);

/// Frobenius distance between the orthogonal projections onto two spans of symmetric matrices.
double span_distance(const std::vector<Mat>& a, const std::vector<Mat>& b);

}  // namespace isoparam
