#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace isoparam {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using IMat = Eigen::MatrixXi;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

inline constexpr const char* kVersion = "1.0.0";

enum class ErrorCode {
    DimensionNotAdmissible,
    ShapeMismatch,
    NotSpecialOrthogonal,
    DimensionMismatch,
    InvalidMultiplicities,
    InvalidArgument,
    FocalRadius,
    ClusterAmbiguity,
    NoConvergence,
    SingularJacobian,
    OffManifold,
    EigsplitDefect,
    NotUnitNormal,
    IncompatibleBC,
    ConditionViolated,
    ParseError,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

/// One named residual inside a verification report.
struct Residual {
    std::string name;
    double value{0.0};
    double tol{0.0};
    bool pass{true};
    bool skipped{false};
    std::string note;
};

struct VerificationReport {
    std::string check;
    std::vector<Residual> residuals;
    bool pass{true};
    std::uint64_t seed{0};
    std::size_t samples{0};
    std::vector<std::string> flags;

    /// Adds a residual compared against tol and folds it into pass.
    Residual& add(const std::string& name, double value, double tol, const std::string& note = {});
    Residual& skip(const std::string& name, const std::string& note);
    void merge(const VerificationReport& other, const std::string& prefix);
    const Residual* find(const std::string& name) const;
    double value(const std::string& name) const;
    bool has_flag(const std::string& flag) const;
};

/// splitmix64 finalizer, used to derive independent per-sample seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    Rng(std::uint64_t seed, std::uint64_t stream) : engine_(mix_seed(seed, stream)) {}

    double normal() { return normal_(engine_); }
    double uniform(double lo, double hi);
    Vec gaussian(int n);
    Vec unit(int n);
    Mat gaussian(int rows, int cols);
    CVec complex_unit(int n);
    /// Haar-distributed special orthogonal matrix.
    Mat rotation(int n);

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Worker count from ISOPARAM_THREADS, defaulting to 1.
int thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads.
/// Callers write into pre-sized slots so the result is schedule independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

double max_abs(const Mat& m);

/// Modified Gram-Schmidt with one re-orthogonalization pass. Columns whose
/// residual falls below drop_tol times their original norm are discarded.
Mat orthonormalize(const Mat& columns, double drop_tol = 1e-8, const Mat* against = nullptr);

/// Numerical rank with threshold sigma >= max(rows, cols) * eps * sigma_max.
int numerical_rank(const Mat& m, double* threshold = nullptr);
int numerical_rank(const CMat& m, double* threshold = nullptr);

}  // namespace isoparam
