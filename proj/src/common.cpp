#include "isoparam/common.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

namespace isoparam {

const char* error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DimensionNotAdmissible: return "DimensionNotAdmissible";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::NotSpecialOrthogonal: return "NotSpecialOrthogonal";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::InvalidMultiplicities: return "InvalidMultiplicities";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::FocalRadius: return "FocalRadius";
        case ErrorCode::ClusterAmbiguity: return "ClusterAmbiguity";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::SingularJacobian: return "SingularJacobian";
        case ErrorCode::OffManifold: return "OffManifold";
        case ErrorCode::EigsplitDefect: return "EigsplitDefect";
        case ErrorCode::NotUnitNormal: return "NotUnitNormal";
        case ErrorCode::IncompatibleBC: return "IncompatibleBC";
        case ErrorCode::ConditionViolated: return "ConditionViolated";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

Residual& VerificationReport::add(const std::string& name, double value, double tol,
                                  const std::string& note) {
    Residual r;
    r.name = name;
    r.value = value;
    r.tol = tol;
    r.pass = std::isfinite(value) && value <= tol;
    r.note = note;
    pass = pass && r.pass;
    residuals.push_back(r);
    return residuals.back();
}

Residual& VerificationReport::skip(const std::string& name, const std::string& note) {
    Residual r;
    r.name = name;
    r.skipped = true;
    r.note = note;
    residuals.push_back(r);
    return residuals.back();
}

void VerificationReport::merge(const VerificationReport& other, const std::string& prefix) {
    for (Residual r : other.residuals) {
        r.name = prefix + r.name;
        residuals.push_back(r);
    }
    for (const auto& f : other.flags) flags.push_back(prefix + f);
    pass = pass && other.pass;
}

const Residual* VerificationReport::find(const std::string& name) const {
    for (const auto& r : residuals)
        if (r.name == name) return &r;
    return nullptr;
}

double VerificationReport::value(const std::string& name) const {
    const Residual* r = find(name);
    if (!r) throw Error(ErrorCode::InvalidArgument, "no residual named " + name);
    return r->value;
}

bool VerificationReport::has_flag(const std::string& flag) const {
    return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(engine_);
}

Vec Rng::gaussian(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = normal();
    return v;
}

Vec Rng::unit(int n) {
    Vec v = gaussian(n);
    while (v.norm() < 1e-12) v = gaussian(n);
    return v / v.norm();
}

Mat Rng::gaussian(int rows, int cols) {
    Mat m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) m(i, j) = normal();
    return m;
}

CVec Rng::complex_unit(int n) {
    CVec v(n);
    for (int i = 0; i < n; ++i) {
        double re = normal();
        double im = normal();
        v(i) = {re, im};
    }
    return v / v.norm();
}

Mat Rng::rotation(int n) {
    Mat g = gaussian(n, n);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j)
        if (r(j, j) < 0) q.col(j) = -q.col(j);
    if (q.determinant() < 0) q.col(0) = -q.col(0);
    return q;
}

int thread_count() {
    const char* env = std::getenv("ISOPARAM_THREADS");
    if (!env) return 1;
    int n = std::atoi(env);
    return std::clamp(n, 1, 256);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Mat orthonormalize(const Mat& columns, double drop_tol, const Mat* against) {
    std::vector<Vec> kept;
    for (int j = 0; j < columns.cols(); ++j) {
        Vec v = columns.col(j);
        double original = v.norm();
        if (original == 0.0) continue;
        for (int pass = 0; pass < 2; ++pass) {
            if (against)
                for (int k = 0; k < against->cols(); ++k) v -= against->col(k).dot(v) * against->col(k);
            for (const auto& q : kept) v -= q.dot(v) * q;
        }
        double n = v.norm();
        if (n > drop_tol * original) kept.push_back(v / n);
    }
    Mat out(columns.rows(), static_cast<int>(kept.size()));
    for (std::size_t j = 0; j < kept.size(); ++j) out.col(static_cast<int>(j)) = kept[j];
    return out;
}

namespace {

template <typename M>
int rank_impl(const M& m, double* threshold) {
    if (m.size() == 0) {
        if (threshold) *threshold = 0.0;
        return 0;
    }
    Eigen::JacobiSVD<M> svd(m);
    const auto& s = svd.singularValues();
    double smax = s.size() ? s(0) : 0.0;
    double thr = static_cast<double>(std::max(m.rows(), m.cols())) *
                 std::numeric_limits<double>::epsilon() * smax;
    if (threshold) *threshold = thr;
    if (smax == 0.0) return 0;
    int r = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) >= thr) ++r;
    return r;
}

}  // namespace

int numerical_rank(const Mat& m, double* threshold) { return rank_impl(m, threshold); }
int numerical_rank(const CMat& m, double* threshold) { return rank_impl(m, threshold); }

}  // namespace isoparam
