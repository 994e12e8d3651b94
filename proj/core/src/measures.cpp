#include "otinfo/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace otinfo {

namespace {

constexpr double kNormTol = 1e-12;

void check_weights(const std::vector<double>& w, const char* what) {
    if (w.empty()) throw InvalidArgument(std::string(what) + ": empty weight vector");
    for (double v : w) {
        if (!(v >= 0.0)) throw InvalidArgument(std::string(what) + ": negative or NaN weight");
    }
}

}  // namespace

Distribution::Distribution(std::vector<double> weights) : mass_(std::move(weights)) {
    check_weights(mass_, "Distribution");
    original_total_ = std::accumulate(mass_.begin(), mass_.end(), 0.0);
    if (!(original_total_ > 0.0)) throw InvalidArgument("Distribution: total mass is zero");
    if (std::abs(original_total_ - 1.0) > kNormTol) {
        for (double& v : mass_) v /= original_total_;
    }
}

bool Distribution::strictly_positive() const {
    return std::all_of(mass_.begin(), mass_.end(), [](double v) { return v > 0.0; });
}

Distribution Distribution::uniform(std::size_t n) {
    return Distribution(std::vector<double>(n, 1.0));
}

Distribution Distribution::point_mass(std::size_t n, std::size_t atom) {
    if (atom >= n) throw InvalidArgument("Distribution::point_mass: atom out of range");
    std::vector<double> w(n, 0.0);
    w[atom] = 1.0;
    return Distribution(std::move(w));
}

JointDistribution::JointDistribution(std::size_t rows, std::size_t cols,
                                     std::vector<double> weights)
    : rows_(rows), cols_(cols), mass_(std::move(weights)) {
    if (rows_ == 0 || cols_ == 0) throw InvalidArgument("JointDistribution: empty space");
    if (mass_.size() != rows_ * cols_)
        throw DimensionMismatch("JointDistribution: weight vector size != rows*cols");
    check_weights(mass_, "JointDistribution");
    double total = std::accumulate(mass_.begin(), mass_.end(), 0.0);
    if (!(total > 0.0)) throw InvalidArgument("JointDistribution: total mass is zero");
    if (std::abs(total - 1.0) > kNormTol) {
        for (double& v : mass_) v /= total;
    }
}

Distribution JointDistribution::row_marginal() const {
    std::vector<double> r(rows_, 0.0);
    for (std::size_t x = 0; x < rows_; ++x)
        for (std::size_t y = 0; y < cols_; ++y) r[x] += mass_[x * cols_ + y];
    return Distribution(std::move(r));
}

Distribution JointDistribution::col_marginal() const {
    std::vector<double> c(cols_, 0.0);
    for (std::size_t x = 0; x < rows_; ++x)
        for (std::size_t y = 0; y < cols_; ++y) c[y] += mass_[x * cols_ + y];
    return Distribution(std::move(c));
}

JointDistribution JointDistribution::product(const Distribution& q, const Distribution& p) {
    std::vector<double> m(q.size() * p.size());
    for (std::size_t x = 0; x < q.size(); ++x)
        for (std::size_t y = 0; y < p.size(); ++y) m[x * p.size() + y] = q[x] * p[y];
    return JointDistribution(q.size(), p.size(), std::move(m));
}

CostMatrix::CostMatrix(std::size_t rows, std::size_t cols, std::vector<double> values,
                       bool is_metric)
    : rows_(rows), cols_(cols), cost_(std::move(values)), is_metric_(is_metric) {
    if (rows_ == 0 || cols_ == 0) throw InvalidArgument("CostMatrix: empty space");
    if (cost_.size() != rows_ * cols_)
        throw DimensionMismatch("CostMatrix: value vector size != rows*cols");
    for (double v : cost_) {
        if (!(v >= 0.0)) throw InvalidArgument("CostMatrix: negative or NaN cost");
    }
    if (is_metric_) {
        if (rows_ != cols_) throw InvalidArgument("CostMatrix: metric cost must be square");
        const double tol = 1e-12;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (std::abs((*this)(i, i)) > tol)
                throw InvalidArgument("CostMatrix: metric cost needs zero diagonal");
            for (std::size_t j = 0; j < cols_; ++j) {
                if (std::abs((*this)(i, j) - (*this)(j, i)) > tol)
                    throw InvalidArgument("CostMatrix: metric cost must be symmetric");
                for (std::size_t k = 0; k < rows_; ++k) {
                    if ((*this)(i, k) > (*this)(i, j) + (*this)(j, k) + tol)
                        throw InvalidArgument("CostMatrix: triangle inequality violated");
                }
            }
        }
    }
}

CostMatrix CostMatrix::hamming(std::size_t n) {
    std::vector<double> v(n * n, 1.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 0.0;
    return CostMatrix(n, n, std::move(v), /*is_metric=*/true);
}

CostMatrix CostMatrix::grid_abs(std::size_t n, double spacing) {
    std::vector<double> v(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            v[i * n + j] = spacing * std::abs(static_cast<double>(i) - static_cast<double>(j));
    return CostMatrix(n, n, std::move(v), /*is_metric=*/true);
}

double kl_divergence(const Distribution& p, const Distribution& q) {
    if (p.size() != q.size()) throw DimensionMismatch("kl_divergence: size mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) continue;  // 0 ln(0/.) = 0
        if (q[i] == 0.0) return kInfinity;
        sum += p[i] * std::log(p[i] / q[i]);
    }
    return sum < 0.0 && sum > -1e-12 ? 0.0 : sum;
}

double entropy(const Distribution& p, const std::vector<double>& reference) {
    if (p.size() != reference.size()) throw DimensionMismatch("entropy: size mismatch");
    for (double r : reference) {
        if (!(r > 0.0)) throw SupportViolation("entropy: reference measure has a zero atom");
    }
    double h = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) continue;
        h -= p[i] * std::log(p[i] / reference[i]);
    }
    return h;
}

double entropy(const Distribution& p) {
    return entropy(p, std::vector<double>(p.size(), 1.0));
}

double mutual_information(const JointDistribution& w) {
    const Distribution q = w.row_marginal();
    const Distribution p = w.col_marginal();
    double sum = 0.0;
    for (std::size_t x = 0; x < w.rows(); ++x) {
        for (std::size_t y = 0; y < w.cols(); ++y) {
            double m = w(x, y);
            if (m == 0.0) continue;
            // q[x] > 0 and p[y] > 0 whenever m > 0; log difference avoids
            // underflow of the product for subnormal atoms.
            sum += m * (std::log(m) - std::log(q[x]) - std::log(p[y]));
        }
    }
    return std::max(sum, 0.0);
}

double cross_information(const JointDistribution& w, const Distribution& q) {
    if (w.rows() != w.cols()) throw DimensionMismatch("cross_information: space must be square");
    if (w.rows() != q.size()) throw DimensionMismatch("cross_information: size mismatch");
    const Distribution row = w.row_marginal();
    for (std::size_t x = 0; x < q.size(); ++x) {
        if (std::abs(row[x] - q[x]) > 1e-9)
            throw InvalidArgument("cross_information: row marginal does not match q");
    }
    double sum = 0.0;
    for (std::size_t x = 0; x < w.rows(); ++x) {
        for (std::size_t y = 0; y < w.cols(); ++y) {
            double m = w(x, y);
            if (m == 0.0) continue;
            double ref = q[x] * q[y];
            if (ref == 0.0) return kInfinity;
            sum += m * std::log(m / ref);
        }
    }
    return std::max(sum, 0.0);
}

std::pair<Distribution, Distribution> marginals(const JointDistribution& w) {
    return {w.row_marginal(), w.col_marginal()};
}

}  // namespace otinfo
