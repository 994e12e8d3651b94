#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace otinfo {

// All information quantities are in nats (natural logarithm throughout).

class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class SupportViolation : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

inline bool is_infinite(double x) { return x == kInfinity; }

/// Finite probability vector. Constructors accept unnormalized non-negative
/// weights and normalize; exact zeros are preserved.
class Distribution {
public:
    explicit Distribution(std::vector<double> weights);

    std::size_t size() const { return mass_.size(); }
    double operator[](std::size_t i) const { return mass_[i]; }
    const std::vector<double>& mass() const { return mass_; }
    double original_total() const { return original_total_; }

    bool strictly_positive() const;

    static Distribution uniform(std::size_t n);
    static Distribution point_mass(std::size_t n, std::size_t atom);

private:
    std::vector<double> mass_;
    double original_total_ = 1.0;
};

/// Joint probability measure on X x Y, stored row-major.
class JointDistribution {
public:
    JointDistribution(std::size_t rows, std::size_t cols, std::vector<double> weights);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double operator()(std::size_t x, std::size_t y) const { return mass_[x * cols_ + y]; }
    const std::vector<double>& mass() const { return mass_; }

    Distribution row_marginal() const;
    Distribution col_marginal() const;

    static JointDistribution product(const Distribution& q, const Distribution& p);

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> mass_;
};

/// Non-negative cost values c(x, y). When is_metric is set, the matrix is
/// validated as square, zero-diagonal, symmetric and triangle-consistent.
class CostMatrix {
public:
    CostMatrix(std::size_t rows, std::size_t cols, std::vector<double> values,
               bool is_metric = false);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double operator()(std::size_t x, std::size_t y) const { return cost_[x * cols_ + y]; }
    const std::vector<double>& values() const { return cost_; }
    bool is_metric() const { return is_metric_; }

    static CostMatrix hamming(std::size_t n);
    static CostMatrix grid_abs(std::size_t n, double spacing = 1.0);

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> cost_;
    bool is_metric_;
};

/// Mutual-information budget lambda >= 0, in nats.
struct InfoBudget {
    double lambda;

    explicit InfoBudget(double l) : lambda(l) {
        if (!(l >= 0.0)) throw InvalidArgument("InfoBudget: lambda must be >= 0");
    }
};

}  // namespace otinfo
