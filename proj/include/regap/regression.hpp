#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace regap {

// One supervised observation: input in descriptor or genotype space.
struct Sample {
    std::vector<double> input;
    double output;
};

// Per-dimension z-score normalization fitted on training inputs.
// Zero-variance dimensions keep sd = 1 so they contribute nothing to distances.
class Normalization {
  public:
    Normalization() = default;

    static Normalization fit(const std::vector<std::vector<double>>& inputs) {
        if (inputs.empty()) throw std::invalid_argument("Normalization: no inputs");
        const std::size_t d = inputs.front().size();
        Normalization norm;
        norm.mean_.assign(d, 0.0);
        norm.sd_.assign(d, 1.0);
        for (const auto& x : inputs) {
            if (x.size() != d) throw std::invalid_argument("Normalization: mixed dimensions");
            for (std::size_t j = 0; j < d; ++j) norm.mean_[j] += x[j];
        }
        for (std::size_t j = 0; j < d; ++j) norm.mean_[j] /= static_cast<double>(inputs.size());
        std::vector<double> var(d, 0.0);
        for (const auto& x : inputs)
            for (std::size_t j = 0; j < d; ++j) {
                const double c = x[j] - norm.mean_[j];
                var[j] += c * c;
            }
        for (std::size_t j = 0; j < d; ++j) {
            const double sd = std::sqrt(var[j] / static_cast<double>(inputs.size()));
            norm.sd_[j] = sd > 1e-12 ? sd : 1.0;
        }
        return norm;
    }

    std::vector<double> apply(const std::vector<double>& x) const {
        if (x.size() != mean_.size())
            throw std::invalid_argument("Normalization: dimension mismatch");
        std::vector<double> z(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) z[j] = (x[j] - mean_[j]) / sd_[j];
        return z;
    }

    std::size_t dimension() const { return mean_.size(); }

  private:
    std::vector<double> mean_;
    std::vector<double> sd_;
};

namespace detail {

inline double sq_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double c = a[j] - b[j];
        s += c * c;
    }
    return s;
}

// In-place Cholesky factorization of a symmetric matrix stored row-major.
// Returns false when a pivot is not safely positive.
inline bool cholesky(std::vector<double>& m, std::size_t n) {
    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(m[i * n + i]));
    const double tol = std::max(max_diag, 1.0) * 1e-12;
    for (std::size_t j = 0; j < n; ++j) {
        double d = m[j * n + j];
        for (std::size_t k = 0; k < j; ++k) d -= m[j * n + k] * m[j * n + k];
        if (d <= tol) return false;
        const double l = std::sqrt(d);
        m[j * n + j] = l;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = m[i * n + j];
            for (std::size_t k = 0; k < j; ++k) s -= m[i * n + k] * m[j * n + k];
            m[i * n + j] = s / l;
        }
    }
    return true;
}

// Solves L L^T x = b given the factor from cholesky().
inline std::vector<double> cholesky_solve(const std::vector<double>& l, std::size_t n,
                                          std::vector<double> b) {
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < i; ++k) b[i] -= l[i * n + k] * b[k];
        b[i] /= l[i * n + i];
    }
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t k = ii + 1; k < n; ++k) b[ii] -= l[k * n + ii] * b[k];
        b[ii] /= l[ii * n + ii];
    }
    return b;
}

}  // namespace detail

// Shepard inverse-distance-weighted interpolation over z-scored inputs.
class IdwModel {
  public:
    explicit IdwModel(std::vector<Sample> samples, double power = 2.0)
        : samples_(std::move(samples)), power_(power) {
        if (samples_.empty()) throw std::invalid_argument("IdwModel: no samples");
        if (power_ <= 0.0) throw std::invalid_argument("IdwModel: power must be positive");
        std::vector<std::vector<double>> inputs;
        inputs.reserve(samples_.size());
        for (const auto& s : samples_) inputs.push_back(s.input);
        norm_ = Normalization::fit(inputs);
        normalized_.reserve(samples_.size());
        for (const auto& s : samples_) normalized_.push_back(norm_.apply(s.input));
    }

    double predict(const std::vector<double>& x) const {
        const std::vector<double> z = norm_.apply(x);
        double wsum = 0.0;
        double ysum = 0.0;
        for (std::size_t i = 0; i < normalized_.size(); ++i) {
            const double d = std::sqrt(detail::sq_distance(z, normalized_[i]));
            if (d < 1e-9) return samples_[i].output;  // Shepard exactness
            const double w = std::pow(d, -power_);
            wsum += w;
            ysum += w * samples_[i].output;
        }
        return ysum / wsum;
    }

    std::size_t size() const { return samples_.size(); }
    const std::vector<Sample>& samples() const { return samples_; }

  private:
    std::vector<Sample> samples_;
    double power_;
    Normalization norm_;
    std::vector<std::vector<double>> normalized_;
};

struct KrigingPrediction {
    double mean;
    double variance;  // >= 0
};

// Ordinary Kriging with a unit-variance Gaussian kernel over z-scored inputs.
// Constant mean estimated by generalized least squares; no hyperparameter search.
class KrigingModel {
  public:
    static KrigingModel fit(const std::vector<Sample>& samples, double length_scale = 1.0,
                            double nugget = 1e-6) {
        if (samples.empty()) throw std::invalid_argument("KrigingModel: no samples");
        if (length_scale <= 0.0)
            throw std::invalid_argument("KrigingModel: length_scale must be positive");
        if (nugget < 0.0) throw std::invalid_argument("KrigingModel: nugget must be >= 0");

        KrigingModel m;
        m.length_scale_ = length_scale;
        m.nugget_ = nugget;
        std::vector<std::vector<double>> inputs;
        inputs.reserve(samples.size());
        for (const auto& s : samples) inputs.push_back(s.input);
        m.norm_ = Normalization::fit(inputs);
        for (const auto& s : samples) m.inputs_.push_back(m.norm_.apply(s.input));

        const std::size_t n = samples.size();
        std::vector<double> kmat(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                kmat[i * n + j] = m.kernel(m.inputs_[i], m.inputs_[j]) + (i == j ? nugget : 0.0);
        if (!detail::cholesky(kmat, n))
            throw std::runtime_error(
                "KrigingModel: kernel matrix is numerically singular; increase the nugget");
        m.chol_ = std::move(kmat);

        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) y[i] = samples[i].output;
        const std::vector<double> ones(n, 1.0);
        m.kinv_ones_ = detail::cholesky_solve(m.chol_, n, ones);
        double ones_kinv_ones = 0.0;
        double ones_kinv_y = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            ones_kinv_ones += m.kinv_ones_[i];
            ones_kinv_y += m.kinv_ones_[i] * y[i];
        }
        m.ones_kinv_ones_ = ones_kinv_ones;
        m.mean_ = ones_kinv_y / ones_kinv_ones;
        std::vector<double> resid(n);
        for (std::size_t i = 0; i < n; ++i) resid[i] = y[i] - m.mean_;
        m.weights_ = detail::cholesky_solve(m.chol_, n, resid);
        return m;
    }

    KrigingPrediction predict(const std::vector<double>& x) const {
        const std::vector<double> z = norm_.apply(x);
        const std::size_t n = inputs_.size();
        std::vector<double> k(n);
        for (std::size_t i = 0; i < n; ++i) k[i] = kernel(z, inputs_[i]);

        double mean = mean_;
        for (std::size_t i = 0; i < n; ++i) mean += k[i] * weights_[i];

        const std::vector<double> kinv_k = detail::cholesky_solve(chol_, n, k);
        double k_kinv_k = 0.0;
        double ones_kinv_k = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            k_kinv_k += k[i] * kinv_k[i];
            ones_kinv_k += kinv_ones_[i] * k[i];
        }
        const double lagrange = 1.0 - ones_kinv_k;
        double variance = 1.0 - k_kinv_k + lagrange * lagrange / ones_kinv_ones_;
        if (variance < 0.0) variance = 0.0;  // round-off clamp
        return {mean, variance};
    }

    double estimated_mean() const { return mean_; }
    double nugget() const { return nugget_; }

  private:
    KrigingModel() = default;

    double kernel(const std::vector<double>& a, const std::vector<double>& b) const {
        return std::exp(-detail::sq_distance(a, b) / (2.0 * length_scale_ * length_scale_));
    }

    double length_scale_ = 1.0;
    double nugget_ = 0.0;
    double mean_ = 0.0;
    double ones_kinv_ones_ = 1.0;
    Normalization norm_;
    std::vector<std::vector<double>> inputs_;
    std::vector<double> chol_;
    std::vector<double> kinv_ones_;
    std::vector<double> weights_;
};

}  // namespace regap
