#pragma once

namespace rswap {

/// Normal law N(mu, sigma^2) conditioned on [lo, hi].
class TruncatedNormal {
public:
    TruncatedNormal(double mu, double sigma, double lo, double hi);

    double pdf(double x) const;
    double cdf(double x) const;

    /// Inverse CDF; u in [0, 1].
    double quantile(double u) const;

    /// Mean of the truncated law (closed form).
    double mean() const;

    double mu() const noexcept { return mu_; }
    double sigma() const noexcept { return sigma_; }
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

private:
    double mu_, sigma_, lo_, hi_;
    double cdf_lo_, cdf_hi_, mass_;
};

}  // namespace rswap
