#include "rswap/truncated_normal.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>

#include "rswap/errors.hpp"

namespace rswap {

namespace {

const boost::math::normal standard{};

double phi(double z) { return boost::math::pdf(standard, z); }
double Phi(double z) { return boost::math::cdf(standard, z); }

}  // namespace

TruncatedNormal::TruncatedNormal(double mu, double sigma, double lo, double hi)
    : mu_(mu), sigma_(sigma), lo_(lo), hi_(hi) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("stdev must be > 0");
    if (!(lo < hi)) throw DomainError("truncation support needs lo < hi");
    cdf_lo_ = Phi((lo - mu) / sigma);
    cdf_hi_ = Phi((hi - mu) / sigma);
    mass_ = cdf_hi_ - cdf_lo_;
    if (!(mass_ > 0.0)) throw DomainError("truncation support carries no probability mass");
}

double TruncatedNormal::pdf(double x) const {
    if (x < lo_ || x > hi_) return 0.0;
    return phi((x - mu_) / sigma_) / (sigma_ * mass_);
}

double TruncatedNormal::cdf(double x) const {
    if (x <= lo_) return 0.0;
    if (x >= hi_) return 1.0;
    return (Phi((x - mu_) / sigma_) - cdf_lo_) / mass_;
}

double TruncatedNormal::quantile(double u) const {
    if (!(u >= 0.0 && u <= 1.0)) throw DomainError("quantile level must lie in [0, 1]");
    const double p = cdf_lo_ + u * mass_;
    if (p <= 0.0) return lo_;
    if (p >= 1.0) return hi_;
    const double x = mu_ + sigma_ * boost::math::quantile(standard, p);
    return std::clamp(x, lo_, hi_);
}

double TruncatedNormal::mean() const {
    const double a = (lo_ - mu_) / sigma_;
    const double b = (hi_ - mu_) / sigma_;
    return mu_ + sigma_ * (phi(a) - phi(b)) / mass_;
}

}  // namespace rswap
