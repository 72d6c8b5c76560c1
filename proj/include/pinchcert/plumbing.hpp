#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pinchcert/hypgeom.hpp"

namespace pinchcert::plumbing {

// |λ| bound beyond which log-magnitudes are rejected. Downstream code forms
// integer multiples and sums of λ values; the margin below DBL_MAX keeps those
// finite.
inline constexpr double kDefaultPrecisionGuard = 1e300;

// λ = log|t| for a plumbing parameter 0 < |t| < 1.
class LogMagnitude {
  public:
    // Throws DomainError unless lam < 0 and finite, PrecisionError when
    // |lam| > guard.
    explicit LogMagnitude(double lam, double guard = kDefaultPrecisionGuard);

    double value() const noexcept { return lam_; }
    // |t| = e^λ (may underflow to 0 for very negative λ).
    double magnitude() const noexcept;

    friend bool operator==(const LogMagnitude&, const LogMagnitude&) = default;

  private:
    double lam_;
};

// One λ per node index, in index order.
class LogPoint {
  public:
    explicit LogPoint(std::vector<LogMagnitude> lams);
    LogPoint(std::initializer_list<double> lams);

    std::size_t size() const noexcept { return lams_.size(); }
    const LogMagnitude& operator[](std::size_t k) const { return lams_[k]; }
    std::span<const LogMagnitude> values() const noexcept { return lams_; }

  private:
    std::vector<LogMagnitude> lams_;
};

struct LogInterval {
    LogMagnitude lo;
    LogMagnitude hi;
};

// Leading-order inversion of ℓ = 2π² / log(1/|t|): λ = -2π²/ℓ.
LogMagnitude log_t_from_length(hyp::LengthValue l, double guard = kDefaultPrecisionGuard);

// ℓ = 2π² / (-λ).
hyp::LengthValue length_from_log_t(LogMagnitude lam);

// Coarse extremal length 2π / (-λ) of the pinching curve.
double extremal_length_estimate(LogMagnitude lam);

// Converts a length envelope [lo, hi] to (λ_lo, λ_hi) = (-2π²/lo, -2π²/hi).
// Throws UsageError when lo > hi.
LogInterval length_envelope_to_log_envelope(hyp::LengthValue lo, hyp::LengthValue hi,
                                            double guard = kDefaultPrecisionGuard);

// Multiplicative widening by relative slack σ: λ_lo·(1+σ), λ_hi/(1+σ).
LogInterval widen(const LogInterval& env, double slack, double guard = kDefaultPrecisionGuard);

struct GapReport {
    int i = 0;
    int j = 0;
    int p = 0;
    // λ_hi(j) - p·λ_lo(i): log of the largest possible |t_j| / |t_i|^p.
    double gap = 0.0;
    bool dominated = false;
};

// Worst-case test of |t_j| < |t_i|^p over a box of λ envelopes. Indices are
// 1-based; requires 1 <= i < j <= envelopes.size() and p >= 1.
GapReport gap_check(std::span<const LogInterval> envelopes, int i, int j, int p);

}  // namespace pinchcert::plumbing
