#include "pinchcert/plumbing.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "pinchcert/errors.hpp"

namespace pinchcert::plumbing {

namespace {

constexpr double kTwoPiSquared = 2.0 * std::numbers::pi * std::numbers::pi;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

}  // namespace

LogMagnitude::LogMagnitude(double lam, double guard) : lam_(lam) {
    if (std::isnan(lam) || lam >= 0.0) {
        throw DomainError("log-magnitude must be negative, got " + fmt(lam));
    }
    if (!std::isfinite(lam) || -lam > guard) {
        throw PrecisionError("log-magnitude " + fmt(lam) + " exceeds the precision guard " + fmt(guard), lam);
    }
}

double LogMagnitude::magnitude() const noexcept { return std::exp(lam_); }

LogPoint::LogPoint(std::vector<LogMagnitude> lams) : lams_(std::move(lams)) {
    if (lams_.empty()) throw UsageError("a log-point needs at least one coordinate");
}

LogPoint::LogPoint(std::initializer_list<double> lams) {
    lams_.reserve(lams.size());
    for (double l : lams) lams_.emplace_back(l);
    if (lams_.empty()) throw UsageError("a log-point needs at least one coordinate");
}

LogMagnitude log_t_from_length(hyp::LengthValue l, double guard) {
    const double lam = -kTwoPiSquared / l.value();
    if (!std::isfinite(lam) || -lam > guard) {
        throw PrecisionError("length " + fmt(l.value()) + " is too short: log-magnitude " + fmt(lam) +
                                 " exceeds the precision guard " + fmt(guard),
                             l.value());
    }
    return LogMagnitude(lam, guard);
}

hyp::LengthValue length_from_log_t(LogMagnitude lam) { return hyp::LengthValue(kTwoPiSquared / -lam.value()); }

double extremal_length_estimate(LogMagnitude lam) { return 2.0 * std::numbers::pi / -lam.value(); }

LogInterval length_envelope_to_log_envelope(hyp::LengthValue lo, hyp::LengthValue hi, double guard) {
    if (lo.value() > hi.value()) {
        throw UsageError("length envelope inverted: lo = " + fmt(lo.value()) + " > hi = " + fmt(hi.value()));
    }
    return {log_t_from_length(lo, guard), log_t_from_length(hi, guard)};
}

LogInterval widen(const LogInterval& env, double slack, double guard) {
    if (!(std::isfinite(slack) && slack >= 0.0)) throw DomainError("slack must be finite and >= 0");
    const double f = 1.0 + slack;
    return {LogMagnitude(env.lo.value() * f, guard), LogMagnitude(env.hi.value() / f, guard)};
}

GapReport gap_check(std::span<const LogInterval> envelopes, int i, int j, int p) {
    const int n = static_cast<int>(envelopes.size());
    if (i >= j) throw UsageError("gap condition needs i < j, got i = " + std::to_string(i) + ", j = " + std::to_string(j));
    if (i < 1 || j > n) throw UsageError("node index out of range 1.." + std::to_string(n));
    if (p < 1) throw UsageError("power p must be >= 1");

    GapReport r;
    r.i = i;
    r.j = j;
    r.p = p;
    r.gap = envelopes[j - 1].hi.value() - p * envelopes[i - 1].lo.value();
    r.dominated = r.gap < 0.0;
    return r;
}

}  // namespace pinchcert::plumbing
