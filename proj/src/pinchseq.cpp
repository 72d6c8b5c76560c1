#include "pinchcert/pinchseq.hpp"

#include <cfloat>
#include <cmath>
#include <string>

#include "pinchcert/errors.hpp"

namespace pinchcert::seq {

using hyp::LengthInterval;
using hyp::LengthValue;
using plumbing::LogInterval;
using plumbing::LogMagnitude;

namespace {

bool is_thurston(Regime r) { return r != Regime::Teichmuller; }

// m^i as a double; exact while it fits in 53 bits.
double power(long long m, int i) { return std::pow(static_cast<double>(m), i); }

std::string cell_name(int i, long long m) {
    return "(i = " + std::to_string(i) + ", m = " + std::to_string(m) + ")";
}

void check_indices(int i, long long m) {
    if (i < 1) throw UsageError("node index must be >= 1, got " + std::to_string(i));
    if (m < 2) throw UsageError("sequence index m must be >= 2, got " + std::to_string(m));
}

LengthValue normal_length(double value, int i, long long m, const char* what) {
    if (!(value >= DBL_MIN) || !std::isfinite(value)) {
        throw PrecisionError(std::string(what) + " at " + cell_name(i, m) + " is not representable", value, i, m);
    }
    return LengthValue(value);
}

void require_admissible(int i, long long m, double target, double eps) {
    if (target > eps) {
        const long long m_ok = smallest_admissible_m(i, eps);
        throw RegimeError("target length e^{-m^i} at " + cell_name(i, m) + " exceeds epsilon = " +
                              std::to_string(eps) + "; smallest admissible m is " + std::to_string(m_ok),
                          m_ok);
    }
}

}  // namespace

const char* to_string(Regime r) noexcept {
    switch (r) {
        case Regime::Teichmuller: return "teichmuller";
        case Regime::ThurstonFrom: return "thurston-from";
        case Regime::ThurstonTo: return "thurston-to";
    }
    return "?";
}

Regime regime_from_string(const std::string& name) {
    if (name == "teichmuller") return Regime::Teichmuller;
    if (name == "thurston-from") return Regime::ThurstonFrom;
    if (name == "thurston-to") return Regime::ThurstonTo;
    throw ValidationError("unknown regime '" + name + "'");
}

const char* to_string(LambdaSource s) noexcept { return s == LambdaSource::Plumbing ? "plumbing" : "cprime"; }

LambdaSource lambda_source_from_string(const std::string& name) {
    if (name == "plumbing") return LambdaSource::Plumbing;
    if (name == "cprime") return LambdaSource::Cprime;
    throw ValidationError("unknown lambda source '" + name + "'");
}

long long default_m_max(Regime r) noexcept { return r == Regime::Teichmuller ? 50 : 6; }

double RegimeConfig::envelope_c() const noexcept {
    return regime == Regime::Teichmuller ? consts.wolpert_c : consts.lemma41_c;
}

void RegimeConfig::validate() const {
    if (genus < 2) throw ValidationError("genus must be >= 2");
    if (consts.genus != genus) throw ValidationError("constants were configured for a different genus");
    consts.validate();
    if (m_min < 2) throw ValidationError("m_min must be >= 2");
    if (m_max < m_min) throw ValidationError("m_max must be >= m_min");
    if (!(std::isfinite(slack) && slack >= 0.0)) throw ValidationError("slack must be finite and >= 0");
    if (!(precision_guard > 0.0)) throw ValidationError("precision guard must be positive");
}

const SequenceColumn* SequenceEnvelope::column(long long m) const {
    for (const auto& c : columns) {
        if (c.m == m) return &c;
    }
    return nullptr;
}

std::vector<LogInterval> SequenceColumn::log_envelopes() const {
    std::vector<LogInterval> out;
    out.reserve(cells.size());
    for (const auto& c : cells) out.push_back(c.lam);
    return out;
}

plumbing::LogPoint SequenceColumn::lo_point() const {
    std::vector<LogMagnitude> v;
    v.reserve(cells.size());
    for (const auto& c : cells) v.push_back(c.lam.lo);
    return plumbing::LogPoint(std::move(v));
}

plumbing::LogPoint SequenceColumn::hi_point() const {
    std::vector<LogMagnitude> v;
    v.reserve(cells.size());
    for (const auto& c : cells) v.push_back(c.lam.hi);
    return plumbing::LogPoint(std::move(v));
}

LengthValue target_length(Regime regime, int i, long long m) {
    check_indices(i, m);
    if (regime == Regime::Teichmuller) {
        return normal_length(std::pow(static_cast<double>(m), -i), i, m, "target length m^{-i}");
    }
    const double x = power(m, i);
    return normal_length(std::exp(-x), i, m, "target length e^{-m^i}");
}

long long smallest_admissible_m(int i, double eps) {
    if (i < 1) throw UsageError("node index must be >= 1");
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
    const double need = -std::log(eps);  // m^i >= log(1/ε)
    long long m = std::max(2LL, static_cast<long long>(std::ceil(std::pow(need, 1.0 / i))));
    while (std::exp(-power(m, i)) > eps) ++m;
    while (m > 2 && std::exp(-power(m - 1, i)) <= eps) --m;
    return m;
}

LengthInterval xm_length_envelope(Regime regime, int i, long long m, const hyp::HypConstants& consts) {
    const LengthValue target = target_length(regime, i, m);
    switch (regime) {
        case Regime::Teichmuller: return hyp::wolpert_envelope(target, consts);
        case Regime::ThurstonFrom:
            require_admissible(i, m, target.value(), consts.lemma41_eps);
            return hyp::lemma41_envelope(target, consts);
        case Regime::ThurstonTo: {
            require_admissible(i, m, target.value(), consts.lemma41_eps);
            const double c = consts.lemma41_c;
            // (1/c)^c e^{-c m^i} <= ℓ_X <= c e^{-m^i}
            const double lo = std::exp(-c * power(m, i) - c * std::log(c));
            return {normal_length(lo, i, m, "length lower bound"), LengthValue(c * target.value())};
        }
    }
    throw UsageError("unknown regime");
}

LogInterval cprime_log_envelope(Regime regime, int i, long long m, const hyp::HypConstants& consts, double guard) {
    check_indices(i, m);
    const double cp = consts.cprime;
    const double x = power(m, i);
    if (regime == Regime::Teichmuller) {
        return {LogMagnitude(-cp * x, guard), LogMagnitude(-x / cp, guard)};
    }
    require_admissible(i, m, target_length(regime, i, m).value(), consts.lemma41_eps);
    const double c = consts.lemma41_c;
    if (regime == Regime::ThurstonFrom) {
        return {LogMagnitude(-c * cp * std::exp(x), guard), LogMagnitude(-std::exp(x / c) / (c * cp), guard)};
    }
    return {LogMagnitude(-cp * std::pow(c, c) * std::exp(c * x), guard),
            LogMagnitude(-std::exp(x) / (c * cp), guard)};
}

SequenceEnvelope build_sequence(const RegimeConfig& config) {
    config.validate();
    SequenceEnvelope out{config, {}, {}, {}};

    long long first = config.m_min;
    if (is_thurston(config.regime)) {
        // α_1 is the longest curve; once it is short enough, all are.
        const long long m_ok = smallest_admissible_m(1, config.consts.lemma41_eps);
        if (m_ok > first) {
            out.trim = Trim{config.m_min, m_ok};
            first = m_ok;
        }
    }

    const int n = config.n();
    const double guard = config.precision_guard;
    for (long long m = first; m <= config.m_max; ++m) {
        SequenceColumn col{m, {}};
        col.cells.reserve(n);
        for (int i = 1; i <= n; ++i) {
            try {
                const LengthValue target = target_length(config.regime, i, m);
                const LengthInterval len = xm_length_envelope(config.regime, i, m, config.consts);
                const LogInterval raw = config.lambda_source == LambdaSource::Plumbing
                                            ? plumbing::length_envelope_to_log_envelope(len.lo, len.hi, guard)
                                            : cprime_log_envelope(config.regime, i, m, config.consts, guard);
                col.cells.push_back(EnvelopeCell{i, target, len, plumbing::widen(raw, config.slack, guard)});
            } catch (const PrecisionError& e) {
                if (config.on_overflow == OnOverflow::Fail) {
                    throw PrecisionError(std::string(e.what()) + " at " + cell_name(i, m), e.offending(), i, m);
                }
                out.truncation = Truncation{m, i, e.what()};
                return out;
            }
        }
        out.columns.push_back(std::move(col));
    }
    return out;
}

GapScan gap_scan(const SequenceEnvelope& env, int i, int j, int p) {
    GapScan scan{i, j, p, {}, {}};
    scan.rows.reserve(env.columns.size());
    for (const auto& col : env.columns) {
        const auto envs = col.log_envelopes();
        const auto r = plumbing::gap_check(envs, i, j, p);
        scan.rows.push_back({col.m, r.gap, r.dominated});
    }
    for (auto it = scan.rows.rbegin(); it != scan.rows.rend() && it->dominated; ++it) scan.threshold = it->m;
    return scan;
}

}  // namespace pinchcert::seq
