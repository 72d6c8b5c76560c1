#include "pinchcert/series.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pinchcert/errors.hpp"

namespace pinchcert::series {

namespace mp = boost::multiprecision;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Rounding allowance added to upper bounds and removed from lower bounds:
// a few ulps per accumulated term, scaled by the magnitude of the log values.
double rounding_pad(std::size_t terms, double magnitude) {
    return 16.0 * DBL_EPSILON * (static_cast<double>(terms) + std::fabs(magnitude));
}

double log_abs_int(const mp::cpp_int& x) {
    const mp::cpp_int a = mp::abs(x);
    const unsigned bits = mp::msb(a);
    if (bits < 1000) return std::log(a.convert_to<double>());
    const unsigned shift = bits - 60;
    const mp::cpp_int top = a >> shift;
    return std::log(top.convert_to<double>()) + shift * std::numbers::ln2;
}

// log Σ e^{x_k}, rounded up.
double log_sum_exp_up(const std::vector<double>& xs) {
    if (xs.empty()) return -kInf;
    const double mx = *std::max_element(xs.begin(), xs.end());
    if (mx == -kInf) return -kInf;
    double s = 0.0;
    for (double x : xs) s += std::exp(x - mx);
    return mx + std::log(s) + rounding_pad(xs.size(), mx);
}

// Plain log Σ e^{x_k} for the evaluation oracle.
double log_sum_exp(const std::vector<double>& xs) {
    if (xs.empty()) return -kInf;
    const double mx = *std::max_element(xs.begin(), xs.end());
    double s = 0.0;
    for (double x : xs) s += std::exp(x - mx);
    return mx + std::log(s);
}

void require_arity(std::size_t got, std::size_t want, const char* what) {
    if (got != want) {
        throw UsageError(std::string(what) + " has arity " + std::to_string(got) + ", expected " +
                         std::to_string(want));
    }
}

}  // namespace

int sign(const Coefficient& c) { return c.sign(); }

double log_abs(const Coefficient& c) {
    if (c.is_zero()) return -kInf;
    return log_abs_int(mp::numerator(c)) - log_abs_int(mp::denominator(c));
}

std::string to_string(const Coefficient& c) { return c.str(); }

MultiIndex::MultiIndex(std::vector<value_type> entries) : e_(std::move(entries)) {
    if (e_.empty()) throw UsageError("multi-index needs at least one entry");
}

MultiIndex::MultiIndex(std::initializer_list<value_type> entries) : MultiIndex(std::vector<value_type>(entries)) {}

MultiIndex MultiIndex::zeros(std::size_t n) { return MultiIndex(std::vector<value_type>(n, 0)); }

std::uint64_t MultiIndex::total_degree() const noexcept {
    std::uint64_t d = 0;
    for (auto v : e_) d += v;
    return d;
}

bool MultiIndex::is_zero() const noexcept {
    return std::all_of(e_.begin(), e_.end(), [](value_type v) { return v == 0; });
}

std::string to_string(const MultiIndex& a) {
    std::ostringstream os;
    os << '(';
    for (std::size_t k = 0; k < a.size(); ++k) os << (k ? "," : "") << a[k];
    os << ')';
    return os.str();
}

Order compare(const MultiIndex& a, const MultiIndex& b) {
    require_arity(b.size(), a.size(), "multi-index");
    for (std::size_t k = a.size(); k-- > 0;) {
        if (a[k] != b[k]) return a[k] > b[k] ? Order::Succeeds : Order::Precedes;
    }
    return Order::Equal;
}

void CauchyEnvelope::validate() const {
    if (!(std::isfinite(M) && M > 0.0)) throw ValidationError("envelope M must be positive and finite");
    if (!(std::isfinite(r) && r > 0.0)) throw ValidationError("envelope r must be positive and finite");
}

AnalyticGerm::AnalyticGerm(int arity) : n_(arity) {
    if (arity < 1) throw UsageError("germ arity must be >= 1");
}

void AnalyticGerm::add_term(const MultiIndex& alpha, const Coefficient& c) {
    require_arity(alpha.size(), static_cast<std::size_t>(n_), "monomial");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(alpha, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void AnalyticGerm::set_envelope(const CauchyEnvelope& env) {
    env.validate();
    envelope_ = env;
}

int AnalyticGerm::max_variable() const noexcept {
    int top = 0;
    for (const auto& [alpha, c] : terms_) {
        for (std::size_t k = 0; k < alpha.size(); ++k) {
            if (alpha[k] != 0) top = std::max(top, static_cast<int>(k) + 1);
        }
    }
    return top;
}

bool AnalyticGerm::is_constant() const noexcept {
    return !envelope_ && terms_.size() == 1 && terms_.begin()->first.is_zero();
}

AnalyticGerm AnalyticGerm::with_arity(int n) const {
    if (n < max_variable()) {
        throw ValidationError("germ uses t" + std::to_string(max_variable()) + " but the arity is " +
                              std::to_string(n));
    }
    AnalyticGerm out(n);
    for (const auto& [alpha, c] : terms_) {
        std::vector<MultiIndex::value_type> e(static_cast<std::size_t>(n), 0);
        for (std::size_t k = 0; k < std::min(alpha.size(), e.size()); ++k) e[k] = alpha[k];
        out.add_term(MultiIndex(std::move(e)), c);
    }
    out.envelope_ = envelope_;
    return out;
}

std::string to_string(const AnalyticGerm& f) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [alpha, c] : f.terms()) {
        const bool neg = c.sign() < 0;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        const Coefficient mag = neg ? Coefficient(-c) : c;
        bool wrote = false;
        if (mag != 1 || alpha.is_zero()) {
            os << mag.str();
            wrote = true;
        }
        for (std::size_t k = 0; k < alpha.size(); ++k) {
            if (alpha[k] == 0) continue;
            os << (wrote ? "*" : "") << 't' << (k + 1);
            if (alpha[k] != 1) os << '^' << alpha[k];
            wrote = true;
        }
    }
    if (first) os << "0";
    return os.str();
}

LeadingTerm leading_monomial(const AnalyticGerm& f, bool lead_complete) {
    if (f.terms().empty()) throw DegenerateGermError("germ has no nonzero stored monomial");
    const auto& [beta, c] = *f.terms().begin();
    return {beta, c, f.envelope().has_value() && !lead_complete};
}

double eval_log_abs_monomial(const MultiIndex& alpha, const plumbing::LogPoint& point, double guard) {
    require_arity(point.size(), alpha.size(), "log-point");
    double s = 0.0;
    for (std::size_t k = 0; k < alpha.size(); ++k) {
        if (alpha[k] != 0) s += static_cast<double>(alpha[k]) * point[k].value();
    }
    if (!std::isfinite(s) || -s > guard) {
        throw PrecisionError("monomial " + to_string(alpha) + " overflows the log domain", s);
    }
    return s;
}

double tail_bound(const AnalyticGerm& f, const MultiIndex& beta, const plumbing::LogPoint& point, double guard) {
    const std::size_t n = static_cast<std::size_t>(f.arity());
    require_arity(beta.size(), n, "leading index");
    require_arity(point.size(), n, "log-point");

    std::vector<double> logs;
    for (const auto& [alpha, c] : f.terms()) {
        if (succeeds(alpha, beta)) logs.push_back(log_abs(c) + eval_log_abs_monomial(alpha, point, guard));
    }

    if (const auto& env = f.envelope()) {
        const double log_r = std::log(env->r);
        // prefix_geo[i] = Σ_{k<=i} -log(1 - |t_k|/r)
        std::vector<double> prefix_geo(n);
        double acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double ratio = point[k].value() - log_r;
            if (ratio >= 0.0) {
                throw DivergenceError("Cauchy envelope diverges: |t" + std::to_string(k + 1) + "| >= r", static_cast<int>(k) + 1);
            }
            acc += -std::log1p(-std::exp(ratio));
            prefix_geo[k] = acc;
        }
        // suffix sums over k >= i of β_k and β_k λ_k
        double deg = 0.0;
        double lam = 0.0;
        std::vector<double> block(n);
        for (std::size_t i = n; i-- > 0;) {
            deg += beta[i];
            lam += static_cast<double>(beta[i]) * point[i].value();
            block[i] = std::log(env->M) - (1.0 + deg) * log_r + prefix_geo[i] + point[i].value() + lam;
            if (!std::isfinite(block[i])) {
                throw PrecisionError("envelope block " + std::to_string(i + 1) + " overflows the log domain", block[i]);
            }
        }
        logs.insert(logs.end(), block.begin(), block.end());
    }
    return log_sum_exp_up(logs);
}

bool DominationCertificate::has_flag(const std::string& flag) const {
    return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

DominationCertificate certify(const AnalyticGerm& f, const seq::SequenceEnvelope& env, const CertifyOptions& options) {
    require_arity(static_cast<std::size_t>(f.arity()), static_cast<std::size_t>(env.config.n()), "germ");
    if (f.envelope() && !options.lead_complete) {
        throw ValidationError(
            "a Cauchy envelope is present: assert that every dominant term is stored (lead-complete) to certify");
    }
    const LeadingTerm lead = leading_monomial(f, options.lead_complete);

    DominationCertificate cert;
    cert.beta = lead.beta;
    cert.c_beta = lead.coeff;
    cert.c_beta_log_abs = log_abs(lead.coeff);

    const bool has_tail = f.envelope().has_value() || f.terms().size() > 1;
    if (f.is_constant()) cert.flags.emplace_back("vacuous");
    if (!has_tail) cert.flags.emplace_back("vacuous-tail");
    if (f.envelope()) cert.flags.emplace_back("envelope");
    if (options.lead_complete) cert.flags.emplace_back("lead-complete");

    const double guard = env.config.precision_guard;
    for (const auto& col : env.columns) {
        const double lead_raw = eval_log_abs_monomial(lead.beta, col.lo_point(), guard);
        CertificateRow row{};
        row.m = col.m;
        row.log_lead = lead_raw - rounding_pad(lead.beta.size(), lead_raw);
        row.log_tail = tail_bound(f, lead.beta, col.hi_point(), guard);
        row.margin = row.log_tail == -kInf ? kInf : cert.c_beta_log_abs + row.log_lead - row.log_tail;
        cert.rows.push_back(row);
    }

    for (auto it = cert.rows.rbegin(); it != cert.rows.rend() && it->margin > 0.0; ++it) cert.m_star = it->m;
    if (!cert.m_star) cert.flags.emplace_back("inconclusive");
    return cert;
}

SignedLog eval_exact(const AnalyticGerm& f, const plumbing::LogPoint& point, std::span<const int> signs) {
    const std::size_t n = static_cast<std::size_t>(f.arity());
    require_arity(point.size(), n, "log-point");
    require_arity(signs.size(), n, "sign vector");
    if (f.terms().empty()) throw DegenerateGermError("germ has no nonzero stored monomial");

    std::vector<double> pos;
    std::vector<double> neg;
    for (const auto& [alpha, c] : f.terms()) {
        int s = c.sign();
        double lg = log_abs(c);
        for (std::size_t k = 0; k < n; ++k) {
            if (alpha[k] == 0) continue;
            if (signs[k] != 1 && signs[k] != -1) throw UsageError("signs must be +1 or -1");
            if (signs[k] < 0 && (alpha[k] & 1U)) s = -s;
            lg += static_cast<double>(alpha[k]) * point[k].value();
        }
        (s > 0 ? pos : neg).push_back(lg);
    }
    const double P = log_sum_exp(pos);
    const double N = log_sum_exp(neg);
    if (N == -kInf) return {+1, P, false};
    if (P == -kInf) return {-1, N, false};

    const double hi = std::max(P, N);
    const double d = std::min(P, N) - hi;  // <= 0
    const double rel = -std::expm1(d);      // 1 - e^d
    if (rel < 1e-12) return {0, hi, true};
    return {P > N ? +1 : -1, hi + std::log(rel), false};
}

}  // namespace pinchcert::series
