#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pinchcert/pinchseq.hpp"
#include "pinchcert/plumbing.hpp"

namespace pinchcert::series {

// Exact coefficient. Decimal input is converted exactly, so no coefficient
// ever carries binary rounding.
using Coefficient = boost::multiprecision::cpp_rational;

int sign(const Coefficient& c);
// log|c| computed from the exact numerator and denominator; finite for every
// nonzero rational regardless of size.
double log_abs(const Coefficient& c);
// "p" or "p/q".
std::string to_string(const Coefficient& c);

// Exponent vector (α_1, ..., α_n).
class MultiIndex {
  public:
    using value_type = std::uint32_t;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<value_type> entries);
    MultiIndex(std::initializer_list<value_type> entries);
    static MultiIndex zeros(std::size_t n);

    std::size_t size() const noexcept { return e_.size(); }
    value_type operator[](std::size_t k) const { return e_[k]; }
    std::span<const value_type> entries() const noexcept { return e_; }
    std::uint64_t total_degree() const noexcept;
    bool is_zero() const noexcept;

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

  private:
    std::vector<value_type> e_;
};

std::string to_string(const MultiIndex& a);

// Position of a relative to b in the pinching order ≻, where α ≻ β iff at the
// largest k with α_k != β_k we have α_k > β_k. Precedes means a is the
// ≻-smaller index, i.e. the monomial that dominates along the sequence.
enum class Order { Precedes, Equal, Succeeds };

// Throws UsageError on arity mismatch.
Order compare(const MultiIndex& a, const MultiIndex& b);

// a ≻ b
inline bool succeeds(const MultiIndex& a, const MultiIndex& b) { return compare(a, b) == Order::Succeeds; }

// Strict weak ordering for containers: ≻-smallest first.
struct PrecedesLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const { return compare(a, b) == Order::Precedes; }
};

// Cauchy bound |c_α| <= M / r^{|α|}.
struct CauchyEnvelope {
    double M;
    double r;

    void validate() const;
};

// Finitely many exact monomials, plus an optional Cauchy envelope that
// majorizes every coefficient not stored.
class AnalyticGerm {
  public:
    using Terms = std::map<MultiIndex, Coefficient, PrecedesLess>;

    explicit AnalyticGerm(int arity);

    int arity() const noexcept { return n_; }
    const Terms& terms() const noexcept { return terms_; }
    const std::optional<CauchyEnvelope>& envelope() const noexcept { return envelope_; }

    // Adds c·t^α, merging with an existing α; drops the term if the merged
    // coefficient is zero.
    void add_term(const MultiIndex& alpha, const Coefficient& c);
    void set_envelope(const CauchyEnvelope& env);

    // Same germ in more variables. Throws ValidationError if shrinking would
    // drop a variable that occurs in a stored monomial.
    AnalyticGerm with_arity(int n) const;

    // Highest index k with a nonzero exponent in some stored term (0 if none).
    int max_variable() const noexcept;
    bool is_constant() const noexcept;

  private:
    int n_;
    Terms terms_;
    std::optional<CauchyEnvelope> envelope_;
};

std::string to_string(const AnalyticGerm& f);

struct LeadingTerm {
    MultiIndex beta;
    Coefficient coeff;
    // An envelope is present and nobody asserted that every ≻-minimal term is
    // stored.
    bool conditional;
};

// ≻-minimal stored monomial. Throws DegenerateGermError on an empty germ.
LeadingTerm leading_monomial(const AnalyticGerm& f, bool lead_complete = false);

// Σ_k α_k λ_k = log|t^α|.
double eval_log_abs_monomial(const MultiIndex& alpha, const plumbing::LogPoint& point,
                             double guard = plumbing::kDefaultPrecisionGuard);

// log of an upper bound for Σ_{α ≻ β} |c_α t^α|, -inf when there is nothing
// to bound. Stored terms are summed exactly; the envelope contributes, for
// each block i (α_k = β_k for k > i, α_i > β_i), the exact sum of its
// majorant:
//   M r^{-(1+β_i+...+β_n)} |t_i| Π_{k>=i} |t_k|^{β_k} Π_{k<=i} (1 - |t_k|/r)^{-1}.
// Throws DivergenceError when some |t_k| >= r.
double tail_bound(const AnalyticGerm& f, const MultiIndex& beta, const plumbing::LogPoint& point,
                  double guard = plumbing::kDefaultPrecisionGuard);

struct CertificateRow {
    long long m;
    double log_lead;
    double log_tail;
    double margin;
};

struct CertifyOptions {
    bool lead_complete = false;
};

struct DominationCertificate {
    MultiIndex beta;
    Coefficient c_beta;
    double c_beta_log_abs;
    std::vector<CertificateRow> rows;
    std::optional<long long> m_star;
    std::vector<std::string> flags;

    bool inconclusive() const noexcept { return !m_star.has_value(); }
    bool has_flag(const std::string& flag) const;
};

// For each column of the sequence: lead at λ_lo, tail at λ_hi, and
// margin = log|c_β| + lead - tail. A positive margin at m means f has no zero
// anywhere in the m-th λ box.
DominationCertificate certify(const AnalyticGerm& f, const seq::SequenceEnvelope& env,
                              const CertifyOptions& options = {});

struct SignedLog {
    int sign;  // +1 or -1; 0 when cancellation was flagged
    double log_abs;
    bool cancellation;
};

// Evaluates the stored part of f at t_k = signs[k]·e^{λ_k} with signed
// log-sum-exp. Relative cancellation below 1e-12 is reported instead of a
// sign.
SignedLog eval_exact(const AnalyticGerm& f, const plumbing::LogPoint& point, std::span<const int> signs);

}  // namespace pinchcert::series
