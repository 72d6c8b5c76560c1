#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pinchcert/hypgeom.hpp"
#include "pinchcert/plumbing.hpp"

namespace pinchcert::seq {

// Which coarse-density hypothesis drives the sequence.
//   Teichmuller  : d_Teich(X_m, Y_m) <= K, target lengths m^{-i}
//   ThurstonFrom : d_Th(X_m, Y_m) <= K,    target lengths e^{-m^i}
//   ThurstonTo   : d_Th(Y_m, X_m) <= K,    target lengths e^{-m^i}
enum class Regime { Teichmuller, ThurstonFrom, ThurstonTo };

const char* to_string(Regime r) noexcept;
// Accepts "teichmuller", "thurston-from", "thurston-to".
Regime regime_from_string(const std::string& name);

// How per-node λ envelopes are produced from a length envelope.
//   plumbing : λ = -2π²/ℓ applied to both ends of the X_m length envelope.
//   cprime   : the coarse exponent form with constant c',
//              Teichmüller  e^{-c'm^i} <= |t_i| <= e^{-m^i/c'},
//              Thurston     e^{-cc'e^{m^i}} <= |t_i| <= e^{-(1/cc')e^{m^i/c}}
//              (and the analogous bound for the reversed direction).
enum class LambdaSource { Plumbing, Cprime };

const char* to_string(LambdaSource s) noexcept;
LambdaSource lambda_source_from_string(const std::string& name);

enum class OnOverflow { Fail, Truncate };

struct RegimeConfig {
    Regime regime = Regime::Teichmuller;
    int genus = 2;
    hyp::HypConstants consts = hyp::HypConstants::defaults(2, 0.5);
    long long m_min = 2;
    long long m_max = 50;
    double slack = 0.05;
    double precision_guard = plumbing::kDefaultPrecisionGuard;
    LambdaSource lambda_source = LambdaSource::Plumbing;
    OnOverflow on_overflow = OnOverflow::Fail;

    int n() const noexcept { return 3 * genus - 3; }
    // Envelope constant of the regime: wolpert_c or lemma41_c.
    double envelope_c() const noexcept;
    void validate() const;
};

// Default m_max: 50 for Teichmüller, 6 for the Thurston regimes.
long long default_m_max(Regime r) noexcept;

struct EnvelopeCell {
    int i;
    hyp::LengthValue target;
    hyp::LengthInterval length;
    plumbing::LogInterval lam;
};

struct SequenceColumn {
    long long m;
    std::vector<EnvelopeCell> cells;  // index order, i = 1..n

    std::vector<plumbing::LogInterval> log_envelopes() const;
    plumbing::LogPoint lo_point() const;
    plumbing::LogPoint hi_point() const;
};

// Thurston regimes drop m below the short-curve threshold.
struct Trim {
    long long requested_m_min;
    long long first_admissible_m;
};

// Present when OnOverflow::Truncate stopped the build early.
struct Truncation {
    long long m;
    int i;
    std::string reason;
};

struct SequenceEnvelope {
    RegimeConfig config;
    std::vector<SequenceColumn> columns;  // ascending m
    std::optional<Trim> trim;
    std::optional<Truncation> truncation;

    const SequenceColumn* column(long long m) const;
};

// ℓ_{Y_m}(α_i). Throws PrecisionError when the value is not a normal double.
hyp::LengthValue target_length(Regime regime, int i, long long m);

// Two-sided bound on ℓ_{X_m}(α_i). Thurston regimes throw RegimeError
// (carrying the smallest admissible m) when the target exceeds lemma41_eps.
hyp::LengthInterval xm_length_envelope(Regime regime, int i, long long m, const hyp::HypConstants& consts);

// Smallest m >= 2 with e^{-m^i} <= eps.
long long smallest_admissible_m(int i, double eps);

// λ envelope in the c' exponent form, before slack.
plumbing::LogInterval cprime_log_envelope(Regime regime, int i, long long m, const hyp::HypConstants& consts,
                                          double guard = plumbing::kDefaultPrecisionGuard);

SequenceEnvelope build_sequence(const RegimeConfig& config);

struct GapRow {
    long long m;
    double gap;
    bool dominated;
};

struct GapScan {
    int i;
    int j;
    int p;
    std::vector<GapRow> rows;
    // Smallest m in range past which every row is dominated.
    std::optional<long long> threshold;
};

GapScan gap_scan(const SequenceEnvelope& env, int i, int j, int p);

}  // namespace pinchcert::seq
