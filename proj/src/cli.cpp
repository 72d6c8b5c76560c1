#include "pinchcert/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pinchcert/errors.hpp"
#include "pinchcert/germ_parser.hpp"
#include "pinchcert/hypgeom.hpp"
#include "pinchcert/pinchseq.hpp"
#include "pinchcert/series.hpp"
#include "pinchcert/strata.hpp"

namespace pinchcert::cli {

namespace {

using json = nlohmann::ordered_json;

// Non-finite doubles have no JSON literal; they are emitted as strings.
json num(double x) {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

// Shortest round-trip representation, same as the JSON writer.
std::string csv_num(double x) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, p);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

struct Output {
    std::string path;

    // Returns false (with a diagnostic) if the file cannot be written.
    bool emit(CliResult& res, const std::string& doc) const {
        if (path.empty()) {
            res.out = doc;
            return true;
        }
        std::ofstream f(path, std::ios::binary);
        f << doc;
        if (!f) {
            res.err += "error: cannot write " + path + "\n";
            res.exit_code = exit_code::kInvalid;
            return false;
        }
        return true;
    }
};

// Flags shared by `sequence` and `certify`.
struct SequenceFlags {
    std::string regime = "teichmuller";
    int genus = 2;
    long long m_min = 2;
    long long m_max = 0;
    double K = 0.5;
    double c = 0.0;
    double cprime = 0.0;
    double eps = 0.0;
    double C1 = 0.0;
    double C2 = 0.0;
    double bers_B = 0.0;
    double slack = 0.05;
    std::string lambda_source = "plumbing";

    CLI::Option* m_max_opt = nullptr;
    CLI::Option* c_opt = nullptr;
    CLI::Option* cprime_opt = nullptr;
    CLI::Option* eps_opt = nullptr;
    CLI::Option* C1_opt = nullptr;
    CLI::Option* C2_opt = nullptr;
    CLI::Option* bers_opt = nullptr;

    void attach(CLI::App* app) {
        app->add_option("--regime", regime, "teichmuller | thurston-from | thurston-to")
            ->check(CLI::IsMember({"teichmuller", "thurston-from", "thurston-to"}));
        app->add_option("--genus", genus, "genus g >= 2 (n = 3g-3 pinching curves)");
        app->add_option("--m-min", m_min, "first sequence index (>= 2)");
        m_max_opt = app->add_option("--m-max", m_max, "last sequence index (default 50, or 6 for Thurston)");
        app->add_option("--K", K, "coarse-density radius K");
        c_opt = app->add_option("--c", c, "envelope constant (Wolpert c or Thurston c)");
        cprime_opt = app->add_option("--cprime", cprime, "exponent constant c' (default e)");
        eps_opt = app->add_option("--eps", eps, "short-curve threshold epsilon (default 0.1)");
        C1_opt = app->add_option("--C1", C1, "crossing-curve log coefficient (default 2)");
        C2_opt = app->add_option("--C2", C2, "crossing-curve additive constant (default bers-B)");
        bers_opt = app->add_option("--bers-B", bers_B, "Bers constant (default 21(g-1))");
        app->add_option("--slack", slack, "relative log-magnitude slack sigma");
        app->add_option("--lambda-source", lambda_source, "plumbing | cprime")
            ->check(CLI::IsMember({"plumbing", "cprime"}));
    }

    seq::RegimeConfig config(double guard) const {
        seq::RegimeConfig cfg;
        cfg.regime = seq::regime_from_string(regime);
        cfg.genus = genus;
        if (genus < 2) throw ValidationError("genus must be >= 2");
        auto& k = cfg.consts;
        k = hyp::HypConstants::defaults(genus, K);
        if (*C1_opt) {
            k.C1 = C1;
            k.lemma41_c = std::exp(K) * std::max(1.0, C1);
        }
        if (*bers_opt) k.bers_B = bers_B;
        k.C2 = *C2_opt ? C2 : k.bers_B;
        if (*cprime_opt) k.cprime = cprime;
        if (*eps_opt) k.lemma41_eps = eps;
        if (*c_opt) (cfg.regime == seq::Regime::Teichmuller ? k.wolpert_c : k.lemma41_c) = c;
        cfg.m_min = m_min;
        cfg.m_max = *m_max_opt ? m_max : seq::default_m_max(cfg.regime);
        cfg.slack = slack;
        cfg.precision_guard = guard;
        cfg.lambda_source = seq::lambda_source_from_string(lambda_source);
        cfg.on_overflow = seq::OnOverflow::Truncate;
        cfg.validate();
        return cfg;
    }
};

json config_json(const seq::RegimeConfig& cfg) {
    const auto& k = cfg.consts;
    return json{{"regime", seq::to_string(cfg.regime)},
                {"genus", cfg.genus},
                {"n", cfg.n()},
                {"m_min", cfg.m_min},
                {"m_max", cfg.m_max},
                {"slack", num(cfg.slack)},
                {"lambda_source", seq::to_string(cfg.lambda_source)},
                {"precision_guard", num(cfg.precision_guard)},
                {"constants",
                 {{"K", num(k.K)},
                  {"wolpert_c", num(k.wolpert_c)},
                  {"lemma41_c", num(k.lemma41_c)},
                  {"lemma41_eps", num(k.lemma41_eps)},
                  {"bers_B", num(k.bers_B)},
                  {"C1", num(k.C1)},
                  {"C2", num(k.C2)},
                  {"cprime", num(k.cprime)}}}};
}

void report_trim(const seq::SequenceEnvelope& env, CliResult& res) {
    if (env.trim) {
        res.err += "note: m < " + std::to_string(env.trim->first_admissible_m) +
                   " dropped: target lengths exceed the short-curve threshold epsilon\n";
    }
    if (env.truncation) {
        res.err += "note: stopped at m = " + std::to_string(env.truncation->m) + ": " + env.truncation->reason + "\n";
    }
}

json sequence_json(const seq::SequenceEnvelope& env) {
    json columns = json::array();
    for (const auto& col : env.columns) {
        json rows = json::array();
        for (const auto& c : col.cells) {
            rows.push_back({{"m", col.m},
                            {"i", c.i},
                            {"target_len", num(c.target.value())},
                            {"len_lo", num(c.length.lo.value())},
                            {"len_hi", num(c.length.hi.value())},
                            {"lam_lo", num(c.lam.lo.value())},
                            {"lam_hi", num(c.lam.hi.value())}});
        }
        columns.push_back({{"m", col.m}, {"rows", std::move(rows)}});
    }
    json trim = nullptr;
    if (env.trim) trim = {{"requested_m_min", env.trim->requested_m_min}, {"first_admissible_m", env.trim->first_admissible_m}};
    json trunc = nullptr;
    if (env.truncation) trunc = {{"m", env.truncation->m}, {"i", env.truncation->i}, {"reason", env.truncation->reason}};
    return json{{"config", config_json(env.config)}, {"trim", trim}, {"truncation", trunc}, {"columns", columns}};
}

std::string sequence_csv(const seq::SequenceEnvelope& env) {
    std::string s = "m,i,target_len,len_lo,len_hi,lam_lo,lam_hi\n";
    for (const auto& col : env.columns) {
        for (const auto& c : col.cells) {
            s += std::to_string(col.m) + "," + std::to_string(c.i) + "," + csv_num(c.target.value()) + "," +
                 csv_num(c.length.lo.value()) + "," + csv_num(c.length.hi.value()) + "," +
                 csv_num(c.lam.lo.value()) + "," + csv_num(c.lam.hi.value()) + "\n";
        }
    }
    return s;
}

std::string parse_diagnostic(const ParseError& e, const std::string& source) {
    std::ostringstream os;
    os << "error: parse error at line " << e.line() << ", column " << e.column();
    if (!e.token().empty()) os << " near '" << e.token() << "'";
    os << ": " << e.message() << "\n";
    std::istringstream lines(source);
    std::string line;
    for (int k = 1; std::getline(lines, line); ++k) {
        if (k == e.line()) {
            os << "  " << line << "\n  " << std::string(static_cast<std::size_t>(std::max(0, e.column() - 1)), ' ')
               << "^\n";
            break;
        }
    }
    return os.str();
}

json certificate_json(const series::DominationCertificate& cert, const seq::RegimeConfig& cfg,
                      const series::AnalyticGerm& f, bool lead_complete) {
    json beta = json::array();
    for (auto v : cert.beta.entries()) beta.push_back(v);
    json rows = json::array();
    for (const auto& r : cert.rows) {
        rows.push_back({{"m", r.m}, {"log_lead", num(r.log_lead)}, {"log_tail", num(r.log_tail)}, {"margin", num(r.margin)}});
    }
    json config = config_json(cfg);
    config["f"] = series::to_string(f);
    config["envelope"] = nullptr;
    if (f.envelope()) config["envelope"] = {{"M", num(f.envelope()->M)}, {"r", num(f.envelope()->r)}};
    config["lead_complete"] = lead_complete;
    json m_star = nullptr;
    if (cert.m_star) m_star = *cert.m_star;
    return json{{"config", config},
                {"beta", beta},
                {"c_beta", series::to_string(cert.c_beta)},
                {"c_beta_log_abs", num(cert.c_beta_log_abs)},
                {"rows", rows},
                {"m_star", m_star},
                {"flags", cert.flags}};
}

double parse_guard(const CliEnvironment& env) {
    if (!env.precision_guard) return plumbing::kDefaultPrecisionGuard;
    const std::string& s = *env.precision_guard;
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || !(v > 0.0) || !std::isfinite(v)) {
        throw ValidationError("PINCHCERT_PRECISION_GUARD must be a positive finite number, got '" + s + "'");
    }
    return v;
}

}  // namespace

CliEnvironment environment_from_process() {
    CliEnvironment env;
    if (const char* g = std::getenv("PINCHCERT_PRECISION_GUARD")) env.precision_guard = g;
    return env;
}

CliResult run_cli(const std::vector<std::string>& args, const CliEnvironment& env) {
    CliResult res;
    CLI::App app{"pinchcert: pinching sequences, plumbing envelopes and domination certificates", "pinchcert"};
    app.require_subcommand(1);
    Output output;

    // Each subcommand stores its action here; run after a successful parse.
    std::function<void()> action;

    // stratum
    std::vector<int> kappa;
    auto* stratum = app.add_subcommand("stratum", "coarse-density verdict for a stratum H(kappa)");
    stratum->add_option("--kappa", kappa, "comma-separated zero orders")->required()->delimiter(',');
    stratum->add_option("--output", output.path, "write the document to a file");
    stratum->callback([&] {
        action = [&] {
            const strata::StratumSignature sig(kappa);
            const auto v = strata::coarse_density_verdict(sig);
            json doc{{"kappa", sig.kappa()},         {"genus", v.genus},
                     {"n", v.n},                     {"dim_PH", v.dim_PH},
                     {"threshold", v.threshold},     {"verdict", strata::to_string(v.verdict)}};
            if (v.caveat) doc["caveat"] = *v.caveat;
            output.emit(res, dump(doc));
        };
    });

    // sequence
    SequenceFlags seq_flags;
    std::string format = "json";
    auto* sequence = app.add_subcommand("sequence", "pinching-sequence length and log-magnitude envelopes");
    seq_flags.attach(sequence);
    sequence->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    sequence->add_option("--output", output.path, "write the document to a file");
    sequence->callback([&] {
        action = [&] {
            const auto env_seq = seq::build_sequence(seq_flags.config(parse_guard(env)));
            report_trim(env_seq, res);
            if (env_seq.columns.empty()) {
                res.err += "error: no sequence rows in the requested range\n";
                res.exit_code = exit_code::kEmpty;
                return;
            }
            output.emit(res, format == "csv" ? sequence_csv(env_seq) : dump(sequence_json(env_seq)));
        };
    });

    // certify
    SequenceFlags cert_flags;
    std::string f_text;
    std::string envelope_text;
    bool lead_complete = false;
    auto* certify = app.add_subcommand("certify", "domination certificate for f(t) = 0 along the sequence");
    cert_flags.attach(certify);
    certify->add_option("--f", f_text, "polynomial in t1..tn, e.g. \"t1 - 2*t2^3\"")->required();
    certify->add_option("--envelope", envelope_text, "Cauchy envelope M=<M>,r=<r> for unstored terms");
    certify->add_flag("--lead-complete", lead_complete, "assert that every dominant term of f is stored");
    certify->add_option("--output", output.path, "write the document to a file");
    certify->callback([&] {
        action = [&] {
            const auto cfg = cert_flags.config(parse_guard(env));
            series::AnalyticGerm f(1);
            try {
                f = series::parse_germ(f_text, cfg.n());
            } catch (const ParseError& e) {
                res.err += parse_diagnostic(e, f_text);
                res.exit_code = exit_code::kInvalid;
                return;
            }
            if (!envelope_text.empty()) {
                try {
                    f.set_envelope(series::parse_envelope(envelope_text));
                } catch (const ParseError& e) {
                    res.err += parse_diagnostic(e, envelope_text);
                    res.exit_code = exit_code::kInvalid;
                    return;
                }
            }
            const auto env_seq = seq::build_sequence(cfg);
            report_trim(env_seq, res);
            const auto cert = series::certify(f, env_seq, {lead_complete});
            if (!output.emit(res, dump(certificate_json(cert, cfg, f, lead_complete)))) return;
            if (cert.inconclusive()) {
                res.err += "note: inconclusive: the margin is not positive through m = " +
                           std::to_string(cfg.m_max) + "\n";
                res.exit_code = exit_code::kInconclusive;
            }
        };
    });

    // hyp
    auto* hypc = app.add_subcommand("hyp", "hyperbolic-geometry estimates");
    hypc->require_subcommand(1);
    double length = 0.0;
    double sinh_a = 0.0;
    double sinh_b = 0.0;
    double hK = 0.0;
    double hc = 0.0;
    double heps = 0.1;
    std::vector<double> xs;
    std::vector<double> ys;

    auto emit_scalar = [&](const char* op, json inputs, double value) {
        json doc{{"op", op}};
        for (auto& [k, v] : inputs.items()) doc[k] = v;
        doc["result"] = num(value);
        output.emit(res, dump(doc));
    };
    auto emit_pair = [&](const char* op, json inputs, const hyp::LengthInterval& iv) {
        json doc{{"op", op}};
        for (auto& [k, v] : inputs.items()) doc[k] = v;
        doc["result"] = json::array({num(iv.lo.value()), num(iv.hi.value())});
        output.emit(res, dump(doc));
    };

    auto* collar = hypc->add_subcommand("collar", "standard collar half-width");
    collar->add_option("--length", length, "geodesic length")->required();
    collar->callback([&] {
        action = [&] { emit_scalar("collar", {{"length", num(length)}}, hyp::collar_width(hyp::LengthValue(length)).value()); };
    });

    auto* pent = hypc->add_subcommand("pentagon", "right-angled pentagon side from sinh a, sinh b");
    pent->add_option("--sinh-a", sinh_a, "sinh of side a")->required();
    pent->add_option("--sinh-b", sinh_b, "sinh of side b")->required();
    pent->callback([&] {
        action = [&] {
            emit_scalar("pentagon", {{"sinh_a", num(sinh_a)}, {"sinh_b", num(sinh_b)}},
                        hyp::pentagon_side_from_sinh(sinh_a, sinh_b));
        };
    });

    auto* wolp = hypc->add_subcommand("wolpert", "length envelope at Teichmüller distance K");
    wolp->add_option("--K", hK, "Teichmüller distance bound")->required();
    wolp->add_option("--length", length, "length on Y")->required();
    auto* wolp_c = wolp->add_option("--c", hc, "override c (default e^{2K})");
    wolp->callback([&] {
        action = [&] {
            auto k = hyp::HypConstants::defaults(2, hK);
            if (*wolp_c) k.wolpert_c = hc;
            k.validate();
            emit_pair("wolpert", {{"K", num(hK)}, {"c", num(k.wolpert_c)}, {"length", num(length)}},
                      hyp::wolpert_envelope(hyp::LengthValue(length), k));
        };
    });

    auto* l41 = hypc->add_subcommand("lemma41", "Thurston-metric envelope for a short curve");
    l41->add_option("--c", hc, "envelope constant c >= 1")->required();
    l41->add_option("--eps", heps, "short-curve threshold (default 0.1)");
    l41->add_option("--length", length, "length on Y")->required();
    l41->callback([&] {
        action = [&] {
            auto k = hyp::HypConstants::defaults(2, 0.0);
            k.lemma41_c = hc;
            k.lemma41_eps = heps;
            k.validate();
            emit_pair("lemma41", {{"c", num(hc)}, {"eps", num(heps)}, {"length", num(length)}},
                      hyp::lemma41_envelope(hyp::LengthValue(length), k));
        };
    });

    auto* tlb = hypc->add_subcommand("thurston-lb", "lower bound for d_Th(X, Y) over a finite curve family");
    tlb->add_option("--x-lengths", xs, "comma-separated lengths on X")->required()->delimiter(',');
    tlb->add_option("--y-lengths", ys, "comma-separated lengths on Y")->required()->delimiter(',');
    tlb->callback([&] {
        action = [&] {
            std::vector<hyp::LengthValue> lx;
            std::vector<hyp::LengthValue> ly;
            json jx = json::array();
            json jy = json::array();
            for (double x : xs) {
                lx.emplace_back(x);
                jx.push_back(num(x));
            }
            for (double y : ys) {
                ly.emplace_back(y);
                jy.push_back(num(y));
            }
            emit_scalar("thurston-lb", {{"x_lengths", jx}, {"y_lengths", jy}}, hyp::thurston_lower_bound(lx, ly));
        };
    });
    for (auto* sub : {collar, pent, wolp, l41, tlb}) sub->add_option("--output", output.path, "write the document to a file");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = app.exit(e, out, err);
        res.out = out.str();
        res.err = err.str();
        res.exit_code = code == 0 ? exit_code::kOk : exit_code::kInvalid;
        return res;
    }

    try {
        if (action) action();
    } catch (const Error& e) {
        res.err += "error: " + std::string(e.what()) + "\n";
        res.exit_code = exit_code::kInvalid;
    }
    return res;
}

}  // namespace pinchcert::cli
