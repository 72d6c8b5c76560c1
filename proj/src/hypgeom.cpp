#include "pinchcert/hypgeom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pinchcert/errors.hpp"

namespace pinchcert::hyp {

namespace {

void require_positive_finite(double x, const char* what) {
    if (!(std::isfinite(x) && x > 0.0)) {
        throw DomainError(std::string(what) + " must be positive and finite, got " + std::to_string(x));
    }
}

}  // namespace

LengthValue::LengthValue(double value) : value_(value) { require_positive_finite(value, "length"); }

HypConstants HypConstants::defaults(int genus, double K) {
    HypConstants c;
    c.genus = genus;
    c.K = K;
    c.wolpert_c = std::exp(2.0 * K);
    c.C1 = 2.0;
    c.lemma41_c = std::exp(K) * std::max(1.0, c.C1);
    c.lemma41_eps = 0.1;
    c.bers_B = 21.0 * (genus - 1);
    c.C2 = c.bers_B;
    c.cprime = std::numbers::e;
    return c;
}

void HypConstants::validate() const {
    auto fail = [](const std::string& msg) { throw ValidationError(msg); };
    if (genus < 2) fail("genus must be >= 2");
    if (!(std::isfinite(K) && K >= 0.0)) fail("K must be finite and >= 0");
    if (!(std::isfinite(wolpert_c) && wolpert_c >= 1.0)) fail("wolpert_c must be finite and >= 1");
    if (wolpert_c == 1.0 && K != 0.0) fail("wolpert_c = 1 is only permitted when K = 0");
    if (!(std::isfinite(lemma41_c) && lemma41_c >= 1.0)) fail("lemma41_c must be finite and >= 1");
    if (!(lemma41_eps > 0.0 && lemma41_eps < 1.0)) fail("lemma41_eps must lie in (0, 1)");
    if (!(std::isfinite(bers_B) && bers_B > 0.0)) fail("bers_B must be positive and finite");
    if (!(std::isfinite(C1) && C1 > 0.0)) fail("C1 must be positive and finite");
    if (!(std::isfinite(C2) && C2 > 0.0)) fail("C2 must be positive and finite");
    if (!(std::isfinite(cprime) && cprime >= 1.0)) fail("cprime must be finite and >= 1");
}

LengthValue collar_width(LengthValue l) {
    const double s = std::sinh(0.5 * l.value());
    if (!std::isfinite(s)) {
        // width ~ 2e^{-l/2}, below every representable positive double here
        throw DomainError("collar width underflows for length " + std::to_string(l.value()));
    }
    return LengthValue(std::asinh(1.0 / s));
}

LengthValue crossing_length_lower(LengthValue l_alpha) {
    return LengthValue(2.0 * collar_width(l_alpha).value());
}

LengthValue pentagon_side(LengthValue a, LengthValue b) {
    return LengthValue(pentagon_side_from_sinh(std::sinh(a.value()), std::sinh(b.value())));
}

double pentagon_side_from_sinh(double sinh_a, double sinh_b) {
    require_positive_finite(sinh_a, "sinh(a)");
    require_positive_finite(sinh_b, "sinh(b)");
    const double product = sinh_a * sinh_b;
    if (product < 1.0) {
        throw GeometryError("no right-angled pentagon: sinh(a)*sinh(b) = " + std::to_string(product) +
                            " < 1");
    }
    if (!std::isfinite(product)) throw DomainError("sinh(a)*sinh(b) overflows");
    return std::acosh(product);
}

LengthValue bers_crossing_bound(LengthValue l_alpha, const HypConstants& consts) {
    const double log_term = std::max(0.0, -std::log(l_alpha.value()));
    return LengthValue(consts.C1 * log_term + consts.C2);
}

LengthInterval wolpert_envelope(LengthValue l_Y, const HypConstants& consts) {
    const double c = consts.wolpert_c;
    return {LengthValue(l_Y.value() / c), LengthValue(c * l_Y.value())};
}

LengthValue thurston_length_upper(LengthValue l_X, const HypConstants& consts) {
    return LengthValue(std::exp(consts.K) * l_X.value());
}

LengthInterval lemma41_envelope(LengthValue l_Y, const HypConstants& consts) {
    if (l_Y.value() > consts.lemma41_eps) {
        throw RegimeError("length " + std::to_string(l_Y.value()) + " exceeds the short-curve threshold " +
                          std::to_string(consts.lemma41_eps));
    }
    const double c = consts.lemma41_c;
    return {LengthValue(l_Y.value() / c), LengthValue(c * std::pow(l_Y.value(), 1.0 / c))};
}

double thurston_lower_bound(std::span<const LengthValue> lengths_X, std::span<const LengthValue> lengths_Y) {
    if (lengths_X.empty()) throw UsageError("curve family is empty");
    if (lengths_X.size() != lengths_Y.size()) {
        throw UsageError("length lists differ in size (" + std::to_string(lengths_X.size()) + " vs " +
                         std::to_string(lengths_Y.size()) + ")");
    }
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < lengths_X.size(); ++k) {
        best = std::max(best, std::log(lengths_Y[k].value()) - std::log(lengths_X[k].value()));
    }
    return best;
}

}  // namespace pinchcert::hyp
