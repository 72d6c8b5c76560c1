#pragma once

#include <span>
#include <utility>

namespace pinchcert::hyp {

// A hyperbolic length in the curvature -1 normalization. Always positive and
// finite; construction enforces it.
class LengthValue {
  public:
    explicit LengthValue(double value);

    double value() const noexcept { return value_; }

    friend bool operator==(const LengthValue&, const LengthValue&) = default;

  private:
    double value_;
};

struct LengthInterval {
    LengthValue lo;
    LengthValue hi;

    bool contains(double l) const noexcept { return lo.value() <= l && l <= hi.value(); }
};

// Constants of the coarse-density argument. None of them is pinned down by the
// underlying theory beyond existence, so every one is a parameter.
struct HypConstants {
    int genus = 2;
    double K = 0.5;            // coarse-density radius
    double wolpert_c = 0.0;    // length distortion at Teichmüller distance K
    double lemma41_c = 0.0;    // Thurston-metric envelope constant
    double lemma41_eps = 0.1;  // short-curve threshold for the Thurston envelope
    double bers_B = 0.0;
    double C1 = 2.0;
    double C2 = 0.0;
    double cprime = 0.0;  // plumbing-magnitude exponent constant

    // Fills every derived field from genus and K:
    //   wolpert_c = e^{2K}, lemma41_c = e^K·max(1, C1), ε = 0.1,
    //   B = 21(g-1), C1 = 2, C2 = B, c' = e.
    static HypConstants defaults(int genus, double K);

    // Throws ValidationError naming the first violated invariant.
    void validate() const;
};

// Half-width of the standard embedded collar, arcsinh(1 / sinh(l/2)).
LengthValue collar_width(LengthValue l);

// Any closed geodesic crossing α has length at least twice the collar width.
LengthValue crossing_length_lower(LengthValue l_alpha);

// Side c of a right-angled pentagon opposite to the sides a, b:
// cosh c = sinh a · sinh b. Throws GeometryError when the product is < 1.
LengthValue pentagon_side(LengthValue a, LengthValue b);

// Same relation with the hyperbolic sines given directly. Avoids the
// asinh/sinh round trip, which matters near the degenerate product 1.
double pentagon_side_from_sinh(double sinh_a, double sinh_b);

// C1·max(0, log(1/ℓ)) + C2: length of a crossing curve built from Bers-pants
// ortho-geodesics.
LengthValue bers_crossing_bound(LengthValue l_alpha, const HypConstants& consts);

// [ℓ/c, c·ℓ] with c = consts.wolpert_c.
LengthInterval wolpert_envelope(LengthValue l_Y, const HypConstants& consts);

// e^K · ℓ_X.
LengthValue thurston_length_upper(LengthValue l_X, const HypConstants& consts);

// [ℓ/c, c·ℓ^{1/c}] with c = consts.lemma41_c. Throws RegimeError when
// ℓ exceeds consts.lemma41_eps.
LengthInterval lemma41_envelope(LengthValue l_Y, const HypConstants& consts);

// max_k log(Y_k / X_k) over a finite marked curve family. A lower bound for
// the Thurston distance d_Th(X, Y), since the true supremum runs over all
// curves.
double thurston_lower_bound(std::span<const LengthValue> lengths_X,
                            std::span<const LengthValue> lengths_Y);

}  // namespace pinchcert::hyp
