#include "pinchcert/strata.hpp"

#include <algorithm>

#include "pinchcert/errors.hpp"

namespace pinchcert::strata {

namespace {

constexpr const char* kComponentCaveat =
    "coarse density is only true for the whole stratum: a single connected component such as the even spin "
    "component of H(2,...,2) can meet the dimension bound while its image in M_g is not Zariski dense";

}  // namespace

StratumSignature::StratumSignature(std::vector<int> kappa) : kappa_(std::move(kappa)), genus_(0) {
    if (kappa_.empty()) throw ValidationError("kappa must list at least one zero order");
    for (int k : kappa_) {
        if (k < 1) throw ValidationError("zero orders must be positive integers, got " + std::to_string(k));
    }
    long long sum = 0;
    for (int k : kappa_) sum += k;
    if (sum % 2 != 0) throw ValidationError("sum of zero orders must be even (= 2g-2), got " + std::to_string(sum));
    if (sum < 2) throw ValidationError("sum of zero orders must be at least 2 (genus >= 2)");
    genus_ = static_cast<int>((sum + 2) / 2);
}

int dim_projective_stratum(const StratumSignature& s) { return 2 * s.genus() + s.n() - 2; }

const char* to_string(Verdict v) noexcept { return v == Verdict::Dense ? "dense" : "not_dense"; }

VerdictRecord coarse_density_verdict(const StratumSignature& s) {
    VerdictRecord r;
    r.genus = s.genus();
    r.n = s.n();
    r.dim_PH = dim_projective_stratum(s);
    r.threshold = 3 * s.genus() - 3;
    r.verdict = r.dim_PH >= r.threshold ? Verdict::Dense : Verdict::NotDense;
    const auto& k = s.kappa();
    if (k.size() >= 2 && std::all_of(k.begin(), k.end(), [](int x) { return x == 2; })) {
        r.caveat = kComponentCaveat;
    }
    return r;
}

}  // namespace pinchcert::strata
