#pragma once

#include <optional>
#include <string>
#include <vector>

namespace pinchcert::strata {

// Zero orders κ = (κ_1, ..., κ_n) of an abelian differential, Σκ = 2g - 2.
class StratumSignature {
  public:
    // Throws ValidationError naming the violated invariant.
    explicit StratumSignature(std::vector<int> kappa);

    const std::vector<int>& kappa() const noexcept { return kappa_; }
    int genus() const noexcept { return genus_; }
    int n() const noexcept { return static_cast<int>(kappa_.size()); }

  private:
    std::vector<int> kappa_;
    int genus_;
};

// dim PH(κ) = 2g + n - 2.
int dim_projective_stratum(const StratumSignature& s);

enum class Verdict { Dense, NotDense };

const char* to_string(Verdict v) noexcept;

struct VerdictRecord {
    Verdict verdict;
    int genus;
    int n;
    int dim_PH;
    int threshold;  // 3g - 3
    // Set for κ = (2, ..., 2) with at least two zeros, where the verdict does
    // not carry over to individual connected components.
    std::optional<std::string> caveat;
};

// The projection of H(κ) to M_g is coarsely dense iff dim PH(κ) >= 3g - 3,
// i.e. iff n >= g - 1.
VerdictRecord coarse_density_verdict(const StratumSignature& s);

}  // namespace pinchcert::strata
