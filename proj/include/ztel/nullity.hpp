#pragma once

#include <string>
#include <vector>

#include "ztel/algebra.hpp"
#include "ztel/compactification.hpp"
#include "ztel/telescope.hpp"

namespace ztel {

struct DecayEntry {
  std::string family;
  double scale = 0.0;
  double delta = 0.0;
};

struct DecayCurve {
  std::vector<DecayEntry> entries;

  std::vector<DecayEntry> family(const std::string& name) const;
  std::vector<std::string> family_names() const;  // first-appearance order
  // Throws PreconditionFailed unless scales strictly increase within each family.
  void validate() const;
};

// Families of group elements indexed by a scale s:
//   t_power  t^s            t_inverse t^{-s}
//   axis     s e_i          mixed     t^{k0} (s e_i)
//   diagonal t^s (s e_i)
enum class FamilyKind { t_power, t_inverse, axis, mixed, diagonal };

std::string to_string(FamilyKind kind);
FamilyKind parse_family_kind(const std::string& text);

struct FamilySpec {
  std::string name;
  FamilyKind kind = FamilyKind::t_power;
  int axis = 0;
  long long k0 = 0;
  std::vector<double> ladder;  // strictly increasing, integral
  double threshold = kInf;     // final delta must be below this
};

GroupElement family_element(const FamilySpec& family, double scale, int n);

// raw(k) = max over the sign of diam_{d1} v(t^{+-k} C_Y); d1 is the l1 product metric.
double eta_raw(const Automorphism& aut, const FundamentalDomain& domain, long long k);

// eta(k) for k = 0..kmax: running maximum of raw(k), plus k so that eta is
// unbounded even when raw is not.
SampledFunction eta_estimate(const Automorphism& aut, const FundamentalDomain& domain, int kmax);

// delta of the best basic neighborhood containing v(a C_Y); +inf if none applies.
double smallness(const PsiSpec& spec, const Automorphism& aut, const GroupElement& a,
                 const FundamentalDomain& domain);

DecayCurve decay_experiment(const PsiSpec& spec, const Automorphism& aut, const FundamentalDomain& domain,
                            const std::vector<FamilySpec>& families);

enum class BaselineEmbedding { straightened, straightline };

// Smallness in the radial compactification of R^{n+1}:
// max(1/min|w|, angular radius about the spherical centroid).
double euclidean_smallness(const Automorphism& aut, const GroupElement& a, const FundamentalDomain& domain,
                           BaselineEmbedding embedding = BaselineEmbedding::straightened);

DecayCurve euclidean_baseline(const Automorphism& aut, const FundamentalDomain& domain,
                              const std::vector<FamilySpec>& families,
                              BaselineEmbedding embedding = BaselineEmbedding::straightened);

// Spearman rank correlation (average ranks for ties); NaN for fewer than 2 points.
double spearman(const std::vector<double>& xs, const std::vector<double>& ys);

inline constexpr double kSpearmanThreshold = -0.9;

struct FamilyVerdict {
  std::string family;
  double spearman = 0.0;
  bool strictly_decreasing = false;
  double final_delta = kInf;
  double threshold = kInf;
  bool pass = false;
};

std::vector<FamilyVerdict> judge(const DecayCurve& curve, const std::vector<FamilySpec>& families);

}  // namespace ztel
